//! Connected components of the ε-neighborhood graph of a point cloud.

use super::{MorseError, PointCloud};
use std::collections::HashMap;
use std::hash::{BuildHasherDefault, Hasher};

const MAX_GRID_DIM: usize = 8;

/// Padding (in cells) around the observed index range so neighbor probes
/// never leave the packed coordinate space.
const PAD: i64 = 8;

struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    fn new(len: usize) -> Self {
        UnionFind {
            parent: (0..len as u32).collect(),
            size: vec![1; len],
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            self.parent[x as usize] = self.parent[self.parent[x as usize] as usize];
            x = self.parent[x as usize];
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        self.size[ra as usize] += self.size[rb as usize];
    }

    fn component_count(&mut self) -> usize {
        (0..self.parent.len() as u32)
            .filter(|&i| self.find(i) == i)
            .count()
    }
}

/// Multiply-xor hasher; the default SipHash dominates profile time on
/// large grids.
#[derive(Default)]
struct KeyHasher(u64);

impl Hasher for KeyHasher {
    fn write(&mut self, bytes: &[u8]) {
        for chunk in bytes.chunks(8) {
            let mut word = [0u8; 8];
            word[..chunk.len()].copy_from_slice(chunk);
            self.0 = (self.0 ^ u64::from_le_bytes(word)).wrapping_mul(0x9e37_79b9_7f4a_7c15);
        }
    }

    fn finish(&self) -> u64 {
        let mut h = self.0;
        h ^= h >> 31;
        h = h.wrapping_mul(0x7fb5_d329_728e_a185);
        h ^= h >> 27;
        h
    }
}

type FastMap<K, V> = HashMap<K, V, BuildHasherDefault<KeyHasher>>;

/// Per-axis integer cell coordinates.
type Cell = [i64; MAX_GRID_DIM];

/// Bucket grid over the cloud. Cell coordinates are packed into a u128
/// (16 bits per axis, rebased to the cloud's minimum) whenever the index
/// range permits, falling back to the raw coordinate tuple otherwise.
enum Buckets {
    Packed(FastMap<u128, Vec<u32>>),
    Generic(FastMap<Cell, Vec<u32>>),
}

struct Grid {
    cell: f64,
    dim: usize,
    base: Cell,
    buckets: Buckets,
}

impl Grid {
    fn build(cloud: &PointCloud, cell: f64) -> Result<Self, MorseError> {
        let dim = cloud.dim();
        if dim > MAX_GRID_DIM {
            return Err(MorseError::InvalidParameter(format!(
                "component counting supports dimension <= {MAX_GRID_DIM}, got {dim}"
            )));
        }
        let mut lo = [i64::MAX; MAX_GRID_DIM];
        let mut hi = [i64::MIN; MAX_GRID_DIM];
        for p in cloud.iter() {
            for (d, &v) in p.iter().enumerate() {
                let idx = (v / cell).floor() as i64;
                lo[d] = lo[d].min(idx);
                hi[d] = hi[d].max(idx);
            }
        }
        if cloud.is_empty() {
            lo = [0; MAX_GRID_DIM];
            hi = [0; MAX_GRID_DIM];
        }
        let packed = (0..dim).all(|d| hi[d] - lo[d] + 2 * PAD < (1 << 16));
        let mut grid = Grid {
            cell,
            dim,
            base: lo,
            buckets: if packed {
                Buckets::Packed(FastMap::default())
            } else {
                Buckets::Generic(FastMap::default())
            },
        };
        for (i, p) in cloud.iter().enumerate() {
            let cell_of = grid.cell_of(p);
            grid.insert(&cell_of, i as u32);
        }
        Ok(grid)
    }

    fn cell_of(&self, p: &[f64]) -> Cell {
        let mut out = [0i64; MAX_GRID_DIM];
        for (d, &v) in p.iter().enumerate() {
            out[d] = (v / self.cell).floor() as i64;
        }
        out
    }

    fn pack(&self, cell: &Cell) -> Option<u128> {
        let mut key = 0u128;
        for d in 0..self.dim {
            let idx = cell[d] - self.base[d] + PAD;
            if !(0..(1 << 16)).contains(&idx) {
                return None;
            }
            key |= (idx as u128) << (16 * d);
        }
        Some(key)
    }

    fn insert(&mut self, cell: &Cell, point: u32) {
        let key = self.pack(cell);
        match &mut self.buckets {
            Buckets::Packed(map) => {
                let key = key.expect("data cells are inside the padded range");
                map.entry(key).or_default().push(point);
            }
            Buckets::Generic(map) => {
                map.entry(*cell).or_default().push(point);
            }
        }
    }

    fn get(&self, cell: &Cell) -> Option<&Vec<u32>> {
        match &self.buckets {
            Buckets::Packed(map) => map.get(&self.pack(cell)?),
            Buckets::Generic(map) => map.get(cell),
        }
    }

    fn is_packed(&self) -> bool {
        matches!(self.buckets, Buckets::Packed(_))
    }

    fn bucket_count(&self) -> usize {
        match &self.buckets {
            Buckets::Packed(map) => map.len(),
            Buckets::Generic(map) => map.len(),
        }
    }

    fn mean_occupancy(&self, points: usize) -> f64 {
        points as f64 / self.bucket_count().max(1) as f64
    }

    fn for_each_bucket(&self, mut visit: impl FnMut(&Cell, &Vec<u32>)) {
        match &self.buckets {
            Buckets::Packed(map) => {
                for (key, bucket) in map {
                    let mut cell = [0i64; MAX_GRID_DIM];
                    for (d, slot) in cell.iter_mut().enumerate().take(self.dim) {
                        *slot = ((key >> (16 * d)) & 0xffff) as i64 - PAD + self.base[d];
                    }
                    visit(&cell, bucket);
                }
            }
            Buckets::Generic(map) => {
                for (key, bucket) in map {
                    visit(key, bucket);
                }
            }
        }
    }

    /// Visits every point in cells at Chebyshev distance exactly `shell`
    /// from `center` (distance ≤ `shell` when `include_interior`).
    fn for_shell(
        &self,
        center: &Cell,
        shell: i64,
        include_interior: bool,
        mut visit: impl FnMut(u32),
    ) {
        let dim = self.dim;
        let mut offset = [0i64; MAX_GRID_DIM];
        offset[..dim].fill(-shell);
        loop {
            let on_boundary = offset[..dim].iter().any(|&o| o.abs() == shell);
            if include_interior || on_boundary {
                let mut cell = *center;
                for d in 0..dim {
                    cell[d] += offset[d];
                }
                if let Some(bucket) = self.get(&cell) {
                    for &i in bucket {
                        visit(i);
                    }
                }
            }
            let mut d = 0;
            loop {
                if d == dim {
                    return;
                }
                offset[d] += 1;
                if offset[d] <= shell {
                    break;
                }
                offset[d] = -shell;
                d += 1;
            }
        }
    }
}

fn dist2(p: &[f64], q: &[f64]) -> f64 {
    p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum()
}

/// The half of the nonzero offsets in {−k,…,k}^dim whose first nonzero
/// entry is positive; enumerating these visits each unordered pair of
/// nearby cells exactly once.
fn positive_offsets(dim: usize, k: i64) -> Vec<Cell> {
    let width = (2 * k + 1) as usize;
    let mut out = Vec::new();
    let total = width.pow(dim as u32);
    for code in 0..total {
        let mut offset = [0i64; MAX_GRID_DIM];
        let mut rest = code;
        for slot in offset.iter_mut().take(dim) {
            *slot = (rest % width) as i64 - k;
            rest /= width;
        }
        if offset[..dim].iter().find(|&&o| o != 0).is_some_and(|&o| o > 0) {
            out.push(offset);
        }
    }
    out
}

/// Number of connected components of the graph joining points at
/// distance ≤ `link_radius`, via union-find over a bucket grid.
///
/// Cells are sized so everything inside one is automatically linked;
/// cell pairs then merge wholesale when their bounding boxes force it,
/// and ambiguous pairs are deferred until the cheap unions have
/// saturated, after which almost all of them are already connected and
/// the rest need only a single witness pair.
pub fn count_components(cloud: &PointCloud, link_radius: f64) -> Result<usize, MorseError> {
    if !(link_radius > 0.0) {
        return Err(MorseError::InvalidParameter(format!(
            "link radius must be positive, got {link_radius}"
        )));
    }
    let n = cloud.len();
    if n <= 1 {
        return Ok(n);
    }
    let dim = cloud.dim().max(1);
    let root_dim = (dim as f64).sqrt();
    let reach = 1 + root_dim.ceil() as i64;
    let refined = (2 * reach + 1).pow(dim as u32) <= 200_000;
    let cell_size = if refined {
        link_radius / root_dim
    } else {
        link_radius
    };
    let grid = Grid::build(cloud, cell_size)?;
    let r2 = link_radius * link_radius;
    let mut uf = UnionFind::new(n);

    if !refined {
        // high-dimensional fallback: plain pair scans over adjacent cells
        let offsets = positive_offsets(dim, 1);
        grid.for_each_bucket(|cell, bucket| {
            for (a, &i) in bucket.iter().enumerate() {
                for &j in &bucket[a + 1..] {
                    if dist2(cloud.point(i as usize), cloud.point(j as usize)) <= r2 {
                        uf.union(i, j);
                    }
                }
            }
            for offset in &offsets {
                let mut neighbor = *cell;
                for d in 0..dim {
                    neighbor[d] += offset[d];
                }
                if let Some(other) = grid.get(&neighbor) {
                    for &i in bucket {
                        for &j in other {
                            if dist2(cloud.point(i as usize), cloud.point(j as usize)) <= r2 {
                                uf.union(i, j);
                            }
                        }
                    }
                }
            }
        });
        return Ok(uf.component_count());
    }

    // Collect buckets with their bounding boxes; blanket-union each cell
    // (the cell diagonal is at most the radius).
    struct Bounded {
        points: Vec<u32>,
        lo: [f64; MAX_GRID_DIM],
        hi: [f64; MAX_GRID_DIM],
    }
    // Index cells by their packed key when available so phase-1 probes
    // hash a u128 instead of the whole coordinate tuple.
    let use_packed = grid.is_packed();
    let mut packed_index: FastMap<u128, u32> = FastMap::default();
    let mut generic_index: FastMap<Cell, u32> = FastMap::default();
    let mut cells: Vec<(Cell, Bounded)> = Vec::new();
    grid.for_each_bucket(|cell, points| {
        let mut lo = [f64::MAX; MAX_GRID_DIM];
        let mut hi = [f64::MIN; MAX_GRID_DIM];
        for &i in points {
            for (d, &v) in cloud.point(i as usize).iter().enumerate() {
                lo[d] = lo[d].min(v);
                hi[d] = hi[d].max(v);
            }
        }
        for &j in &points[1..] {
            uf.union(points[0], j);
        }
        if use_packed {
            let key = grid.pack(cell).expect("data cell in range");
            packed_index.insert(key, cells.len() as u32);
        } else {
            generic_index.insert(*cell, cells.len() as u32);
        }
        cells.push((
            *cell,
            Bounded {
                points: points.clone(),
                lo,
                hi,
            },
        ));
    });
    let probe = |neighbor: &Cell| -> Option<u32> {
        if use_packed {
            packed_index.get(&grid.pack(neighbor)?).copied()
        } else {
            generic_index.get(neighbor).copied()
        }
    };

    let offsets: Vec<Cell> = positive_offsets(dim, reach)
        .into_iter()
        .filter(|off| {
            let min2: f64 = off[..dim]
                .iter()
                .map(|&o| {
                    let gap = (o.abs() - 1).max(0) as f64 * cell_size;
                    gap * gap
                })
                .sum();
            min2 <= r2
        })
        .collect();

    // Phase 1: decide every pair the bounding boxes can decide.
    let mut deferred: Vec<(u32, u32)> = Vec::new();
    for (ci, (cell, this)) in cells.iter().enumerate() {
        for offset in &offsets {
            let mut neighbor = *cell;
            for d in 0..dim {
                neighbor[d] += offset[d];
            }
            let Some(oi) = probe(&neighbor) else {
                continue;
            };
            let other = &cells[oi as usize].1;
            let mut box_min2 = 0.0f64;
            let mut box_max2 = 0.0f64;
            for d in 0..dim {
                let gap = (this.lo[d] - other.hi[d]).max(other.lo[d] - this.hi[d]);
                if gap > 0.0 {
                    box_min2 += gap * gap;
                }
                let span = (this.hi[d] - other.lo[d]).max(other.hi[d] - this.lo[d]);
                box_max2 += span * span;
            }
            if box_min2 > r2 {
                continue;
            }
            if box_max2 <= r2 {
                uf.union(this.points[0], other.points[0]);
            } else {
                deferred.push((ci as u32, oi));
            }
        }
    }

    // Phase 2: ambiguous pairs, mostly already connected by now. Cells
    // are internally connected, so one witness pair settles a survivor.
    for (a, b) in deferred {
        let pa = cells[a as usize].1.points[0];
        let pb = cells[b as usize].1.points[0];
        if uf.find(pa) == uf.find(pb) {
            continue;
        }
        'witness: for &i in &cells[a as usize].1.points {
            for &j in &cells[b as usize].1.points {
                if dist2(cloud.point(i as usize), cloud.point(j as usize)) <= r2 {
                    uf.union(i, j);
                    break 'witness;
                }
            }
        }
    }
    Ok(uf.component_count())
}

/// Scale-free linking radius: twice the largest nearest-neighbor distance
/// in the cloud. Returns 0 for clouds with fewer than two points.
pub fn default_link_radius(cloud: &PointCloud) -> f64 {
    let n = cloud.len();
    if n < 2 {
        return 0.0;
    }
    let dim = cloud.dim().max(1);
    let (mut lo, mut hi) = (vec![f64::MAX; dim], vec![f64::MIN; dim]);
    for p in cloud.iter() {
        for (d, &v) in p.iter().enumerate() {
            lo[d] = lo[d].min(v);
            hi[d] = hi[d].max(v);
        }
    }
    let extent = lo
        .iter()
        .zip(&hi)
        .map(|(a, b)| b - a)
        .fold(0.0f64, f64::max)
        .max(f64::MIN_POSITIVE);

    // Shrink the cell until buckets are sparse; clouds concentrated on a
    // lower-dimensional set need finer cells than a volume estimate
    // suggests.
    let mut cell = extent / (n as f64).powf(1.0 / dim as f64);
    let mut grid = Grid::build(cloud, cell).expect("dimension already validated");
    for _ in 0..20 {
        if grid.mean_occupancy(n) <= 6.0 || grid.bucket_count() >= n {
            break;
        }
        cell /= 2.0;
        grid = Grid::build(cloud, cell).expect("dimension already validated");
    }

    let mut worst2: f64 = 0.0;
    let diameter_bound = extent * (dim as f64).sqrt();
    for i in 0..n {
        let p = cloud.point(i);
        let center = grid.cell_of(p);
        let mut best2 = f64::INFINITY;
        let mut shell: i64 = 0;
        loop {
            grid.for_shell(&center, shell, shell == 0, |j| {
                if j as usize != i {
                    best2 = best2.min(dist2(p, cloud.point(j as usize)));
                }
            });
            // a neighbor at most √worst2 away cannot raise the maximum,
            // so this point is settled
            if best2 <= worst2 {
                break;
            }
            // cells beyond Chebyshev distance `shell` hold points farther
            // than shell·cell; stop once that cannot improve on `best2`
            let horizon = shell as f64 * cell;
            if best2 <= horizon * horizon || horizon > diameter_bound {
                break;
            }
            shell += 1;
        }
        if best2.is_finite() && best2 > worst2 {
            worst2 = best2;
        }
    }
    2.0 * worst2.sqrt()
}
