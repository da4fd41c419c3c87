//! Integer matrices and Smith normal form over arbitrary-precision integers.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// A dense rectangular matrix of arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let mut m = IntegerMatrix::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(*v));
            }
        }
        m
    }

    pub fn from_bigint_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntegerMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[i] -= q * row[k]
    fn row_sub(&mut self, i: usize, k: usize, q: &BigInt) {
        for j in 0..self.cols {
            let delta = q * self.get(k, j);
            let v = self.get(i, j) - delta;
            self.set(i, j, v);
        }
    }

    /// col[j] -= q * col[k]
    fn col_sub(&mut self, j: usize, k: usize, q: &BigInt) {
        for i in 0..self.rows {
            let delta = q * self.get(i, k);
            let v = self.get(i, j) - delta;
            self.set(i, j, v);
        }
    }

    /// row[i] += row[k]
    fn row_add(&mut self, i: usize, k: usize) {
        for j in 0..self.cols {
            let v = self.get(i, j) + self.get(k, j);
            self.set(i, j, v);
        }
    }
}

/// Invariant factors d₁ | d₂ | … (all positive) of an integer matrix,
/// together with its rank. The factors include any entries equal to 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithNormalForm {
    pub factors: Vec<BigInt>,
    pub rank: usize,
}

/// Computes the Smith normal form by elementary row/column operations:
/// repeatedly move the least-magnitude nonzero entry of the trailing
/// submatrix to the pivot, clear its row and column, and restore the
/// divisibility chain by folding in any non-divisible entry.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithNormalForm {
    let mut a = m.clone();
    let (r, c) = (a.rows(), a.cols());
    let n = r.min(c);
    let mut factors = Vec::new();

    for k in 0..n {
        if !move_min_pivot(&mut a, k) {
            break; // trailing submatrix is zero
        }
        loop {
            // Clear column k below the pivot.
            let mut dirty = false;
            for i in k + 1..r {
                if !a.get(i, k).is_zero() {
                    let q = a.get(i, k) / a.get(k, k);
                    a.row_sub(i, k, &q);
                    if !a.get(i, k).is_zero() {
                        dirty = true;
                    }
                }
            }
            // Clear row k right of the pivot.
            for j in k + 1..c {
                if !a.get(k, j).is_zero() {
                    let q = a.get(k, j) / a.get(k, k);
                    a.col_sub(j, k, &q);
                    if !a.get(k, j).is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                // Truncated division left remainders of smaller magnitude;
                // re-pivot on the new minimum and repeat.
                move_min_pivot(&mut a, k);
                continue;
            }
            // Row and column are clear. Enforce d_k | all trailing entries.
            match find_nondivisible(&a, k) {
                Some(i) => {
                    a.row_add(k, i);
                }
                None => break,
            }
        }
        let mut d = a.get(k, k).clone();
        if d.is_negative() {
            d = -d;
        }
        factors.push(d);
    }

    let rank = factors.len();
    SmithNormalForm { factors, rank }
}

/// Moves the least-|·| nonzero entry of the submatrix at (k,k) to the
/// pivot position. Returns false if the submatrix is entirely zero.
fn move_min_pivot(a: &mut IntegerMatrix, k: usize) -> bool {
    let mut best: Option<(usize, usize)> = None;
    for i in k..a.rows() {
        for j in k..a.cols() {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a.get(bi, bj).abs() <= v.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    match best {
        Some((i, j)) => {
            a.swap_rows(k, i);
            a.swap_cols(k, j);
            true
        }
        None => false,
    }
}

/// Index of a row whose trailing part contains an entry not divisible by
/// the pivot at (k,k), if any.
fn find_nondivisible(a: &IntegerMatrix, k: usize) -> Option<usize> {
    let d = a.get(k, k);
    for i in k + 1..a.rows() {
        for j in k + 1..a.cols() {
            if !(a.get(i, j) % d).is_zero() {
                return Some(i);
            }
        }
    }
    None
}

/// The abelian group Z^free_rank ⊕ Z/d₁ ⊕ Z/d₂ ⊕ … with d₁ | d₂ | …,
/// all dᵢ ≥ 2. Factors equal to 1 are dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn free(rank: usize) -> Self {
        AbelianInvariants {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Invariants of the cokernel of a relation matrix on `gens` generators
    /// (rows are relations).
    pub fn from_relation_matrix(m: &IntegerMatrix, gens: usize) -> Self {
        let snf = smith_normal_form(m);
        let one = BigInt::from(1);
        AbelianInvariants {
            free_rank: gens - snf.rank,
            torsion: snf.factors.into_iter().filter(|d| *d > one).collect(),
        }
    }
}

impl std::fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{}", r)),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{}", d));
        }
        write!(f, "{}", parts.join(" + "))
    }
}
