//! Level-set sampling of the local Morse forms.
//!
//! Dimensions ≤ 3 use exact parametric generators (circles, spheres,
//! hyperbola branches, hyperboloid sheets, and the cones at t = 0, which
//! always include the critical point). Higher dimensions fall back to
//! seeded random points projected onto the level set by damped Newton
//! steps along the gradient. Time-reversed forms sample the plain form
//! at −t; indices above half the dimension reduce to their mirror by
//! reversing coordinates.

use super::tolerances::RESIDUAL;
use super::{LevelSetSample, MorseError, MorseForm, PointCloud};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Pull parameter maxima a hair inside the disc so boundary points stay
/// strictly within |x| ≤ 1 after rounding.
const INSET: f64 = 1.0 - 1e-12;

const NEWTON_ITERATIONS: usize = 50;

/// Samples f⁻¹(t) ∩ D^dim with the default seed. Requires −1 < t < 1 and
/// resolution ≥ 8; emits at least resolution^(dim−1) points for nonempty
/// level sets (all inside the closed unit disc, each satisfying the level
/// equation to within [`RESIDUAL`]).
pub fn sample_level_set(
    form: &MorseForm,
    t: f64,
    resolution: usize,
) -> Result<LevelSetSample, MorseError> {
    sample_level_set_seeded(form, t, resolution, 0)
}

pub fn sample_level_set_seeded(
    form: &MorseForm,
    t: f64,
    resolution: usize,
    seed: u64,
) -> Result<LevelSetSample, MorseError> {
    if !(-1.0 < t && t < 1.0) {
        return Err(MorseError::InvalidParameter(format!(
            "level value t must lie in (-1, 1), got {t}"
        )));
    }
    if resolution < 8 {
        return Err(MorseError::InvalidParameter(format!(
            "resolution must be at least 8, got {resolution}"
        )));
    }
    let points = dispatch(form, t, resolution, seed)?;
    debug_assert!(points.iter().all(|p| {
        let norm2: f64 = p.iter().map(|v| v * v).sum();
        norm2 <= 1.0 + 1e-12 && (form.evaluate_unchecked(p) - t).abs() <= RESIDUAL
    }));
    Ok(LevelSetSample {
        t,
        points,
        residual_tol: RESIDUAL,
    })
}

/// One sample per grid value: the temporal evolution of the surgery. The
/// grid must be strictly increasing and inside (−1, 1); time-reversed
/// forms run the dual process.
pub fn surgery_sequence(
    form: &MorseForm,
    t_grid: &[f64],
    resolution: usize,
) -> Result<Vec<LevelSetSample>, MorseError> {
    surgery_sequence_seeded(form, t_grid, resolution, 0)
}

pub fn surgery_sequence_seeded(
    form: &MorseForm,
    t_grid: &[f64],
    resolution: usize,
    seed: u64,
) -> Result<Vec<LevelSetSample>, MorseError> {
    if t_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(MorseError::InvalidParameter(
            "t grid must be strictly increasing".into(),
        ));
    }
    t_grid
        .iter()
        .map(|&t| sample_level_set_seeded(form, t, resolution, seed))
        .collect()
}

fn dispatch(
    form: &MorseForm,
    t: f64,
    resolution: usize,
    seed: u64,
) -> Result<PointCloud, MorseError> {
    let dim = form.ambient_dim();
    let index = form.index();
    if form.is_time_reversed() {
        // The dual surgery is the plain process run backwards in t.
        let plain = MorseForm::new(dim, index).expect("same parameters");
        return dispatch(&plain, -t, resolution, seed);
    }
    if 2 * index > dim {
        // Mirror form: f_{dim,i}(x) = −f_{dim,dim−i}(x reversed).
        let mirror = MorseForm::new(dim, dim - index).expect("index in range");
        let base = dispatch(&mirror, -t, resolution, seed)?;
        let mut out = PointCloud::new(dim);
        for p in base.iter() {
            let reversed: Vec<f64> = p.iter().rev().copied().collect();
            out.push(&reversed)?;
        }
        return Ok(out);
    }
    match (dim, index) {
        (1, 0) => sphere_pair_1d(t),
        (2, 0) => circle(t, resolution),
        (3, 0) => sphere(t, resolution),
        (2, 1) => hyperbola(t, resolution),
        (3, 1) => hyperboloid(t, resolution),
        _ => projected(form, t, resolution, seed),
    }
}

fn linspace(a: f64, b: f64, n: usize) -> impl Iterator<Item = f64> {
    let step = if n > 1 { (b - a) / (n - 1) as f64 } else { 0.0 };
    (0..n).map(move |k| a + step * k as f64)
}

/// Symmetric grid over [−a, a] with an odd number of values (at least
/// `n`), so 0 and the exact ± pairs are always included.
fn symmetric_grid(a: f64, n: usize) -> impl Iterator<Item = f64> {
    let half = (n / 2).max(1) as i64;
    (-half..=half).map(move |k| a * k as f64 / half as f64)
}

/// Points on the circle of radius `rho` in the coordinate pair
/// `(axis_a, axis_b)`, spaced no wider than `spacing`; a degenerate
/// circle contributes its center once. Keeps the sampling isotropic, so
/// nearest-neighbor-based component counting sees surfaces, not stripes.
fn push_ring(
    out: &mut PointCloud,
    base: &[f64],
    axis_a: usize,
    axis_b: usize,
    rho: f64,
    spacing: f64,
    min_points: usize,
) -> Result<(), MorseError> {
    let mut p = base.to_vec();
    if rho == 0.0 {
        p[axis_a] = 0.0;
        p[axis_b] = 0.0;
        return out.push(&p);
    }
    let circumference = 2.0 * std::f64::consts::PI * rho;
    let count = ((circumference / spacing).ceil() as usize).max(min_points);
    for k in 0..count {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / count as f64;
        p[axis_a] = rho * theta.cos();
        p[axis_b] = rho * theta.sin();
        out.push(&p)?;
    }
    Ok(())
}

/// f = x²: two points at ±√t.
fn sphere_pair_1d(t: f64) -> Result<PointCloud, MorseError> {
    let mut out = PointCloud::new(1);
    if t < 0.0 {
        return Err(MorseError::EmptyLevelSet);
    }
    if t == 0.0 {
        out.push(&[0.0])?;
    } else {
        let r = t.sqrt();
        out.push(&[-r])?;
        out.push(&[r])?;
    }
    Ok(out)
}

/// f = x²+y²: circle of radius √t.
fn circle(t: f64, resolution: usize) -> Result<PointCloud, MorseError> {
    let mut out = PointCloud::new(2);
    if t < 0.0 {
        return Err(MorseError::EmptyLevelSet);
    }
    if t == 0.0 {
        out.push(&[0.0, 0.0])?;
        return Ok(out);
    }
    let r = t.sqrt();
    for k in 0..resolution {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / resolution as f64;
        out.push(&[r * theta.cos(), r * theta.sin()])?;
    }
    Ok(out)
}

/// f = x²+y²+z²: sphere of radius √t on a midpoint latitude grid (no
/// pole duplication), with isotropic ring counts.
fn sphere(t: f64, resolution: usize) -> Result<PointCloud, MorseError> {
    let mut out = PointCloud::new(3);
    if t < 0.0 {
        return Err(MorseError::EmptyLevelSet);
    }
    if t == 0.0 {
        out.push(&[0.0, 0.0, 0.0])?;
        return Ok(out);
    }
    let r = t.sqrt();
    let spacing = std::f64::consts::PI * r / resolution as f64;
    for i in 0..resolution {
        let lat = std::f64::consts::PI * (i as f64 + 0.5) / resolution as f64;
        let base = [0.0, 0.0, r * lat.cos()];
        push_ring(&mut out, &base, 0, 1, r * lat.sin(), spacing, 1)?;
    }
    Ok(out)
}

/// f = −x²+y²: hyperbola branches, or the crossed lines at t = 0.
fn hyperbola(t: f64, resolution: usize) -> Result<PointCloud, MorseError> {
    let mut out = PointCloud::new(2);
    if t == 0.0 {
        // the cone y = ±x, critical point first
        out.push(&[0.0, 0.0])?;
        let a = INSET / 2f64.sqrt();
        for s in symmetric_grid(a, resolution) {
            if s == 0.0 {
                continue;
            }
            out.push(&[s, s])?;
        }
        for s in symmetric_grid(a, resolution) {
            if s == 0.0 {
                continue;
            }
            out.push(&[s, -s])?;
        }
        return Ok(out);
    }
    if t < 0.0 {
        // two branches through (±√−t, 0), parametrized by y
        let y_max = ((1.0 + t) / 2.0).sqrt() * INSET;
        for sign in [-1.0, 1.0] {
            for y in symmetric_grid(y_max, resolution) {
                let x = sign * (y * y - t).sqrt();
                out.push(&[x, y])?;
            }
        }
    } else {
        // two branches through (0, ±√t), parametrized by x
        let x_max = ((1.0 - t) / 2.0).sqrt() * INSET;
        for sign in [-1.0, 1.0] {
            for x in symmetric_grid(x_max, resolution) {
                let y = sign * (x * x + t).sqrt();
                out.push(&[x, y])?;
            }
        }
    }
    Ok(out)
}

/// f = −x²+y²+z²: two-sheet (t < 0) or one-sheet (t > 0) hyperboloids,
/// or the cone at t = 0 with its apex. Rings are spaced to match the
/// profile-grid step, keeping the sampling isotropic.
fn hyperboloid(t: f64, resolution: usize) -> Result<PointCloud, MorseError> {
    let mut out = PointCloud::new(3);
    if t == 0.0 {
        out.push(&[0.0, 0.0, 0.0])?;
        let rho_max = INSET / 2f64.sqrt();
        let spacing = rho_max / (resolution - 1) as f64;
        for rho in linspace(0.0, rho_max, resolution) {
            if rho == 0.0 {
                continue;
            }
            push_ring(&mut out, &[rho, 0.0, 0.0], 1, 2, rho, spacing, 1)?;
            push_ring(&mut out, &[-rho, 0.0, 0.0], 1, 2, rho, spacing, 1)?;
        }
        return Ok(out);
    }
    if t < 0.0 {
        // sheets through (±√−t, 0, 0), parametrized by the ring radius ρ
        let rho_max = ((1.0 + t) / 2.0).sqrt() * INSET;
        let spacing = rho_max / (resolution - 1) as f64;
        for sign in [-1.0, 1.0] {
            for rho in linspace(0.0, rho_max, resolution) {
                let x = sign * (rho * rho - t).sqrt();
                push_ring(&mut out, &[x, 0.0, 0.0], 1, 2, rho, spacing, 1)?;
            }
        }
    } else {
        // one sheet, waist circle of radius √t, parametrized by x
        let x_max = ((1.0 - t) / 2.0).sqrt() * INSET;
        let steps = resolution | 1;
        let spacing = 2.0 * x_max / (steps - 1) as f64;
        for x in symmetric_grid(x_max, resolution) {
            let rho = (x * x + t).sqrt();
            push_ring(&mut out, &[x, 0.0, 0.0], 1, 2, rho, spacing, 1)?;
        }
    }
    Ok(out)
}

/// General-position sampler: uniform seeds in the unit ball projected
/// onto the level set by damped Newton steps along the gradient.
fn projected(
    form: &MorseForm,
    t: f64,
    resolution: usize,
    seed: u64,
) -> Result<PointCloud, MorseError> {
    let dim = form.ambient_dim();
    let mut out = PointCloud::new(dim);
    if t == 0.0 {
        out.push(&vec![0.0; dim])?;
    }
    let target = resolution.pow((dim - 1) as u32);
    let mut rng = rng_for(form, t, seed);
    let max_attempts = 200usize.saturating_mul(target);
    let mut attempts = 0usize;
    while out.len() < target && attempts < max_attempts {
        attempts += 1;
        let Some(seed_point) = random_in_ball(&mut rng, dim) else {
            continue;
        };
        if let Some(p) = newton_project(form, t, seed_point) {
            out.push(&p)?;
        }
    }
    if out.is_empty() {
        return Err(MorseError::EmptyLevelSet);
    }
    Ok(out)
}

fn rng_for(form: &MorseForm, t: f64, seed: u64) -> ChaCha8Rng {
    // one deterministic stream per (seed, form, t)
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&t.to_bits().to_le_bytes());
    key[16..24].copy_from_slice(&(form.ambient_dim() as u64).to_le_bytes());
    let tag = (form.index() as u64) << 1 | form.is_time_reversed() as u64;
    key[24..32].copy_from_slice(&tag.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

fn random_in_ball(rng: &mut ChaCha8Rng, dim: usize) -> Option<Vec<f64>> {
    let p: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let norm2: f64 = p.iter().map(|v| v * v).sum();
    (norm2 <= 1.0).then_some(p)
}

fn newton_project(form: &MorseForm, t: f64, mut x: Vec<f64>) -> Option<Vec<f64>> {
    let dim = x.len();
    let mut grad = vec![0.0; dim];
    let mut candidate = vec![0.0; dim];
    let mut residual = form.evaluate_unchecked(&x) - t;
    for _ in 0..NEWTON_ITERATIONS {
        if residual.abs() <= RESIDUAL * 0.5 {
            let norm2: f64 = x.iter().map(|v| v * v).sum();
            return (norm2 <= 1.0).then_some(x);
        }
        let mut grad2 = 0.0;
        for (g, v) in grad.iter_mut().zip(form.gradient_iter(&x)) {
            *g = v;
            grad2 += v * v;
        }
        if grad2 < 1e-9 {
            return None; // too close to the critical point to project
        }
        let mut step = residual / grad2;
        // damp until the residual actually shrinks
        let mut improved = false;
        for _ in 0..20 {
            for d in 0..dim {
                candidate[d] = x[d] - step * grad[d];
            }
            let new_residual = form.evaluate_unchecked(&candidate) - t;
            if new_residual.abs() < residual.abs() {
                std::mem::swap(&mut x, &mut candidate);
                residual = new_residual;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if !improved {
            return None;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_residual(form: &MorseForm, s: &LevelSetSample) -> f64 {
        s.points
            .iter()
            .map(|p| (form.evaluate_unchecked(p) - s.t).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn hyperbola_branches_cross_the_axes_where_expected() {
        let f = MorseForm::new(2, 1).unwrap();
        let s = sample_level_set(&f, -0.5, 32).unwrap();
        // branches reach x = ±√0.5 at y = 0
        let near_axis: Vec<&[f64]> = s.points.iter().filter(|p| p[1].abs() < 1e-9).collect();
        assert!(!near_axis.is_empty());
        for p in near_axis {
            assert!((p[0].abs() - 0.5f64.sqrt()).abs() < 1e-12);
        }
        assert!(max_residual(&f, &s) <= RESIDUAL);
        assert!(s.points.len() >= 32);

        let s = sample_level_set(&f, 0.25, 32).unwrap();
        let near_axis: Vec<&[f64]> = s.points.iter().filter(|p| p[0].abs() < 1e-9).collect();
        for p in near_axis {
            assert!((p[1].abs() - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn cone_contains_critical_point() {
        for dim in [2usize, 3] {
            let f = MorseForm::new(dim, 1).unwrap();
            let s = sample_level_set(&f, 0.0, 16).unwrap();
            assert!(
                s.points.iter().any(|p| p.iter().all(|&v| v == 0.0)),
                "dim {dim}"
            );
        }
        // general sampler keeps the critical point too
        let f = MorseForm::new(4, 1).unwrap();
        let s = sample_level_set(&f, 0.0, 8).unwrap();
        assert!(s.points.iter().any(|p| p.iter().all(|&v| v == 0.0)));
    }

    #[test]
    fn samples_satisfy_level_equation_and_disc_bound() {
        for (dim, index) in [(2, 1), (3, 1), (3, 2), (4, 1), (4, 2), (5, 2)] {
            let f = MorseForm::new(dim, index).unwrap();
            let res = if dim >= 4 { 8 } else { 16 };
            for t in [-0.5, -0.1, 0.3] {
                let s = sample_level_set(&f, t, res).unwrap();
                assert!(
                    max_residual(&f, &s) <= RESIDUAL,
                    "residual {dim},{index},{t}"
                );
                for p in s.points.iter() {
                    let norm2: f64 = p.iter().map(|v| v * v).sum();
                    assert!(norm2 <= 1.0 + 1e-12, "disc {dim},{index},{t}");
                }
                assert!(!s.points.is_empty());
            }
        }
    }

    #[test]
    fn point_counts_meet_resolution_target() {
        let f = MorseForm::new(3, 1).unwrap();
        for t in [-0.5, 0.0, 0.5] {
            let s = sample_level_set(&f, t, 16).unwrap();
            assert!(s.points.len() >= 16 * 16, "t={t}: {}", s.points.len());
        }
    }

    #[test]
    fn time_reversed_sample_equals_plain_at_minus_t() {
        let f = MorseForm::new(3, 1).unwrap();
        let r = f.reversed();
        let plain = sample_level_set(&f, 0.4, 16).unwrap();
        let dual = sample_level_set(&r, -0.4, 16).unwrap();
        assert_eq!(plain.points, dual.points);
    }

    #[test]
    fn index_zero_sphere_sides() {
        let f = MorseForm::new(3, 0).unwrap();
        assert!(matches!(
            sample_level_set(&f, -0.5, 16),
            Err(MorseError::EmptyLevelSet)
        ));
        let s = sample_level_set(&f, 0.5, 16).unwrap();
        assert!(s.points.len() >= 256);
        assert!(max_residual(&f, &s) <= RESIDUAL);
    }

    #[test]
    fn full_index_rejects_positive_side() {
        // f = −x²−y²−z²: level sets exist only for t ≤ 0
        let f = MorseForm::new(3, 3).unwrap();
        assert!(matches!(
            sample_level_set(&f, 0.5, 16),
            Err(MorseError::EmptyLevelSet)
        ));
        let s = sample_level_set(&f, -0.5, 16).unwrap();
        assert!(max_residual(&f, &s) <= RESIDUAL);
    }

    #[test]
    fn sequence_maps_grid_and_validates() {
        let f = MorseForm::new(2, 1).unwrap();
        let seq = surgery_sequence(&f, &[-0.5, 0.0, 0.5], 16).unwrap();
        assert_eq!(seq.len(), 3);
        assert_eq!(seq[0].t, -0.5);
        assert!(surgery_sequence(&f, &[], 16).unwrap().is_empty());
        assert!(surgery_sequence(&f, &[0.5, -0.5], 16).is_err());
    }

    #[test]
    fn parameter_validation() {
        let f = MorseForm::new(2, 1).unwrap();
        assert!(sample_level_set(&f, 1.5, 16).is_err());
        assert!(sample_level_set(&f, 0.5, 4).is_err());
    }

    #[test]
    fn seeded_sampling_is_reproducible() {
        let f = MorseForm::new(4, 2).unwrap();
        let a = sample_level_set_seeded(&f, 0.3, 8, 7).unwrap();
        let b = sample_level_set_seeded(&f, 0.3, 8, 7).unwrap();
        assert_eq!(a.points, b.points);
        let c = sample_level_set_seeded(&f, 0.3, 8, 8).unwrap();
        assert_ne!(a.points, c.points);
    }
}
