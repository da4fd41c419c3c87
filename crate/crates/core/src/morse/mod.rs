//! Local Morse forms of surgery and their level-set geometry.
//!
//! The local model of an (i−1)-surgery inside an (m+1)-disc is the
//! quadratic form −x₁²−…−xᵢ²+xᵢ₊₁²+…+x²_{m+1} restricted to the closed
//! unit disc. Level sets of this form are the temporal slices of the
//! surgery process; this module evaluates the form and its gradient,
//! samples level sets, counts connected components across the critical
//! value, and provides the stereographic/rotation constructions used to
//! visualize the process one dimension down.

mod components;
mod export;
mod geometry;
mod sample;

pub use components::{count_components, default_link_radius};
pub use export::{to_csv, to_json, to_obj};
pub use geometry::{revolve, stereographic_inverse, stereographic_project};
pub use sample::{sample_level_set, sample_level_set_seeded, surgery_sequence, surgery_sequence_seeded};

use serde::Serialize;

/// Numeric tolerances, kept in one place.
pub mod tolerances {
    /// Every sampled point satisfies |f(x) − t| within this bound.
    pub const RESIDUAL: f64 = 1e-9;
    /// Agreement required between the analytic gradient and central
    /// finite differences on the quadratic forms.
    pub const GRADIENT_CHECK: f64 = 1e-6;
    /// How far a point may sit off the unit sphere and still be
    /// projected.
    pub const SPHERE: f64 = 1e-9;
    /// Exclusion radius around the projection pole.
    pub const POLE_EXCLUSION: f64 = 1e-6;
    /// Projection followed by inverse projection reproduces inputs to
    /// this accuracy.
    pub const ROUND_TRIP: f64 = 1e-9;
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MorseError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("point lies outside the closed unit disc (|x| = {norm})")]
    OutsideDisc { norm: f64 },
    #[error("level set is empty inside the disc")]
    EmptyLevelSet,
    #[error("point too close to the projection pole")]
    PointAtPole,
    #[error("point is not on the unit sphere (|x| = {norm})")]
    NotOnSphere { norm: f64 },
    #[error("bad rotation axis set: {0}")]
    BadAxisSet(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// The local Morse form −Σ_{j≤i} x_j² + Σ_{j>i} x_j² on the closed unit
/// disc of dimension `ambient_dim`, negated when `time_reversed` (the
/// dual surgery runs the process backwards).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MorseForm {
    ambient_dim: usize,
    index: usize,
    time_reversed: bool,
}

impl MorseForm {
    pub fn new(ambient_dim: usize, index: usize) -> Result<Self, MorseError> {
        if ambient_dim == 0 {
            return Err(MorseError::InvalidParameter(
                "ambient dimension must be at least 1".into(),
            ));
        }
        if index > ambient_dim {
            return Err(MorseError::InvalidParameter(format!(
                "index {index} exceeds ambient dimension {ambient_dim}"
            )));
        }
        Ok(MorseForm {
            ambient_dim,
            index,
            time_reversed: false,
        })
    }

    pub fn reversed(mut self) -> Self {
        self.time_reversed = !self.time_reversed;
        self
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn is_time_reversed(&self) -> bool {
        self.time_reversed
    }

    fn check_point(&self, x: &[f64]) -> Result<(), MorseError> {
        if x.len() != self.ambient_dim {
            return Err(MorseError::DimensionMismatch {
                expected: self.ambient_dim,
                got: x.len(),
            });
        }
        let norm2: f64 = x.iter().map(|v| v * v).sum();
        // allow a whisker of rounding on the boundary
        if norm2 > 1.0 + 1e-12 {
            return Err(MorseError::OutsideDisc { norm: norm2.sqrt() });
        }
        Ok(())
    }

    /// Sign of the j-th quadratic term.
    fn term_sign(&self, j: usize) -> f64 {
        let base = if j < self.index { -1.0 } else { 1.0 };
        if self.time_reversed {
            -base
        } else {
            base
        }
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<f64, MorseError> {
        self.check_point(x)?;
        Ok(self.evaluate_unchecked(x))
    }

    pub(crate) fn evaluate_unchecked(&self, x: &[f64]) -> f64 {
        x.iter()
            .enumerate()
            .map(|(j, v)| self.term_sign(j) * v * v)
            .sum()
    }

    /// ∇f = (∓2x₁, …): component j is −2x_j for j ≤ i and +2x_j beyond,
    /// flipped under time reversal.
    pub fn gradient(&self, x: &[f64]) -> Result<Vec<f64>, MorseError> {
        self.check_point(x)?;
        Ok(self.gradient_unchecked(x))
    }

    pub(crate) fn gradient_unchecked(&self, x: &[f64]) -> Vec<f64> {
        self.gradient_iter(x).collect()
    }

    pub(crate) fn gradient_iter<'a>(&'a self, x: &'a [f64]) -> impl Iterator<Item = f64> + 'a {
        // + 0.0 normalizes the sign of zero components
        x.iter()
            .enumerate()
            .map(|(j, v)| 2.0 * self.term_sign(j) * v + 0.0)
    }

    /// Diagonal of the (constant) Hessian: ∓2 per coordinate.
    pub fn hessian_diagonal(&self) -> Vec<f64> {
        (0..self.ambient_dim).map(|j| 2.0 * self.term_sign(j)).collect()
    }

    /// Morse index at the critical point: the number of negative
    /// eigenvalues of the Hessian, counted from the diagonal rather than
    /// read off the stored index field.
    pub fn hessian_index(&self) -> usize {
        self.hessian_diagonal()
            .iter()
            .filter(|&&v| v < 0.0)
            .count()
    }

    /// Maximum componentwise difference between the analytic gradient and
    /// a central finite difference with step `h`. The forms are
    /// quadratic, so this is rounding-level for any sane `h`.
    pub fn gradient_check(&self, x: &[f64], h: f64) -> Result<f64, MorseError> {
        if !(h > 0.0 && h < 1e-3) {
            return Err(MorseError::InvalidParameter(format!(
                "step h must lie in (0, 1e-3), got {h}"
            )));
        }
        self.check_point(x)?;
        let norm: f64 = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm + h > 1.0 {
            return Err(MorseError::OutsideDisc { norm: norm + h });
        }
        let analytic = self.gradient_unchecked(x);
        let mut worst: f64 = 0.0;
        let mut probe = x.to_vec();
        for j in 0..self.ambient_dim {
            probe[j] = x[j] + h;
            let plus = self.evaluate_unchecked(&probe);
            probe[j] = x[j] - h;
            let minus = self.evaluate_unchecked(&probe);
            probe[j] = x[j];
            let numeric = (plus - minus) / (2.0 * h);
            worst = worst.max((numeric - analytic[j]).abs());
        }
        Ok(worst)
    }
}

/// A finite set of points in a common dimension, stored flat.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    dim: usize,
    coords: Vec<f64>,
}

impl PointCloud {
    pub fn new(dim: usize) -> Self {
        PointCloud {
            dim,
            coords: Vec::new(),
        }
    }

    pub fn from_points(dim: usize, points: &[Vec<f64>]) -> Result<Self, MorseError> {
        let mut cloud = PointCloud::new(dim);
        for p in points {
            cloud.push(p)?;
        }
        Ok(cloud)
    }

    pub fn push(&mut self, point: &[f64]) -> Result<(), MorseError> {
        if point.len() != self.dim {
            return Err(MorseError::DimensionMismatch {
                expected: self.dim,
                got: point.len(),
            });
        }
        if point.iter().any(|v| !v.is_finite()) {
            return Err(MorseError::InvalidParameter(
                "point coordinates must be finite".into(),
            ));
        }
        self.coords.extend_from_slice(point);
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        if self.dim == 0 {
            0
        } else {
            self.coords.len() / self.dim
        }
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks_exact(self.dim.max(1))
    }
}

/// Points sampled from one level set f⁻¹(t) inside the unit disc.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelSetSample {
    pub t: f64,
    pub points: PointCloud,
    pub residual_tol: f64,
}

#[derive(Serialize)]
pub(crate) struct SampleJson {
    pub points: Vec<Vec<f64>>,
    pub residual_tol: f64,
    pub t: f64,
}
