//! Stereographic projection and surface-of-revolution constructions.

use super::tolerances::{POLE_EXCLUSION, SPHERE};
use super::{MorseError, PointCloud};

/// Householder frame taking the pole to the last coordinate axis; its own
/// inverse. Near-identity poles use the identity directly.
struct PoleFrame {
    v: Option<Vec<f64>>, // reflection vector, None = identity
}

impl PoleFrame {
    fn new(pole: &[f64]) -> Self {
        let dim = pole.len();
        let mut v: Vec<f64> = pole.to_vec();
        v[dim - 1] -= 1.0; // pole − e_last
        let norm2: f64 = v.iter().map(|x| x * x).sum();
        if norm2 < 1e-24 {
            PoleFrame { v: None }
        } else {
            PoleFrame { v: Some(v) }
        }
    }

    fn apply(&self, x: &[f64]) -> Vec<f64> {
        match &self.v {
            None => x.to_vec(),
            Some(v) => {
                let norm2: f64 = v.iter().map(|a| a * a).sum();
                let dot: f64 = v.iter().zip(x).map(|(a, b)| a * b).sum();
                let scale = 2.0 * dot / norm2;
                x.iter().zip(v).map(|(xi, vi)| xi - scale * vi).collect()
            }
        }
    }
}

fn unit_pole(pole: &[f64]) -> Result<Vec<f64>, MorseError> {
    let norm: f64 = pole.iter().map(|v| v * v).sum::<f64>().sqrt();
    if !(norm > 0.0) || !norm.is_finite() {
        return Err(MorseError::InvalidParameter(
            "projection pole must be a nonzero vector".into(),
        ));
    }
    Ok(pole.iter().map(|v| v / norm).collect())
}

/// Stereographic projection of points on the unit sphere S^m from the
/// given pole onto the equatorial hyperplane through the origin,
/// expressed in an orthonormal frame of that hyperplane. Points must lie
/// on the sphere to within [`SPHERE`] and keep at least
/// [`POLE_EXCLUSION`] distance from the pole.
pub fn stereographic_project(
    cloud: &PointCloud,
    pole: &[f64],
) -> Result<PointCloud, MorseError> {
    let dim = cloud.dim();
    if pole.len() != dim {
        return Err(MorseError::DimensionMismatch {
            expected: dim,
            got: pole.len(),
        });
    }
    if dim < 2 {
        return Err(MorseError::InvalidParameter(
            "projection needs ambient dimension at least 2".into(),
        ));
    }
    let pole = unit_pole(pole)?;
    let frame = PoleFrame::new(&pole);
    let mut out = PointCloud::new(dim - 1);
    for p in cloud.iter() {
        let norm: f64 = p.iter().map(|v| v * v).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > SPHERE {
            return Err(MorseError::NotOnSphere { norm });
        }
        let dist2: f64 = p.iter().zip(&pole).map(|(a, b)| (a - b) * (a - b)).sum();
        if dist2.sqrt() < POLE_EXCLUSION {
            return Err(MorseError::PointAtPole);
        }
        let y = frame.apply(p);
        let denom = 1.0 - y[dim - 1];
        let projected: Vec<f64> = y[..dim - 1].iter().map(|v| v / denom).collect();
        out.push(&projected)?;
    }
    Ok(out)
}

/// Inverse of [`stereographic_project`]: lifts points of R^m back to the
/// unit sphere S^m ⊂ R^(m+1).
pub fn stereographic_inverse(
    cloud: &PointCloud,
    pole: &[f64],
) -> Result<PointCloud, MorseError> {
    let m = cloud.dim();
    if pole.len() != m + 1 {
        return Err(MorseError::DimensionMismatch {
            expected: m + 1,
            got: pole.len(),
        });
    }
    let pole = unit_pole(pole)?;
    let frame = PoleFrame::new(&pole);
    let mut out = PointCloud::new(m + 1);
    for u in cloud.iter() {
        let s: f64 = u.iter().map(|v| v * v).sum();
        let mut y: Vec<f64> = u.iter().map(|v| 2.0 * v / (s + 1.0)).collect();
        y.push((s - 1.0) / (s + 1.0));
        out.push(&frame.apply(&y))?;
    }
    Ok(out)
}

/// Surface of revolution: rotates the single coordinate not listed in
/// `fixed_axes` into a fresh final coordinate. Each input point yields
/// `steps` copies at angles spread over a half turn (quadric level sets
/// are symmetric, so a half turn covers the surface without duplicates);
/// `full_turn` spreads them over 2π instead. A nonzero `twist` adds a
/// rotation offset growing linearly with the first fixed coordinate,
/// from 0 at −1 to the full twist at +1.
pub fn revolve(
    cloud: &PointCloud,
    fixed_axes: &[usize],
    steps: usize,
    twist: f64,
    full_turn: bool,
) -> Result<PointCloud, MorseError> {
    let dim = cloud.dim();
    if steps < 3 {
        return Err(MorseError::InvalidParameter(format!(
            "steps must be at least 3, got {steps}"
        )));
    }
    let mut fixed = fixed_axes.to_vec();
    fixed.sort_unstable();
    fixed.dedup();
    if fixed.len() != fixed_axes.len() {
        return Err(MorseError::BadAxisSet("duplicate axis indices".into()));
    }
    if fixed.iter().any(|&a| a >= dim) {
        return Err(MorseError::BadAxisSet(format!(
            "axis index out of range for dimension {dim}"
        )));
    }
    let rotating: Vec<usize> = (0..dim).filter(|d| !fixed.contains(d)).collect();
    let [rotating] = rotating.as_slice() else {
        return Err(MorseError::BadAxisSet(format!(
            "exactly one coordinate must rotate; fixed axes leave {} free",
            rotating.len()
        )));
    };
    let rotating = *rotating;
    let twist_axis = fixed.first().copied();
    if twist != 0.0 && twist_axis.is_none() {
        return Err(MorseError::BadAxisSet(
            "twisting needs a fixed axis to grade along".into(),
        ));
    }

    let span = if full_turn {
        2.0 * std::f64::consts::PI
    } else {
        std::f64::consts::PI
    };
    let mut out = PointCloud::new(dim + 1);
    let mut rotated = vec![0.0; dim + 1];
    for p in cloud.iter() {
        let offset = match twist_axis {
            Some(axis) if twist != 0.0 => twist * (p[axis] + 1.0) / 2.0,
            _ => 0.0,
        };
        for k in 0..steps {
            let theta = span * k as f64 / steps as f64 + offset;
            rotated[..dim].copy_from_slice(p);
            rotated[rotating] = p[rotating] * theta.cos();
            rotated[dim] = p[rotating] * theta.sin();
            out.push(&rotated)?;
        }
    }
    Ok(out)
}
