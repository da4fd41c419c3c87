//! Deterministic text exports for level-set samples: CSV, OBJ, JSON.

use super::{LevelSetSample, MorseError, SampleJson};
use std::fmt::Write;

/// CSV with a `t` column and one point per row. Floats use the shortest
/// round-trip representation, so output is byte-stable.
pub fn to_csv(samples: &[LevelSetSample]) -> String {
    let dim = samples.first().map_or(0, |s| s.points.dim());
    let mut out = String::new();
    out.push('t');
    for d in 0..dim {
        let _ = write!(out, ",x{d}");
    }
    out.push('\n');
    for s in samples {
        for p in s.points.iter() {
            let _ = write!(out, "{}", s.t);
            for v in p {
                let _ = write!(out, ",{v}");
            }
            out.push('\n');
        }
    }
    out
}

/// Wavefront OBJ vertices, one sample after another with a comment line
/// carrying the level value. Points of dimension below 3 are zero-padded;
/// above 3 there is no faithful OBJ embedding.
pub fn to_obj(samples: &[LevelSetSample]) -> Result<String, MorseError> {
    let mut out = String::new();
    for s in samples {
        if s.points.dim() > 3 {
            return Err(MorseError::InvalidParameter(format!(
                "OBJ export supports dimension <= 3, got {}",
                s.points.dim()
            )));
        }
        let _ = writeln!(out, "# t = {}", s.t);
        for p in s.points.iter() {
            let mut coords = [0.0f64; 3];
            coords[..p.len()].copy_from_slice(p);
            let _ = writeln!(out, "v {} {} {}", coords[0], coords[1], coords[2]);
        }
    }
    Ok(out)
}

/// JSON array of samples (single samples serialize as a one-element
/// array by the CLI's convention of always exporting sequences).
pub fn to_json(samples: &[LevelSetSample]) -> String {
    let docs: Vec<SampleJson> = samples
        .iter()
        .map(|s| SampleJson {
            points: s.points.iter().map(|p| p.to_vec()).collect(),
            residual_tol: s.residual_tol,
            t: s.t,
        })
        .collect();
    serde_json::to_string(&docs).expect("samples serialize")
}
