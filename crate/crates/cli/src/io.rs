//! Input reading and format auto-detection.

use crate::CliError;
use std::io::Read;
use surgery_core::group::Presentation;
use surgery_core::knot::{parse_gauss, parse_pd, KnotDiagram};
use surgery_core::morse::PointCloud;

/// Reads a file, or stdin when the path is absent or `-`.
pub fn read_input(path: Option<&str>) -> Result<String, CliError> {
    match path {
        Some(p) if p != "-" => std::fs::read_to_string(p)
            .map_err(|e| CliError::input(format!("cannot read {p}: {e}"))),
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::input(format!("cannot read stdin: {e}")))?;
            Ok(buf)
        }
    }
}

/// Accepts a diagram in any supported format: JSON (starts with `{`),
/// PD code (tuples `X(...)`), or signed Gauss code. Empty input is the
/// unknot.
pub fn parse_diagram(text: &str) -> Result<KnotDiagram, CliError> {
    let trimmed = text.trim();
    let result = if trimmed.starts_with('{') {
        KnotDiagram::from_json(trimmed)
    } else if trimmed.starts_with('X') || trimmed.starts_with('x') {
        parse_pd(trimmed)
    } else {
        parse_gauss(trimmed)
    };
    result.map_err(|e| CliError::input(e.to_string()))
}

/// Accepts a presentation in the text format (`gens: ... ; rels: ...`)
/// or its JSON mirror.
pub fn parse_presentation(text: &str) -> Result<Presentation, CliError> {
    let trimmed = text.trim();
    let result = if trimmed.starts_with('{') {
        Presentation::from_json(trimmed)
    } else {
        Presentation::parse(trimmed)
    };
    result.map_err(|e| CliError::input(e.to_string()))
}

/// Reads a point cloud from CSV: one point per row, optional header.
/// A leading `t` column (as written by the level-set CSV export) is
/// dropped so exports pipe straight back in.
pub fn parse_cloud_csv(text: &str) -> Result<PointCloud, CliError> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut drop_first = false;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if rows.is_empty() && fields[0].parse::<f64>().is_err() {
            // header row; remember whether it carries a level column
            drop_first = fields[0] == "t";
            continue;
        }
        let start = usize::from(drop_first);
        let row: Result<Vec<f64>, _> = fields[start..]
            .iter()
            .map(|f| f.parse::<f64>())
            .collect();
        let row = row.map_err(|_| {
            CliError::input(format!("line {}: not a numeric row", lineno + 1))
        })?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(CliError::input("empty point cloud"));
    }
    let dim = rows[0].len();
    PointCloud::from_points(dim, &rows).map_err(|e| CliError::input(e.to_string()))
}

/// CSV with an `x0,x1,...` header, matching what the cloud commands read.
pub fn render_cloud_csv(cloud: &PointCloud) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let header: Vec<String> = (0..cloud.dim()).map(|d| format!("x{d}")).collect();
    out.push_str(&header.join(","));
    out.push('\n');
    for p in cloud.iter() {
        let row: Vec<String> = p.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", row.join(","));
    }
    out
}
