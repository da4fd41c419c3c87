//! Oriented knot diagrams as combinatorial crossing data.
//!
//! A diagram with n ≥ 1 crossings has exactly n arcs, labeled
//! `0..n-1` in traversal order starting from the arc that follows the
//! first undercrossing passage. Each crossing records its sign, the arc
//! passing over, and the incoming/outgoing undercrossing arcs. The
//! 0-crossing unknot is the single diagram with one arc.

mod gauss;
mod moves;
mod pd;

pub use gauss::parse_gauss;
pub use moves::{apply_move, ReidemeisterMove};
pub use pd::parse_pd;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KnotError {
    #[error("malformed token: {0}")]
    MalformedToken(String),
    #[error("inconsistent code: {0}")]
    InconsistentCode(String),
    #[error("malformed tuple: {0}")]
    MalformedTuple(String),
    #[error("orientation inconsistent: {0}")]
    OrientationInconsistent(String),
    #[error("move not applicable: {0}")]
    MoveNotApplicable(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
}

/// One crossing of an oriented diagram. `sign` follows the writhe
/// convention: rotating the over-arc direction counterclockwise onto the
/// under-arc direction means +1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    pub over: usize,
    pub sign: i8,
    pub under_in: usize,
    pub under_out: usize,
}

/// An oriented knot diagram. Construction validates the combinatorial
/// invariants, so every live value is a plausible single-component
/// diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotDiagram {
    crossings: Vec<Crossing>,
    arc_count: usize,
    arc_order: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct DiagramJson {
    arcs: usize,
    crossings: Vec<Crossing>,
}

impl KnotDiagram {
    /// The 0-crossing unknot: one arc, no crossings.
    pub fn unknot() -> Self {
        KnotDiagram {
            crossings: Vec::new(),
            arc_count: 1,
            arc_order: vec![0],
        }
    }

    pub fn new(crossings: Vec<Crossing>, arc_count: usize) -> Result<Self, KnotError> {
        let n = crossings.len();
        if n == 0 {
            if arc_count != 1 {
                return Err(KnotError::InvalidDiagram(
                    "a 0-crossing diagram has exactly one arc".into(),
                ));
            }
            return Ok(KnotDiagram::unknot());
        }
        if arc_count != n {
            return Err(KnotError::InvalidDiagram(format!(
                "expected {n} arcs for {n} crossings, got {arc_count}"
            )));
        }
        let mut seen_in = vec![false; n];
        let mut seen_out = vec![false; n];
        let mut successor = vec![usize::MAX; n];
        for c in &crossings {
            if c.sign != 1 && c.sign != -1 {
                return Err(KnotError::InvalidDiagram(format!(
                    "crossing sign must be ±1, got {}",
                    c.sign
                )));
            }
            for arc in [c.over, c.under_in, c.under_out] {
                if arc >= arc_count {
                    return Err(KnotError::InvalidDiagram(format!(
                        "arc id {arc} out of range"
                    )));
                }
            }
            if n >= 2 && c.under_in == c.under_out {
                return Err(KnotError::InvalidDiagram(
                    "under_in equals under_out in a multi-crossing diagram".into(),
                ));
            }
            if std::mem::replace(&mut seen_in[c.under_in], true) {
                return Err(KnotError::InvalidDiagram(format!(
                    "arc {} ends at two undercrossings",
                    c.under_in
                )));
            }
            if std::mem::replace(&mut seen_out[c.under_out], true) {
                return Err(KnotError::InvalidDiagram(format!(
                    "arc {} starts at two undercrossings",
                    c.under_out
                )));
            }
            successor[c.under_in] = c.under_out;
        }
        // Walk the successor cycle from arc 0; a knot visits every arc once.
        let mut arc_order = Vec::with_capacity(n);
        let mut arc = 0usize;
        for _ in 0..n {
            arc_order.push(arc);
            arc = successor[arc];
        }
        if arc != 0 || {
            let mut sorted = arc_order.clone();
            sorted.sort_unstable();
            sorted != (0..n).collect::<Vec<_>>()
        } {
            return Err(KnotError::InvalidDiagram(
                "arcs do not form a single traversal cycle".into(),
            ));
        }
        Ok(KnotDiagram {
            crossings,
            arc_count,
            arc_order,
        })
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    /// Cyclic arc sequence in traversal order, starting at arc 0.
    pub fn arc_order(&self) -> &[usize] {
        &self.arc_order
    }

    /// Total number of positive crossings minus negative crossings; the
    /// blackboard framing number of the diagram.
    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    /// The crossing at whose underpass the given arc ends.
    pub fn crossing_ending_arc(&self, arc: usize) -> Option<(usize, &Crossing)> {
        self.crossings
            .iter()
            .enumerate()
            .find(|(_, c)| c.under_in == arc)
    }

    /// The crossing at whose underpass the given arc starts.
    pub fn crossing_starting_arc(&self, arc: usize) -> Option<(usize, &Crossing)> {
        self.crossings
            .iter()
            .enumerate()
            .find(|(_, c)| c.under_out == arc)
    }

    /// Token sequence of the diagram as (crossing index, is_under) pairs,
    /// traversing arcs from `arc_order[start]`. Each arc contributes its
    /// opening underpass token followed by its overpass tokens; overpass
    /// order within an arc is normalized deterministically (by traversal
    /// position of the crossing's outgoing under-arc).
    pub(crate) fn passes_from(&self, start: usize) -> Vec<(usize, bool)> {
        let n = self.crossing_count();
        if n == 0 {
            return Vec::new();
        }
        let mut pos = vec![0usize; self.arc_count];
        for (i, &a) in self.arc_order.iter().enumerate() {
            pos[a] = (i + n - start) % n;
        }
        let mut toks = Vec::with_capacity(2 * n);
        for i in 0..n {
            let arc = self.arc_order[(start + i) % n];
            let (ci, _) = self.crossing_starting_arc(arc).expect("validated");
            toks.push((ci, true));
            let mut overs: Vec<usize> = (0..n).filter(|&j| self.crossings[j].over == arc).collect();
            overs.sort_by_key(|&j| pos[self.crossings[j].under_out]);
            for j in overs {
                toks.push((j, false));
            }
        }
        toks
    }

    fn render_code(&self, start: usize) -> String {
        let mut label = vec![0usize; self.crossing_count()];
        let mut next = 1usize;
        let mut out = Vec::new();
        for (ci, is_under) in self.passes_from(start) {
            if label[ci] == 0 {
                label[ci] = next;
                next += 1;
            }
            let kind = if is_under { 'U' } else { 'O' };
            let sgn = if self.crossings[ci].sign > 0 { '+' } else { '-' };
            out.push(format!("{}{}{}", kind, label[ci], sgn));
        }
        out.join(",")
    }

    /// Canonical signed Gauss code: lexicographically least rendering over
    /// every choice of starting arc, with crossings relabeled 1.. in order
    /// of first appearance. The unknot serializes to the empty string.
    pub fn canonical_gauss(&self) -> String {
        if self.crossing_count() == 0 {
            return String::new();
        }
        (0..self.crossing_count())
            .map(|s| self.render_code(s))
            .min()
            .expect("at least one rotation")
    }

    /// Byte-stable JSON form:
    /// `{"arcs":n,"crossings":[{"over":..,"sign":..,"under_in":..,"under_out":..}]}`.
    pub fn to_json(&self) -> String {
        let doc = DiagramJson {
            arcs: self.arc_count,
            crossings: self.crossings.clone(),
        };
        serde_json::to_string(&doc).expect("diagram serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, KnotError> {
        let doc: DiagramJson = serde_json::from_str(text)
            .map_err(|e| KnotError::InvalidDiagram(e.to_string()))?;
        KnotDiagram::new(doc.crossings, doc.arcs)
    }
}
