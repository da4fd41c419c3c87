//! Reidemeister moves on knot diagrams.
//!
//! Moves are checked for applicability at the named site and return a
//! freshly validated diagram. Arc and crossing labels of the result are
//! renumbered in traversal order, so identity of individual arcs is not
//! preserved across a move; invariants of the underlying knot are.

use super::gauss::assemble_indexed;
use super::{Crossing, KnotDiagram, KnotError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReidemeisterMove {
    /// Add a curl of the given sign on an arc. Changes writhe by ±1.
    R1Add { arc: usize, sign: i8 },
    /// Remove a curl crossing (one whose over-arc adjoins its own
    /// underpass).
    R1Remove { crossing: usize },
    /// Slide `over_arc` across `under_arc`, adding a cancelling pair of
    /// crossings. Writhe is unchanged.
    R2Add { over_arc: usize, under_arc: usize },
    /// Remove a cancelling pair created by an R2 configuration.
    R2Remove { c1: usize, c2: usize },
    /// Triangle move: slide the strand passing over two of the crossings
    /// across the third. Writhe is unchanged.
    R3 { c1: usize, c2: usize, c3: usize },
}

pub fn apply_move(d: &KnotDiagram, mv: &ReidemeisterMove) -> Result<KnotDiagram, KnotError> {
    match *mv {
        ReidemeisterMove::R1Add { arc, sign } => r1_add(d, arc, sign),
        ReidemeisterMove::R1Remove { crossing } => r1_remove(d, crossing),
        ReidemeisterMove::R2Add { over_arc, under_arc } => r2_add(d, over_arc, under_arc),
        ReidemeisterMove::R2Remove { c1, c2 } => r2_remove(d, c1, c2),
        ReidemeisterMove::R3 { c1, c2, c3 } => r3(d, c1, c2, c3),
    }
}

/// Flat passage list (crossing, is_under, sign) in traversal order from
/// arc 0, suitable for token surgery and reassembly.
fn tokens_of(d: &KnotDiagram) -> Vec<(usize, bool, i8)> {
    d.passes_from(0)
        .into_iter()
        .map(|(ci, under)| (ci, under, d.crossings()[ci].sign))
        .collect()
}

/// Index of the underpass token that closes the given arc.
fn closing_under_pos(d: &KnotDiagram, tokens: &[(usize, bool, i8)], arc: usize) -> usize {
    let (ci, _) = d.crossing_ending_arc(arc).expect("valid diagram");
    tokens
        .iter()
        .position(|&(c, under, _)| c == ci && under)
        .expect("underpass present")
}

fn check_arc(d: &KnotDiagram, arc: usize) -> Result<(), KnotError> {
    if arc >= d.arc_count() {
        return Err(KnotError::MoveNotApplicable(format!(
            "arc {arc} out of range"
        )));
    }
    Ok(())
}

fn r1_add(d: &KnotDiagram, arc: usize, sign: i8) -> Result<KnotDiagram, KnotError> {
    check_arc(d, arc)?;
    if sign != 1 && sign != -1 {
        return Err(KnotError::MoveNotApplicable("curl sign must be ±1".into()));
    }
    let fresh = d.crossing_count();
    let mut tokens = tokens_of(d);
    let pos = if tokens.is_empty() {
        0
    } else {
        closing_under_pos(d, &tokens, arc)
    };
    tokens.splice(pos..pos, [(fresh, true, sign), (fresh, false, sign)]);
    assemble_indexed(&tokens)
}

fn r2_add(d: &KnotDiagram, over_arc: usize, under_arc: usize) -> Result<KnotDiagram, KnotError> {
    check_arc(d, over_arc)?;
    check_arc(d, under_arc)?;
    if d.crossing_count() == 0 {
        // Only one arc exists: slide it over itself.
        let x = 0;
        let y = 1;
        return assemble_indexed(&[
            (x, false, 1),
            (y, false, -1),
            (x, true, 1),
            (y, true, -1),
        ]);
    }
    let x = d.crossing_count();
    let y = x + 1;
    let mut tokens = tokens_of(d);
    let over_pos = closing_under_pos(d, &tokens, over_arc);
    let under_pos = closing_under_pos(d, &tokens, under_arc);
    if over_arc == under_arc {
        tokens.splice(
            over_pos..over_pos,
            [(x, false, 1), (y, false, -1), (x, true, 1), (y, true, -1)],
        );
    } else {
        // Insert at the later position first so the earlier index stays valid.
        let over_ins = [(x, false, 1), (y, false, -1)];
        let under_ins = [(x, true, 1), (y, true, -1)];
        if over_pos > under_pos {
            tokens.splice(over_pos..over_pos, over_ins);
            tokens.splice(under_pos..under_pos, under_ins);
        } else {
            tokens.splice(under_pos..under_pos, under_ins);
            tokens.splice(over_pos..over_pos, over_ins);
        }
    }
    assemble_indexed(&tokens)
}

fn r1_remove(d: &KnotDiagram, crossing: usize) -> Result<KnotDiagram, KnotError> {
    let c = *d
        .crossings()
        .get(crossing)
        .ok_or_else(|| KnotError::MoveNotApplicable(format!("no crossing {crossing}")))?;
    if c.over != c.under_in && c.over != c.under_out {
        return Err(KnotError::MoveNotApplicable(format!(
            "crossing {crossing} is not a curl"
        )));
    }
    if d.crossing_count() == 1 {
        return Ok(KnotDiagram::unknot());
    }
    // Merge the outgoing arc into the incoming one and drop the crossing.
    let keep = c.under_in;
    let gone = c.under_out;
    let crossings = remap_without(d, &[crossing], &[(gone, keep)]);
    KnotDiagram::new(crossings, d.arc_count() - 1)
}

fn r2_remove(d: &KnotDiagram, c1: usize, c2: usize) -> Result<KnotDiagram, KnotError> {
    for idx in [c1, c2] {
        if idx >= d.crossing_count() {
            return Err(KnotError::MoveNotApplicable(format!("no crossing {idx}")));
        }
    }
    if c1 == c2 {
        return Err(KnotError::MoveNotApplicable(
            "R2 removal needs two distinct crossings".into(),
        ));
    }
    let chain = |first: usize, second: usize| -> Option<(usize, usize, usize)> {
        let f = d.crossings()[first];
        let s = d.crossings()[second];
        let mid = f.under_out;
        let cancelling = f.sign == -s.sign && f.over == s.over && mid == s.under_in;
        let mid_clear = d.crossings().iter().all(|c| c.over != mid);
        (cancelling && mid_clear).then_some((f.under_in, mid, s.under_out))
    };
    let Some((a, mid, b)) = chain(c1, c2).or_else(|| chain(c2, c1)) else {
        return Err(KnotError::MoveNotApplicable(
            "crossings do not form a cancelling pair".into(),
        ));
    };
    if d.crossing_count() == 2 {
        return Ok(KnotDiagram::unknot());
    }
    let crossings = remap_without(d, &[c1, c2], &[(mid, a), (b, a)]);
    KnotDiagram::new(crossings, d.arc_count() - 2)
}

/// Drops the given crossings, redirects arcs per `merges` (old → new),
/// and compacts arc ids to a contiguous range.
fn remap_without(
    d: &KnotDiagram,
    drop: &[usize],
    merges: &[(usize, usize)],
) -> Vec<Crossing> {
    let merged = |arc: usize| -> usize {
        merges
            .iter()
            .find(|(old, _)| *old == arc)
            .map(|&(_, new)| new)
            .unwrap_or(arc)
    };
    let mut removed: Vec<usize> = merges.iter().map(|&(old, _)| old).collect();
    removed.sort_unstable();
    let compact = |arc: usize| -> usize { arc - removed.iter().filter(|&&r| r < arc).count() };
    d.crossings()
        .iter()
        .enumerate()
        .filter(|(i, _)| !drop.contains(i))
        .map(|(_, c)| Crossing {
            over: compact(merged(c.over)),
            sign: c.sign,
            under_in: compact(merged(c.under_in)),
            under_out: compact(merged(c.under_out)),
        })
        .collect()
}

fn r3(d: &KnotDiagram, c1: usize, c2: usize, c3: usize) -> Result<KnotDiagram, KnotError> {
    for idx in [c1, c2, c3] {
        if idx >= d.crossing_count() {
            return Err(KnotError::MoveNotApplicable(format!("no crossing {idx}")));
        }
    }
    if c1 == c2 || c2 == c3 || c1 == c3 {
        return Err(KnotError::MoveNotApplicable(
            "R3 needs three distinct crossings".into(),
        ));
    }
    // Try every assignment of the roles: tm and tb share the top strand
    // (passing over both), mb is the crossing of the two lower strands.
    let perms = [
        (c1, c2, c3),
        (c1, c3, c2),
        (c2, c1, c3),
        (c2, c3, c1),
        (c3, c1, c2),
        (c3, c2, c1),
    ];
    for (tm, tb, mb) in perms {
        let ctm = d.crossings()[tm];
        let ctb = d.crossings()[tb];
        let cmb = d.crossings()[mb];
        if ctm.over != ctb.over {
            continue;
        }
        let no_overs = |arc: usize| d.crossings().iter().all(|c| c.over != arc);
        // The middle strand's overpass on mb sits just after (or before)
        // its underpass at tm; which side, combined with the relative
        // signs of the two top crossings, fixes the slide. The strand
        // under both tb and mb must run through an empty middle arc.
        //
        // Bottom chain runs tb → mb: slide mb in front of tb.
        if ctb.under_out == cmb.under_in && no_overs(ctb.under_out) {
            let new_over = if ctm.sign == ctb.sign && cmb.over == ctm.under_out {
                Some(ctm.under_in)
            } else if ctm.sign == -ctb.sign && cmb.over == ctm.under_in {
                Some(ctm.under_out)
            } else {
                None
            };
            if let Some(over) = new_over {
                let (b_in, mid, b_out) = (ctb.under_in, ctb.under_out, cmb.under_out);
                let mut crossings = d.crossings().to_vec();
                crossings[mb].over = over;
                crossings[mb].under_in = b_in;
                crossings[mb].under_out = mid;
                crossings[tb].under_in = mid;
                crossings[tb].under_out = b_out;
                if let Ok(new) = KnotDiagram::new(crossings, d.arc_count()) {
                    return Ok(new);
                }
            }
        }
        // Bottom chain runs mb → tb: slide mb behind tb.
        if cmb.under_out == ctb.under_in && no_overs(cmb.under_out) {
            let new_over = if ctm.sign == ctb.sign && cmb.over == ctm.under_in {
                Some(ctm.under_out)
            } else if ctm.sign == -ctb.sign && cmb.over == ctm.under_out {
                Some(ctm.under_in)
            } else {
                None
            };
            if let Some(over) = new_over {
                let (b_in, mid, b_out) = (cmb.under_in, cmb.under_out, ctb.under_out);
                let mut crossings = d.crossings().to_vec();
                crossings[mb].over = over;
                crossings[tb].under_in = b_in;
                crossings[tb].under_out = mid;
                crossings[mb].under_in = mid;
                crossings[mb].under_out = b_out;
                if let Ok(new) = KnotDiagram::new(crossings, d.arc_count()) {
                    return Ok(new);
                }
            }
        }
    }
    Err(KnotError::MoveNotApplicable(
        "no R3 triangle at these crossings".into(),
    ))
}
