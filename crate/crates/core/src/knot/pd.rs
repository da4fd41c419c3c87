//! Planar-diagram code parsing.
//!
//! A PD code is a list of crossing tuples `X(a,b,c,d)` whose entries are
//! edge labels read counterclockwise starting from the incoming
//! under-strand: `a` is the incoming under-edge and `c` the outgoing one,
//! while `b` and `d` carry the over-strand. The over-strand orientation
//! is recovered globally; a crossing whose over-strand runs b→d is
//! positive, d→b negative. Edge labels are arbitrary positive integers,
//! each appearing exactly twice.

use super::{Crossing, KnotDiagram, KnotError};
use std::collections::HashMap;

#[derive(Debug, Clone, Copy)]
struct Tuple {
    a: u64,
    b: u64,
    c: u64,
    d: u64,
}

/// Where an edge label occurs: which tuple, and in which slot.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Slot {
    UnderIn,
    UnderOut,
    OverB,
    OverD,
}

fn parse_tuple(text: &str) -> Result<Tuple, KnotError> {
    let bad = || KnotError::MalformedTuple(text.to_string());
    let body = text
        .trim()
        .strip_prefix(['X', 'x'])
        .ok_or_else(bad)?
        .trim();
    let inner = body
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .or_else(|| body.strip_prefix('[').and_then(|s| s.strip_suffix(']')))
        .ok_or_else(bad)?;
    let parts: Vec<u64> = inner
        .split(',')
        .map(|p| p.trim().parse::<u64>())
        .collect::<Result<_, _>>()
        .map_err(|_| bad())?;
    match parts.as_slice() {
        [a, b, c, d] => Ok(Tuple {
            a: *a,
            b: *b,
            c: *c,
            d: *d,
        }),
        _ => Err(bad()),
    }
}

/// Splits `X(..),X(..)` respecting parentheses/brackets.
fn split_tuples(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    for ch in text.chars() {
        match ch {
            '(' | '[' => {
                depth += 1;
                current.push(ch);
            }
            ')' | ']' => {
                depth = depth.saturating_sub(1);
                current.push(ch);
            }
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut current));
            }
            _ => current.push(ch),
        }
    }
    if !current.trim().is_empty() {
        out.push(current);
    }
    out.into_iter()
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

pub fn parse_pd(text: &str) -> Result<KnotDiagram, KnotError> {
    if text.trim().is_empty() {
        return Ok(KnotDiagram::unknot());
    }
    let tuples: Vec<Tuple> = split_tuples(text)
        .iter()
        .map(|s| parse_tuple(s))
        .collect::<Result<_, _>>()?;
    let n = tuples.len();

    // Occurrences of each edge label.
    let mut occ: HashMap<u64, Vec<(usize, Slot)>> = HashMap::new();
    for (i, t) in tuples.iter().enumerate() {
        occ.entry(t.a).or_default().push((i, Slot::UnderIn));
        occ.entry(t.b).or_default().push((i, Slot::OverB));
        occ.entry(t.c).or_default().push((i, Slot::UnderOut));
        occ.entry(t.d).or_default().push((i, Slot::OverD));
    }
    for (edge, slots) in &occ {
        if slots.len() != 2 {
            return Err(KnotError::OrientationInconsistent(format!(
                "edge {edge} appears {} times (expected 2)",
                slots.len()
            )));
        }
    }

    // Solve for the over-strand direction of each tuple: dir[i] = true
    // means the over-strand runs b→d. Each edge needs exactly one
    // incoming and one outgoing endpoint; under slots are fixed, over
    // slots depend on dir. Propagate like a 2-coloring.
    //
    // incoming(UnderIn) = true, incoming(UnderOut) = false,
    // incoming(OverB) = dir, incoming(OverD) = !dir.
    let mut dir: Vec<Option<bool>> = vec![None; n];
    let mut queue: Vec<usize> = Vec::new();
    // Relations between two over slots, indexed by tuple: (other, equal)
    let mut links: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];

    let force = |dir: &mut Vec<Option<bool>>,
                     queue: &mut Vec<usize>,
                     i: usize,
                     value: bool|
     -> Result<(), KnotError> {
        match dir[i] {
            None => {
                dir[i] = Some(value);
                queue.push(i);
                Ok(())
            }
            Some(v) if v == value => Ok(()),
            Some(_) => Err(KnotError::OrientationInconsistent(format!(
                "crossing {i} cannot be oriented consistently"
            ))),
        }
    };

    for slots in occ.values() {
        let (s1, s2) = (slots[0], slots[1]);
        let fixed = |s: Slot| match s {
            Slot::UnderIn => Some(true),
            Slot::UnderOut => Some(false),
            _ => None,
        };
        // incoming(slot) as a function of dir: Some(parity) where
        // incoming = dir ^ parity for over slots.
        let over_parity = |s: Slot| match s {
            Slot::OverB => Some(false), // incoming == dir
            Slot::OverD => Some(true),  // incoming == !dir
            _ => None,
        };
        match (fixed(s1.1), fixed(s2.1)) {
            (Some(in1), Some(in2)) => {
                if in1 == in2 {
                    return Err(KnotError::OrientationInconsistent(
                        "edge joins two under-slots of the same direction".into(),
                    ));
                }
            }
            (Some(in1), None) => {
                // incoming(s2) must be !in1: dir ^ parity == !in1
                let parity = over_parity(s2.1).unwrap();
                force(&mut dir, &mut queue, s2.0, !in1 ^ parity)?;
            }
            (None, Some(in2)) => {
                let parity = over_parity(s1.1).unwrap();
                force(&mut dir, &mut queue, s1.0, !in2 ^ parity)?;
            }
            (None, None) => {
                // incoming(s1) != incoming(s2), i.e. dir1 ^ p1 != dir2 ^ p2,
                // so the dirs are equal exactly when the parities differ.
                let p1 = over_parity(s1.1).unwrap();
                let p2 = over_parity(s2.1).unwrap();
                if s1.0 == s2.0 {
                    // b and d of one tuple joined by a single edge: the
                    // over-strand closes onto itself, not a knot.
                    return Err(KnotError::OrientationInconsistent(
                        "over-strand closes onto itself".into(),
                    ));
                }
                let equal = p1 != p2;
                links[s1.0].push((s2.0, equal));
                links[s2.0].push((s1.0, equal));
            }
        }
    }

    while let Some(i) = queue.pop() {
        let v = dir[i].unwrap();
        let neighbors = links[i].clone();
        for (j, equal) in neighbors {
            force(&mut dir, &mut queue, j, if equal { v } else { !v })?;
        }
    }
    if dir.iter().any(|d| d.is_none()) {
        return Err(KnotError::OrientationInconsistent(
            "over-strand directions are underdetermined".into(),
        ));
    }
    let dir: Vec<bool> = dir.into_iter().map(Option::unwrap).collect();

    // Successor map on edges: where an edge arrives, the passage's
    // outgoing edge continues it.
    let mut successor: HashMap<u64, (u64, usize, bool)> = HashMap::new(); // in-edge → (out, tuple, is_under)
    for (i, t) in tuples.iter().enumerate() {
        if successor.insert(t.a, (t.c, i, true)).is_some() {
            return Err(KnotError::OrientationInconsistent(format!(
                "edge {} has two successors",
                t.a
            )));
        }
        let (over_in, over_out) = if dir[i] { (t.b, t.d) } else { (t.d, t.b) };
        if successor.insert(over_in, (over_out, i, false)).is_some() {
            return Err(KnotError::OrientationInconsistent(format!(
                "edge {over_in} has two successors"
            )));
        }
    }

    // Walk the knot starting just after the first tuple's under passage.
    let mut passages: Vec<(usize, bool)> = Vec::with_capacity(2 * n);
    let mut edge = tuples[0].c;
    for _ in 0..2 * n {
        let &(next, tuple, is_under) = successor.get(&edge).ok_or_else(|| {
            KnotError::OrientationInconsistent(format!("edge {edge} has no successor"))
        })?;
        passages.push((tuple, is_under));
        edge = next;
    }
    if edge != tuples[0].c || passages.iter().filter(|(_, u)| *u).count() != n {
        return Err(KnotError::InconsistentCode(
            "edges do not form a single knot component".into(),
        ));
    }

    // Arc 0 opens at the first tuple's under-out; arcs advance at each
    // under passage.
    let mut over_arc = vec![usize::MAX; n];
    let mut under_in = vec![usize::MAX; n];
    let mut under_out = vec![usize::MAX; n];
    under_out[0] = 0;
    let mut arc = 0usize;
    let mut next_arc = 1usize;
    for &(tuple, is_under) in &passages {
        if is_under {
            under_in[tuple] = arc;
            if tuple != 0 {
                arc = next_arc;
                next_arc += 1;
                under_out[tuple] = arc;
            } else {
                arc = 0;
            }
        } else {
            over_arc[tuple] = arc;
        }
    }

    if (0..n).any(|i| {
        over_arc[i] == usize::MAX || under_in[i] == usize::MAX || under_out[i] == usize::MAX
    }) {
        return Err(KnotError::InconsistentCode(
            "edges do not form a single knot component".into(),
        ));
    }

    let crossings: Vec<Crossing> = (0..n)
        .map(|i| Crossing {
            over: over_arc[i],
            sign: if dir[i] { 1 } else { -1 },
            under_in: under_in[i],
            under_out: under_out[i],
        })
        .collect();
    KnotDiagram::new(crossings, n)
}
