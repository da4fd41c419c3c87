//! Signed Gauss code parsing.
//!
//! A code is a comma-separated passage list like `U1+,O2+,U3+,O1+,U2+,O3+`:
//! `U`/`O` for under/over, a crossing label, and the crossing sign. Each
//! label must appear exactly once as `U` and once as `O`, with equal signs.

use super::{Crossing, KnotDiagram, KnotError};
use std::collections::HashMap;

#[derive(Debug, Clone, Copy)]
struct Token {
    label: u64,
    under: bool,
    sign: i8,
}

fn parse_token(text: &str) -> Result<Token, KnotError> {
    let text = text.trim();
    let bad = || KnotError::MalformedToken(text.to_string());
    let mut chars = text.chars();
    let under = match chars.next() {
        Some('U') | Some('u') => true,
        Some('O') | Some('o') => false,
        _ => return Err(bad()),
    };
    let body: String = chars.collect();
    let (digits, sign) = match body.strip_suffix('+') {
        Some(d) => (d, 1i8),
        None => match body.strip_suffix('-') {
            Some(d) => (d, -1i8),
            None => return Err(bad()),
        },
    };
    let label: u64 = digits.parse().map_err(|_| bad())?;
    Ok(Token { label, under, sign })
}

/// Parses a signed Gauss code into a validated diagram. The empty string
/// is the unknot. Arcs are labeled `0..n-1` in traversal order starting
/// from the arc that follows the first undercrossing token; arc
/// boundaries sit at undercrossing passages.
pub fn parse_gauss(text: &str) -> Result<KnotDiagram, KnotError> {
    // One component per code; section separators would denote a link.
    let sections: Vec<&str> = text
        .split(|c| c == ';' || c == '\n')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    if sections.len() > 1 {
        return Err(KnotError::InconsistentCode(
            "multiple components: only knots are supported".into(),
        ));
    }
    let body = sections.first().copied().unwrap_or("");
    if body.is_empty() {
        return Ok(KnotDiagram::unknot());
    }

    let tokens: Result<Vec<Token>, KnotError> = body.split(',').map(parse_token).collect();
    let tokens = tokens?;

    // Each label: exactly one U and one O, with matching signs.
    let mut by_label: HashMap<u64, (Option<usize>, Option<usize>)> = HashMap::new();
    for (i, t) in tokens.iter().enumerate() {
        let entry = by_label.entry(t.label).or_default();
        let slot = if t.under { &mut entry.0 } else { &mut entry.1 };
        if slot.replace(i).is_some() {
            return Err(KnotError::InconsistentCode(format!(
                "crossing {} visited twice as {}",
                t.label,
                if t.under { "under" } else { "over" }
            )));
        }
    }
    for (label, (u, o)) in &by_label {
        match (u, o) {
            (Some(u), Some(o)) => {
                if tokens[*u].sign != tokens[*o].sign {
                    return Err(KnotError::InconsistentCode(format!(
                        "crossing {label} has mismatched signs"
                    )));
                }
            }
            _ => {
                return Err(KnotError::InconsistentCode(format!(
                    "crossing {label} appears only once"
                )))
            }
        }
    }

    assemble(&tokens)
}

/// Builds a diagram from `(crossing id, is_under, sign)` passages in
/// traversal order; used by the Reidemeister move engine.
pub(crate) fn assemble_indexed(passes: &[(usize, bool, i8)]) -> Result<KnotDiagram, KnotError> {
    let tokens: Vec<Token> = passes
        .iter()
        .map(|&(label, under, sign)| Token {
            label: label as u64,
            under,
            sign,
        })
        .collect();
    assemble(&tokens)
}

/// Builds the diagram from a validated token sequence.
fn assemble(tokens: &[Token]) -> Result<KnotDiagram, KnotError> {
    let under_positions: Vec<usize> = tokens
        .iter()
        .enumerate()
        .filter(|(_, t)| t.under)
        .map(|(i, _)| i)
        .collect();
    let n = under_positions.len();
    debug_assert_eq!(2 * n, tokens.len());

    // arc k starts right after the k-th undercrossing token.
    let arc_of_position = |q: usize| -> usize {
        // the arc containing a non-under position q: largest p_k < q, else wrap
        match under_positions.iter().rposition(|&p| p < q) {
            Some(k) => k,
            None => n - 1,
        }
    };

    let mut crossings_by_label: HashMap<u64, Crossing> = HashMap::new();
    for (k, &p) in under_positions.iter().enumerate() {
        let t = tokens[p];
        crossings_by_label.insert(
            t.label,
            Crossing {
                over: usize::MAX,
                sign: t.sign,
                under_in: (k + n - 1) % n,
                under_out: k,
            },
        );
    }
    for (q, t) in tokens.iter().enumerate() {
        if !t.under {
            crossings_by_label
                .get_mut(&t.label)
                .expect("label validated")
                .over = arc_of_position(q);
        }
    }
    // Crossings are ordered by first appearance in the code, which keeps
    // parsing stable under relabeling of the input.
    let mut label_order: Vec<u64> = Vec::new();
    for t in tokens {
        if !label_order.contains(&t.label) {
            label_order.push(t.label);
        }
    }
    let crossings: Vec<Crossing> = label_order
        .iter()
        .map(|l| crossings_by_label[l])
        .collect();
    KnotDiagram::new(crossings, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_matches_hand_computation() {
        let d = parse_gauss("U1+,O2+,U3+,O1+,U2+,O3+").unwrap();
        let c: Vec<(usize, usize, usize, i8)> = d
            .crossings()
            .iter()
            .map(|c| (c.over, c.under_in, c.under_out, c.sign))
            .collect();
        assert_eq!(
            c,
            vec![(1, 2, 0, 1), (0, 1, 2, 1), (2, 0, 1, 1)],
            "over/under_in/under_out per crossing"
        );
    }

    #[test]
    fn empty_code_is_unknot() {
        let d = parse_gauss("").unwrap();
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.arc_count(), 1);
    }

    #[test]
    fn single_positive_curl() {
        let d = parse_gauss("U1+,O1+").unwrap();
        assert_eq!(d.crossing_count(), 1);
        assert_eq!(d.writhe(), 1);
        let c = d.crossings()[0];
        assert_eq!((c.over, c.under_in, c.under_out), (0, 0, 0));
    }

    #[test]
    fn malformed_tokens_rejected() {
        for text in ["U1", "X1+", "U+", "U1*", "U1+,O2?"] {
            assert!(
                matches!(parse_gauss(text), Err(KnotError::MalformedToken(_))),
                "{text}"
            );
        }
    }

    #[test]
    fn inconsistent_codes_rejected() {
        // label appearing once, twice same kind, and sign mismatch
        for text in ["U1+,O1+,U2+", "U1+,U1+", "U1+,O1-"] {
            assert!(
                matches!(parse_gauss(text), Err(KnotError::InconsistentCode(_))),
                "{text}"
            );
        }
    }

    #[test]
    fn multi_component_input_rejected() {
        let err = parse_gauss("U1+,O1+;U2+,O2+").unwrap_err();
        assert!(matches!(err, KnotError::InconsistentCode(_)));
    }

    #[test]
    fn labels_need_not_be_contiguous() {
        let d = parse_gauss("U7+,O9+,U12+,O7+,U9+,O12+").unwrap();
        assert_eq!(d.canonical_gauss(), "U1+,O2+,U3+,O1+,U2+,O3+");
    }
}
