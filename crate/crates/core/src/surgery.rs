//! Knot groups and surgery quotients.
//!
//! The knot group of a diagram is presented à la Wirtinger: one generator
//! per arc and one conjugation relation per crossing. Traversing the knot
//! once and recording the arcs passed under yields the blackboard
//! longitude; appending meridian windings adjusts it to any integer
//! framing. Killing the framed longitude in the knot group gives the
//! fundamental group of the surgered manifold.

use crate::group::{GroupError, Presentation, Word};
use crate::knot::KnotDiagram;

/// A framed surgery instruction: a knot diagram plus an integer framing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurgerySpec {
    pub diagram: KnotDiagram,
    pub framing: i64,
}

/// A longitude expressed in the Wirtinger generators, together with its
/// total exponent sum (which equals the framing it represents).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LongitudeWord {
    pub word: Word,
    pub exponent_sum: i64,
}

impl LongitudeWord {
    fn new(word: Word) -> Self {
        let exponent_sum = word.exponent_sum();
        LongitudeWord {
            word,
            exponent_sum,
        }
    }
}

/// Generator name for an arc: a..z, then g26, g27, ….
pub fn arc_generator_name(arc: usize) -> String {
    if arc < 26 {
        ((b'a' + arc as u8) as char).to_string()
    } else {
        format!("g{arc}")
    }
}

/// The Wirtinger presentation of the knot group: generators are the arcs;
/// each positive crossing contributes `under_out = over⁻¹ · under_in ·
/// over` and each negative crossing `under_out = over · under_in ·
/// over⁻¹`, stored as relators `under_out⁻¹ over⁻ᵉ under_in overᵉ`. The
/// 0-crossing unknot gives the free group on one generator.
pub fn wirtinger(d: &KnotDiagram) -> Presentation {
    let names: Vec<String> = (0..d.arc_count()).map(arc_generator_name).collect();
    let relators: Vec<Word> = d
        .crossings()
        .iter()
        .map(|c| {
            let e = c.sign as i64;
            Word::from_pairs([
                (c.under_out, -1),
                (c.over, -e),
                (c.under_in, 1),
                (c.over, e),
            ])
        })
        .collect();
    Presentation::new(names, relators).expect("arc names are valid and in range")
}

/// The blackboard-framed longitude: traverse the knot once from the
/// basepoint arc (arc 0); at each underpass append the over-arc generator
/// with exponent equal to the crossing sign. Its exponent sum is the
/// writhe.
pub fn blackboard_longitude(d: &KnotDiagram) -> LongitudeWord {
    let mut pairs = Vec::new();
    for &arc in d.arc_order() {
        if let Some((_, c)) = d.crossing_ending_arc(arc) {
            pairs.push((c.over, c.sign as i64));
        }
    }
    LongitudeWord::new(Word::from_pairs(pairs))
}

/// The longitude at framing `p`: the blackboard longitude followed by
/// `p − writhe` windings of the basepoint meridian (the arc-0 generator),
/// freely reduced. Its exponent sum is exactly `p`.
pub fn framed_longitude(d: &KnotDiagram, framing: i64) -> LongitudeWord {
    let blackboard = blackboard_longitude(d);
    let correction = framing - d.writhe();
    let word = blackboard
        .word
        .concat(&Word::from_pairs([(0, correction)]));
    LongitudeWord::new(word)
}

/// Fundamental group of the 3-manifold obtained by surgery on the knot
/// with the given framing: the knot group modulo the normal closure of
/// the framed longitude.
pub fn surgery_group(spec: &SurgerySpec) -> Presentation {
    let group = wirtinger(&spec.diagram);
    let longitude = framed_longitude(&spec.diagram, spec.framing);
    group
        .quotient_by_relator(&longitude.word)
        .expect("longitude uses only arc generators")
}

/// Effect of a 0-surgery (dimension ≥ 3) on the fundamental group: the
/// free product with Z.
pub fn connected_sum_group(p: &Presentation) -> Presentation {
    let z = Presentation::free(&["z"]).expect("valid name");
    p.free_product(&z)
}

/// Fundamental group of the lens space L(p,1): cyclic of order p, with
/// L(0,1) giving Z. Negative p signals a framing-convention mismatch.
pub fn lens_space_group(p: i64) -> Result<Presentation, GroupError> {
    if p < 0 {
        return Err(GroupError::NegativeParameter(p));
    }
    Presentation::cyclic("a", p as u64)
}
