//! Shared fixtures for the integration suites: reference diagrams and a
//! deterministic random-Reidemeister-move corpus generator.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use surgery_core::knot::{apply_move, parse_gauss, KnotDiagram, ReidemeisterMove};

pub fn trefoil() -> KnotDiagram {
    parse_gauss("U1+,O2+,U3+,O1+,U2+,O3+").unwrap()
}

#[allow(dead_code)]
pub fn figure_eight() -> KnotDiagram {
    parse_gauss("O1+,U2-,O4-,U1+,O3+,U4-,O2-,U3+").unwrap()
}

/// The trefoil projection with two extra negative curls along arc a
/// (total blackboard framing 1).
#[allow(dead_code)]
pub fn curled_trefoil() -> KnotDiagram {
    parse_gauss("U5-,O5-,O4-,O2+,U3+,O1+,U2+,O3+,U1+,U4-").unwrap()
}

/// Applies one random applicable Reidemeister move. Shrinking moves are
/// preferred once the diagram grows past `max_crossings`.
pub fn random_move(d: &KnotDiagram, max_crossings: usize, rng: &mut ChaCha8Rng) -> KnotDiagram {
    let n = d.crossing_count();
    let arcs = d.arc_count();

    let mut shrinking: Vec<ReidemeisterMove> = Vec::new();
    let mut neutral: Vec<ReidemeisterMove> = Vec::new();
    let mut growing: Vec<ReidemeisterMove> = Vec::new();
    for arc in 0..arcs {
        for sign in [1i8, -1] {
            growing.push(ReidemeisterMove::R1Add { arc, sign });
        }
    }
    for over_arc in 0..arcs {
        for under_arc in 0..arcs {
            growing.push(ReidemeisterMove::R2Add { over_arc, under_arc });
        }
    }
    for c in 0..n {
        shrinking.push(ReidemeisterMove::R1Remove { crossing: c });
    }
    for c1 in 0..n {
        for c2 in 0..n {
            if c1 != c2 {
                shrinking.push(ReidemeisterMove::R2Remove { c1, c2 });
            }
        }
    }
    for c1 in 0..n {
        for c2 in c1 + 1..n {
            for c3 in c2 + 1..n {
                neutral.push(ReidemeisterMove::R3 { c1, c2, c3 });
            }
        }
    }

    let mut pool: Vec<ReidemeisterMove> = Vec::new();
    if n >= max_crossings {
        pool.extend(shrinking.iter().copied());
        pool.extend(neutral.iter().copied());
    } else {
        pool.extend(growing.iter().copied());
        pool.extend(neutral.iter().copied());
        pool.extend(shrinking.iter().copied());
    }

    // Try pool entries in random order until one applies; R1Add is always
    // applicable, so this terminates.
    while !pool.is_empty() {
        let pick = rng.gen_range(0..pool.len());
        let mv = pool.swap_remove(pick);
        if let Ok(moved) = apply_move(d, &mv) {
            return moved;
        }
    }
    apply_move(
        d,
        &ReidemeisterMove::R1Add {
            arc: rng.gen_range(0..arcs),
            sign: if rng.gen_bool(0.5) { 1 } else { -1 },
        },
    )
    .expect("R1 add always applies")
}

/// `count` diagrams obtained from `start` by `moves_each` random moves.
pub fn random_move_corpus(
    start: &KnotDiagram,
    count: usize,
    moves_each: usize,
    max_crossings: usize,
    seed: u64,
) -> Vec<KnotDiagram> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut d = start.clone();
            for _ in 0..moves_each {
                d = random_move(&d, max_crossings, &mut rng);
            }
            d
        })
        .collect()
}
