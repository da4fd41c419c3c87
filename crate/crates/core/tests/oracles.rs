//! Independent oracles for the group identifications.
//!
//! The coset enumerator's headline orders (24 and 120 for the two
//! triangle-presentation quotients) are corroborated here by a completely
//! separate route: brute-force enumeration of SL(2,p) over a prime field
//! and an explicit search for generator images satisfying the relators.
//! A surjection onto a group of order N plus an enumeration result of
//! Finite(N) pins the order from both sides.

mod common;

use surgery_core::analysis::{count_homs, count_surjections, todd_coxeter};
use surgery_core::group::Presentation;
use surgery_core::surgery::wirtinger;

/// 2×2 matrix over F_p, row major.
type Mat = [u64; 4];

fn mat_mul(a: &Mat, b: &Mat, p: u64) -> Mat {
    [
        (a[0] * b[0] + a[1] * b[2]) % p,
        (a[0] * b[1] + a[1] * b[3]) % p,
        (a[2] * b[0] + a[3] * b[2]) % p,
        (a[2] * b[1] + a[3] * b[3]) % p,
    ]
}

fn det(m: &Mat, p: u64) -> u64 {
    (m[0] * m[3] % p + p - m[1] * m[2] % p) % p
}

fn identity() -> Mat {
    [1, 0, 0, 1]
}

fn mat_pow(m: &Mat, k: u32, p: u64) -> Mat {
    let mut acc = identity();
    for _ in 0..k {
        acc = mat_mul(&acc, m, p);
    }
    acc
}

fn mat_inv(m: &Mat, p: u64) -> Mat {
    // det is 1 for SL(2,p), so the adjugate is the inverse
    debug_assert_eq!(det(m, p), 1);
    [m[3] % p, (p - m[1] % p) % p, (p - m[2] % p) % p, m[0] % p]
}

/// All of SL(2,p) by brute force over the p⁴ candidate matrices.
fn special_linear_group(p: u64) -> Vec<Mat> {
    let mut out = Vec::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    let m = [a, b, c, d];
                    if det(&m, p) == 1 {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

/// Subgroup generated by the given matrices, by closure.
fn generated(gens: &[Mat], p: u64) -> usize {
    use std::collections::HashSet;
    let mut seen: HashSet<Mat> = HashSet::new();
    let mut frontier = vec![identity()];
    seen.insert(identity());
    while let Some(m) = frontier.pop() {
        for g in gens {
            let next = mat_mul(g, &m, p);
            if seen.insert(next) {
                frontier.push(next);
            }
        }
    }
    seen.len()
}

/// Searches SL(2,p) for a triple satisfying Aᵃ = Bᵇ = C² = ABC that
/// generates the whole group, witnessing a surjection from the triangle
/// presentation ⟨a, b, 2⟩ onto SL(2,p).
fn triangle_witness(p: u64, a_exp: u32, b_exp: u32) -> bool {
    let grp = special_linear_group(p);
    for a in &grp {
        let apow = mat_pow(a, a_exp, p);
        for b in &grp {
            if mat_pow(b, b_exp, p) != apow {
                continue;
            }
            // ABC = A^a forces C = B⁻¹ A^(a-1)
            let c = mat_mul(&mat_inv(b, p), &mat_pow(a, a_exp - 1, p), p);
            if mat_mul(&c, &c, p) != apow {
                continue;
            }
            if generated(&[*a, *b, c], p) == grp.len() {
                return true;
            }
        }
    }
    false
}

#[test]
fn sl23_has_24_elements_and_admits_the_332_triple() {
    let grp = special_linear_group(3);
    assert_eq!(grp.len(), 24);
    assert!(triangle_witness(3, 3, 3), "no ⟨3,3,2⟩ triple generates SL(2,3)");
    // the presented group surjects onto a 24-element group and the
    // enumerator caps it at 24: the order is exactly 24
    let p = Presentation::parse("gens: a,b,c ; rels: a^3 B^3, a^3 C^2, a^3 C B A").unwrap();
    assert_eq!(todd_coxeter(&p, 10_000).order(), Some(24));
}

#[test]
fn sl25_has_120_elements_and_admits_the_532_triple() {
    let grp = special_linear_group(5);
    assert_eq!(grp.len(), 120);
    assert!(triangle_witness(5, 5, 3), "no ⟨5,3,2⟩ triple generates SL(2,5)");
    let p = Presentation::parse("gens: a,b,c ; rels: a^5 B^3, a^5 C^2, a^5 C B A").unwrap();
    assert_eq!(todd_coxeter(&p, 10_000).order(), Some(120));
}

// Brute-force homomorphism oracle: permutations of {0,1,2} as arrays,
// plain triple loop over all 6³ generator assignments of the three-arc
// Wirtinger presentation, checking the crossing relations directly.

type Perm = [u8; 3];

fn perm_mul(a: &Perm, b: &Perm) -> Perm {
    // (a ∘ b)(x) = a(b(x))
    [a[b[0] as usize], a[b[1] as usize], a[b[2] as usize]]
}

fn perm_inv(a: &Perm) -> Perm {
    let mut out = [0u8; 3];
    for (i, &v) in a.iter().enumerate() {
        out[v as usize] = i as u8;
    }
    out
}

const S3: [Perm; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

#[test]
fn wirtinger_trefoil_hom_counts_match_triple_loop_oracle() {
    let d = common::trefoil();
    let p = wirtinger(&d);
    assert_eq!(p.gen_count(), 3);

    // oracle: all 216 assignments, relations b_out = over⁻¹ · b_in · over
    let mut homs = 0u64;
    let mut surjections = 0u64;
    for a in S3 {
        for b in S3 {
            for c in S3 {
                let images = [a, b, c];
                let ok = d.crossings().iter().all(|cr| {
                    let over = images[cr.over];
                    let input = images[cr.under_in];
                    let output = images[cr.under_out];
                    let conj = perm_mul(&perm_mul(&perm_inv(&over), &input), &over);
                    conj == output
                });
                if !ok {
                    continue;
                }
                homs += 1;
                // does the image generate all of S3?
                let mut seen = vec![[0u8, 1, 2]];
                let mut frontier = seen.clone();
                while let Some(x) = frontier.pop() {
                    for g in images {
                        let y = perm_mul(&g, &x);
                        if !seen.contains(&y) {
                            seen.push(y);
                            frontier.push(y);
                        }
                    }
                }
                if seen.len() == 6 {
                    surjections += 1;
                }
            }
        }
    }
    assert_eq!(homs, 12);
    assert_eq!(surjections, 6);
    assert_eq!(count_homs(&p, 3).unwrap(), homs);
    assert_eq!(count_surjections(&p, 3).unwrap(), surjections);
}

#[test]
fn hom_counts_are_invariant_under_tietze_elimination() {
    let p = wirtinger(&common::trefoil());
    let q = p.tietze_eliminate();
    for n in [2usize, 3, 4] {
        assert_eq!(
            count_homs(&p, n).unwrap(),
            count_homs(&q, n).unwrap(),
            "S_{n}"
        );
    }
}
