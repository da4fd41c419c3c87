//! Counting homomorphisms into small symmetric groups, and the
//! invariant battery that tells presentations apart.

use super::AnalysisError;
use crate::group::{AbelianInvariants, Presentation, Word};

/// Worst-case assignment counts above this are refused; eliminate
/// redundant generators first.
pub const DEFAULT_HOM_BUDGET: u64 = 50_000_000;

/// Coset bound used by [`distinguish`] when comparing finite orders.
pub const DISTINGUISH_MAX_COSETS: usize = 10_000;

const MAX_SYM_DEGREE: usize = 6;

/// All permutations of 0..n in lexicographic order, as index vectors.
fn permutations(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut current: Vec<u8> = (0..n as u8).collect();
    loop {
        out.push(current.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1])
        else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
    }
    out
}

fn compose(p: &[u8], q: &[u8]) -> Vec<u8> {
    // (p ∘ q)(x) = p(q(x))
    q.iter().map(|&x| p[x as usize]).collect()
}

fn invert(p: &[u8]) -> Vec<u8> {
    let mut inv = vec![0u8; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x as usize] = i as u8;
    }
    inv
}

fn is_identity(p: &[u8]) -> bool {
    p.iter().enumerate().all(|(i, &x)| x as usize == i)
}

/// Evaluates a relator under a (partial) assignment of generator images.
fn relator_holds(rel: &Word, images: &[Vec<u8>], n: usize) -> bool {
    let mut acc: Vec<u8> = (0..n as u8).collect();
    for (g, e) in rel.letters() {
        let img = &images[g];
        let step = if e > 0 { img.clone() } else { invert(img) };
        acc = compose(&acc, &step);
    }
    is_identity(&acc)
}

/// Order of the subgroup of S_n generated by the given permutations,
/// by closure.
fn generated_order(gens: &[Vec<u8>], n: usize) -> usize {
    use std::collections::HashSet;
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let identity: Vec<u8> = (0..n as u8).collect();
    let mut frontier = vec![identity.clone()];
    seen.insert(identity);
    while let Some(p) = frontier.pop() {
        for g in gens {
            let q = compose(g, &p);
            if seen.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    seen.len()
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn check_budget(p: &Presentation, n: usize, budget: u64) -> Result<(), AnalysisError> {
    if n > MAX_SYM_DEGREE {
        return Err(AnalysisError::SearchTooLarge(format!(
            "symmetric degree {n} exceeds the supported maximum {MAX_SYM_DEGREE}"
        )));
    }
    let mut total: u64 = 1;
    for _ in 0..p.gen_count() {
        total = match total.checked_mul(factorial(n)) {
            Some(t) if t <= budget => t,
            _ => {
                return Err(AnalysisError::SearchTooLarge(format!(
                    "{}!^{} assignments exceed the budget {budget}; try Tietze elimination first",
                    n,
                    p.gen_count()
                )))
            }
        };
    }
    Ok(())
}

/// Number of homomorphisms from the presented group into S_n, counted by
/// exhaustive assignment of generator images with incremental relator
/// pruning: a relator is checked as soon as all its generators are
/// assigned.
pub fn count_homs(p: &Presentation, n: usize) -> Result<u64, AnalysisError> {
    count_homs_with_budget(p, n, DEFAULT_HOM_BUDGET)
}

pub fn count_homs_with_budget(
    p: &Presentation,
    n: usize,
    budget: u64,
) -> Result<u64, AnalysisError> {
    search(p, n, budget, false)
}

/// Number of homomorphisms onto all of S_n: those whose generator images
/// generate the full symmetric group.
pub fn count_surjections(p: &Presentation, n: usize) -> Result<u64, AnalysisError> {
    search(p, n, DEFAULT_HOM_BUDGET, true)
}

fn search(
    p: &Presentation,
    n: usize,
    budget: u64,
    surjective_only: bool,
) -> Result<u64, AnalysisError> {
    check_budget(p, n, budget)?;
    let perms = permutations(n);
    let gens = p.gen_count();
    // relators indexed by the highest generator they mention
    let mut by_depth: Vec<Vec<&Word>> = vec![Vec::new(); gens + 1];
    for rel in p.relators() {
        let depth = rel.max_generator().map_or(0, |g| g + 1);
        by_depth[depth].push(rel);
    }
    // relators mentioning no generators are identities; ignore them
    let full = factorial(n) as usize;

    let mut count = 0u64;
    let mut images: Vec<Vec<u8>> = Vec::with_capacity(gens);
    fn descend(
        depth: usize,
        gens: usize,
        perms: &[Vec<u8>],
        by_depth: &[Vec<&Word>],
        images: &mut Vec<Vec<u8>>,
        n: usize,
        surjective_only: bool,
        full: usize,
        count: &mut u64,
    ) {
        if depth == gens {
            if !surjective_only || generated_order(images, n) == full {
                *count += 1;
            }
            return;
        }
        for perm in perms {
            images.push(perm.clone());
            if by_depth[depth + 1]
                .iter()
                .all(|rel| relator_holds(rel, images, n))
            {
                descend(
                    depth + 1,
                    gens,
                    perms,
                    by_depth,
                    images,
                    n,
                    surjective_only,
                    full,
                    count,
                );
            }
            images.pop();
        }
    }
    descend(
        0,
        gens,
        &perms,
        &by_depth,
        &mut images,
        n,
        surjective_only,
        full,
        &mut count,
    );
    Ok(count)
}

/// A certificate that two presentations define non-isomorphic groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Abelianization {
        left: AbelianInvariants,
        right: AbelianInvariants,
    },
    HomCount {
        sym: usize,
        left: u64,
        right: u64,
    },
    FiniteOrder {
        left: usize,
        right: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Different(Witness),
    /// The battery found no difference. This is not a proof of
    /// isomorphism.
    Indistinguishable,
}

/// Compares two presentations by abelianization, by homomorphism counts
/// into S₂, S₃ and S₄, and — when both enumerate as finite within a
/// bounded search — by group order.
pub fn distinguish(p1: &Presentation, p2: &Presentation) -> Verdict {
    let a1 = p1.abelianize();
    let a2 = p2.abelianize();
    if a1 != a2 {
        return Verdict::Different(Witness::Abelianization { left: a1, right: a2 });
    }
    // Work on eliminated presentations: hom counts are invariant and the
    // search space shrinks dramatically.
    let q1 = p1.tietze_eliminate();
    let q2 = p2.tietze_eliminate();
    for n in [2usize, 3, 4] {
        match (count_homs(&q1, n), count_homs(&q2, n)) {
            (Ok(left), Ok(right)) if left != right => {
                return Verdict::Different(Witness::HomCount {
                    sym: n,
                    left,
                    right,
                });
            }
            _ => {}
        }
    }
    let r1 = super::todd_coxeter(&q1, DISTINGUISH_MAX_COSETS);
    let r2 = super::todd_coxeter(&q2, DISTINGUISH_MAX_COSETS);
    if let (Some(left), Some(right)) = (r1.order(), r2.order()) {
        if left != right {
            return Verdict::Different(Witness::FiniteOrder { left, right });
        }
    }
    Verdict::Indistinguishable
}

/// JSON rendering of a verdict for the CLI.
pub fn verdict_to_json(v: &Verdict) -> String {
    match v {
        Verdict::Indistinguishable => r#"{"verdict":"indistinguishable"}"#.to_string(),
        Verdict::Different(w) => {
            let witness = match w {
                Witness::Abelianization { left, right } => format!(
                    r#"{{"kind":"abelianization","left":"{left}","right":"{right}"}}"#
                ),
                Witness::HomCount { sym, left, right } => format!(
                    r#"{{"kind":"hom_count","sym":{sym},"left":{left},"right":{right}}}"#
                ),
                Witness::FiniteOrder { left, right } => {
                    format!(r#"{{"kind":"finite_order","left":{left},"right":{right}}}"#)
                }
            };
            format!(r#"{{"verdict":"different","witness":{witness}}}"#)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn braid() -> Presentation {
        Presentation::parse("gens: a,b ; rels: a b a B A B").unwrap()
    }

    #[test]
    fn trefoil_group_has_twelve_homs_to_s3() {
        assert_eq!(count_homs(&braid(), 3).unwrap(), 12);
    }

    #[test]
    fn trefoil_group_has_six_surjections_to_s3() {
        assert_eq!(count_surjections(&braid(), 3).unwrap(), 6);
    }

    #[test]
    fn z2_has_four_homs_to_s3() {
        let p = Presentation::parse("gens: a ; rels: a^2").unwrap();
        assert_eq!(count_homs(&p, 3).unwrap(), 4);
    }

    #[test]
    fn free_group_counts_all_assignments() {
        let z = Presentation::free(&["a"]).unwrap();
        assert_eq!(count_homs(&z, 3).unwrap(), 6);
        assert_eq!(count_surjections(&z, 3).unwrap(), 0);
        let f2 = Presentation::free(&["a", "b"]).unwrap();
        assert_eq!(count_homs(&f2, 3).unwrap(), 36);
    }

    #[test]
    fn trivial_group_has_no_surjections() {
        for n in 2..=4 {
            assert_eq!(count_surjections(&Presentation::trivial(), n).unwrap(), 0);
        }
    }

    #[test]
    fn budget_refuses_oversized_searches() {
        let p = Presentation::free(&["a", "b", "c"]).unwrap();
        assert!(matches!(
            count_homs_with_budget(&p, 6, 1000),
            Err(AnalysisError::SearchTooLarge(_))
        ));
        assert!(matches!(
            count_homs(&p, 7),
            Err(AnalysisError::SearchTooLarge(_))
        ));
    }

    #[test]
    fn hom_counts_multiply_over_free_generators() {
        // homs(Z^k → S_n) = n!^k for the free abelian-free case k gens no relators
        let f3 = Presentation::free(&["a", "b", "c"]).unwrap();
        assert_eq!(count_homs(&f3, 3).unwrap(), 216);
    }

    #[test]
    fn distinguish_trefoil_from_unknot() {
        let unknot = Presentation::free(&["a"]).unwrap();
        match distinguish(&braid(), &unknot) {
            Verdict::Different(Witness::HomCount { sym: 3, left, right }) => {
                assert_eq!((left, right), (12, 6));
            }
            v => panic!("unexpected verdict {v:?}"),
        }
    }

    #[test]
    fn distinguish_self_is_indistinguishable() {
        assert_eq!(distinguish(&braid(), &braid()), Verdict::Indistinguishable);
    }

    #[test]
    fn distinguish_binary_icosahedral_from_trivial_by_order() {
        let p = Presentation::parse("gens: a,b,c ; rels: a^5 B^3, a^5 C^2, a^5 C B A").unwrap();
        match distinguish(&p, &Presentation::trivial()) {
            Verdict::Different(Witness::FiniteOrder { left, right }) => {
                assert_eq!((left, right), (120, 1));
            }
            v => panic!("unexpected verdict {v:?}"),
        }
    }
}
