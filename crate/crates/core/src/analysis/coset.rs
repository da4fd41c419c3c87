//! Todd–Coxeter coset enumeration over the trivial subgroup.
//!
//! The strategy is HLT: scan every relator from every live coset,
//! defining cosets to fill gaps, and collapse coincidences immediately.
//! When the coset budget is exhausted a lookahead pass re-scans without
//! defining; if nothing collapses the enumeration is inconclusive.
//! Everything is deterministic: cosets are visited in increasing order,
//! relators and generator columns in presentation order.

use crate::group::Presentation;
use serde::Serialize;
use std::collections::VecDeque;

/// Outcome of an enumeration. `Finite` certifies the group order;
/// `Inconclusive` only reports resource exhaustion and says nothing
/// about infiniteness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum EnumerationResult {
    Finite { order: usize, cosets_used: usize },
    Inconclusive { cosets_used: usize },
}

impl EnumerationResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("result serializes")
    }

    pub fn order(&self) -> Option<usize> {
        match self {
            EnumerationResult::Finite { order, .. } => Some(*order),
            EnumerationResult::Inconclusive { .. } => None,
        }
    }
}

/// A closed coset table: row per coset, column per generator and inverse.
/// Row 0 is the coset of the (trivial) subgroup, so for a finite group
/// the row count is the group order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    pub generator_count: usize,
    pub rows: Vec<Vec<usize>>,
}

pub const DEFAULT_MAX_COSETS: usize = 100_000;

/// Enumerates cosets of the trivial subgroup. Returns `Finite(n)` iff the
/// table closes with `n` live cosets without ever holding more than
/// `max_cosets` live rows.
pub fn todd_coxeter(p: &Presentation, max_cosets: usize) -> EnumerationResult {
    let (result, _) = todd_coxeter_table(p, max_cosets);
    result
}

/// As [`todd_coxeter`], also returning the closed, compacted table when
/// the enumeration succeeds.
pub fn todd_coxeter_table(
    p: &Presentation,
    max_cosets: usize,
) -> (EnumerationResult, Option<CosetTable>) {
    let mut machine = Machine::new(p, max_cosets.max(1));
    machine.run()
}

struct Machine {
    ncols: usize,
    /// usize::MAX marks an undefined entry.
    table: Vec<Vec<usize>>,
    /// Union-find over cosets for coincidence collapsing.
    parent: Vec<usize>,
    live: usize,
    total_defined: usize,
    max_cosets: usize,
    relators: Vec<Vec<usize>>, // relator words as column sequences
    queue: VecDeque<(usize, usize)>,
}

const UNDEF: usize = usize::MAX;

fn inv(col: usize) -> usize {
    col ^ 1
}

impl Machine {
    fn new(p: &Presentation, max_cosets: usize) -> Self {
        let ncols = 2 * p.gen_count();
        let relators = p
            .relators()
            .iter()
            .map(|w| {
                w.letters()
                    .map(|(g, e)| if e > 0 { 2 * g } else { 2 * g + 1 })
                    .collect()
            })
            .collect();
        let mut m = Machine {
            ncols,
            table: Vec::new(),
            parent: Vec::new(),
            live: 0,
            total_defined: 0,
            max_cosets,
            relators,
            queue: VecDeque::new(),
        };
        m.new_coset();
        m
    }

    fn new_coset(&mut self) -> usize {
        let id = self.table.len();
        self.table.push(vec![UNDEF; self.ncols]);
        self.parent.push(id);
        self.live += 1;
        self.total_defined += 1;
        id
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn is_live(&mut self, x: usize) -> bool {
        self.find(x) == x
    }

    fn get(&mut self, coset: usize, col: usize) -> usize {
        let v = self.table[coset][col];
        if v == UNDEF {
            UNDEF
        } else {
            self.find(v)
        }
    }

    /// Records coset·col = target together with the inverse entry.
    fn set(&mut self, coset: usize, col: usize, target: usize) {
        self.table[coset][col] = target;
        self.table[target][inv(col)] = coset;
    }

    /// Processes the coincidence queue, merging higher ids into lower.
    fn process_coincidences(&mut self) {
        while let Some((a, b)) = self.queue.pop_front() {
            let a = self.find(a);
            let b = self.find(b);
            if a == b {
                continue;
            }
            let (keep, gone) = if a < b { (a, b) } else { (b, a) };
            self.parent[gone] = keep;
            self.live -= 1;
            for col in 0..self.ncols {
                let v = self.table[gone][col];
                if v == UNDEF {
                    continue;
                }
                let v = self.find(v);
                let existing = self.get(keep, col);
                if existing == UNDEF {
                    self.set(keep, col, v);
                    // make sure the inverse entry of v survives the merge
                } else if existing != v {
                    self.queue.push_back((existing, v));
                }
            }
        }
    }

    /// Scans a relator from a coset, defining cosets to close gaps when
    /// `fill` is set. Returns false when a needed definition would exceed
    /// the budget.
    fn scan(&mut self, start: usize, rel_idx: usize, fill: bool) -> bool {
        let rel_len = self.relators[rel_idx].len();
        if rel_len == 0 {
            return true;
        }
        loop {
            let start = self.find(start);
            // forward pass
            let mut f = start;
            let mut i = 0;
            while i < rel_len {
                let col = self.relators[rel_idx][i];
                let next = self.get(f, col);
                if next == UNDEF {
                    break;
                }
                f = next;
                i += 1;
            }
            if i == rel_len {
                if f != start {
                    self.queue.push_back((f, start));
                    self.process_coincidences();
                }
                return true;
            }
            // backward pass
            let mut b = start;
            let mut j = rel_len;
            while j > i {
                let col = inv(self.relators[rel_idx][j - 1]);
                let next = self.get(b, col);
                if next == UNDEF {
                    break;
                }
                b = next;
                j -= 1;
            }
            if j == i {
                // complete except the table disagreed: coincidence
                self.queue.push_back((f, b));
                self.process_coincidences();
                return true;
            }
            if j == i + 1 {
                // single gap: deduction
                self.set(f, self.relators[rel_idx][i], b);
                self.process_coincidences();
                return true;
            }
            if !fill {
                return true;
            }
            if self.live >= self.max_cosets {
                return false;
            }
            let fresh = self.new_coset();
            self.set(f, self.relators[rel_idx][i], fresh);
            // loop to rescan from the (possibly merged) start
        }
    }

    /// One full non-defining pass over all live cosets and relators.
    /// Returns true if the pass collapsed anything.
    fn lookahead(&mut self) -> bool {
        let before = self.live;
        for coset in 0..self.table.len() {
            if !self.is_live(coset) {
                continue;
            }
            for r in 0..self.relators.len() {
                self.scan(coset, r, false);
            }
        }
        self.live < before
    }

    fn run(&mut self) -> (EnumerationResult, Option<CosetTable>) {
        let inconclusive = |m: &Machine| EnumerationResult::Inconclusive {
            cosets_used: m.total_defined,
        };
        let mut coset = 0usize;
        while coset < self.table.len() {
            if !self.is_live(coset) {
                coset += 1;
                continue;
            }
            for r in 0..self.relators.len() {
                // Retry the scan after every successful lookahead collapse;
                // give up only when lookahead frees nothing.
                while !self.scan(coset, r, true) {
                    if !self.lookahead() {
                        return (inconclusive(self), None);
                    }
                }
                if !self.is_live(coset) {
                    break;
                }
            }
            for col in 0..self.ncols {
                if !self.is_live(coset) {
                    break;
                }
                while self.get(coset, col) == UNDEF {
                    if self.live < self.max_cosets {
                        let fresh = self.new_coset();
                        self.set(coset, col, fresh);
                        break;
                    }
                    if !self.lookahead() {
                        return (inconclusive(self), None);
                    }
                    if !self.is_live(coset) {
                        break;
                    }
                }
            }
            coset += 1;
        }
        let table = self.compact();
        (
            EnumerationResult::Finite {
                order: table.rows.len(),
                cosets_used: self.total_defined,
            },
            Some(table),
        )
    }

    /// Renumbers live cosets in increasing id order and resolves every
    /// entry, producing the canonical closed table.
    fn compact(&mut self) -> CosetTable {
        let mut index = vec![UNDEF; self.table.len()];
        let mut next = 0usize;
        for i in 0..self.table.len() {
            if self.is_live(i) {
                index[i] = next;
                next += 1;
            }
        }
        let mut rows = Vec::with_capacity(next);
        for i in 0..self.table.len() {
            if !self.is_live(i) {
                continue;
            }
            let row: Vec<usize> = (0..self.ncols)
                .map(|col| {
                    let v = self.get(i, col);
                    debug_assert_ne!(v, UNDEF, "closed table has no gaps");
                    index[v]
                })
                .collect();
            rows.push(row);
        }
        CosetTable {
            generator_count: self.ncols / 2,
            rows,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order_of(text: &str, max: usize) -> EnumerationResult {
        todd_coxeter(&Presentation::parse(text).unwrap(), max)
    }

    #[test]
    fn cyclic_groups_close_with_exact_order() {
        for n in 1..=50usize {
            let p = Presentation::cyclic("a", n as u64).unwrap();
            let r = todd_coxeter(&p, DEFAULT_MAX_COSETS);
            assert_eq!(r.order(), Some(n), "Z/{n}");
        }
    }

    #[test]
    fn trivial_presentation_closes_immediately() {
        let r = todd_coxeter(&Presentation::trivial(), 10);
        assert_eq!(r.order(), Some(1));
    }

    #[test]
    fn free_group_is_inconclusive() {
        let r = order_of("gens: a ; rels:", 100);
        assert!(matches!(r, EnumerationResult::Inconclusive { .. }));
    }

    #[test]
    fn symmetric_group_s3() {
        let r = order_of("gens: a,b ; rels: a^2, b^2, a b a b a b", 1000);
        assert_eq!(r.order(), Some(6));
    }

    #[test]
    fn quaternion_group() {
        // <i, j | i^4, i^2 j^-2, j^-1 i j i>
        let r = order_of("gens: i,j ; rels: i^4, i^2 J^2, J i j i", 1000);
        assert_eq!(r.order(), Some(8));
    }

    #[test]
    fn binary_tetrahedral_via_triangle_presentation() {
        let r = order_of("gens: a,b,c ; rels: a^3 B^3, a^3 C^2, a^3 C B A", 10_000);
        assert_eq!(r.order(), Some(24));
    }

    #[test]
    fn binary_icosahedral_via_triangle_presentation() {
        let r = order_of("gens: a,b,c ; rels: a^5 B^3, a^5 C^2, a^5 C B A", 10_000);
        assert_eq!(r.order(), Some(120));
    }

    #[test]
    fn bounded_run_is_inconclusive_not_wrong() {
        let r = order_of("gens: a,b,c ; rels: a^5 B^3, a^5 C^2, a^5 C B A", 10);
        assert!(matches!(r, EnumerationResult::Inconclusive { .. }));
    }

    #[test]
    fn deterministic_tables() {
        let p = Presentation::parse("gens: a,b ; rels: a^2, b^3, a b a b a b a b").unwrap();
        let (r1, t1) = todd_coxeter_table(&p, 10_000);
        let (r2, t2) = todd_coxeter_table(&p, 10_000);
        assert_eq!(r1, r2);
        assert_eq!(t1, t2);
        assert_eq!(r1.order(), Some(24)); // (2,3,4) triangle-ish group
    }

    #[test]
    fn json_output_shapes() {
        let fin = EnumerationResult::Finite {
            order: 120,
            cosets_used: 131,
        };
        assert_eq!(
            fin.to_json(),
            r#"{"outcome":"finite","order":120,"cosets_used":131}"#
        );
        let inc = EnumerationResult::Inconclusive { cosets_used: 10 };
        assert_eq!(inc.to_json(), r#"{"outcome":"inconclusive","cosets_used":10}"#);
    }

    #[test]
    fn row_zero_is_subgroup_coset_and_table_closed() {
        let p = Presentation::parse("gens: a ; rels: a^4").unwrap();
        let (r, table) = todd_coxeter_table(&p, 100);
        assert_eq!(r.order(), Some(4));
        let table = table.unwrap();
        assert_eq!(table.rows.len(), 4);
        // column 0 is multiplication by a: row 0 cycles through all cosets
        let mut seen = vec![0usize];
        let mut x = 0usize;
        for _ in 0..3 {
            x = table.rows[x][0];
            seen.push(x);
        }
        seen.sort_unstable();
        assert_eq!(seen, vec![0, 1, 2, 3]);
        assert_eq!(table.rows[x][0], 0);
    }
}
