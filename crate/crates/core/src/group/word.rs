//! Words in a free group, stored in freely reduced run-length form.

/// A freely reduced word over indexed generators.
///
/// Internally a word is a sequence of runs `(generator, exponent)` with
/// nonzero exponents and no two adjacent runs sharing a generator. That
/// normal form is unique for each free-group element, so `Eq` compares
/// words as elements of the free group. The empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word {
    runs: Vec<(usize, i64)>,
}

impl Word {
    /// The identity element.
    pub fn empty() -> Self {
        Word { runs: Vec::new() }
    }

    /// The one-letter word `g`.
    pub fn generator(g: usize) -> Self {
        Word { runs: vec![(g, 1)] }
    }

    /// Builds a word from `(generator, exponent)` pairs, freely reducing
    /// as it goes. Adjacent pairs with the same generator are summed and
    /// cancellations propagate, so the result is always in normal form.
    pub fn from_pairs<I: IntoIterator<Item = (usize, i64)>>(pairs: I) -> Self {
        let mut w = Word::empty();
        for (g, e) in pairs {
            w.push_run(g, e);
        }
        w
    }

    /// Freely reduces a word. Words are kept reduced as an invariant, so
    /// this is the identity function; it exists so callers can normalize
    /// letter sequences explicitly and is idempotent by construction.
    pub fn free_reduce(&self) -> Word {
        self.clone()
    }

    fn push_run(&mut self, g: usize, e: i64) {
        if e == 0 {
            return;
        }
        match self.runs.last_mut() {
            Some((last_g, last_e)) if *last_g == g => {
                *last_e += e;
                if *last_e == 0 {
                    self.runs.pop();
                }
            }
            _ => self.runs.push((g, e)),
        }
    }

    pub fn runs(&self) -> &[(usize, i64)] {
        &self.runs
    }

    /// Expanded letters, each with exponent ±1.
    pub fn letters(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.runs.iter().flat_map(|&(g, e)| {
            let sign = e.signum();
            (0..e.unsigned_abs()).map(move |_| (g, sign))
        })
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    /// Expanded length Σ|eᵢ|.
    pub fn len(&self) -> usize {
        self.runs.iter().map(|(_, e)| e.unsigned_abs() as usize).sum()
    }

    pub fn inverse(&self) -> Word {
        Word {
            runs: self.runs.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &(g, e) in &other.runs {
            w.push_run(g, e);
        }
        w
    }

    pub fn pow(&self, k: i64) -> Word {
        if k == 0 {
            return Word::empty();
        }
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::empty();
        for _ in 0..k.unsigned_abs() {
            w = w.concat(&base);
        }
        w
    }

    /// Total exponent sum over all generators.
    pub fn exponent_sum(&self) -> i64 {
        self.runs.iter().map(|(_, e)| e).sum()
    }

    /// Exponent sum of a single generator.
    pub fn exponent_sum_of(&self, g: usize) -> i64 {
        self.runs.iter().filter(|(h, _)| *h == g).map(|(_, e)| e).sum()
    }

    /// Number of expanded letters carrying generator `g`.
    pub fn occurrences(&self, g: usize) -> usize {
        self.runs
            .iter()
            .filter(|(h, _)| *h == g)
            .map(|(_, e)| e.unsigned_abs() as usize)
            .sum()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.runs.iter().map(|(g, _)| *g).max()
    }

    /// Replaces every occurrence of `g` by `replacement` (and `g⁻¹` by its
    /// inverse), freely reducing the result.
    pub fn substitute(&self, g: usize, replacement: &Word) -> Word {
        let mut w = Word::empty();
        let inv = replacement.inverse();
        for &(h, e) in &self.runs {
            if h == g {
                let rep = if e > 0 { replacement } else { &inv };
                for _ in 0..e.unsigned_abs() {
                    for &(rg, re) in &rep.runs {
                        w.push_run(rg, re);
                    }
                }
            } else {
                w.push_run(h, e);
            }
        }
        w
    }

    /// Applies an index map to every generator.
    pub fn remap(&self, f: impl Fn(usize) -> usize) -> Word {
        Word::from_pairs(self.runs.iter().map(|&(g, e)| (f(g), e)))
    }

    /// Cyclically reduced form: strips matching inverse letters from the
    /// two ends. The result is conjugate to `self`, so it generates the
    /// same normal closure when used as a relator.
    pub fn cyclically_reduce(&self) -> Word {
        let mut letters: Vec<(usize, i64)> = self.letters().collect();
        while letters.len() >= 2 {
            let first = letters[0];
            let last = *letters.last().unwrap();
            if first.0 == last.0 && first.1 == -last.1 {
                letters.remove(0);
                letters.pop();
            } else {
                break;
            }
        }
        Word::from_pairs(letters)
    }

    /// Canonical representative of the relator class of `self`: the
    /// lexicographically least letter sequence over all cyclic rotations
    /// of the cyclically reduced word and of its inverse. Two relators
    /// with the same key generate the same normal closure trivially.
    pub fn relator_key(&self) -> Vec<(usize, i64)> {
        let reduced = self.cyclically_reduce();
        let letters: Vec<(usize, i64)> = reduced.letters().collect();
        if letters.is_empty() {
            return letters;
        }
        let inv: Vec<(usize, i64)> = letters.iter().rev().map(|&(g, e)| (g, -e)).collect();
        let mut best: Option<Vec<(usize, i64)>> = None;
        for seq in [&letters, &inv] {
            for r in 0..seq.len() {
                let mut rot: Vec<(usize, i64)> = seq[r..].to_vec();
                rot.extend_from_slice(&seq[..r]);
                if best.as_ref().map_or(true, |b| rot < *b) {
                    best = Some(rot);
                }
            }
        }
        best.unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancelling_pair_reduces_to_identity() {
        let w = Word::from_pairs([(0, 1), (0, -1)]);
        assert!(w.is_empty());
    }

    #[test]
    fn irreducible_word_unchanged() {
        let w = Word::from_pairs([(2, 1), (0, 1), (1, 1)]);
        assert_eq!(w.runs(), &[(2, 1), (0, 1), (1, 1)]);
        assert_eq!(w.free_reduce(), w);
    }

    #[test]
    fn nested_cancellations_collapse() {
        // c a b a⁻¹ a a⁻¹ a⁻¹ → c a b a⁻²
        let w = Word::from_pairs([
            (2, 1),
            (0, 1),
            (1, 1),
            (0, -1),
            (0, 1),
            (0, -1),
            (0, -1),
        ]);
        assert_eq!(w.runs(), &[(2, 1), (0, 1), (1, 1), (0, -2)]);
    }

    #[test]
    fn reduce_is_idempotent_and_length_nonincreasing() {
        let raw = [(0, 1), (1, -1), (1, 1), (0, -1), (2, 3)];
        let w = Word::from_pairs(raw);
        assert!(w.len() <= raw.iter().map(|(_, e)| e.unsigned_abs() as usize).sum());
        assert_eq!(w.free_reduce(), w);
        assert_eq!(Word::from_pairs(w.letters()), w);
    }

    #[test]
    fn inverse_concat_is_identity() {
        let w = Word::from_pairs([(0, 2), (1, -1), (2, 1)]);
        assert!(w.concat(&w.inverse()).is_empty());
        assert!(w.inverse().concat(&w).is_empty());
    }

    #[test]
    fn substitute_replaces_both_signs() {
        // w = a b a⁻¹, replace b by c² → a c² a⁻¹
        let w = Word::from_pairs([(0, 1), (1, 1), (0, -1)]);
        let rep = Word::from_pairs([(2, 2)]);
        assert_eq!(w.substitute(1, &rep).runs(), &[(0, 1), (2, 2), (0, -1)]);
        // b⁻¹ picks up the inverse of the replacement
        let w2 = Word::from_pairs([(1, -1)]);
        assert_eq!(w2.substitute(1, &rep).runs(), &[(2, -2)]);
    }

    #[test]
    fn cyclic_reduction_strips_conjugation() {
        // a⁻¹ (b c) a cyclically reduces to b c
        let w = Word::from_pairs([(0, -1), (1, 1), (2, 1), (0, 1)]);
        assert_eq!(w.cyclically_reduce().runs(), &[(1, 1), (2, 1)]);
    }

    #[test]
    fn relator_key_identifies_rotations_and_inverses() {
        let r = Word::from_pairs([(1, -1), (2, -1), (1, -1), (2, 1), (1, 1), (2, 1)]);
        let r_inv = r.inverse();
        let rotated = Word::from_pairs([(2, 1), (1, 1), (2, 1), (1, -1), (2, -1), (1, -1)]);
        assert_eq!(r.relator_key(), r_inv.relator_key());
        assert_eq!(r.relator_key(), rotated.relator_key());
    }
}
