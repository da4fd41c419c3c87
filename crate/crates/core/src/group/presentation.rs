//! Finitely presented groups: generator names, relators, combinators,
//! Tietze elimination, abelianization, and the text/JSON formats.

use super::snf::{AbelianInvariants, IntegerMatrix};
use super::word::Word;
use super::GroupError;
use num_bigint::BigInt;
use std::collections::HashSet;
use std::fmt;

/// A finitely presented group: named generators and relator words.
/// Relators are stored freely reduced (a `Word` invariant); the identity
/// relator is permitted and harmless.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

/// Generator names are lowercase identifiers; the inverse of a generator
/// is written by capitalizing its first letter (`a` ↔ `A`, `g26` ↔ `G26`).
fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, GroupError> {
        let mut seen = HashSet::new();
        for name in &generators {
            if !valid_name(name) {
                return Err(GroupError::InvalidGeneratorName(name.clone()));
            }
            if !seen.insert(name.clone()) {
                return Err(GroupError::DuplicateGenerator(name.clone()));
            }
        }
        for rel in &relators {
            if let Some(g) = rel.max_generator() {
                if g >= generators.len() {
                    return Err(GroupError::UnknownGenerator(format!("#{g}")));
                }
            }
        }
        Ok(Presentation {
            generators,
            relators,
        })
    }

    /// The trivial presentation ( | ).
    pub fn trivial() -> Self {
        Presentation {
            generators: Vec::new(),
            relators: Vec::new(),
        }
    }

    /// Free group on the given generator names.
    pub fn free(names: &[&str]) -> Result<Self, GroupError> {
        Presentation::new(names.iter().map(|s| s.to_string()).collect(), Vec::new())
    }

    /// Cyclic presentation (name | name^p). For p = 0 this is Z.
    pub fn cyclic(name: &str, p: u64) -> Result<Self, GroupError> {
        let rels = if p == 0 {
            Vec::new()
        } else {
            vec![Word::from_pairs([(0, p as i64)])]
        };
        Presentation::new(vec![name.to_string()], rels)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn gen_count(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Parses a word over this presentation's generators from the space
    /// separated letter format (`c a b A^2`).
    pub fn word_from_text(&self, text: &str) -> Result<Word, GroupError> {
        let mut pairs = Vec::new();
        for token in text.split_whitespace() {
            let (letter, exp) = match token.split_once('^') {
                Some((l, e)) => {
                    let e: i64 = e
                        .parse()
                        .map_err(|_| GroupError::MalformedWord(token.to_string()))?;
                    (l, e)
                }
                None => (token, 1),
            };
            if letter.is_empty() {
                return Err(GroupError::MalformedWord(token.to_string()));
            }
            let mut chars = letter.chars();
            let first = chars.next().unwrap();
            let (name, exp) = if first.is_ascii_uppercase() {
                (
                    format!("{}{}", first.to_ascii_lowercase(), chars.as_str()),
                    -exp,
                )
            } else {
                (letter.to_string(), exp)
            };
            let idx = self
                .gen_index(&name)
                .ok_or(GroupError::UnknownGenerator(name))?;
            pairs.push((idx, exp));
        }
        Ok(Word::from_pairs(pairs))
    }

    /// Renders a word in the space separated letter format.
    pub fn word_to_text(&self, w: &Word) -> String {
        let mut parts = Vec::new();
        for &(g, e) in w.runs() {
            let name = &self.generators[g];
            let letter = if e < 0 {
                let mut c = name.chars();
                let first = c.next().unwrap().to_ascii_uppercase();
                format!("{}{}", first, c.as_str())
            } else {
                name.clone()
            };
            if e.abs() == 1 {
                parts.push(letter);
            } else {
                parts.push(format!("{}^{}", letter, e.abs()));
            }
        }
        parts.join(" ")
    }

    /// Free product: disjoint union of generators and relators, with the
    /// second factor's generators renamed on collision.
    pub fn free_product(&self, other: &Presentation) -> Presentation {
        let mut generators = self.generators.clone();
        let mut taken: HashSet<String> = generators.iter().cloned().collect();
        for name in &other.generators {
            let fresh = fresh_name(name, &mut taken);
            generators.push(fresh);
        }
        let offset = self.gen_count();
        let mut relators = self.relators.clone();
        relators.extend(other.relators.iter().map(|r| r.remap(|g| g + offset)));
        Presentation {
            generators,
            relators,
        }
    }

    /// Direct product: free product plus commutators [gᵢ, hⱼ] for every
    /// cross pair of generators.
    pub fn direct_product(&self, other: &Presentation) -> Presentation {
        let mut p = self.free_product(other);
        let offset = self.gen_count();
        for i in 0..self.gen_count() {
            for j in 0..other.gen_count() {
                let h = offset + j;
                p.relators
                    .push(Word::from_pairs([(i, 1), (h, 1), (i, -1), (h, -1)]));
            }
        }
        p
    }

    /// Quotient by the normal closure of `w`: appends `w` as a relator.
    pub fn quotient_by_relator(&self, w: &Word) -> Result<Presentation, GroupError> {
        if let Some(g) = w.max_generator() {
            if g >= self.gen_count() {
                return Err(GroupError::UnknownGenerator(format!("#{g}")));
            }
        }
        let mut p = self.clone();
        p.relators.push(w.clone());
        Ok(p)
    }

    /// Repeatedly eliminates generators that some relator defines in terms
    /// of the others: whenever a relator contains a generator exactly once
    /// (with exponent ±1), that relator can be rotated to `g w⁻¹`, the
    /// generator replaced by `w` everywhere, and both dropped. The lowest
    /// eligible generator index goes first, so the result is deterministic.
    /// Terminates because the generator count strictly decreases.
    pub fn tietze_eliminate(&self) -> Presentation {
        let mut p = self.clone();
        p.normalize_relators();
        loop {
            let Some((gen, rel_idx)) = p.find_eliminable() else {
                break;
            };
            let relator = p.relators.remove(rel_idx);
            let replacement = solve_for(&relator, gen);
            for r in &mut p.relators {
                *r = r.substitute(gen, &replacement);
            }
            // Drop the generator and shift higher indices down.
            p.generators.remove(gen);
            for r in &mut p.relators {
                *r = r.remap(|g| if g > gen { g - 1 } else { g });
            }
            p.normalize_relators();
        }
        p
    }

    fn find_eliminable(&self) -> Option<(usize, usize)> {
        for gen in 0..self.gen_count() {
            for (idx, rel) in self.relators.iter().enumerate() {
                if rel.occurrences(gen) == 1 {
                    return Some((gen, idx));
                }
            }
        }
        None
    }

    /// Cyclically reduces relators, drops identities, and deduplicates
    /// relators that agree up to rotation and inversion. All three steps
    /// preserve the normal closure.
    fn normalize_relators(&mut self) {
        let mut seen = HashSet::new();
        let mut kept = Vec::new();
        for rel in &self.relators {
            let reduced = rel.cyclically_reduce();
            if reduced.is_empty() {
                continue;
            }
            if seen.insert(reduced.relator_key()) {
                kept.push(reduced);
            }
        }
        self.relators = kept;
    }

    /// Exponent-sum matrix of the relators (one row per relator).
    pub fn relation_matrix(&self) -> IntegerMatrix {
        let rows = self
            .relators
            .iter()
            .map(|rel| {
                (0..self.gen_count())
                    .map(|g| BigInt::from(rel.exponent_sum_of(g)))
                    .collect()
            })
            .collect::<Vec<Vec<BigInt>>>();
        if rows.is_empty() {
            IntegerMatrix::zero(0, self.gen_count())
        } else {
            IntegerMatrix::from_bigint_rows(rows)
        }
    }

    /// First homology of the presented group: Smith normal form of the
    /// relator exponent-sum matrix, with unit factors dropped.
    pub fn abelianize(&self) -> AbelianInvariants {
        AbelianInvariants::from_relation_matrix(&self.relation_matrix(), self.gen_count())
    }

    /// Parses the text format `gens: a,b ; rels: a b a B A B, ...`.
    pub fn parse(text: &str) -> Result<Presentation, GroupError> {
        let text = text.trim();
        let (gens_part, rels_part) = text
            .split_once(';')
            .ok_or_else(|| GroupError::MalformedPresentation("missing ';'".into()))?;
        let gens_body = gens_part
            .trim()
            .strip_prefix("gens:")
            .ok_or_else(|| GroupError::MalformedPresentation("missing 'gens:'".into()))?;
        let rels_body = rels_part
            .trim()
            .strip_prefix("rels:")
            .ok_or_else(|| GroupError::MalformedPresentation("missing 'rels:'".into()))?;
        let generators: Vec<String> = gens_body
            .split(',')
            .map(|s| s.trim().to_string())
            .filter(|s| !s.is_empty())
            .collect();
        let p = Presentation::new(generators, Vec::new())?;
        let mut relators = Vec::new();
        for rel_text in rels_body.split(',') {
            let rel_text = rel_text.trim();
            if rel_text.is_empty() {
                continue;
            }
            relators.push(p.word_from_text(rel_text)?);
        }
        Presentation::new(p.generators, relators)
    }

    /// JSON mirror with explicit exponents:
    /// `{"generators":["a","b"],"relators":[[["a",1],["b",-1]]]}`.
    pub fn to_json(&self) -> String {
        let doc = PresentationJson {
            generators: self.generators.clone(),
            relators: self
                .relators
                .iter()
                .map(|r| {
                    r.runs()
                        .iter()
                        .map(|&(g, e)| (self.generators[g].clone(), e))
                        .collect()
                })
                .collect(),
        };
        serde_json::to_string(&doc).expect("presentation serializes")
    }

    pub fn from_json(text: &str) -> Result<Presentation, GroupError> {
        let doc: PresentationJson = serde_json::from_str(text)
            .map_err(|e| GroupError::MalformedPresentation(e.to_string()))?;
        let p = Presentation::new(doc.generators, Vec::new())?;
        let mut relators = Vec::new();
        for rel in doc.relators {
            let mut pairs = Vec::new();
            for (name, exp) in rel {
                let idx = p
                    .gen_index(&name)
                    .ok_or(GroupError::UnknownGenerator(name))?;
                pairs.push((idx, exp));
            }
            relators.push(Word::from_pairs(pairs));
        }
        Presentation::new(p.generators, relators)
    }
}

#[derive(serde::Serialize, serde::Deserialize)]
struct PresentationJson {
    generators: Vec<String>,
    relators: Vec<Vec<(String, i64)>>,
}

fn fresh_name(base: &str, taken: &mut HashSet<String>) -> String {
    if taken.insert(base.to_string()) {
        return base.to_string();
    }
    let mut k = 2usize;
    loop {
        let candidate = format!("{base}{k}");
        if taken.insert(candidate.clone()) {
            return candidate;
        }
        k += 1;
    }
}

/// Given a relator with exactly one occurrence of `gen` (exponent ±1),
/// returns the word the relator equates it to: rotate the relator so the
/// `gen` letter leads, then `g w = 1 ⇒ g = w⁻¹` (or `g⁻¹ w = 1 ⇒ g = w`).
fn solve_for(relator: &Word, gen: usize) -> Word {
    let letters: Vec<(usize, i64)> = relator.letters().collect();
    let pos = letters
        .iter()
        .position(|&(g, _)| g == gen)
        .expect("generator occurs in relator");
    let sign = letters[pos].1;
    let mut rest: Vec<(usize, i64)> = letters[pos + 1..].to_vec();
    rest.extend_from_slice(&letters[..pos]);
    let w = Word::from_pairs(rest);
    if sign > 0 {
        w.inverse()
    } else {
        w
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gens: {} ; rels: ", self.generators.join(","))?;
        let rels: Vec<String> = self.relators.iter().map(|r| self.word_to_text(r)).collect();
        write!(f, "{}", rels.join(", "))
    }
}
