//! Group identification: coset enumeration for finite order, and
//! homomorphism counting into small symmetric groups.

mod coset;
mod homs;

pub use coset::{
    todd_coxeter, todd_coxeter_table, CosetTable, EnumerationResult, DEFAULT_MAX_COSETS,
};
pub use homs::{
    count_homs, count_homs_with_budget, count_surjections, distinguish, verdict_to_json,
    Verdict, Witness, DEFAULT_HOM_BUDGET, DISTINGUISH_MAX_COSETS,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalysisError {
    #[error("search too large: {0}")]
    SearchTooLarge(String),
}
