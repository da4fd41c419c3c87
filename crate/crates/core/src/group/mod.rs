//! Finitely presented groups and the integer linear algebra behind
//! their abelianizations.

mod presentation;
mod snf;
mod word;

pub use presentation::Presentation;
pub use snf::{smith_normal_form, AbelianInvariants, IntegerMatrix, SmithNormalForm};
pub use word::Word;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("invalid generator name: {0:?}")]
    InvalidGeneratorName(String),
    #[error("duplicate generator: {0:?}")]
    DuplicateGenerator(String),
    #[error("unknown generator: {0}")]
    UnknownGenerator(String),
    #[error("malformed word token: {0:?}")]
    MalformedWord(String),
    #[error("malformed presentation: {0}")]
    MalformedPresentation(String),
    #[error("negative parameter: {0}")]
    NegativeParameter(i64),
}
