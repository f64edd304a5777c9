use thiserror::Error;

use crate::index::IndexPair;
use crate::patterns::Witness;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("{}", semantic_message(*.line, .message))]
    Semantic { line: Option<usize>, message: String },

    #[error("the automaton accepts no tree; its normal form is undefined")]
    EmptyLanguage,

    #[error("ranks do not fit the index {expected} required by this construction")]
    IndexTooHigh { expected: IndexPair },

    #[error("precondition violated: {reason}")]
    PreconditionViolated { reason: String, witness: Option<Box<Witness>> },

    #[error(
        "the language is weakly recognizable with index {attainable}, \
         but that construction is not supported"
    )]
    UnsupportedGapConstruction { attainable: IndexPair, witness: Box<Witness> },

    #[error("the language is not Borel, hence not weakly recognizable")]
    NonWeaklyRecognizable { witness: Box<Witness> },

    #[error("alphabets differ: {left:?} vs {right:?}")]
    AlphabetMismatch { left: Vec<String>, right: Vec<String> },

    #[error("tree label `{0}` is not in the alphabet")]
    LabelOutsideAlphabet(String),

    #[error("rank {rank} lies outside the band {band}")]
    RankOutsideBand { rank: u32, band: IndexPair },

    #[error("input has {size} elements, limit is {limit}")]
    SizeGuard { size: usize, limit: usize },

    #[error("enumeration budget of {0} exceeded")]
    BudgetExceeded(usize),

    #[error("invalid index ({iota},{kappa})")]
    InvalidIndex { iota: u32, kappa: u32 },
}

fn semantic_message(line: Option<usize>, message: &str) -> String {
    match line {
        Some(line) => format!("line {line}: {message}"),
        None => message.to_string(),
    }
}

impl Error {
    pub(crate) fn semantic(message: impl Into<String>) -> Self {
        Error::Semantic { line: None, message: message.into() }
    }

    pub(crate) fn semantic_at(line: usize, message: impl Into<String>) -> Self {
        Error::Semantic { line: Some(line), message: message.into() }
    }

    pub(crate) fn syntax(line: usize, message: impl Into<String>) -> Self {
        Error::Syntax { line, message: message.into() }
    }
}
