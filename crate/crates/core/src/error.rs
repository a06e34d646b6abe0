//! Error type shared by every module of the crate.

use thiserror::Error;

/// Broad class of an error, used by the command line front end to pick an
/// exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Parse,
    Validation,
    Math,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GwaError {
    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,
    #[error("characteristic polynomial does not split: irreducible factor {factor} has degree > 1 over Q(zeta_{conductor}); enlarge the conductor")]
    NonSplitSpectrum { factor: String, conductor: u32 },
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("invalid break index: {0}")]
    InvalidBreakIndex(String),
    #[error("monodromy operator is singular")]
    SingularF,
    #[error("precondition on breaks violated: {0}")]
    PreconditionBreaks(String),
    #[error("module contains a letter 0; split it first")]
    ZeroLetterPresent,
    #[error("root extraction needed: {0}")]
    RootExtractionNeeded(String),
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("graph condition (a) violated: {0}")]
    GraphWeight(String),
    #[error("graph condition (b) violated: {0}")]
    GraphSource(String),
    #[error("graph condition (c) violated: {0}")]
    GraphSink(String),
    #[error("graph condition (d) violated: {0}")]
    GraphLabel(String),
    #[error("graph condition (e) violated: {0}")]
    GraphScalarZero(String),
    #[error("graph condition (f) violated: {0}")]
    GraphScalarProduct(String),
    #[error("graph component is neither a path nor a cycle: {0}")]
    GraphShape(String),
    #[error("ParseError at offset {offset}: {msg}")]
    Parse { offset: usize, msg: String },
}

impl GwaError {
    pub fn class(&self) -> ErrorClass {
        match self {
            GwaError::Parse { .. } => ErrorClass::Parse,
            GwaError::NonSplitSpectrum { .. }
            | GwaError::RootExtractionNeeded(_)
            | GwaError::ZeroConstantTerm
            | GwaError::UnsupportedShape(_)
            | GwaError::ZeroLetterPresent => ErrorClass::Math,
            _ => ErrorClass::Validation,
        }
    }
}

pub type Result<T> = std::result::Result<T, GwaError>;
