use alloc::string::String;

use crate::ConceptId;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("concept {id} ({title}) has no vocabulary tokens")]
    EmptyConcept { id: ConceptId, title: String },
    #[error("no concepts to index")]
    NoConcepts,
    #[error("interpretation vector is already second-order")]
    AlreadySecondOrder,
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("sequence lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("correlation undefined for a constant sequence")]
    ConstantSequence,
    #[error("correlation {0} outside the open interval (-1, 1)")]
    CorrelationOutOfRange(f64),
    #[error("sample size {0} too small for Fisher z (need > 3)")]
    SampleTooSmall(usize),
    #[error("break-even point cannot be extrapolated from the given points")]
    NoBreakEven,
    #[error("no positive examples for {0}")]
    NoPositives(String),
    #[error("training set has no {0} examples")]
    EmptyClass(&'static str),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
