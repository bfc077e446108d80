use thiserror::Error;

use crate::rational::Prob;

/// Errors raised by the calculus and the update rules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("weights sum to {sum}, expected 1")]
    WeightSumNotOne { sum: Prob },

    #[error("element `{element}` is not in space `{space}`")]
    UnknownElement { space: String, element: String },

    #[error("element `{element}` listed more than once in `{context}`")]
    DuplicateElement { context: String, element: String },

    #[error("space `{0}` has no elements")]
    EmptySpace(String),

    #[error("value {value} for `{element}` is outside [0, 1]")]
    ValueOutOfRange { element: String, value: Prob },

    #[error("space mismatch: expected `{expected}`, found `{found}`")]
    SpaceMismatch { expected: String, found: String },

    #[error("validity is zero, conditioning is undefined")]
    ZeroValidity,

    #[error("transformed state has no mass at `{element}` (full support required)")]
    NotFullSupport { element: String },

    #[error("evidence state is positive at `{element}` where the reference state is zero")]
    DivisionBySupportGap { element: String },

    #[error("block `{block}` carries evidence mass but has zero prior mass")]
    EmptyBlockWithMass { block: String },

    #[error("channel is not deterministic: row `{element}` is not a point mass")]
    NotDeterministic { element: String },

    #[error("event {event} is degenerate for this prior and strength")]
    DegenerateEvent { event: String },

    #[error("Bayes factor update has a zero denominator")]
    DegenerateDenominator,

    #[error("invalid event: {0}")]
    InvalidEvent(String),

    #[error("Bayes factor must be positive, got {0}")]
    NonPositiveFactor(Prob),

    #[error("space `{0}` is not a product space")]
    NotAProductSpace(String),

    #[error("evidence space `{space}` has {size} elements, a sweep needs exactly 2")]
    NonBinaryEvidenceSpace { space: String, size: usize },

    #[error("sweep needs at least one step")]
    ZeroSteps,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
