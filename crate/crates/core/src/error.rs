use thiserror::Error;

use crate::matching::FeasibilityViolation;
use crate::model::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("instance failed validation: {0}")]
    InvalidInstance(ValidationReport),

    #[error("matching is not feasible: {}", display_violations(.0))]
    InfeasibleInput(Vec<FeasibilityViolation>),

    #[error(
        "instance is not divisible (capacities differ or a location population is not a multiple of the capacity)"
    )]
    NotDivisible,

    #[error("instance has no feasible matching")]
    InfeasibleInstance,

    #[error("enumeration limit of {0} matchings reached")]
    LimitExceeded(u64),

    #[error("invalid reduction input: {0}")]
    InvalidReductionInput(String),

    #[error("3-partition instance does not satisfy T/4 < a < T/2 for every item")]
    BoundsNotStrict,

    #[error("edge gadget ({i},{j}) is not a single cycle of length {expected}: {detail}")]
    GadgetCycleBroken {
        i: usize,
        j: usize,
        expected: usize,
        detail: String,
    },

    #[error("vertex set is not a cover: edge ({0},{1}) is uncovered")]
    NotACover(usize, usize),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable machine-readable code for the error kind.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidInstance(_) => "INVALID_INSTANCE",
            Error::InfeasibleInput(_) => "INFEASIBLE_INPUT",
            Error::NotDivisible => "NOT_DIVISIBLE",
            Error::InfeasibleInstance => "INFEASIBLE_INSTANCE",
            Error::LimitExceeded(_) => "LIMIT_EXCEEDED",
            Error::InvalidReductionInput(_) => "INVALID_REDUCTION_INPUT",
            Error::BoundsNotStrict => "BOUNDS_NOT_STRICT",
            Error::GadgetCycleBroken { .. } => "GADGET_CYCLE_BROKEN",
            Error::NotACover(..) => "NOT_A_COVER",
            Error::Json(_) => "JSON",
        }
    }
}

fn display_violations(v: &[FeasibilityViolation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
