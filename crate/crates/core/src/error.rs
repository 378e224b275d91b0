use thiserror::Error;

use crate::algebra::Var;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable mismatch: {left} vs {right}")]
    VarMismatch { left: Var, right: Var },

    #[error("division by a series that is zero to its truncation order")]
    DivisionByZero,

    #[error("dividend does not vanish to order {order} required by the divisor's valuation")]
    NotDivisible { order: usize },

    #[error("composition requires an inner series with zero constant term")]
    NonZeroConstant,

    #[error("series reversion requires a nonzero linear coefficient")]
    ZeroLinearCoefficient,

    #[error("square root of a series with odd valuation {0}")]
    OddValuation(usize),

    #[error("square root: leading coefficient {0} is not a rational square")]
    NotASquare(String),

    #[error("quadratic equation is degenerate (A = B = 0)")]
    DegenerateQuadratic,

    #[error("no root of the quadratic matches the seed: {0}")]
    NoSeededRoot(String),

    #[error("pole at {var} = 0 is not cancelled by the numerator")]
    PoleNotCancelled { var: Var },

    #[error("division by the zero rational function")]
    ZeroRationalFunction,

    #[error("insufficient truncation: need order {needed}, have {available}")]
    Truncation { needed: usize, available: usize },

    #[error("degenerate Moebius map: {0}")]
    DegenerateMoebius(String),

    #[error("{check} failed: {detail}")]
    Inconsistent { check: String, detail: String },

    #[error("stabilization assumption violated: {0}")]
    Stabilization(String),

    #[error("resource bound exceeded: {0}")]
    ResourceBound(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn inconsistent(check: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Inconsistent {
            check: check.into(),
            detail: detail.into(),
        }
    }
}
