use thiserror::Error;

use crate::catalog::EntryId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point {t} is not in the time scale")]
    PointNotInScale { t: f64 },

    #[error("delta derivative is not uniquely defined at the left-scattered maximum {t}")]
    NotInKappa { t: f64 },

    #[error("nabla derivative is not uniquely defined at the right-scattered minimum {t}")]
    NotInNablaKappa { t: f64 },

    #[error("non-finite value encountered: {0}")]
    NonFiniteValue(String),

    #[error("time scale has no points in [{a}, {b}]")]
    EmptyWindow { a: f64, b: f64 },

    #[error("window [{a}, {b}] holds more than {limit} scattered points")]
    WindowTooLarge { a: f64, b: f64, limit: usize },

    #[error("quadrature did not converge within {budget} subintervals (error estimate {estimate:e})")]
    QuadratureNoConvergence { budget: usize, estimate: f64 },

    #[error("{id}: {detail}")]
    DomainViolation { id: EntryId, detail: String },

    #[error("{id}: {detail}")]
    ParamViolation { id: EntryId, detail: String },

    #[error("function is not differentiable at {t}: one-sided slopes {left} and {right} disagree")]
    NotDifferentiable { t: f64, left: f64, right: f64 },

    #[error("bad scale description: {0}")]
    BadScaleSpec(String),

    #[error("syntax error at byte {offset}: expected {}", expected.join(" or "))]
    Syntax { offset: usize, expected: Vec<String> },

    #[error("expression nesting exceeds depth {0}")]
    DepthExceeded(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
