use thiserror::Error;

use crate::numeric::Rational;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the toolkit can report.
///
/// Variants fall into three families that the command line maps onto stable
/// exit codes: malformed input, violated preconditions, and resource caps.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("coordinate {coord} is not bounded by the LP relaxation and no bounding box was supplied")]
    PotentiallyUnbounded { coord: usize },

    #[error("polyhedron is unbounded")]
    Unbounded,

    #[error("polyhedron is empty")]
    EmptyPolyhedron,

    #[error("polyhedron is not full-dimensional")]
    NotFullDimensional,

    #[error("target form is not in the cone spanned by the generators")]
    NotInCone { separator: Vec<Rational> },

    #[error("decomposition support {found} exceeds the cap {cap}")]
    SupportCapExceeded { found: usize, cap: usize },

    #[error("system is feasible")]
    SystemFeasible,

    #[error("no infeasible subsystem with at most {budget} forms")]
    NoCertificateWithinBudget { budget: usize },

    #[error("box radius exceeded t_max = {t_max} without a box-free certificate")]
    TmaxExceeded { t_max: Rational },

    #[error("no relaxation step 2^-{max_halvings} keeps the relaxed polytope free of space points")]
    EpsilonExhausted { max_halvings: u32 },

    #[error("supremum is unbounded")]
    SupremumUnbounded,

    #[error("supremum over an empty region")]
    SupremumInfeasible,

    #[error("node cap of {cap} reached")]
    NodeCap { cap: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    pub fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub fn precondition(message: impl Into<String>) -> Self {
        Error::Precondition(message.into())
    }

    /// Process exit code: 2 input error, 3 precondition violation, 4 resource cap.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::DimensionMismatch { .. } => 2,
            Error::NodeCap { .. } => 4,
            _ => 3,
        }
    }
}
