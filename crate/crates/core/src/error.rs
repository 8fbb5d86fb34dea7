use crate::instances::{Id, Obstruction};
use crate::lp::LpError;

/// Errors shared by the kernels.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KernelError {
    #[error("rank d = {0} is too small; the kernel needs d >= 2")]
    RankTooSmall(usize),
    #[error("epsilon must satisfy 0 < epsilon < 1, got {0}")]
    BadEpsilon(String),
    #[error("assignment is not an optimal LP solution")]
    NotOptimal,
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error("G - support(alpha) is not acyclic")]
    NotAcyclic,
    #[error("vertex {0} has no well-defined position")]
    PositionUndefined(Id),
    #[error("solution of the reduced instance is invalid: {0:?}")]
    InvalidReducedSolution(Obstruction),
    #[error("lifted set is not a solution: {0:?}")]
    LiftInvalid(Obstruction),
}
