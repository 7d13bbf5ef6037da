//! Idempotent-matrix decompositions and the splitting along disjoint components.

mod full;
mod orbits;
mod profile;
mod system;
mod tensor;

pub use full::{cyclo_transport, full_decompose, generators, CycloReport, FullDecomposition, TensorMatrix};
pub use orbits::orbit_bijection_check;
pub use profile::{profile_system, MatrixElement, ProfileSystem};
pub use system::{validate_system, IdempotentSystem, SystemReport};
pub use tensor::{rho, TensorElement, TensorStructure};

use crate::quiver::QuiverError;
use crate::smash::SmashError;
use crate::vvalgebra::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecompositionError {
    #[error("partition is not component stable: {0}")]
    NotComponentStable(String),
    #[error("orbit is not a full group orbit: {0}")]
    NotFullOrbit(String),
    #[error("element is not supported in the requested corner")]
    CornerMismatch,
    #[error("element is not supported in e(t^beta) A e(t^beta)")]
    NotInCorner,
    #[error("group part {0} is not block diagonal")]
    NotBlockSupported(String),
    #[error("system data has mismatched lengths")]
    ShapeMismatch,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl From<SmashError> for DecompositionError {
    fn from(e: SmashError) -> Self {
        DecompositionError::Algebra(AlgebraError::Smash(e))
    }
}

impl From<QuiverError> for DecompositionError {
    fn from(e: QuiverError) -> Self {
        match e {
            QuiverError::NotComponentStable(s) => DecompositionError::NotComponentStable(s),
            other => DecompositionError::Algebra(AlgebraError::Quiver(other)),
        }
    }
}
