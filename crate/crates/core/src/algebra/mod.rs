//! Exact Majorana operator algebra and its Fock-space representation.

mod convert;
mod fock;
mod monomial;

use thiserror::Error;

pub use convert::{
    basis_convert, dirac_in_majoranas, number_operator, u1_rotate_modes, ConversionDirection,
    DiracOp, DiracSum, Ladder, MajoranaSum, ModeConversion, ModeRotation,
};
pub use fock::{
    fock_representation, superselection_expectation, FockOperator, FockRepresentation,
    ParitySector, ParitySectorProjector, SuperselectionElement, ALGEBRA_TOL, MAX_FOCK_MODES,
};
pub use monomial::{parity_monomial, total_parity_monomial, MajoranaMonomial};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("generator index {index} outside [1, {max}]")]
    GeneratorOutOfRange { index: usize, max: usize },
    #[error("mode {mode} outside [1, {n_modes}]")]
    ModeOutOfRange { mode: usize, n_modes: usize },
    #[error("operands live on {0} and {1} modes")]
    ModeCountMismatch(usize, usize),
    #[error("support {0:?} is not strictly ascending")]
    NonCanonicalSupport(Vec<usize>),
    #[error("{n_modes} modes exceeds the dense Fock cap of {max}")]
    FockTooLarge { n_modes: usize, max: usize },
    #[error("expected dimension {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid occupation string {0:?}")]
    InvalidOccupation(Vec<u8>),
    #[error("state is not a {expected:?} parity eigenstate (residual {residual:e})")]
    NotParityEigenstate { expected: ParitySector, residual: f64 },
}
