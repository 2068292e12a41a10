//! Braiding of Majorana zero modes: words, signed permutations, Fock
//! unitaries and logical gates.

mod logical;
mod perm;
mod unitary;
mod word;

use thiserror::Error;

use crate::algebra::AlgebraError;

pub use logical::{
    clifford_closure, logical_gate_from_word, CliffordClosure, LogicalGate, QubitEncoding,
    LEAKAGE_TOL, UNITARY_TOL,
};
pub use perm::{word_action, word_action_with_gauge, BraidGauge, SignedPermutation};
pub use unitary::{
    distance_mod_phase, representation_consistency, representation_residual,
    verify_braid_relations, verify_braid_relations_with_gauge, word_unitary, BraidRelationReport,
    RelationCheck, Representation, FOCK_RELATION_TOL,
};
pub use word::{parse_braid_word, BraidLetter, BraidWord};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BraidError {
    #[error("malformed token {token:?} at byte {position}")]
    Malformed { token: String, position: usize },
    #[error("generator B{generator} outside [1, {}]{}", n_strands - 1, position.map(|p| format!(" at byte {p}")).unwrap_or_default())]
    OutOfRange { generator: usize, n_strands: usize, position: Option<usize> },
    #[error("exponent {0} is not ±1")]
    BadExponent(i8),
    #[error("a braid needs at least 2 strands, got {0}")]
    TooFewStrands(usize),
    #[error("words on {0} and {1} strands do not combine")]
    StrandMismatch(usize, usize),
    #[error("{n_modes} modes hold fewer than {n_strands} Majoranas")]
    TooFewModes { n_modes: usize, n_strands: usize },
    #[error("matrix is not unitary (residual {0:e})")]
    NotUnitary(f64),
    #[error("braid leaks out of the code space (norm {0:e})")]
    Leakage(f64),
    #[error("closure cap {0} is below the 24 elements of the Clifford group")]
    CapTooSmall(usize),
    #[error("gate JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
