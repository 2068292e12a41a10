//! Bogoliubov-de Gennes solvers for the spinless p-wave chain and the
//! Rashba nanowire.

mod continuum;
mod kitaev;
mod matrix;
mod nanowire;
mod oracle;
mod sturm;
mod topology;
mod zero_modes;

use thiserror::Error;

pub use continuum::{
    analytic_zero_mode_envelope, continuum_dispersion, effective_params, envelope_norm,
    EffectiveParams,
};
pub use kitaev::{build_kitaev_bdg, kitaev_bloch, KitaevChainParams};
pub use matrix::{
    diagonalize, eigenvalues, pairing_residual, BdGMatrix, NambuLayout, Spectrum, HERMITIAN_TOL,
};
pub use nanowire::{build_nanowire_bdg, nanowire_bloch, NanowireParams, InSb};
pub use oracle::{many_body_oracle, ManyBodyComparison, MAX_ORACLE_SITES};
pub use sturm::{zero_mode_onset, BlockTridiagonal};
pub use topology::{
    bloch_gap, bulk_gap, pfaffian, topological_charge, ChargeMethod, ModelParams, Z2Charge,
};
pub use zero_modes::{find_zero_modes, tail_decay_length, ZeroModeReport};

/// Boundary conditions of a finite chain.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    #[default]
    Open,
    Periodic,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BdgError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("expected dimension {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not Hermitian (residual {0:e})")]
    NotHermitian(f64),
    #[error("bulk quantities need a periodic chain")]
    OpenBoundary,
    #[error("momentum grid of {0} points is below the minimum of 64")]
    GridTooSmall(usize),
    #[error("Fermi momentum undefined at mu = 0 with nonzero pairing")]
    UndefinedFermiMomentum,
    #[error("outside the perturbative regime: {0}")]
    Regime(String),
    #[error("{n_sites} sites exceeds the exact-diagonalization cap of {max}")]
    TooManySites { n_sites: usize, max: usize },
    #[error("block counting needs a real symmetric matrix")]
    NotReal,
    #[error("onset bracket does not straddle the transition: {0}")]
    Bracket(String),
}

pub(crate) fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<(), BdgError> {
    if cond {
        Ok(())
    } else {
        Err(BdgError::InvalidParameter(msg()))
    }
}
