//! Transmon-assisted phase gate and dispersive readout.

mod gates;
mod readout;

use thiserror::Error;

pub use gates::{
    charge_splitting, evolve_two_level, josephson_energy, phase_gate_plan, simulate_phase_gate,
    CooperPairBoxParams, PhaseGatePlan,
};
pub use readout::{
    dispersive_shift, jc_oracle, readout_contrast, JcSpectrum, ReadoutParams, MIN_PHOTON_CUTOFF,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HybridError {
    #[error("domain error: {0}")]
    Domain(String),
}
