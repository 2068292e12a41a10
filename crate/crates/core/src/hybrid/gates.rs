//! Tunable Cooper-pair-box splitting and the timed phase gate.

use nalgebra::Matrix2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::HybridError;
use crate::braid::LogicalGate;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CooperPairBoxParams {
    pub e_j0: f64,
    pub e_c: f64,
    /// Flux through the split junction.
    pub flux: f64,
    pub delta0: f64,
    /// Angle per unit flux in `E_J = e_j0 |cos(c_flux · flux)|`.
    #[serde(default = "unit")]
    pub c_flux: f64,
}

fn unit() -> f64 {
    1.0
}

impl CooperPairBoxParams {
    pub fn new(e_j0: f64, e_c: f64, flux: f64, delta0: f64) -> Self {
        Self { e_j0, e_c, flux, delta0, c_flux: 1.0 }
    }

    pub fn validate(&self) -> Result<(), HybridError> {
        for (name, v) in [("e_j0", self.e_j0), ("e_c", self.e_c), ("delta0", self.delta0)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(HybridError::Domain(format!("{name} = {v} must be positive")));
            }
        }
        if !(self.flux.is_finite() && self.c_flux.is_finite()) {
            return Err(HybridError::Domain("flux and c_flux must be finite".into()));
        }
        Ok(())
    }

    /// Splitting at the configured flux.
    pub fn splitting(&self) -> Result<f64, HybridError> {
        charge_splitting(josephson_energy(self)?, self.e_c, self.delta0)
    }
}

pub fn josephson_energy(p: &CooperPairBoxParams) -> Result<f64, HybridError> {
    p.validate()?;
    Ok(p.e_j0 * (p.c_flux * p.flux).cos().abs())
}

/// `δ = δ0 exp(−√(8 E_J/E_C))`.
pub fn charge_splitting(e_j: f64, e_c: f64, delta0: f64) -> Result<f64, HybridError> {
    if !(e_c > 0.0) {
        return Err(HybridError::Domain(format!("e_c = {e_c} must be positive")));
    }
    if !(e_j >= 0.0) {
        return Err(HybridError::Domain(format!("e_j = {e_j} must be non-negative")));
    }
    Ok(delta0 * (-(8.0 * e_j / e_c).sqrt()).exp())
}

/// Duration `tau` with `delta · tau = 2 phi` (ħ = 1).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseGatePlan {
    pub delta: f64,
    pub tau: f64,
    pub phi: f64,
}

pub fn phase_gate_plan(phi: f64, delta: f64) -> Result<PhaseGatePlan, HybridError> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(HybridError::Domain(format!("splitting {delta} gives no finite gate time")));
    }
    if !phi.is_finite() {
        return Err(HybridError::Domain("phi must be finite".into()));
    }
    Ok(PhaseGatePlan { delta, tau: 2.0 * phi / delta, phi })
}

/// `exp(−i H t)` for a 2×2 Hermitian `H = h₀ + h·σ`.
pub fn evolve_two_level(h: &Matrix2<Complex64>, t: f64) -> Matrix2<Complex64> {
    let h0 = 0.5 * (h[(0, 0)].re + h[(1, 1)].re);
    let hz = 0.5 * (h[(0, 0)].re - h[(1, 1)].re);
    let hx = h[(1, 0)].re;
    let hy = h[(1, 0)].im;
    let norm = (hx * hx + hy * hy + hz * hz).sqrt();
    let (c, s) = ((norm * t).cos(), (norm * t).sin());
    let i = Complex64::new(0.0, 1.0);
    let rot = if norm > 0.0 {
        let (nx, ny, nz) = (hx / norm, hy / norm, hz / norm);
        // cos − i sin n·σ
        Matrix2::new(
            Complex64::new(c, 0.0) - i * s * nz,
            -i * s * Complex64::new(nx, -ny),
            -i * s * Complex64::new(nx, ny),
            Complex64::new(c, 0.0) + i * s * nz,
        )
    } else {
        Matrix2::identity()
    };
    rot * Complex64::from_polar(1.0, -h0 * t)
}

/// Evolve the split qubit for the planned time under `H = −(δ/2) σ̄^z`,
/// which yields `exp(iφ σ̄^z)`.
pub fn simulate_phase_gate(plan: &PhaseGatePlan) -> LogicalGate {
    let half = Complex64::new(plan.delta / 2.0, 0.0);
    let h = Matrix2::new(-half, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), half);
    LogicalGate::new(evolve_two_level(&h, plan.tau)).expect("exponential of a Hermitian matrix")
}
