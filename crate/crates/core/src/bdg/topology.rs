//! Bulk gap and the Z2 topological charge.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::{
    eigenvalues, kitaev_bloch, nanowire_bloch, BdGMatrix, BdgError, Boundary, KitaevChainParams,
    NambuLayout, NanowireParams,
};

/// Relative tolerance for declaring a point critical.
const CRITICAL_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum ModelParams {
    Kitaev(KitaevChainParams),
    /// `ξ(p) τ^z − Δ (p/p_F) τ^x` on the real line.
    KitaevContinuum { mu: f64, delta: f64, mass: f64 },
    Nanowire(NanowireParams),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChargeMethod {
    Analytic,
    Numeric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Z2Charge {
    Trivial,
    Topological,
    Critical,
}

impl Z2Charge {
    pub fn value(self) -> Option<u8> {
        match self {
            Z2Charge::Trivial => Some(0),
            Z2Charge::Topological => Some(1),
            Z2Charge::Critical => None,
        }
    }

    fn from_bool(topological: bool) -> Self {
        if topological {
            Z2Charge::Topological
        } else {
            Z2Charge::Trivial
        }
    }
}

impl ModelParams {
    fn bloch(&self, k: f64) -> Result<(DMatrix<Complex64>, NambuLayout), BdgError> {
        match self {
            ModelParams::Kitaev(p) => {
                p.validate_bulk()?;
                Ok((kitaev_bloch(p, k), NambuLayout::spinless(1, 1.0)))
            }
            ModelParams::Nanowire(p) => {
                p.validate_bulk()?;
                Ok((nanowire_bloch(p, k), NambuLayout::spinful(1, p.lattice_spacing)))
            }
            ModelParams::KitaevContinuum { .. } => Err(BdgError::InvalidParameter(
                "the continuum model has no Bloch lattice".into(),
            )),
        }
    }

    fn boundary(&self) -> Option<Boundary> {
        match self {
            ModelParams::Kitaev(p) => Some(p.boundary),
            ModelParams::Nanowire(p) => Some(p.boundary),
            ModelParams::KitaevContinuum { .. } => None,
        }
    }

    fn lattice_spacing(&self) -> f64 {
        match self {
            ModelParams::Nanowire(p) => p.lattice_spacing,
            _ => 1.0,
        }
    }
}

/// Smallest `|E|` of the Bloch Hamiltonian at momentum `k`.
pub fn bloch_gap(model: &ModelParams, k: f64) -> Result<f64, BdgError> {
    let (h, layout) = model.bloch(k)?;
    let e = eigenvalues(&BdGMatrix::new(h, layout)?)?;
    Ok(e.iter().fold(f64::INFINITY, |m, x| m.min(x.abs())))
}

/// Minimum of [`bloch_gap`] over `k_m = 2π m/(N a)`, `m = 0..N`.
pub fn bulk_gap(model: &ModelParams, k_grid_size: usize) -> Result<f64, BdgError> {
    if model.boundary() != Some(Boundary::Periodic) {
        return Err(BdgError::OpenBoundary);
    }
    if k_grid_size < 64 {
        return Err(BdgError::GridTooSmall(k_grid_size));
    }
    let a = model.lattice_spacing();
    (0..k_grid_size).try_fold(f64::INFINITY, |m, i| {
        let k = 2.0 * PI * i as f64 / (k_grid_size as f64 * a);
        Ok(m.min(bloch_gap(model, k)?))
    })
}

/// Pfaffian of a real antisymmetric matrix by expansion along the first row.
pub fn pfaffian(a: &DMatrix<f64>) -> f64 {
    let n = a.nrows();
    if n == 0 {
        return 1.0;
    }
    if n % 2 == 1 {
        return 0.0;
    }
    let mut total = 0.0;
    for j in 1..n {
        if a[(0, j)] == 0.0 {
            continue;
        }
        let keep: Vec<usize> = (1..n).filter(|&r| r != j).collect();
        let minor = DMatrix::from_fn(n - 2, n - 2, |r, c| a[(keep[r], keep[c])]);
        let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
        total += sign * a[(0, j)] * pfaffian(&minor);
    }
    total
}

/// `A = −i W h W† / 2`, the Majorana-basis form of a Bloch block at a
/// particle-hole invariant momentum.
fn majorana_form(h: &DMatrix<Complex64>, layout: &NambuLayout) -> Result<DMatrix<f64>, BdgError> {
    let w = layout.majorana_block();
    let a = (&w * h * w.adjoint()) * Complex64::new(0.0, -0.5);
    let scale = h.norm().max(1.0);
    let imag = a.map(|z| z.im).norm();
    let real = a.map(|z| z.re);
    let asym = (&real + real.transpose()).norm();
    if imag > 1e-10 * scale || asym > 1e-10 * scale {
        return Err(BdgError::InvalidParameter(format!(
            "Bloch block is not particle-hole symmetric (imag {imag:e}, sym {asym:e})"
        )));
    }
    Ok((&real - real.transpose()) * 0.5)
}

fn pfaffian_at(model: &ModelParams, k: f64) -> Result<(f64, f64), BdgError> {
    let (h, layout) = model.bloch(k)?;
    let a = majorana_form(&h, &layout)?;
    let scale = h.norm().max(f64::MIN_POSITIVE).powi(a.nrows() as i32 / 2);
    Ok((pfaffian(&a), scale))
}

pub fn topological_charge(model: &ModelParams, method: ChargeMethod) -> Result<Z2Charge, BdgError> {
    match method {
        ChargeMethod::Analytic => analytic_charge(model),
        ChargeMethod::Numeric => numeric_charge(model),
    }
}

fn near(a: f64, b: f64) -> bool {
    (a - b).abs() <= CRITICAL_TOL * a.abs().max(b.abs()).max(1e-300)
}

fn analytic_charge(model: &ModelParams) -> Result<Z2Charge, BdgError> {
    Ok(match model {
        ModelParams::Kitaev(p) => {
            p.validate_bulk()?;
            if p.delta == 0.0 || near(p.mu.abs(), 2.0 * p.t) {
                Z2Charge::Critical
            } else {
                Z2Charge::from_bool(p.mu.abs() < 2.0 * p.t)
            }
        }
        ModelParams::KitaevContinuum { mu, delta, mass } => {
            if !(*mass > 0.0) {
                return Err(BdgError::InvalidParameter(format!("mass = {mass} must be positive")));
            }
            if *mu == 0.0 || *delta == 0.0 {
                Z2Charge::Critical
            } else {
                Z2Charge::from_bool(*mu > 0.0)
            }
        }
        ModelParams::Nanowire(p) => {
            p.validate_bulk()?;
            // gap closes at k = 0 when E_Z² = μ² + Δ² and at the zone
            // boundary when E_Z² = (4t − μ)² + Δ²
            let z = p.e_zeeman * p.e_zeeman;
            let b0 = p.mu * p.mu + p.delta * p.delta;
            let top = 4.0 * p.hopping() - p.mu;
            let b1 = top * top + p.delta * p.delta;
            let gapless_bands = p.delta == 0.0 || (p.alpha_so == 0.0 && p.e_zeeman > p.delta);
            if gapless_bands || near(z, b0) || near(z, b1) {
                Z2Charge::Critical
            } else {
                Z2Charge::from_bool((z > b0) != (z > b1))
            }
        }
    })
}

fn numeric_charge(model: &ModelParams) -> Result<Z2Charge, BdgError> {
    let (pf0, s0, pf_pi, s_pi) = match model {
        ModelParams::KitaevContinuum { mu, delta, mass } => {
            if !(*mass > 0.0) {
                return Err(BdgError::InvalidParameter(format!("mass = {mass} must be positive")));
            }
            // at p = 0 only ξ(0) = −μ survives; as p → ∞ the τ^z term p²/2m dominates
            let h0 = DMatrix::from_row_slice(
                2,
                2,
                &[(-mu).into(), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), (*mu).into()],
            );
            let a = majorana_form(&h0, &NambuLayout::spinless(1, 1.0))?;
            let scale = mu.abs().hypot(*delta).max(f64::MIN_POSITIVE);
            (pfaffian(&a), scale, 1.0, 1.0)
        }
        _ => {
            let (pf0, s0) = pfaffian_at(model, 0.0)?;
            let (pf_pi, s_pi) = pfaffian_at(model, PI / model.lattice_spacing())?;
            (pf0, s0, pf_pi, s_pi)
        }
    };
    if pf0.abs() <= CRITICAL_TOL * s0 || pf_pi.abs() <= CRITICAL_TOL * s_pi {
        return Ok(Z2Charge::Critical);
    }
    Ok(Z2Charge::from_bool(pf0 * pf_pi < 0.0))
}
