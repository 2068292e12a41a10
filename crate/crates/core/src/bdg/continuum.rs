//! Continuum p-wave dispersion, the analytic bound-state envelope and the
//! strong-field effective parameters of the nanowire.

use super::{BdgError, NanowireParams};

/// `E_p = √(ξ(p)² + Δ² (p/p_F)²)` with `ξ(p) = p²/2m − μ`, ħ = 1.
///
/// For `μ < 0` the ratio `p/p_F` is replaced by `p λ_F` with
/// `λ_F = 1/√(2m|μ|)`.
pub fn continuum_dispersion(p: f64, mu: f64, delta: f64, mass: f64) -> Result<f64, BdgError> {
    if !(mass > 0.0) {
        return Err(BdgError::InvalidParameter(format!("mass = {mass} must be positive")));
    }
    let xi = p * p / (2.0 * mass) - mu;
    if delta == 0.0 {
        return Ok(xi.abs());
    }
    if mu == 0.0 {
        return Err(BdgError::UndefinedFermiMomentum);
    }
    let pf = (2.0 * mass * mu.abs()).sqrt();
    Ok(xi.hypot(delta * p / pf))
}

/// `√(2/ξ) sin(k_F z) e^{−z/ξ}`.
pub fn analytic_zero_mode_envelope(z: f64, xi: f64, k_f: f64) -> Result<f64, BdgError> {
    if !(xi > 0.0) {
        return Err(BdgError::InvalidParameter(format!("xi = {xi} must be positive")));
    }
    Ok((2.0 / xi).sqrt() * (k_f * z).sin() * (-z / xi).exp())
}

/// `∫₀^∞` of the squared envelope: `½ (1 − 1/(1 + (k_F ξ)²))`.
pub fn envelope_norm(xi: f64, k_f: f64) -> f64 {
    let x = k_f * xi;
    0.5 * (1.0 - 1.0 / (1.0 + x * x))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EffectiveParams {
    /// Energy.
    pub mu_eff: f64,
    /// p-wave amplitude, energy × length.
    pub delta_eff: f64,
}

/// `μ_eff = μ + E_Z`, `Δ_eff = Δ α / 2E_Z`, valid for `E_Z ≫ Δ, m α²`.
pub fn effective_params(p: &NanowireParams) -> Result<EffectiveParams, BdgError> {
    if !(p.e_zeeman > 0.0) {
        return Err(BdgError::Regime("effective p-wave model needs e_zeeman > 0".into()));
    }
    Ok(EffectiveParams {
        mu_eff: p.mu + p.e_zeeman,
        delta_eff: p.delta * p.alpha_so / (2.0 * p.e_zeeman),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bdg::Boundary;
    use std::f64::consts::PI;

    #[test]
    fn dispersion_landmarks() {
        let (mu, d, m): (f64, f64, f64) = (1.3, 0.4, 0.7);
        assert!((continuum_dispersion(0.0, mu, d, m).unwrap() - mu).abs() < 1e-15);
        let pf = (2.0 * m * mu).sqrt();
        assert!((continuum_dispersion(pf, mu, d, m).unwrap() - d).abs() < 1e-14);
        assert!((continuum_dispersion(1.1, mu, 0.0, m).unwrap() - (1.21 / 1.4 - mu).abs()).abs() < 1e-15);
        assert!((continuum_dispersion(0.0, -0.8, d, m).unwrap() - 0.8).abs() < 1e-15);
        assert_eq!(continuum_dispersion(0.5, 0.0, d, m), Err(BdgError::UndefinedFermiMomentum));
        assert!(continuum_dispersion(0.5, 0.0, 0.0, m).is_ok());
        assert!(continuum_dispersion(0.5, 1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn dispersion_matches_bdg_block_eigenvalue() {
        // eigenvalues of ξ τ^z − Δ(p/p_F) τ^x are ±E_p
        let (mu, d, m): (f64, f64, f64) = (0.9, 0.3, 1.2);
        let pf = (2.0 * m * mu).sqrt();
        for p in [0.0, 0.2, pf, 2.0] {
            let a = p * p / (2.0 * m) - mu;
            let b = -d * p / pf;
            let h = nalgebra::Matrix2::new(a, b, b, -a);
            let e = h.symmetric_eigenvalues();
            let top = e[0].max(e[1]);
            assert!((top - continuum_dispersion(p, mu, d, m).unwrap()).abs() < 1e-14);
        }
    }

    #[test]
    fn envelope_values() {
        assert_eq!(analytic_zero_mode_envelope(0.0, 3.0, 1.0).unwrap(), 0.0);
        let xi = 1e12;
        let k = 2.0;
        let v = analytic_zero_mode_envelope(PI / (2.0 * k), xi, k).unwrap();
        assert!((v / (2.0 / xi).sqrt() - 1.0).abs() < 1e-9);
        assert!(analytic_zero_mode_envelope(1.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn envelope_norm_by_quadrature() {
        for (xi, k) in [(4.0, 1.3), (10.0, 0.2), (2.0, 5.0)] {
            let h = 1e-3;
            let n = ((40.0 * xi / h) as usize) & !1;
            // Simpson on [0, 40ξ]
            let f = |z: f64| analytic_zero_mode_envelope(z, xi, k).unwrap().powi(2);
            let mut s = f(0.0) + f(n as f64 * h);
            for i in 1..n {
                s += f(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
            }
            let integral = s * h / 3.0;
            assert!((integral - envelope_norm(xi, k)).abs() < 1e-9, "{integral}");
        }
        assert!((envelope_norm(1e4, 1.0) - 0.5).abs() < 1e-8);
    }

    #[test]
    fn effective_parameters() {
        let p = NanowireParams {
            n_sites: 1,
            lattice_spacing: 1.0,
            mass: 1.0,
            mu: -0.5,
            alpha_so: 1.0,
            e_zeeman: 2.0,
            delta: 1.0,
            boundary: Boundary::Open,
        };
        let e = effective_params(&p).unwrap();
        assert_eq!(e.mu_eff, 1.5);
        assert_eq!(e.delta_eff, 0.25);
        let e = effective_params(&NanowireParams { alpha_so: 0.0, ..p.clone() }).unwrap();
        assert_eq!(e.delta_eff, 0.0);
        assert!(effective_params(&NanowireParams { e_zeeman: 0.0, ..p }).is_err());
    }
}
