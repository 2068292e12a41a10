//! Tight-binding spinless p-wave chain.
//!
//! `mu` is the lattice chemical potential measured from the band centre, so
//! the normal-state band is `−2t cos k − mu`. The continuum chemical
//! potential measured from the band bottom is `mu + 2t`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::matrix::{assemble_chain, C0, CI};
use super::{require, BdGMatrix, BdgError, Boundary, NambuLayout};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KitaevChainParams {
    pub n_sites: usize,
    pub t: f64,
    pub mu: f64,
    pub delta: f64,
    #[serde(default)]
    pub boundary: Boundary,
}

impl KitaevChainParams {
    pub fn open(n_sites: usize, t: f64, mu: f64, delta: f64) -> Self {
        Self { n_sites, t, mu, delta, boundary: Boundary::Open }
    }

    pub fn periodic(n_sites: usize, t: f64, mu: f64, delta: f64) -> Self {
        Self { n_sites, t, mu, delta, boundary: Boundary::Periodic }
    }

    /// Checks that ignore the chain length.
    pub fn validate_bulk(&self) -> Result<(), BdgError> {
        require(self.t > 0.0 && self.t.is_finite(), || format!("t = {} must be positive", self.t))?;
        require(self.mu.is_finite() && self.delta.is_finite(), || "mu and delta must be finite".into())?;
        Ok(())
    }

    pub fn validate(&self) -> Result<(), BdgError> {
        self.validate_bulk()?;
        let min_sites = if self.boundary == Boundary::Periodic { 2 } else { 1 };
        require(self.n_sites >= min_sites, || {
            format!("{} sites too few for {:?} boundary", self.n_sites, self.boundary)
        })
    }

    /// Continuum chemical potential measured from the band bottom.
    pub fn continuum_mu(&self) -> f64 {
        self.mu + 2.0 * self.t
    }

    /// Fermi wavevector `k_F` with `−2t cos k_F = mu`, lattice spacing 1.
    pub fn fermi_wavevector(&self) -> Option<f64> {
        let c = -self.mu / (2.0 * self.t);
        (c.abs() < 1.0).then(|| c.acos())
    }

    /// `ħ v_F / Δ_gap` where the gap at the Fermi points is `2Δ sin k_F`;
    /// this reduces to `t/Δ` for every filling inside the band.
    pub fn coherence_length(&self) -> Option<f64> {
        let kf = self.fermi_wavevector()?;
        let vf = 2.0 * self.t * kf.sin();
        (self.delta != 0.0).then(|| vf / (2.0 * self.delta.abs() * kf.sin()))
    }

    fn onsite(&self) -> DMatrix<Complex64> {
        DMatrix::from_row_slice(2, 2, &[(-self.mu).into(), C0, C0, self.mu.into()])
    }

    /// `h_{j,j+1} = −t τ^z + iΔ τ^x`.
    fn bond(&self) -> DMatrix<Complex64> {
        let t: Complex64 = self.t.into();
        let d = CI * self.delta;
        DMatrix::from_row_slice(2, 2, &[-t, d, d, t])
    }
}

pub fn build_kitaev_bdg(p: &KitaevChainParams) -> Result<BdGMatrix, BdgError> {
    p.validate()?;
    assemble_chain(
        NambuLayout::spinless(p.n_sites, 1.0),
        &p.onsite(),
        &p.bond(),
        p.boundary == Boundary::Periodic,
    )
}

/// `h(k) = (−2t cos k − mu) τ^z − 2Δ sin k τ^x`.
pub fn kitaev_bloch(p: &KitaevChainParams, k: f64) -> DMatrix<Complex64> {
    let bond = p.bond();
    let phase = Complex64::from_polar(1.0, k);
    p.onsite() + &bond * phase + bond.adjoint() * phase.conj()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bdg::{diagonalize, eigenvalues};
    use std::f64::consts::PI;

    #[test]
    fn two_site_free_chain() {
        let h = build_kitaev_bdg(&KitaevChainParams::open(2, 1.0, 0.0, 0.0)).unwrap();
        assert_eq!(h.dim(), 4);
        let e = eigenvalues(&h).unwrap();
        for (a, b) in e.iter().zip([-1.0, -1.0, 1.0, 1.0]) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn phs_holds() {
        for (mu, d) in [(0.3, 0.7), (-2.5, 1.1), (0.0, -0.4)] {
            let h = build_kitaev_bdg(&KitaevChainParams::open(9, 1.3, mu, d)).unwrap();
            assert!(h.phs_residual() < 1e-12);
            assert!(h.hermiticity_residual() < 1e-13);
            assert!(diagonalize(&h).unwrap().pairing_residual() < 1e-10);
        }
    }

    #[test]
    fn periodic_free_fermions_follow_cosine_band() {
        let n = 16;
        let p = KitaevChainParams::periodic(n, 1.0, 0.4, 0.0);
        let e = eigenvalues(&build_kitaev_bdg(&p).unwrap()).unwrap();
        let mut expect: Vec<f64> = (0..n)
            .flat_map(|m| {
                let k = 2.0 * PI * m as f64 / n as f64;
                let x = -2.0 * (k.cos()) - 0.4;
                [x, -x]
            })
            .collect();
        expect.sort_by(f64::total_cmp);
        for (a, b) in e.iter().zip(&expect) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn bloch_matches_closed_form() {
        let p = KitaevChainParams::periodic(4, 1.2, -0.3, 0.5);
        for k in [0.0, 0.4, 1.7, PI] {
            let h = kitaev_bloch(&p, k);
            let ez = -2.0 * 1.2 * k.cos() + 0.3;
            let ex = -2.0 * 0.5 * k.sin();
            assert!((h[(0, 0)].re - ez).abs() < 1e-14);
            assert!((h[(0, 1)] - Complex64::new(ex, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn periodic_spectrum_matches_bloch_bands() {
        let n = 12;
        let p = KitaevChainParams::periodic(n, 1.0, 0.5, 0.6);
        let e = eigenvalues(&build_kitaev_bdg(&p).unwrap()).unwrap();
        let mut expect: Vec<f64> = (0..n)
            .flat_map(|m| {
                let k = 2.0 * PI * m as f64 / n as f64;
                let x = (2.0 * k.cos() + 0.5).hypot(1.2 * k.sin());
                [x, -x]
            })
            .collect();
        expect.sort_by(f64::total_cmp);
        for (a, b) in e.iter().zip(&expect) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn invalid_params_rejected() {
        assert!(build_kitaev_bdg(&KitaevChainParams::open(3, 0.0, 0.0, 1.0)).is_err());
        assert!(build_kitaev_bdg(&KitaevChainParams::open(0, 1.0, 0.0, 1.0)).is_err());
        assert!(build_kitaev_bdg(&KitaevChainParams::periodic(1, 1.0, 0.0, 1.0)).is_err());
    }

    #[test]
    fn coherence_length_is_t_over_delta() {
        for mu in [-1.5, 0.0, 0.9] {
            let xi = KitaevChainParams::open(10, 1.0, mu, 0.1).coherence_length().unwrap();
            assert!((xi - 10.0).abs() < 1e-12);
        }
        assert!(KitaevChainParams::open(10, 1.0, 2.5, 0.1).coherence_length().is_none());
    }
}
