//! Single-band Rashba nanowire with Zeeman field and proximity pairing.
//!
//! Units have ħ = 1. The hopping is `t = 1/(2 m a²)`, `mu` is measured from
//! the band bottom, and the local Nambu basis is `(ψ↑, ψ↓, ψ↓†, −ψ↑†)`
//! with τ as the outer index.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::matrix::assemble_chain;
use super::{require, BdGMatrix, BdgError, Boundary, NambuLayout};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NanowireParams {
    pub n_sites: usize,
    pub lattice_spacing: f64,
    pub mass: f64,
    pub mu: f64,
    pub alpha_so: f64,
    pub e_zeeman: f64,
    pub delta: f64,
    #[serde(default)]
    pub boundary: Boundary,
}

/// Material constants for InSb in meV and nm with ħ = 1.
pub struct InSb;

impl InSb {
    /// `ħ²/2m` for `m = 0.015 m_e`.
    pub const HBAR2_OVER_2M: f64 = 2540.0;
    /// 0.2 eV·Å.
    pub const ALPHA_SO: f64 = 20.0;
    /// `½ g μ_B` for `g = 50`, per tesla.
    pub const ZEEMAN_PER_TESLA: f64 = 1.447;
    /// 1 K.
    pub const DELTA: f64 = 0.08617;

    pub fn params(n_sites: usize, lattice_spacing: f64, mu: f64, field_tesla: f64) -> NanowireParams {
        NanowireParams {
            n_sites,
            lattice_spacing,
            mass: 1.0 / (2.0 * Self::HBAR2_OVER_2M),
            mu,
            alpha_so: Self::ALPHA_SO,
            e_zeeman: Self::ZEEMAN_PER_TESLA * field_tesla,
            delta: Self::DELTA,
            boundary: Boundary::Open,
        }
    }
}

const fn kron(a: [[f64; 2]; 2], b: [[f64; 2]; 2]) -> [[f64; 4]; 4] {
    let mut out = [[0.0; 4]; 4];
    let mut i = 0;
    while i < 4 {
        let mut j = 0;
        while j < 4 {
            out[i][j] = a[i / 2][j / 2] * b[i % 2][j % 2];
            j += 1;
        }
        i += 1;
    }
    out
}

const ID: [[f64; 2]; 2] = [[1.0, 0.0], [0.0, 1.0]];
const SX: [[f64; 2]; 2] = [[0.0, 1.0], [1.0, 0.0]];
const SZ: [[f64; 2]; 2] = [[1.0, 0.0], [0.0, -1.0]];
/// `i σ^y`, which is real.
const ISY: [[f64; 2]; 2] = [[0.0, 1.0], [-1.0, 0.0]];

const TZ: [[f64; 4]; 4] = kron(SZ, ID);
const TX: [[f64; 4]; 4] = kron(SX, ID);
const SIGZ: [[f64; 4]; 4] = kron(ID, SZ);
const TZ_ISY: [[f64; 4]; 4] = kron(SZ, ISY);

fn combo(terms: &[(f64, [[f64; 4]; 4])]) -> DMatrix<f64> {
    DMatrix::from_fn(4, 4, |i, j| terms.iter().map(|(c, m)| c * m[i][j]).sum())
}

impl NanowireParams {
    /// Checks that ignore the chain length.
    pub fn validate_bulk(&self) -> Result<(), BdgError> {
        require(self.mass > 0.0, || format!("mass = {} must be positive", self.mass))?;
        require(self.lattice_spacing > 0.0, || {
            format!("lattice spacing = {} must be positive", self.lattice_spacing)
        })?;
        require(self.delta >= 0.0, || format!("delta = {} must be non-negative", self.delta))?;
        require(self.e_zeeman >= 0.0, || format!("e_zeeman = {} must be non-negative", self.e_zeeman))?;
        require(
            [self.mu, self.alpha_so].iter().all(|x| x.is_finite()),
            || "mu and alpha_so must be finite".into(),
        )?;
        Ok(())
    }

    pub fn validate(&self) -> Result<(), BdgError> {
        self.validate_bulk()?;
        let min_sites = if self.boundary == Boundary::Periodic { 2 } else { 1 };
        require(self.n_sites >= min_sites, || {
            format!("{} sites too few for {:?} boundary", self.n_sites, self.boundary)
        })
    }

    pub fn hopping(&self) -> f64 {
        1.0 / (2.0 * self.mass * self.lattice_spacing * self.lattice_spacing)
    }

    pub fn onsite_real(&self) -> DMatrix<f64> {
        combo(&[
            (2.0 * self.hopping() - self.mu, TZ),
            (-self.e_zeeman, SIGZ),
            (self.delta, TX),
        ])
    }

    /// `h_{j,j+1} = −t τ^z − (α/2a) τ^z iσ^y`.
    pub fn bond_real(&self) -> DMatrix<f64> {
        combo(&[
            (-self.hopping(), TZ),
            (-self.alpha_so / (2.0 * self.lattice_spacing), TZ_ISY),
        ])
    }

    pub fn layout(&self) -> NambuLayout {
        NambuLayout::spinful(self.n_sites, self.lattice_spacing)
    }
}

fn complexify(m: &DMatrix<f64>) -> DMatrix<Complex64> {
    m.map(|x| Complex64::new(x, 0.0))
}

pub fn build_nanowire_bdg(p: &NanowireParams) -> Result<BdGMatrix, BdgError> {
    p.validate()?;
    assemble_chain(
        p.layout(),
        &complexify(&p.onsite_real()),
        &complexify(&p.bond_real()),
        p.boundary == Boundary::Periodic,
    )
}

/// `h(k) = (2t(1 − cos ka) − μ) τ^z + (α/a) sin(ka) σ^y τ^z − E_Z σ^z + Δ τ^x`.
pub fn nanowire_bloch(p: &NanowireParams, k: f64) -> DMatrix<Complex64> {
    let bond = complexify(&p.bond_real());
    let phase = Complex64::from_polar(1.0, k * p.lattice_spacing);
    complexify(&p.onsite_real()) + &bond * phase + bond.adjoint() * phase.conj()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bdg::eigenvalues;
    use std::f64::consts::PI;

    pub(crate) fn wire(n: usize, mu: f64, alpha: f64, ez: f64, delta: f64) -> NanowireParams {
        NanowireParams {
            n_sites: n,
            lattice_spacing: 1.0,
            mass: 0.05,
            mu,
            alpha_so: alpha,
            e_zeeman: ez,
            delta,
            boundary: Boundary::Open,
        }
    }

    #[test]
    fn phs_holds() {
        let h = build_nanowire_bdg(&wire(12, 0.7, 1.3, 0.9, 0.4)).unwrap();
        assert!(h.phs_residual() < 1e-12);
        assert!(h.hermiticity_residual() < 1e-13);
        let mut p = wire(12, 0.7, 1.3, 0.9, 0.4);
        p.boundary = Boundary::Periodic;
        let h = build_nanowire_bdg(&p).unwrap();
        assert!(h.phs_residual() < 1e-12);
        for k in [0.0, 0.3, 2.0, PI] {
            let hk = crate::bdg::BdGMatrix::new(nanowire_bloch(&p, k), NambuLayout::spinful(1, 1.0)).unwrap();
            // C maps k to −k, so the anticommutation holds between h(k) and h(−k)
            let back = NambuLayout::spinful(1, 1.0).conjugate_by_phs(&nanowire_bloch(&p, -k));
            assert!((hk.matrix() + back).norm() < 1e-12);
        }
    }

    #[test]
    fn k0_spectrum_is_zeeman_shifted_gap() {
        let p = wire(1, 0.8, 2.0, 1.7, 0.6);
        let h = crate::bdg::BdGMatrix::new(nanowire_bloch(&p, 0.0), NambuLayout::spinful(1, 1.0)).unwrap();
        let e = eigenvalues(&h).unwrap();
        let r = 0.8f64.hypot(0.6);
        let mut expect = vec![r + 1.7, r - 1.7, -(r + 1.7), -(r - 1.7)];
        expect.sort_by(f64::total_cmp);
        for (a, b) in e.iter().zip(&expect) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn decoupled_spins_without_pairing_or_orbit() {
        let n = 10;
        let mut p = wire(n, 1.0, 0.0, 0.35, 0.0);
        p.boundary = Boundary::Periodic;
        let e = eigenvalues(&build_nanowire_bdg(&p).unwrap()).unwrap();
        let t = p.hopping();
        let mut expect = Vec::new();
        for m in 0..n {
            let k = 2.0 * PI * m as f64 / n as f64;
            let xi = 2.0 * t * (1.0 - k.cos()) - 1.0;
            for s in [1.0, -1.0] {
                expect.push(xi + s * 0.35);
                expect.push(-(xi + s * 0.35));
            }
        }
        expect.sort_by(f64::total_cmp);
        for (a, b) in e.iter().zip(&expect) {
            assert!((a - b).abs() < 1e-11);
        }
    }

    #[test]
    fn bloch_matches_closed_form() {
        let p = wire(1, 0.4, 1.5, 0.3, 0.2);
        let t = p.hopping();
        let k = 0.7;
        let h = nanowire_bloch(&p, k);
        let sy = [[0.0, -1.0], [1.0, 0.0]];
        // explicit (α/a) sin k σ^y τ^z term, imaginary entries
        let so = kron(SZ, sy);
        let expect = combo(&[
            (2.0 * t * (1.0 - k.cos()) - 0.4, TZ),
            (-0.3, SIGZ),
            (0.2, TX),
        ]);
        for i in 0..4 {
            for j in 0..4 {
                let z = Complex64::new(expect[(i, j)], 1.5 * k.sin() * so[i][j]);
                assert!((h[(i, j)] - z).norm() < 1e-13, "({i},{j})");
            }
        }
    }

    #[test]
    fn insb_preset_units() {
        let p = InSb::params(50, 10.0, 0.0, 1.0);
        assert!((p.hopping() - 25.4).abs() < 1e-12);
        assert!((p.e_zeeman - 1.447).abs() < 1e-15);
        p.validate().unwrap();
    }

    #[test]
    fn invalid_rejected() {
        assert!(build_nanowire_bdg(&wire(3, 0.0, 1.0, -1.0, 1.0)).is_err());
        assert!(build_nanowire_bdg(&wire(3, 0.0, 1.0, 1.0, -1.0)).is_err());
        let mut p = wire(3, 0.0, 1.0, 1.0, 1.0);
        p.mass = 0.0;
        assert!(build_nanowire_bdg(&p).is_err());
    }
}
