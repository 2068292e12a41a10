//! Eigenvalue counting for long open chains without diagonalization.
//!
//! For a real symmetric block-tridiagonal matrix the block LDLᵀ recursion
//! `D_1 = A − σ`, `D_{j+1} = A − σ − Bᵀ D_j⁻¹ B` is a congruence, so by
//! Sylvester's law the number of eigenvalues below σ equals the total number
//! of negative eigenvalues of the pivots `D_j`.

use nalgebra::DMatrix;

use super::{BdgError, Boundary, NanowireParams};

/// Translation-invariant open chain: identical diagonal blocks `onsite` and
/// identical upper blocks `bond = h_{j,j+1}`.
#[derive(Clone, Debug)]
pub struct BlockTridiagonal {
    pub onsite: DMatrix<f64>,
    pub bond: DMatrix<f64>,
    pub n_blocks: usize,
}

impl BlockTridiagonal {
    pub fn nanowire(p: &NanowireParams) -> Result<Self, BdgError> {
        p.validate()?;
        if p.boundary != Boundary::Open {
            return Err(BdgError::InvalidParameter("block counting needs an open chain".into()));
        }
        Ok(Self { onsite: p.onsite_real(), bond: p.bond_real(), n_blocks: p.n_sites })
    }

    /// Number of eigenvalues strictly below `sigma`.
    pub fn count_below(&self, sigma: f64) -> usize {
        let d = self.onsite.nrows();
        let shifted = &self.onsite - DMatrix::identity(d, d) * sigma;
        let mut pivot = shifted.clone();
        let mut count = negatives(&pivot);
        for _ in 1..self.n_blocks {
            let solved = match pivot.clone().lu().solve(&self.bond) {
                Some(x) => x,
                // exact singular pivot: σ is an eigenvalue of the leading block; nudge it
                None => return self.count_below(sigma + f64::EPSILON * sigma.abs().max(1.0) * 16.0),
            };
            pivot = &shifted - self.bond.transpose() * solved;
            count += negatives(&pivot);
        }
        count
    }

    /// Number of eigenvalues in `[lo, hi)`.
    pub fn count_in(&self, lo: f64, hi: f64) -> usize {
        self.count_below(hi) - self.count_below(lo)
    }
}

fn negatives(m: &DMatrix<f64>) -> usize {
    let sym = (m + m.transpose()) * 0.5;
    sym.symmetric_eigenvalues().iter().filter(|&&x| x < 0.0).count()
}

/// Largest `mu` in `[mu_lo, mu_hi]` at which the open wire still has at
/// least two eigenvalues with `|E| < threshold`, located by bisection to
/// absolute tolerance `tol`.
///
/// The bracket must have zero modes at `mu_lo` and none at `mu_hi`.
pub fn zero_mode_onset(
    base: &NanowireParams,
    mu_lo: f64,
    mu_hi: f64,
    threshold: f64,
    tol: f64,
) -> Result<f64, BdgError> {
    let has_modes = |mu: f64| -> Result<bool, BdgError> {
        let chain = BlockTridiagonal::nanowire(&NanowireParams { mu, ..base.clone() })?;
        Ok(chain.count_in(-threshold, threshold) >= 2)
    };
    if !has_modes(mu_lo)? {
        return Err(BdgError::Bracket(format!("no zero modes at mu = {mu_lo}")));
    }
    if has_modes(mu_hi)? {
        return Err(BdgError::Bracket(format!("zero modes persist at mu = {mu_hi}")));
    }
    let (mut lo, mut hi) = (mu_lo, mu_hi);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if has_modes(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bdg::{build_nanowire_bdg, eigenvalues};

    fn wire(n: usize, mu: f64) -> NanowireParams {
        NanowireParams {
            n_sites: n,
            lattice_spacing: 1.0,
            mass: 0.1,
            mu,
            alpha_so: 1.2,
            e_zeeman: 1.5,
            delta: 1.0,
            boundary: Boundary::Open,
        }
    }

    #[test]
    fn counts_match_dense_spectrum() {
        for mu in [-0.4, 0.3, 1.9] {
            let p = wire(25, mu);
            let e = eigenvalues(&build_nanowire_bdg(&p).unwrap()).unwrap();
            let chain = BlockTridiagonal::nanowire(&p).unwrap();
            for sigma in [-3.3, -1.0, -0.05, 0.0137, 0.7, 2.2, 40.0] {
                let dense = e.iter().filter(|&&x| x < sigma).count();
                assert_eq!(chain.count_below(sigma), dense, "mu={mu} sigma={sigma}");
            }
        }
    }

    #[test]
    fn onset_brackets_are_checked() {
        let p = wire(200, 0.0);
        assert!(matches!(zero_mode_onset(&p, 5.0, 6.0, 1e-3, 1e-3), Err(BdgError::Bracket(_))));
    }

    #[test]
    fn onset_near_critical_potential() {
        let p = wire(400, 0.0);
        let mu_c = (1.5f64 * 1.5 - 1.0).sqrt();
        let onset = zero_mode_onset(&p, 0.0, 1.5 * mu_c, 1e-3, 1e-6).unwrap();
        assert!((onset - mu_c).abs() / mu_c < 0.1, "onset {onset} vs {mu_c}");
    }
}
