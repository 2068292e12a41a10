//! Exact many-body diagonalization of short Kitaev chains.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::matrix::C0;
use super::{build_kitaev_bdg, eigenvalues, BdgError, KitaevChainParams};
use crate::algebra::FockRepresentation;

pub const MAX_ORACLE_SITES: usize = 6;

#[derive(Clone, Debug)]
pub struct ManyBodyComparison {
    /// Exact levels of `Σ H0_ij c_i†c_j + ½ Σ (D_ij c_i†c_j† + h.c.)`, ascending.
    pub many_body_levels: Vec<f64>,
    /// `½ Tr H0 − ½ Σ E_n + Σ_{n ∈ S} E_n` over all subsets `S` of the
    /// positive BdG energies, ascending.
    pub reconstructed_levels: Vec<f64>,
    pub positive_bdg_energies: Vec<f64>,
    pub max_mismatch: f64,
}

pub fn many_body_oracle(p: &KitaevChainParams) -> Result<ManyBodyComparison, BdgError> {
    let n = p.n_sites;
    if n > MAX_ORACLE_SITES {
        return Err(BdgError::TooManySites { n_sites: n, max: MAX_ORACLE_SITES });
    }
    let h = build_kitaev_bdg(p)?;
    let m = h.matrix();
    // (c_j, c_j†) interleaved: particle rows even, hole columns odd
    let h0 = DMatrix::from_fn(n, n, |i, j| m[(2 * i, 2 * j)]);
    let d = DMatrix::from_fn(n, n, |i, j| m[(2 * i, 2 * j + 1)]);

    let rep = FockRepresentation::new(n)
        .map_err(|e| BdgError::InvalidParameter(e.to_string()))?;
    let c: Vec<DMatrix<Complex64>> = (1..=n)
        .map(|k| rep.annihilation(k).map(|op| op.into_matrix()))
        .collect::<Result<_, _>>()
        .map_err(|e| BdgError::InvalidParameter(e.to_string()))?;
    let cd: Vec<DMatrix<Complex64>> = c.iter().map(|x| x.adjoint()).collect();

    let dim = rep.dim();
    let mut hmb = DMatrix::from_element(dim, dim, C0);
    for i in 0..n {
        for j in 0..n {
            if h0[(i, j)] != C0 {
                hmb += &cd[i] * &c[j] * h0[(i, j)];
            }
            if d[(i, j)] != C0 {
                let pair = &cd[i] * &cd[j] * (d[(i, j)] * 0.5);
                hmb += &pair + pair.adjoint();
            }
        }
    }
    let hmb = (&hmb + hmb.adjoint()) * Complex64::new(0.5, 0.0);
    let mut many_body_levels: Vec<f64> = hmb.symmetric_eigenvalues().iter().copied().collect();
    many_body_levels.sort_by(f64::total_cmp);

    let e = eigenvalues(&h)?;
    let positive: Vec<f64> = e[n..].to_vec();
    let trace: f64 = (0..n).map(|i| h0[(i, i)].re).sum();
    let base = 0.5 * trace - 0.5 * positive.iter().sum::<f64>();
    let mut reconstructed: Vec<f64> = (0..1usize << n)
        .map(|mask| base + (0..n).filter(|b| mask >> b & 1 == 1).map(|b| positive[b]).sum::<f64>())
        .collect();
    reconstructed.sort_by(f64::total_cmp);

    let max_mismatch = many_body_levels
        .iter()
        .zip(&reconstructed)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(ManyBodyComparison {
        many_body_levels,
        reconstructed_levels: reconstructed,
        positive_bdg_energies: positive,
        max_mismatch,
    })
}
