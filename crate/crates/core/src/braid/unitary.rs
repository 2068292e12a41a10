//! Fock-space braid unitaries and the braid-group relations.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::perm::{word_action, word_action_with_gauge, BraidGauge, SignedPermutation};
use super::{BraidError, BraidLetter, BraidWord};
use crate::algebra::{FockOperator, FockRepresentation};

/// `U_k^{±1} = (1 ± γ_k γ_{k+1})/√2`.
fn letter_unitary(rep: &FockRepresentation, l: BraidLetter) -> Result<DMatrix<Complex64>, BraidError> {
    let a = rep.generator(l.generator)?;
    let b = rep.generator(l.generator + 1)?;
    let prod = a.matrix() * b.matrix();
    let dim = rep.dim();
    let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    Ok((DMatrix::identity(dim, dim) + prod * Complex64::new(l.exponent as f64, 0.0)) * s)
}

fn representation(w: &BraidWord, n_modes: usize) -> Result<FockRepresentation, BraidError> {
    if 2 * n_modes < w.n_strands {
        return Err(BraidError::TooFewModes { n_modes, n_strands: w.n_strands });
    }
    Ok(FockRepresentation::new(n_modes)?)
}

/// `U = U_{l_m} ⋯ U_{l_1}` for the word `l_1 ⋯ l_m`.
pub fn word_unitary(w: &BraidWord, n_modes: usize) -> Result<FockOperator, BraidError> {
    let rep = representation(w, n_modes)?;
    let mut u = DMatrix::identity(rep.dim(), rep.dim());
    for &l in &w.letters {
        u = letter_unitary(&rep, l)? * u;
    }
    Ok(FockOperator::new(n_modes, u)?)
}

/// `min_φ ‖A − e^{iφ} B‖_F`.
pub fn distance_mod_phase(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    let overlap = b.dotc(a);
    let phase = if overlap.norm() > 0.0 { overlap / overlap.norm() } else { Complex64::new(1.0, 0.0) };
    (a - b * phase).norm()
}

/// Largest deviation `‖U† γ_j U − s_j γ_{t_j}‖` between the Fock conjugation
/// and a signed permutation.
pub fn representation_residual(
    w: &BraidWord,
    n_modes: usize,
    perm: &SignedPermutation,
) -> Result<f64, BraidError> {
    let rep = representation(w, n_modes)?;
    let u = word_unitary(w, n_modes)?;
    let ud = u.adjoint();
    let mut worst = 0.0f64;
    for j in 1..=w.n_strands {
        let conj = ud.mul(&rep.generator(j)?).mul(&u);
        let (t, s) = perm.image(j);
        let target = rep.generator(t)?.scale(Complex64::new(s as f64, 0.0));
        worst = worst.max(conj.distance(&target));
    }
    Ok(worst)
}

/// Representation consistency of [`word_action`] with [`word_unitary`].
pub fn representation_consistency(w: &BraidWord, n_modes: usize) -> Result<f64, BraidError> {
    representation_residual(w, n_modes, &word_action(w))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Representation {
    SignedPerm,
    Fock,
}

#[derive(Clone, Debug)]
pub struct RelationCheck {
    pub relation: String,
    /// Zero for an exact match in the signed-permutation representation.
    pub residual: f64,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct BraidRelationReport {
    pub n_strands: usize,
    pub representation: Representation,
    pub checks: Vec<RelationCheck>,
}

impl BraidRelationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }
}

/// Tolerance for Fock-space relation checks modulo phase.
pub const FOCK_RELATION_TOL: f64 = 1e-12;

/// Far commutation `B_k B_l = B_l B_k` for `|k − l| ≥ 2` and Yang-Baxter
/// `B_k B_{k+1} B_k = B_{k+1} B_k B_{k+1}` for every adjacent pair.
pub fn verify_braid_relations(
    n_strands: usize,
    representation: Representation,
) -> Result<BraidRelationReport, BraidError> {
    verify_braid_relations_with_gauge(n_strands, representation, BraidGauge::STANDARD)
}

pub fn verify_braid_relations_with_gauge(
    n_strands: usize,
    representation: Representation,
    gauge: BraidGauge,
) -> Result<BraidRelationReport, BraidError> {
    if n_strands < 2 {
        return Err(BraidError::TooFewStrands(n_strands));
    }
    let word = |gens: &[usize]| {
        BraidWord::new(n_strands, gens.iter().map(|&g| BraidLetter { generator: g, exponent: 1 }).collect())
    };
    let mut pairs: Vec<(String, BraidWord, BraidWord)> = Vec::new();
    for k in 1..n_strands {
        for l in k + 2..n_strands {
            pairs.push((format!("B{k} B{l} = B{l} B{k}"), word(&[k, l])?, word(&[l, k])?));
        }
        if k + 1 < n_strands {
            let j = k + 1;
            pairs.push((format!("B{k} B{j} B{k} = B{j} B{k} B{j}"), word(&[k, j, k])?, word(&[j, k, j])?));
        }
    }
    let n_modes = n_strands.div_ceil(2);
    let checks = pairs
        .into_iter()
        .map(|(relation, lhs, rhs)| {
            let residual = match representation {
                Representation::SignedPerm => {
                    let a = word_action_with_gauge(&lhs, gauge);
                    let b = word_action_with_gauge(&rhs, gauge);
                    (a.matrix() - b.matrix()).norm()
                }
                Representation::Fock => {
                    let a = word_unitary(&lhs, n_modes)?;
                    let b = word_unitary(&rhs, n_modes)?;
                    distance_mod_phase(a.matrix(), b.matrix())
                }
            };
            let passed = match representation {
                Representation::SignedPerm => residual == 0.0,
                Representation::Fock => residual < FOCK_RELATION_TOL,
            };
            Ok(RelationCheck { relation, residual, passed })
        })
        .collect::<Result<Vec<_>, BraidError>>()?;
    Ok(BraidRelationReport { n_strands, representation, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::parse_braid_word;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn single_exchange_conjugation() {
        let w = parse_braid_word("B1", 4).unwrap();
        let rep = FockRepresentation::new(2).unwrap();
        let u = word_unitary(&w, 2).unwrap();
        let g1 = rep.generator(1).unwrap();
        let g2 = rep.generator(2).unwrap();
        assert!(u.adjoint().mul(&g1).mul(&u).distance(&g2) < 1e-13);
        assert!(representation_consistency(&w, 2).unwrap() < 1e-13);
    }

    #[test]
    fn square_is_gamma_pair() {
        let w = parse_braid_word("B1 B1", 2).unwrap();
        let rep = FockRepresentation::new(1).unwrap();
        let u = word_unitary(&w, 1).unwrap();
        let pair = rep.generator(1).unwrap().mul(&rep.generator(2).unwrap());
        assert!(distance_mod_phase(u.matrix(), pair.matrix()) < 1e-13);
    }

    #[test]
    fn empty_word_is_identity() {
        let u = word_unitary(&parse_braid_word("", 4).unwrap(), 2).unwrap();
        assert!(u.distance(&FockOperator::identity(2)) == 0.0);
    }

    #[test]
    fn mode_count_checked() {
        let w = parse_braid_word("B1", 5).unwrap();
        assert!(matches!(word_unitary(&w, 2), Err(BraidError::TooFewModes { .. })));
    }

    #[test]
    fn relations_hold() {
        for n in 2..=6 {
            for r in [Representation::SignedPerm, Representation::Fock] {
                let rep = verify_braid_relations(n, r).unwrap();
                assert!(rep.passed(), "n={n} {r:?}: {:?}", rep.checks);
            }
        }
        assert!(verify_braid_relations(2, Representation::SignedPerm).unwrap().checks.is_empty());
        assert_eq!(verify_braid_relations(3, Representation::Fock).unwrap().checks.len(), 1);
    }

    #[test]
    fn random_words_consistent() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let n = 2 + (rand::Rng::random_range(&mut rng, 0..5));
            let w = BraidWord::random(&mut rng, n, 12);
            assert!(representation_consistency(&w, n.div_ceil(2)).unwrap() < 1e-11, "{w}");
        }
    }

    #[test]
    fn flipped_gauge_is_detected() {
        // an even number of flipped letters can cancel, so use a single one
        let w = parse_braid_word("B2", 3).unwrap();
        let flipped = BraidGauge { alpha_k: 1, alpha_k1: 1 };
        let wrong = word_action_with_gauge(&w, flipped);
        assert!(representation_residual(&w, 2, &wrong).unwrap() > 1.0);
    }
}
