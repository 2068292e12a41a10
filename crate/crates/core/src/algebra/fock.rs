//! Dense matrix representation of the Majorana algebra on the `2^N`
//! dimensional fermionic Fock space.
//!
//! Basis states are occupation strings `|n_1 n_2 ⋯ n_N⟩` with mode 1 the most
//! significant bit of the basis index. Generators use a Jordan-Wigner string:
//!
//! ```text
//! γ_{2k−1} = Z⊗⋯⊗Z ⊗ X ⊗ 1⊗⋯⊗1
//! γ_{2k}   = Z⊗⋯⊗Z ⊗ Y ⊗ 1⊗⋯⊗1      (k−1 factors of Z)
//! ```
//!
//! so `c_k = (γ_{2k−1} + iγ_{2k})/2` lowers the occupation of mode `k` and
//! `−iγ_{2k−1}γ_{2k} = (−1)^{n_k}`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::convert::{number_operator, MajoranaSum};
use super::monomial::{check_index, total_parity_monomial, MajoranaMonomial};
use super::AlgebraError;

/// Largest supported mode count; the Fock dimension is `2^N ≤ 4096`.
pub const MAX_FOCK_MODES: usize = 12;

/// Tolerance for exact-algebra identities evaluated in floating point.
pub const ALGEBRA_TOL: f64 = 1e-13;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, Debug)]
pub struct FockOperator {
    n_modes: usize,
    matrix: DMatrix<Complex64>,
    hermitian: bool,
}

impl FockOperator {
    pub fn new(n_modes: usize, matrix: DMatrix<Complex64>) -> Result<Self, AlgebraError> {
        let dim = 1usize << n_modes;
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(AlgebraError::DimensionMismatch { expected: dim, found: matrix.nrows() });
        }
        let hermitian = (&matrix - matrix.adjoint()).norm() <= ALGEBRA_TOL * matrix.norm().max(1.0);
        Ok(Self { n_modes, matrix, hermitian })
    }

    pub fn identity(n_modes: usize) -> Self {
        let dim = 1usize << n_modes;
        Self { n_modes, matrix: DMatrix::identity(dim, dim), hermitian: true }
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.matrix
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn adjoint(&self) -> Self {
        Self { n_modes: self.n_modes, matrix: self.matrix.adjoint(), hermitian: self.hermitian }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let matrix = &self.matrix * &other.matrix;
        Self::new(self.n_modes, matrix).expect("same dimension")
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::new(self.n_modes, &self.matrix * c).expect("same dimension")
    }

    /// Frobenius norm of `self·other + other·self`.
    pub fn anticommutator_norm(&self, other: &Self) -> f64 {
        (&self.matrix * &other.matrix + &other.matrix * &self.matrix).norm()
    }

    /// Frobenius norm of `self·other − other·self`.
    pub fn commutator_norm(&self, other: &Self) -> f64 {
        (&self.matrix * &other.matrix - &other.matrix * &self.matrix).norm()
    }

    pub fn distance(&self, other: &Self) -> f64 {
        (&self.matrix - &other.matrix).norm()
    }
}

/// The Fock space of `n_modes` fermions together with its Majorana generators.
///
/// Operators are materialised on demand: at the cap of 12 modes a single dense
/// operator is 256 MiB.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FockRepresentation {
    n_modes: usize,
}

impl FockRepresentation {
    pub fn new(n_modes: usize) -> Result<Self, AlgebraError> {
        if n_modes == 0 {
            return Err(AlgebraError::ModeOutOfRange { mode: 0, n_modes: 0 });
        }
        if n_modes > MAX_FOCK_MODES {
            return Err(AlgebraError::FockTooLarge { n_modes, max: MAX_FOCK_MODES });
        }
        Ok(Self { n_modes })
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn dim(&self) -> usize {
        1 << self.n_modes
    }

    /// Apply `γ_index` to basis state `b`, returning the phase and image state.
    fn generator_action(&self, index: usize, b: usize) -> (Complex64, usize) {
        let k = index.div_ceil(2);
        let bit = self.n_modes - k;
        let string = (b >> (bit + 1)).count_ones() % 2;
        let sign = if string == 1 { -1.0 } else { 1.0 };
        let occupied = (b >> bit) & 1 == 1;
        let phase = if index % 2 == 1 {
            Complex64::new(sign, 0.0)
        } else if occupied {
            Complex64::new(0.0, -sign)
        } else {
            Complex64::new(0.0, sign)
        };
        (phase, b ^ (1 << bit))
    }

    /// Matrix of a canonical monomial. Each column has a single nonzero entry.
    pub fn monomial(&self, m: &MajoranaMonomial) -> Result<FockOperator, AlgebraError> {
        if m.n_modes() != self.n_modes {
            return Err(AlgebraError::ModeCountMismatch(m.n_modes(), self.n_modes));
        }
        let dim = self.dim();
        let mut mat = DMatrix::from_element(dim, dim, ZERO);
        for b in 0..dim {
            let mut state = b;
            let mut amp = m.coefficient();
            for &g in m.support().iter().rev() {
                let (ph, next) = self.generator_action(g, state);
                amp *= ph;
                state = next;
            }
            mat[(state, b)] = amp;
        }
        FockOperator::new(self.n_modes, mat)
    }

    pub fn generator(&self, index: usize) -> Result<FockOperator, AlgebraError> {
        check_index(self.n_modes, index)?;
        self.monomial(&MajoranaMonomial::generator(self.n_modes, index)?)
    }

    pub fn generators(&self) -> Vec<FockOperator> {
        (1..=2 * self.n_modes)
            .map(|i| self.generator(i).expect("index in range"))
            .collect()
    }

    pub fn sum(&self, s: &MajoranaSum) -> Result<FockOperator, AlgebraError> {
        if s.n_modes() != self.n_modes {
            return Err(AlgebraError::ModeCountMismatch(s.n_modes(), self.n_modes));
        }
        let dim = self.dim();
        let mut mat = DMatrix::from_element(dim, dim, ZERO);
        for (support, c) in s.terms() {
            let m = MajoranaMonomial::new(self.n_modes, 0, support.to_vec())?;
            mat += self.monomial(&m)?.into_matrix() * c;
        }
        FockOperator::new(self.n_modes, mat)
    }

    /// `c_k` in the Fock basis.
    pub fn annihilation(&self, k: usize) -> Result<FockOperator, AlgebraError> {
        let c = super::convert::dirac_in_majoranas(
            self.n_modes,
            super::convert::DiracOp::annihilate(k),
        )?;
        self.sum(&c)
    }

    pub fn number(&self, k: usize) -> Result<FockOperator, AlgebraError> {
        self.sum(&number_operator(self.n_modes, k)?)
    }

    /// `P = ∏_k (−iγ_{2k−1}γ_{2k})`, diagonal with entries `(−1)^{Σ n_k}`.
    pub fn total_parity(&self) -> FockOperator {
        self.monomial(&total_parity_monomial(self.n_modes)).expect("same mode count")
    }

    pub fn projector(&self, sector: ParitySector) -> ParitySectorProjector {
        let p = self.total_parity();
        let sign = match sector {
            ParitySector::Even => 1.0,
            ParitySector::Odd => -1.0,
        };
        let dim = self.dim();
        let mat = (DMatrix::<Complex64>::identity(dim, dim) + p.matrix() * Complex64::new(sign, 0.0))
            * Complex64::new(0.5, 0.0);
        ParitySectorProjector {
            sector,
            projector: FockOperator::new(self.n_modes, mat).expect("same dimension"),
        }
    }

    /// Occupation basis vector `|n_1 ⋯ n_N⟩`.
    pub fn basis_state(&self, occupations: &[u8]) -> Result<DVector<Complex64>, AlgebraError> {
        if occupations.len() != self.n_modes || occupations.iter().any(|&n| n > 1) {
            return Err(AlgebraError::InvalidOccupation(occupations.to_vec()));
        }
        let idx = occupations.iter().fold(0usize, |acc, &n| (acc << 1) | n as usize);
        let mut v = DVector::from_element(self.dim(), ZERO);
        v[idx] = ONE;
        Ok(v)
    }
}

/// Convenience: all `2N` generator matrices.
pub fn fock_representation(n_modes: usize) -> Result<Vec<FockOperator>, AlgebraError> {
    Ok(FockRepresentation::new(n_modes)?.generators())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ParitySector {
    Even,
    Odd,
}

#[derive(Clone, Debug)]
pub struct ParitySectorProjector {
    pub sector: ParitySector,
    pub projector: FockOperator,
}

/// Cross-parity matrix element `⟨ψ_−|A|ψ_+⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SuperselectionElement {
    pub value: Complex64,
    /// `false` when `A` fails `PAP = A`, i.e. it contains odd monomials.
    pub operator_even: bool,
}

pub fn superselection_expectation(
    a: &FockOperator,
    psi_plus: &DVector<Complex64>,
    psi_minus: &DVector<Complex64>,
) -> Result<SuperselectionElement, AlgebraError> {
    let rep = FockRepresentation::new(a.n_modes())?;
    let p = rep.total_parity();
    for (psi, sign, sector) in [(psi_plus, 1.0, ParitySector::Even), (psi_minus, -1.0, ParitySector::Odd)] {
        if psi.len() != rep.dim() {
            return Err(AlgebraError::DimensionMismatch { expected: rep.dim(), found: psi.len() });
        }
        let norm = psi.norm();
        let residual = (p.matrix() * psi - psi * Complex64::new(sign, 0.0)).norm();
        if norm == 0.0 || residual > 1e-10 * norm {
            return Err(AlgebraError::NotParityEigenstate { expected: sector, residual });
        }
    }
    let pap = p.matrix() * a.matrix() * p.matrix();
    let operator_even = (&pap - a.matrix()).norm() <= 1e-12 * a.matrix().norm().max(1.0);
    let value = psi_minus.dotc(&(a.matrix() * psi_plus));
    Ok(SuperselectionElement { value, operator_even })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parity_monomial;

    #[test]
    fn single_mode_generators() {
        let g = fock_representation(1).unwrap();
        assert_eq!(g.len(), 2);
        let id = FockOperator::identity(1);
        for a in &g {
            assert!(a.is_hermitian());
            assert!(a.mul(a).distance(&id) < ALGEBRA_TOL);
        }
        assert!(g[0].anticommutator_norm(&g[1]) < ALGEBRA_TOL);
    }

    #[test]
    fn three_modes_all_pairs_anticommute() {
        let g = fock_representation(3).unwrap();
        let id = FockOperator::identity(3);
        for (i, a) in g.iter().enumerate() {
            for (j, b) in g.iter().enumerate() {
                let anti = a.matrix() * b.matrix() + b.matrix() * a.matrix();
                let expected = if i == j { id.matrix() * Complex64::new(2.0, 0.0) } else { DMatrix::zeros(8, 8) };
                assert!((anti - expected).norm() < ALGEBRA_TOL, "pair ({i},{j})");
            }
        }
    }

    #[test]
    fn annihilator_lowers_occupation() {
        let rep = FockRepresentation::new(2).unwrap();
        let c2 = rep.annihilation(2).unwrap();
        let s11 = rep.basis_state(&[1, 1]).unwrap();
        let s10 = rep.basis_state(&[1, 0]).unwrap();
        // c_2|11⟩ = −|10⟩ (one occupied mode to the left)
        let out = c2.matrix() * &s11;
        assert!((out + &s10).norm() < 1e-15);
        let n1 = rep.number(1).unwrap();
        assert!((n1.matrix() * &s10 - &s10).norm() < 1e-15);
    }

    #[test]
    fn parity_matrix_is_diagonal_sign() {
        let rep = FockRepresentation::new(3).unwrap();
        let p = rep.total_parity();
        for b in 0..8usize {
            let expected = if b.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
            assert!((p.matrix()[(b, b)].re - expected).abs() < 1e-15);
        }
        let off = p.matrix() - DMatrix::from_diagonal(&p.matrix().diagonal());
        assert_eq!(off.norm(), 0.0);
    }

    #[test]
    fn parity_monomial_matches_number_operator() {
        let rep = FockRepresentation::new(2).unwrap();
        for k in 1..=2 {
            let pk = rep.monomial(&parity_monomial(2, k).unwrap()).unwrap();
            let n = rep.number(k).unwrap();
            let expected = DMatrix::<Complex64>::identity(4, 4) - n.matrix() * Complex64::new(2.0, 0.0);
            assert!((pk.matrix() - expected).norm() < 1e-15);
        }
    }

    #[test]
    fn projectors() {
        let rep = FockRepresentation::new(3).unwrap();
        let e = rep.projector(ParitySector::Even).projector;
        let o = rep.projector(ParitySector::Odd).projector;
        assert!(e.mul(&e).distance(&e) < 1e-15);
        assert!(e.is_hermitian());
        let sum = FockOperator::new(3, e.matrix() + o.matrix()).unwrap();
        assert!(sum.distance(&FockOperator::identity(3)) < 1e-15);
    }

    #[test]
    fn size_cap() {
        assert!(matches!(FockRepresentation::new(13), Err(AlgebraError::FockTooLarge { .. })));
        assert!(FockRepresentation::new(0).is_err());
    }

    #[test]
    fn superselection_identity_is_zero() {
        let rep = FockRepresentation::new(2).unwrap();
        let plus = rep.basis_state(&[1, 1]).unwrap();
        let minus = rep.basis_state(&[0, 1]).unwrap();
        let r = superselection_expectation(&FockOperator::identity(2), &plus, &minus).unwrap();
        assert_eq!(r.value, ZERO);
        assert!(r.operator_even);
    }

    #[test]
    fn superselection_flags_odd_operator() {
        let rep = FockRepresentation::new(2).unwrap();
        let g1 = rep.generator(1).unwrap();
        let plus = rep.basis_state(&[0, 0]).unwrap();
        let minus = rep.basis_state(&[1, 0]).unwrap();
        let r = superselection_expectation(&g1, &plus, &minus).unwrap();
        assert!(!r.operator_even);
        assert!((r.value.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn superselection_rejects_mixed_parity_state() {
        let rep = FockRepresentation::new(2).unwrap();
        let mixed = rep.basis_state(&[0, 0]).unwrap() + rep.basis_state(&[1, 0]).unwrap();
        let minus = rep.basis_state(&[1, 0]).unwrap();
        let r = superselection_expectation(&FockOperator::identity(2), &mixed, &minus);
        assert!(matches!(r, Err(AlgebraError::NotParityEigenstate { .. })));
    }
}
