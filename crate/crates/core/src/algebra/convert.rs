//! Dirac ↔ Majorana basis changes and the U(1) mode rotation.
//!
//! Convention for mode `k` (1-based):
//! `γ_{2k−1} = c_k + c_k†`, `γ_{2k} = i(c_k† − c_k)`, and inversely
//! `c_k = (γ_{2k−1} + iγ_{2k})/2`, `c_k† = (γ_{2k−1} − iγ_{2k})/2`.

use std::collections::BTreeMap;
use std::ops::{Add, Mul};

use num_complex::Complex64;

use super::monomial::MajoranaMonomial;
use super::AlgebraError;

/// Linear combination of canonical monomials with complex coefficients.
///
/// Monomial phases are folded into the coefficients, so the map key is just
/// the support. All coefficients produced by the basis changes are dyadic
/// rationals, which keeps the arithmetic exact in `f64`.
#[derive(Clone, Debug, PartialEq)]
pub struct MajoranaSum {
    n_modes: usize,
    terms: BTreeMap<Vec<usize>, Complex64>,
}

impl MajoranaSum {
    pub fn zero(n_modes: usize) -> Self {
        Self { n_modes, terms: BTreeMap::new() }
    }

    pub fn scalar(n_modes: usize, c: Complex64) -> Self {
        let mut s = Self::zero(n_modes);
        s.add_term(Vec::new(), c);
        s
    }

    pub fn from_monomial(m: &MajoranaMonomial) -> Self {
        let mut s = Self::zero(m.n_modes());
        s.add_term(m.support().to_vec(), m.coefficient());
        s
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    fn add_term(&mut self, support: Vec<usize>, c: Complex64) {
        let entry = self.terms.entry(support).or_insert(Complex64::new(0.0, 0.0));
        *entry += c;
        self.terms.retain(|_, v| *v != Complex64::new(0.0, 0.0));
    }

    /// Coefficient of the canonical product over `support` (zero if absent).
    pub fn coefficient(&self, support: &[usize]) -> Complex64 {
        self.terms.get(support).copied().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize], Complex64)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), *v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = Self::zero(self.n_modes);
        for (s, v) in &self.terms {
            out.add_term(s.clone(), v * c);
        }
        out
    }

    /// Operator product, distributing over terms.
    pub fn product(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.n_modes != other.n_modes {
            return Err(AlgebraError::ModeCountMismatch(self.n_modes, other.n_modes));
        }
        let mut out = Self::zero(self.n_modes);
        for (sa, ca) in &self.terms {
            let ma = MajoranaMonomial::new(self.n_modes, 0, sa.clone())?;
            for (sb, cb) in &other.terms {
                let mb = MajoranaMonomial::new(self.n_modes, 0, sb.clone())?;
                let m = ma.multiply(&mb)?;
                out.add_term(m.support().to_vec(), ca * cb * m.coefficient());
            }
        }
        Ok(out)
    }
}

impl Add for &MajoranaSum {
    type Output = MajoranaSum;
    fn add(self, rhs: &MajoranaSum) -> MajoranaSum {
        assert_eq!(self.n_modes, rhs.n_modes, "adding sums over different algebras");
        let mut out = self.clone();
        for (s, v) in &rhs.terms {
            out.add_term(s.clone(), *v);
        }
        out
    }
}

impl Mul<Complex64> for &MajoranaSum {
    type Output = MajoranaSum;
    fn mul(self, rhs: Complex64) -> MajoranaSum {
        self.scale(rhs)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ladder {
    Annihilate,
    Create,
}

/// `c_mode` or `c_mode†`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiracOp {
    pub mode: usize,
    pub ladder: Ladder,
}

impl DiracOp {
    pub fn annihilate(mode: usize) -> Self {
        Self { mode, ladder: Ladder::Annihilate }
    }
    pub fn create(mode: usize) -> Self {
        Self { mode, ladder: Ladder::Create }
    }
}

/// Linear combination of single Dirac ladder operators.
#[derive(Clone, Debug, PartialEq)]
pub struct DiracSum {
    pub terms: BTreeMap<DiracOp, Complex64>,
}

impl DiracSum {
    fn from_pairs(pairs: &[(DiracOp, Complex64)]) -> Self {
        let mut terms = BTreeMap::new();
        for &(op, c) in pairs {
            *terms.entry(op).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        terms.retain(|_, v| *v != Complex64::new(0.0, 0.0));
        Self { terms }
    }

    /// Rewrite in the Majorana basis.
    pub fn to_majorana(&self, n_modes: usize) -> Result<MajoranaSum, AlgebraError> {
        let mut out = MajoranaSum::zero(n_modes);
        for (op, c) in &self.terms {
            let expansion = dirac_in_majoranas(n_modes, *op)?;
            out = &out + &expansion.scale(*c);
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConversionDirection {
    DiracToMajorana,
    MajoranaToDirac,
}

/// Result of [`basis_convert`] for one mode.
#[derive(Clone, Debug, PartialEq)]
pub enum ModeConversion {
    /// `(γ_{2k−1}, γ_{2k})` written in terms of `c_k, c_k†`.
    DiracToMajorana { odd: DiracSum, even: DiracSum },
    /// `(c_k, c_k†)` written in terms of `γ_{2k−1}, γ_{2k}`.
    MajoranaToDirac { annihilation: MajoranaSum, creation: MajoranaSum },
}

fn check_mode(n_modes: usize, k: usize) -> Result<(), AlgebraError> {
    if k == 0 || k > n_modes {
        Err(AlgebraError::ModeOutOfRange { mode: k, n_modes })
    } else {
        Ok(())
    }
}

/// Majorana expansion of a single ladder operator.
pub fn dirac_in_majoranas(n_modes: usize, op: DiracOp) -> Result<MajoranaSum, AlgebraError> {
    check_mode(n_modes, op.mode)?;
    let half = Complex64::new(0.5, 0.0);
    let half_i = match op.ladder {
        Ladder::Annihilate => Complex64::new(0.0, 0.5),
        Ladder::Create => Complex64::new(0.0, -0.5),
    };
    let odd = MajoranaMonomial::generator(n_modes, 2 * op.mode - 1)?;
    let even = MajoranaMonomial::generator(n_modes, 2 * op.mode)?;
    Ok(&MajoranaSum::from_monomial(&odd).scale(half) + &MajoranaSum::from_monomial(&even).scale(half_i))
}

pub fn basis_convert(
    n_modes: usize,
    k: usize,
    direction: ConversionDirection,
) -> Result<ModeConversion, AlgebraError> {
    check_mode(n_modes, k)?;
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    Ok(match direction {
        ConversionDirection::DiracToMajorana => ModeConversion::DiracToMajorana {
            odd: DiracSum::from_pairs(&[(DiracOp::annihilate(k), one), (DiracOp::create(k), one)]),
            even: DiracSum::from_pairs(&[(DiracOp::annihilate(k), -i), (DiracOp::create(k), i)]),
        },
        ConversionDirection::MajoranaToDirac => ModeConversion::MajoranaToDirac {
            annihilation: dirac_in_majoranas(n_modes, DiracOp::annihilate(k))?,
            creation: dirac_in_majoranas(n_modes, DiracOp::create(k))?,
        },
    })
}

/// `n_k = c_k† c_k`, expanded to `(1 + iγ_{2k−1}γ_{2k})/2`.
pub fn number_operator(n_modes: usize, k: usize) -> Result<MajoranaSum, AlgebraError> {
    let cd = dirac_in_majoranas(n_modes, DiracOp::create(k))?;
    let c = dirac_in_majoranas(n_modes, DiracOp::annihilate(k))?;
    cd.product(&c)
}

/// Action of the U(1) phase rotation `c_k ↦ e^{iφ} c_k` on the Majorana
/// pair of mode `k`:
///
/// ```text
/// γ_{2k−1} ↦  cos φ γ_{2k−1} − sin φ γ_{2k}
/// γ_{2k}   ↦  sin φ γ_{2k−1} + cos φ γ_{2k}
/// ```
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModeRotation {
    pub mode: usize,
    /// Row `r` gives the image of `γ_{2k−1+r}` in the `(γ_{2k−1}, γ_{2k})` basis.
    pub matrix: [[f64; 2]; 2],
}

impl ModeRotation {
    pub fn determinant(&self) -> f64 {
        let m = &self.matrix;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    /// `(self ∘ other)`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.mode, other.mode);
        let (a, b) = (&self.matrix, &other.matrix);
        // images compose as row vectors: r_other · M_self
        let mut m = [[0.0; 2]; 2];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                *v = b[r][0] * a[0][c] + b[r][1] * a[1][c];
            }
        }
        Self { mode: self.mode, matrix: m }
    }

    /// Image of the generator pair as Majorana sums.
    pub fn images(&self, n_modes: usize) -> Result<[MajoranaSum; 2], AlgebraError> {
        let g1 = MajoranaSum::from_monomial(&MajoranaMonomial::generator(n_modes, 2 * self.mode - 1)?);
        let g2 = MajoranaSum::from_monomial(&MajoranaMonomial::generator(n_modes, 2 * self.mode)?);
        let img = |row: [f64; 2]| &g1.scale(Complex64::new(row[0], 0.0)) + &g2.scale(Complex64::new(row[1], 0.0));
        Ok([img(self.matrix[0]), img(self.matrix[1])])
    }
}

pub fn u1_rotate_modes(n_modes: usize, phi: f64, k: usize) -> Result<ModeRotation, AlgebraError> {
    check_mode(n_modes, k)?;
    let (s, c) = phi.sin_cos();
    Ok(ModeRotation { mode: k, matrix: [[c, -s], [s, c]] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn gamma(n: usize, i: usize) -> MajoranaSum {
        MajoranaSum::from_monomial(&MajoranaMonomial::generator(n, i).unwrap())
    }

    #[test]
    fn gamma_one_from_dirac() {
        let ModeConversion::DiracToMajorana { odd, even } =
            basis_convert(1, 1, ConversionDirection::DiracToMajorana).unwrap()
        else {
            panic!()
        };
        assert_eq!(odd.terms[&DiracOp::annihilate(1)], Complex64::new(1.0, 0.0));
        assert_eq!(odd.terms[&DiracOp::create(1)], Complex64::new(1.0, 0.0));
        assert_eq!(odd.to_majorana(1).unwrap(), gamma(1, 1));
        assert_eq!(even.to_majorana(1).unwrap(), gamma(1, 2));
    }

    #[test]
    fn round_trip_annihilator() {
        let ModeConversion::MajoranaToDirac { annihilation, creation } =
            basis_convert(2, 2, ConversionDirection::MajoranaToDirac).unwrap()
        else {
            panic!()
        };
        // rebuild γ3, γ4 from c_2, c_2† and then c_2 from those
        let g3 = &annihilation + &creation;
        let g4 = &creation.scale(Complex64::new(0.0, 1.0)) + &annihilation.scale(Complex64::new(0.0, -1.0));
        assert_eq!(g3, gamma(2, 3));
        assert_eq!(g4, gamma(2, 4));
        let back = &g3.scale(Complex64::new(0.5, 0.0)) + &g4.scale(Complex64::new(0.0, 0.5));
        assert_eq!(back, annihilation);
    }

    #[test]
    fn number_operator_expansion() {
        let n = number_operator(1, 1).unwrap();
        assert_eq!(n.coefficient(&[]), Complex64::new(0.5, 0.0));
        assert_eq!(n.coefficient(&[1, 2]), Complex64::new(0.0, 0.5));
        // 1 − 2n = −iγ1γ2
        let p = &MajoranaSum::scalar(1, Complex64::new(1.0, 0.0)) + &n.scale(Complex64::new(-2.0, 0.0));
        let expected = MajoranaSum::from_monomial(&super::super::parity_monomial(1, 1).unwrap());
        assert_eq!(p, expected);
    }

    #[test]
    fn canonical_anticommutator() {
        // {c, c†} = 1 and c² = 0
        let c = dirac_in_majoranas(1, DiracOp::annihilate(1)).unwrap();
        let cd = dirac_in_majoranas(1, DiracOp::create(1)).unwrap();
        let anti = &c.product(&cd).unwrap() + &cd.product(&c).unwrap();
        assert_eq!(anti, MajoranaSum::scalar(1, Complex64::new(1.0, 0.0)));
        assert!(c.product(&c).unwrap().is_zero());
    }

    #[test]
    fn rotation_special_angles() {
        let id = u1_rotate_modes(1, 0.0, 1).unwrap();
        assert_eq!(id.matrix, [[1.0, -0.0], [0.0, 1.0]]);
        let q = u1_rotate_modes(1, PI / 2.0, 1).unwrap();
        let [a, b] = q.images(1).unwrap();
        assert!((a.coefficient(&[2]).re + 1.0).abs() < 1e-15 && a.coefficient(&[1]).norm() < 1e-15);
        assert!((b.coefficient(&[1]).re - 1.0).abs() < 1e-15 && b.coefficient(&[2]).norm() < 1e-15);
        let h = u1_rotate_modes(1, PI, 1).unwrap();
        assert!((h.matrix[0][0] + 1.0).abs() < 1e-15 && (h.matrix[1][1] + 1.0).abs() < 1e-15);
        assert!(h.matrix[0][1].abs() < 1e-15);
        assert!(u1_rotate_modes(1, 0.3, 2).is_err());
    }

    #[test]
    fn rotation_is_special_orthogonal() {
        for i in 0..50 {
            let phi = -3.0 + 0.13 * i as f64;
            let r = u1_rotate_modes(3, phi, 2).unwrap();
            assert!((r.determinant() - 1.0).abs() < 1e-14);
            let back = r.compose(&u1_rotate_modes(3, -phi, 2).unwrap());
            assert!((back.matrix[0][0] - 1.0).abs() < 1e-14 && back.matrix[0][1].abs() < 1e-14);
            assert!((back.matrix[1][1] - 1.0).abs() < 1e-14 && back.matrix[1][0].abs() < 1e-14);
        }
    }
}
