//! Products of Majorana generators in canonical form.

use std::fmt;

use num_complex::Complex64;

use super::AlgebraError;

/// Powers of `i`, indexed by exponent mod 4.
const I_POWERS: [Complex64; 4] = [
    Complex64::new(1.0, 0.0),
    Complex64::new(0.0, 1.0),
    Complex64::new(-1.0, 0.0),
    Complex64::new(0.0, -1.0),
];

/// `i^phase_exp · γ_{s_1} γ_{s_2} ⋯ γ_{s_m}` with `s_1 < s_2 < ⋯ < s_m`.
///
/// Generator labels are 1-based and live in `[1, 2N]` where `N` is the number
/// of Dirac modes. The canonical form is unique, so `==` is exact operator
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MajoranaMonomial {
    n_modes: usize,
    phase_exp: u8,
    support: Vec<usize>,
}

impl MajoranaMonomial {
    /// The identity operator on `n_modes` Dirac modes.
    pub fn identity(n_modes: usize) -> Self {
        Self { n_modes, phase_exp: 0, support: Vec::new() }
    }

    /// A single generator `γ_index`.
    pub fn generator(n_modes: usize, index: usize) -> Result<Self, AlgebraError> {
        check_index(n_modes, index)?;
        Ok(Self { n_modes, phase_exp: 0, support: vec![index] })
    }

    /// The ordered product `γ_{l_1} γ_{l_2} ⋯` of arbitrary labels, brought
    /// into canonical form.
    pub fn from_product(n_modes: usize, labels: &[usize]) -> Result<Self, AlgebraError> {
        labels.iter().try_fold(Self::identity(n_modes), |acc, &l| {
            acc.multiply(&Self::generator(n_modes, l)?)
        })
    }

    /// Build from already-canonical parts; the support must be strictly ascending.
    pub fn new(n_modes: usize, phase_exp: u8, support: Vec<usize>) -> Result<Self, AlgebraError> {
        for &s in &support {
            check_index(n_modes, s)?;
        }
        if support.windows(2).any(|w| w[0] >= w[1]) {
            return Err(AlgebraError::NonCanonicalSupport(support));
        }
        Ok(Self { n_modes, phase_exp: phase_exp % 4, support })
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    /// Exponent `k` of the overall `i^k` factor, in `0..4`.
    pub fn phase_exp(&self) -> u8 {
        self.phase_exp
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn coefficient(&self) -> Complex64 {
        I_POWERS[self.phase_exp as usize]
    }

    pub fn degree(&self) -> usize {
        self.support.len()
    }

    /// Even monomials commute with the total fermion parity.
    pub fn is_even(&self) -> bool {
        self.support.len().is_multiple_of(2)
    }

    pub fn is_identity(&self) -> bool {
        self.support.is_empty() && self.phase_exp == 0
    }

    /// Multiply by `i^k`.
    pub fn times_i_pow(&self, k: u8) -> Self {
        Self { phase_exp: (self.phase_exp + k) % 4, ..self.clone() }
    }

    /// Hermitian conjugate. Reversing `m` generators takes `m(m-1)/2`
    /// transpositions, and the phase is conjugated.
    pub fn adjoint(&self) -> Self {
        let m = self.support.len();
        let reversal = ((m * m.saturating_sub(1) / 2) % 2) as u8 * 2;
        Self {
            phase_exp: ((4 - self.phase_exp) % 4 + reversal) % 4,
            ..self.clone()
        }
    }

    /// Product `self · other` in canonical form.
    ///
    /// Sorting the concatenated support moves each generator of `other` past
    /// every strictly larger generator of `self`; each such move is one
    /// transposition and contributes a factor −1. Equal neighbours then meet
    /// and cancel through `γ² = 1`.
    pub fn multiply(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.n_modes != other.n_modes {
            return Err(AlgebraError::ModeCountMismatch(self.n_modes, other.n_modes));
        }
        let a = &self.support;
        let b = &other.support;
        let mut swaps = 0usize;
        let mut merged = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i] < b[j]) {
                merged.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j] < a[i] {
                // b[j] passes all of a[i..]
                swaps += a.len() - i;
                merged.push(b[j]);
                j += 1;
            } else {
                // a[i] == b[j]: b[j] passes a[i+1..] and then annihilates a[i]
                swaps += a.len() - i - 1;
                i += 1;
                j += 1;
            }
        }
        let phase = (self.phase_exp as usize + other.phase_exp as usize + 2 * (swaps % 2)) % 4;
        Ok(Self { n_modes: self.n_modes, phase_exp: phase as u8, support: merged })
    }
}

impl fmt::Display for MajoranaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = ["", "i", "-", "-i"][self.phase_exp as usize];
        if self.support.is_empty() {
            return write!(f, "{}", ["1", "i", "-1", "-i"][self.phase_exp as usize]);
        }
        write!(f, "{prefix}")?;
        for (n, s) in self.support.iter().enumerate() {
            if n > 0 {
                write!(f, "·")?;
            }
            write!(f, "γ{s}")?;
        }
        Ok(())
    }
}

pub(crate) fn check_index(n_modes: usize, index: usize) -> Result<(), AlgebraError> {
    if index == 0 || index > 2 * n_modes {
        Err(AlgebraError::GeneratorOutOfRange { index, max: 2 * n_modes })
    } else {
        Ok(())
    }
}

/// Fermion parity of mode `k`, `P_k = −i γ_{2k−1} γ_{2k}`.
pub fn parity_monomial(n_modes: usize, k: usize) -> Result<MajoranaMonomial, AlgebraError> {
    if k == 0 || k > n_modes {
        return Err(AlgebraError::ModeOutOfRange { mode: k, n_modes });
    }
    Ok(MajoranaMonomial { n_modes, phase_exp: 3, support: vec![2 * k - 1, 2 * k] })
}

/// Total parity `P = P_1 P_2 ⋯ P_N`.
pub fn total_parity_monomial(n_modes: usize) -> MajoranaMonomial {
    (1..=n_modes)
        .map(|k| parity_monomial(n_modes, k).expect("k in range"))
        .fold(MajoranaMonomial::identity(n_modes), |acc, p| {
            acc.multiply(&p).expect("same mode count")
        })
}
