//! Braids as signed permutations of Majorana labels.

use nalgebra::DMatrix;

use super::{BraidLetter, BraidWord};

/// Signs `(α_k, α_{k+1})` in `γ_k ↦ α_{k+1} γ_{k+1}`, `γ_{k+1} ↦ α_k γ_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BraidGauge {
    pub alpha_k: i8,
    pub alpha_k1: i8,
}

impl BraidGauge {
    pub const STANDARD: Self = Self { alpha_k: -1, alpha_k1: 1 };
}

impl Default for BraidGauge {
    fn default() -> Self {
        Self::STANDARD
    }
}

/// `γ_j ↦ sign_j · γ_{target_j}`, labels 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    images: Vec<(usize, i8)>,
}

impl SignedPermutation {
    pub fn identity(n: usize) -> Self {
        Self { images: (1..=n).map(|j| (j, 1)).collect() }
    }

    pub fn letter(n: usize, letter: BraidLetter, gauge: BraidGauge) -> Self {
        let mut p = Self::identity(n);
        let k = letter.generator;
        // the inverse exchange reverses both signs
        let e = letter.exponent;
        p.images[k - 1] = (k + 1, gauge.alpha_k1 * e);
        p.images[k] = (k, gauge.alpha_k * e);
        p
    }

    pub fn n_labels(&self) -> usize {
        self.images.len()
    }

    /// Image of `γ_j` as `(target, sign)`.
    pub fn image(&self, j: usize) -> (usize, i8) {
        self.images[j - 1]
    }

    pub fn images(&self) -> &[(usize, i8)] {
        &self.images
    }

    /// `self ∘ inner`: first apply `inner`, then map the resulting label
    /// through `self`.
    pub fn after(&self, inner: &Self) -> Self {
        Self {
            images: inner
                .images
                .iter()
                .map(|&(t, s)| {
                    let (t2, s2) = self.images[t - 1];
                    (t2, s * s2)
                })
                .collect(),
        }
    }

    /// Column `j` holds the image of `γ_j`.
    pub fn matrix(&self) -> DMatrix<f64> {
        let n = self.images.len();
        let mut m = DMatrix::zeros(n, n);
        for (j, &(t, s)) in self.images.iter().enumerate() {
            m[(t - 1, j)] = s as f64;
        }
        m
    }

    pub fn determinant(&self) -> f64 {
        self.matrix().determinant()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(j, &(t, s))| t == j + 1 && s == 1)
    }
}

/// Heisenberg action `γ_j ↦ U† γ_j U` of a word.
///
/// With `U = U_m ⋯ U_1` the map is `φ_1 ∘ φ_2 ∘ ⋯ ∘ φ_m`.
pub fn word_action(w: &BraidWord) -> SignedPermutation {
    word_action_with_gauge(w, BraidGauge::STANDARD)
}

pub fn word_action_with_gauge(w: &BraidWord, gauge: BraidGauge) -> SignedPermutation {
    w.letters.iter().fold(SignedPermutation::identity(w.n_strands), |acc, &l| {
        acc.after(&SignedPermutation::letter(w.n_strands, l, gauge))
    })
}
