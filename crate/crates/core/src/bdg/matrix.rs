//! Nambu-space matrices, particle-hole symmetry and dense diagonalization.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::BdgError;

pub(crate) const C0: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const C1: Complex64 = Complex64::new(1.0, 0.0);
pub(crate) const CI: Complex64 = Complex64::new(0.0, 1.0);

/// Hermiticity tolerance applied to assembled matrices.
pub const HERMITIAN_TOL: f64 = 1e-13;

/// Basis ordering of a BdG matrix.
///
/// Orbitals are site-major: index `site · orbitals_per_site + local`. The
/// local index runs over particle components first, then hole components.
#[derive(Clone, Debug, PartialEq)]
pub struct NambuLayout {
    pub n_sites: usize,
    pub orbitals_per_site: usize,
    pub lattice_spacing: f64,
    pub description: &'static str,
}

impl NambuLayout {
    /// Spinless `(c_j, c_j†)`.
    pub fn spinless(n_sites: usize, lattice_spacing: f64) -> Self {
        Self {
            n_sites,
            orbitals_per_site: 2,
            lattice_spacing,
            description: "spinless: local (c_j, c_j†); C = τ^x K",
        }
    }

    /// Spinful `(ψ_j↑, ψ_j↓, ψ_j↓†, −ψ_j↑†)`.
    pub fn spinful(n_sites: usize, lattice_spacing: f64) -> Self {
        Self {
            n_sites,
            orbitals_per_site: 4,
            lattice_spacing,
            description: "spinful: local (ψ↑, ψ↓, ψ↓†, −ψ↑†); C = τ^y σ^y K",
        }
    }

    pub fn dim(&self) -> usize {
        self.n_sites * self.orbitals_per_site
    }

    /// The on-site unitary `U` with `C = (⊕_j U) K`.
    pub fn phs_block(&self) -> DMatrix<Complex64> {
        match self.orbitals_per_site {
            2 => DMatrix::from_row_slice(2, 2, &[C0, C1, C1, C0]),
            4 => {
                // τ^y ⊗ σ^y with τ the outer index
                let m = C1;
                DMatrix::from_row_slice(
                    4,
                    4,
                    &[
                        C0, C0, C0, -m, //
                        C0, C0, m, C0, //
                        C0, m, C0, C0, //
                        -m, C0, C0, C0,
                    ],
                )
            }
            d => panic!("no particle-hole operator for {d} orbitals per site"),
        }
    }

    /// Unitary mapping the local Nambu components onto the Majorana
    /// components `(γ_{·,1}, γ_{·,2}, …)`, normalised so that `W W† = 2`.
    pub fn majorana_block(&self) -> DMatrix<Complex64> {
        match self.orbitals_per_site {
            // γ1 = c + c†, γ2 = i(c† − c)
            2 => DMatrix::from_row_slice(2, 2, &[C1, C1, -CI, CI]),
            // Ψ = (ψ↑, ψ↓, ψ↓†, −ψ↑†)
            4 => DMatrix::from_row_slice(
                4,
                4,
                &[
                    C1, C0, C0, -C1, //
                    -CI, C0, C0, -CI, //
                    C0, C1, C1, C0, //
                    C0, -CI, CI, C0,
                ],
            ),
            d => panic!("no Majorana transform for {d} orbitals per site"),
        }
    }

    fn block_diagonal(&self, block: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        let d = self.orbitals_per_site;
        let mut full = DMatrix::from_element(self.dim(), self.dim(), C0);
        for s in 0..self.n_sites {
            full.view_mut((s * d, s * d), (d, d)).copy_from(block);
        }
        full
    }

    /// `C v = U v*`.
    pub fn apply_phs(&self, v: &DVector<Complex64>) -> DVector<Complex64> {
        let d = self.orbitals_per_site;
        let u = self.phs_block();
        let mut out = DVector::from_element(v.len(), C0);
        for s in 0..self.n_sites {
            let local = v.rows(s * d, d).map(|z| z.conj());
            out.rows_mut(s * d, d).copy_from(&(&u * local));
        }
        out
    }

    /// `C h C⁻¹ = U h* U†`.
    pub fn conjugate_by_phs(&self, h: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        let u = self.block_diagonal(&self.phs_block());
        &u * h.map(|z| z.conj()) * u.adjoint()
    }

    /// Probability on each site, summed over the local components.
    pub fn site_weights(&self, v: &DVector<Complex64>) -> Vec<f64> {
        let d = self.orbitals_per_site;
        (0..self.n_sites)
            .map(|s| v.rows(s * d, d).iter().map(|z| z.norm_sqr()).sum())
            .collect()
    }
}

/// A Hermitian single-particle matrix in Nambu form.
#[derive(Clone, Debug)]
pub struct BdGMatrix {
    matrix: DMatrix<Complex64>,
    layout: NambuLayout,
}

impl BdGMatrix {
    pub fn new(matrix: DMatrix<Complex64>, layout: NambuLayout) -> Result<Self, BdgError> {
        if matrix.nrows() != layout.dim() || matrix.ncols() != layout.dim() {
            return Err(BdgError::DimensionMismatch { expected: layout.dim(), found: matrix.nrows() });
        }
        let residual = hermiticity_residual(&matrix);
        if residual > HERMITIAN_TOL * matrix.norm().max(1.0) {
            return Err(BdgError::NotHermitian(residual));
        }
        Ok(Self { matrix, layout })
    }

    /// Symmetrise an arbitrary matrix into one that is Hermitian and
    /// anticommutes with `C`: `h = (h₀ + h₀†)/2`, then `(h − C h C⁻¹)/2`.
    pub fn symmetrized(raw: &DMatrix<Complex64>, layout: NambuLayout) -> Result<Self, BdgError> {
        let herm = (raw + raw.adjoint()) * Complex64::new(0.5, 0.0);
        let phs = (&herm - layout.conjugate_by_phs(&herm)) * Complex64::new(0.5, 0.0);
        let exact = (&phs + phs.adjoint()) * Complex64::new(0.5, 0.0);
        Self::new(exact, layout)
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn layout(&self) -> &NambuLayout {
        &self.layout
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn hermiticity_residual(&self) -> f64 {
        hermiticity_residual(&self.matrix)
    }

    /// `‖h C + C h‖`, i.e. `‖h + C h C⁻¹‖` in Frobenius norm.
    pub fn phs_residual(&self) -> f64 {
        (&self.matrix + self.layout.conjugate_by_phs(&self.matrix)).norm()
    }

    pub fn is_real(&self) -> bool {
        self.matrix.iter().all(|z| z.im == 0.0)
    }
}

fn hermiticity_residual(m: &DMatrix<Complex64>) -> f64 {
    (m - m.adjoint()).norm()
}

/// Eigenpairs of a BdG matrix, ascending in energy.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    /// Column `n` belongs to `eigenvalues[n]`.
    pub eigenvectors: DMatrix<Complex64>,
    pub layout: NambuLayout,
}

impl Spectrum {
    /// `max_n |E_n + E_{dim−1−n}|` over the sorted list.
    pub fn pairing_residual(&self) -> f64 {
        pairing_residual(&self.eigenvalues)
    }

    pub fn eigenvector(&self, n: usize) -> DVector<Complex64> {
        self.eigenvectors.column(n).into_owned()
    }
}

pub fn pairing_residual(sorted: &[f64]) -> f64 {
    sorted
        .iter()
        .zip(sorted.iter().rev())
        .map(|(a, b)| (a + b).abs())
        .fold(0.0, f64::max)
}

/// Full dense Hermitian eigendecomposition.
///
/// Real matrices go through the real symmetric solver, which is several times
/// faster than the complex one at the same accuracy.
pub fn diagonalize(h: &BdGMatrix) -> Result<Spectrum, BdgError> {
    let residual = h.hermiticity_residual();
    if residual > HERMITIAN_TOL * h.matrix.norm().max(1.0) {
        return Err(BdgError::NotHermitian(residual));
    }
    let (values, vectors) = if h.is_real() {
        let real = h.matrix.map(|z| z.re);
        let real = (&real + real.transpose()) * 0.5;
        let eig = real.symmetric_eigen();
        (eig.eigenvalues, eig.eigenvectors.map(|x| Complex64::new(x, 0.0)))
    } else {
        let herm = (&h.matrix + h.matrix.adjoint()) * Complex64::new(0.5, 0.0);
        let eig = herm.symmetric_eigen();
        (eig.eigenvalues, eig.eigenvectors)
    };
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let eigenvalues = order.iter().map(|&i| values[i]).collect();
    let eigenvectors = DMatrix::from_columns(
        &order.iter().map(|&i| vectors.column(i)).collect::<Vec<_>>(),
    );
    Ok(Spectrum { eigenvalues, eigenvectors, layout: h.layout.clone() })
}

/// Eigenvalues only, ascending.
pub fn eigenvalues(h: &BdGMatrix) -> Result<Vec<f64>, BdgError> {
    let residual = h.hermiticity_residual();
    if residual > HERMITIAN_TOL * h.matrix.norm().max(1.0) {
        return Err(BdgError::NotHermitian(residual));
    }
    let mut values: Vec<f64> = if h.is_real() {
        let real = h.matrix.map(|z| z.re);
        ((&real + real.transpose()) * 0.5).symmetric_eigenvalues().iter().copied().collect()
    } else {
        ((&h.matrix + h.matrix.adjoint()) * Complex64::new(0.5, 0.0))
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect()
    };
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Assemble a translation-invariant chain from an on-site block and the
/// nearest-neighbour block `h_{j,j+1}`.
pub(crate) fn assemble_chain(
    layout: NambuLayout,
    onsite: &DMatrix<Complex64>,
    hop: &DMatrix<Complex64>,
    periodic: bool,
) -> Result<BdGMatrix, BdgError> {
    let d = layout.orbitals_per_site;
    let n = layout.n_sites;
    let mut m = DMatrix::from_element(layout.dim(), layout.dim(), C0);
    for j in 0..n {
        let mut blk = m.view_mut((j * d, j * d), (d, d));
        blk += onsite;
    }
    let bonds = if periodic { n } else { n.saturating_sub(1) };
    for j in 0..bonds {
        let k = (j + 1) % n;
        {
            let mut blk = m.view_mut((j * d, k * d), (d, d));
            blk += hop;
        }
        let mut blk = m.view_mut((k * d, j * d), (d, d));
        blk += hop.adjoint();
    }
    BdGMatrix::new(m, layout)
}
