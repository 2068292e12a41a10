//! Extraction of near-zero eigenpairs in the Majorana gauge.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::Spectrum;

/// Near-zero eigenpairs of an open chain, rotated to self-conjugate
/// (Majorana) vectors and localized at the two ends.
#[derive(Clone, Debug)]
pub struct ZeroModeReport {
    pub count: usize,
    pub energies: Vec<f64>,
    /// `‖C v − v‖` per Majorana vector after the phase gauge.
    pub majorana_residuals: Vec<f64>,
    /// Mean of the per-mode decay lengths, in units of length.
    pub decay_length_fit: Option<f64>,
    pub decay_lengths: Vec<f64>,
    /// `[left, right]` probability fractions per Majorana vector.
    pub edge_weights: Vec<[f64; 2]>,
    /// Gauged vectors, left-localized first.
    pub modes: Vec<DVector<Complex64>>,
    /// An odd number of states fell below the threshold.
    pub unresolved_degeneracy: bool,
}

impl ZeroModeReport {
    /// True when every mode sits on one edge with weight above `min_weight`
    /// and the two edges are both occupied.
    pub fn one_per_edge(&self, min_weight: f64) -> bool {
        let left = self.edge_weights.iter().filter(|w| w[0] > min_weight).count();
        let right = self.edge_weights.iter().filter(|w| w[1] > min_weight).count();
        self.count > 0 && left + right == self.count && left == right
    }
}

pub fn find_zero_modes(s: &Spectrum, threshold: f64) -> ZeroModeReport {
    let layout = &s.layout;
    let idx: Vec<usize> =
        (0..s.eigenvalues.len()).filter(|&i| s.eigenvalues[i].abs() < threshold).collect();
    let count = idx.len();
    let energies: Vec<f64> = idx.iter().map(|&i| s.eigenvalues[i]).collect();
    let mut report = ZeroModeReport {
        count,
        energies,
        majorana_residuals: Vec::new(),
        decay_length_fit: None,
        decay_lengths: Vec::new(),
        edge_weights: Vec::new(),
        modes: Vec::new(),
        unresolved_degeneracy: count % 2 == 1,
    };
    if count == 0 || report.unresolved_degeneracy {
        return report;
    }

    let sub = DMatrix::from_columns(&idx.iter().map(|&i| s.eigenvectors.column(i)).collect::<Vec<_>>());
    // Left-half weight operator restricted to the zero-energy subspace; it is
    // site-local, so it commutes with C and its eigenvectors are Majorana up to phase.
    let left = left_weight_diagonal(layout.n_sites, layout.orbitals_per_site);
    let weighted = DMatrix::from_fn(sub.nrows(), sub.ncols(), |r, c| sub[(r, c)] * left[r]);
    let m = sub.adjoint() * weighted;
    let m = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = m.symmetric_eigen();
    let mut order: Vec<usize> = (0..count).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));

    let n = layout.n_sites;
    for (rank, &col) in order.iter().enumerate() {
        let mut v = &sub * eig.eigenvectors.column(col);
        v /= Complex64::new(v.norm(), 0.0);
        let overlap = v.dotc(&layout.apply_phs(&v));
        if overlap.norm() > 0.0 {
            // C(e^{iθ}v) = e^{−iθ}Cv, so e^{2iθ} = ⟨v|Cv⟩/|⟨v|Cv⟩| makes the vector self-conjugate
            v *= Complex64::from_polar(1.0, 0.5 * overlap.arg());
        }
        report.majorana_residuals.push((layout.apply_phs(&v) - &v).norm());

        let w = layout.site_weights(&v);
        let mut lw = 0.0;
        for (j, x) in w.iter().enumerate() {
            lw += x * left_fraction(j, n);
        }
        let total: f64 = w.iter().sum();
        report.edge_weights.push([lw / total, 1.0 - lw / total]);

        let from_left = rank < count / 2;
        let profile: Vec<f64> = if from_left { w.clone() } else { w.iter().rev().copied().collect() };
        report.decay_lengths.push(tail_decay_length(&profile, layout.lattice_spacing));
        report.modes.push(v);
    }
    report.decay_length_fit =
        Some(report.decay_lengths.iter().sum::<f64>() / report.decay_lengths.len() as f64);
    report
}

fn left_fraction(site: usize, n: usize) -> f64 {
    if 2 * site + 1 < n {
        1.0
    } else if 2 * site + 1 == n {
        0.5
    } else {
        0.0
    }
}

fn left_weight_diagonal(n_sites: usize, d: usize) -> Vec<f64> {
    (0..n_sites * d).map(|r| left_fraction(r / d, n_sites)).collect()
}

/// Decay length `ξ` of a probability profile `|ψ_j|² ∝ e^{−2 j a/ξ}`
/// measured from its first entry.
///
/// Fits a line to the log of the tail sums `Σ_{i≥j} w_i` over the first
/// quarter of the chain, which smooths over Friedel-type oscillations of
/// the density.
pub fn tail_decay_length(weights: &[f64], lattice_spacing: f64) -> f64 {
    let total: f64 = weights.iter().sum();
    let mut tails = vec![0.0; weights.len()];
    let mut acc = 0.0;
    for j in (0..weights.len()).rev() {
        acc += weights[j];
        tails[j] = acc / total;
    }
    let window = (weights.len() / 4).max(2);
    let pts: Vec<(f64, f64)> = (0..window.min(weights.len()))
        .filter(|&j| tails[j] > 1e-12)
        .map(|j| (j as f64, tails[j].ln()))
        .collect();
    let slope = if pts.len() >= 3 {
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        sxy / sxx
    } else if pts.len() == 2 {
        (pts[1].1 - pts[0].1) / (pts[1].0 - pts[0].0)
    } else {
        // the whole tail sits on one site: bound the slope by the cutoff
        1e-12f64.ln()
    };
    -2.0 * lattice_spacing / slope.min(-1e-300)
}
