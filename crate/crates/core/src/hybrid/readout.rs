//! Dispersive cavity readout of the parity qubit through a transmon.

use serde::{Deserialize, Serialize};

use super::HybridError;

/// Cavity and transmon parameters with ħ = 1, so energies and angular
/// frequencies share units.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReadoutParams {
    pub omega0: f64,
    pub g_jc: f64,
    pub depsilon: f64,
    pub delta: f64,
    /// Logical state, ±1.
    pub sigma_z: i8,
}

impl ReadoutParams {
    pub fn validate(&self) -> Result<(), HybridError> {
        if self.sigma_z.abs() != 1 {
            return Err(HybridError::Domain(format!("sigma_z = {} must be ±1", self.sigma_z)));
        }
        if ![self.omega0, self.g_jc, self.depsilon, self.delta].iter().all(|x| x.is_finite()) {
            return Err(HybridError::Domain("readout parameters must be finite".into()));
        }
        Ok(())
    }

    /// `Δε_σz = Δε + δ σ̄_z`.
    pub fn qubit_splitting(&self) -> f64 {
        self.depsilon + self.delta * self.sigma_z as f64
    }

    pub fn detuning(&self) -> f64 {
        self.omega0 - self.qubit_splitting()
    }

    pub fn is_dispersive(&self) -> bool {
        (self.g_jc / (self.omega0 - self.depsilon)).abs() < 0.1
    }

    pub fn with_sigma(&self, sigma_z: i8) -> Self {
        Self { sigma_z, ..self.clone() }
    }
}

/// `ω_res = ω_0 − g²/(ω_0 − Δε_σz)`.
pub fn dispersive_shift(r: &ReadoutParams) -> Result<f64, HybridError> {
    r.validate()?;
    let d = r.detuning();
    if d == 0.0 {
        return Err(HybridError::Domain("cavity resonant with the transmon".into()));
    }
    Ok(r.omega0 - r.g_jc * r.g_jc / d)
}

/// `ω_res(+1) − ω_res(−1)`.
pub fn readout_contrast(r: &ReadoutParams) -> Result<f64, HybridError> {
    Ok(dispersive_shift(&r.with_sigma(1))? - dispersive_shift(&r.with_sigma(-1))?)
}

/// Exact Jaynes-Cummings levels `ω_0 a†a + (ω_q/2) σ^z + g (a σ⁺ + a† σ⁻)`.
#[derive(Clone, Debug)]
pub struct JcSpectrum {
    /// Ascending dressed energies for all states with at most
    /// `photon_cutoff` photons in the bare basis.
    pub levels: Vec<f64>,
    /// Splitting of the `n`-th excitation block, `√(d² + 4g²(n+1))`.
    pub block_splittings: Vec<f64>,
    /// Spacing `E(g,1) − E(g,0)` of the dressed states that connect to the
    /// transmon ground state.
    pub omega_ground_branch: f64,
    /// Spacing `E(e,1) − E(e,0)` on the excited branch.
    pub omega_excited_branch: f64,
    pub warning: Option<String>,
}

pub const MIN_PHOTON_CUTOFF: usize = 5;

pub fn jc_oracle(r: &ReadoutParams, photon_cutoff: usize) -> Result<JcSpectrum, HybridError> {
    r.validate()?;
    let wq = r.qubit_splitting();
    let w0 = r.omega0;
    let g = r.g_jc;
    let d = w0 - wq;
    if d == 0.0 && g == 0.0 {
        return Err(HybridError::Domain("degenerate bare levels".into()));
    }
    let warning = (photon_cutoff < MIN_PHOTON_CUTOFF).then(|| {
        format!("photon cutoff {photon_cutoff} below {MIN_PHOTON_CUTOFF}; upper levels unconverged")
    });
    let n_blocks = photon_cutoff.max(2);
    // block n couples |g, n+1⟩ and |e, n⟩; the branch sign follows the bare order
    let s = if d >= 0.0 { 1.0 } else { -1.0 };
    let split: Vec<f64> =
        (0..n_blocks).map(|n| (d * d + 4.0 * g * g * (n as f64 + 1.0)).sqrt()).collect();
    let centre = |n: usize| w0 * (n as f64 + 0.5);
    let ground_dressed = |n: usize| centre(n) + s * 0.5 * split[n];
    let excited_dressed = |n: usize| centre(n) - s * 0.5 * split[n];

    let e_g0 = -0.5 * wq;
    let mut levels = vec![e_g0];
    for n in 0..photon_cutoff {
        levels.push(ground_dressed(n));
        levels.push(excited_dressed(n));
    }
    levels.sort_by(f64::total_cmp);
    Ok(JcSpectrum {
        levels,
        block_splittings: split[..photon_cutoff.min(split.len())].to_vec(),
        omega_ground_branch: ground_dressed(0) - e_g0,
        omega_excited_branch: excited_dressed(1) - excited_dressed(0),
        warning,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;

    fn params(ratio: f64, sigma_z: i8) -> ReadoutParams {
        let g = 0.01;
        ReadoutParams { omega0: 5.0, g_jc: g, depsilon: 5.0 - ratio * g, delta: 0.0, sigma_z }
    }

    /// Dense JC Hamiltonian in the truncated product basis |q, n⟩.
    fn dense_levels(r: &ReadoutParams, nmax: usize) -> Vec<f64> {
        let dim = 2 * (nmax + 1);
        let idx = |q: usize, n: usize| q * (nmax + 1) + n;
        let mut h = DMatrix::<f64>::zeros(dim, dim);
        let wq = r.qubit_splitting();
        for n in 0..=nmax {
            h[(idx(0, n), idx(0, n))] = r.omega0 * n as f64 - 0.5 * wq;
            h[(idx(1, n), idx(1, n))] = r.omega0 * n as f64 + 0.5 * wq;
            if n < nmax {
                let c = r.g_jc * ((n + 1) as f64).sqrt();
                h[(idx(1, n), idx(0, n + 1))] = c;
                h[(idx(0, n + 1), idx(1, n))] = c;
            }
        }
        let mut e: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
        e.sort_by(f64::total_cmp);
        e
    }

    #[test]
    fn closed_form_matches_dense_blocks() {
        let r = ReadoutParams { omega0: 3.0, g_jc: 0.2, depsilon: 2.1, delta: 0.05, sigma_z: -1 };
        let jc = jc_oracle(&r, 8).unwrap();
        let dense = dense_levels(&r, 8);
        // the truncated dense basis leaves |e, 8⟩ uncoupled; compare the lowest levels
        for (a, b) in jc.levels.iter().zip(&dense).take(12) {
            assert!((a - b).abs() < 1e-12, "{a} {b}");
        }
        let d = r.detuning();
        assert!((jc.block_splittings[0] - (d * d + 4.0 * 0.04).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn uncoupled_ladder() {
        let r = ReadoutParams { omega0: 2.0, g_jc: 0.0, depsilon: 0.7, delta: 0.0, sigma_z: 1 };
        let jc = jc_oracle(&r, 6).unwrap();
        assert_eq!(jc.omega_ground_branch, 2.0);
        assert_eq!(jc.omega_excited_branch, 2.0);
        assert!(jc.levels.contains(&(-0.35)) && jc.levels.contains(&0.35));
        assert_eq!(dispersive_shift(&r).unwrap(), 2.0);
    }

    #[test]
    fn formula_tracks_the_excited_branch() {
        let mut last = f64::INFINITY;
        for ratio in [5.0, 10.0, 20.0, 40.0] {
            let r = params(ratio, 1);
            let jc = jc_oracle(&r, MIN_PHOTON_CUTOFF).unwrap();
            let exact = jc.omega_excited_branch - r.omega0;
            let approx = dispersive_shift(&r).unwrap() - r.omega0;
            let err = ((approx - exact) / exact).abs();
            assert!(err < last);
            last = err;
            // the ground branch is shifted the opposite way by the same amount to leading order
            let ground = jc.omega_ground_branch - r.omega0;
            assert!(ground * exact < 0.0);
            assert!(((ground.abs() - exact.abs()) / exact).abs() < 3.0 / (ratio * ratio) * 2.0);
        }
        assert!(last < 1e-2);
    }

    #[test]
    fn contrast_first_order() {
        let r = ReadoutParams { omega0: 5.0, g_jc: 0.05, depsilon: 4.0, delta: 1e-4, sigma_z: 1 };
        let c = readout_contrast(&r).unwrap();
        let d = r.omega0 - r.depsilon;
        let expect = -2.0 * 0.05 * 0.05 * 1e-4 / (d * d);
        assert!(((c - expect) / expect).abs() < 1e-3);
    }

    #[test]
    fn contrast_is_odd_in_delta() {
        let r = ReadoutParams { omega0: 5.0, g_jc: 0.05, depsilon: 4.3, delta: 0.02, sigma_z: 1 };
        let minus = ReadoutParams { delta: -0.02, sigma_z: -1, ..r.clone() };
        assert_eq!(dispersive_shift(&r).unwrap() - 5.0, dispersive_shift(&minus).unwrap() - 5.0);
    }

    #[test]
    fn pole_and_cutoff() {
        let r = ReadoutParams { omega0: 5.0, g_jc: 0.05, depsilon: 5.0, delta: 0.0, sigma_z: 1 };
        assert!(dispersive_shift(&r).is_err());
        assert!(jc_oracle(&params(10.0, 1), 3).unwrap().warning.is_some());
        assert!(jc_oracle(&params(10.0, 1), 5).unwrap().warning.is_none());
        assert!(params(20.0, 1).is_dispersive());
        assert!(!params(5.0, 1).is_dispersive());
    }
}
