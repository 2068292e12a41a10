//! The four-Majorana parity qubit and single-qubit gates compiled from braids.

use std::collections::{HashSet, VecDeque};

use nalgebra::{DMatrix, DVector, Matrix2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::unitary::word_unitary;
use super::{BraidError, BraidWord};
use crate::algebra::{FockOperator, FockRepresentation, MajoranaMonomial};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Majoranas `γ_1..γ_4` on two Dirac modes, even sector,
/// `|0̄⟩ = |00⟩`, `|1̄⟩ = |11⟩`.
#[derive(Clone, Debug)]
pub struct QubitEncoding {
    rep: FockRepresentation,
}

impl Default for QubitEncoding {
    fn default() -> Self {
        Self::new()
    }
}

impl QubitEncoding {
    pub const N_MODES: usize = 2;
    pub const N_STRANDS: usize = 4;

    pub fn new() -> Self {
        Self { rep: FockRepresentation::new(Self::N_MODES).expect("two modes within cap") }
    }

    pub fn representation(&self) -> &FockRepresentation {
        &self.rep
    }

    pub fn basis(&self) -> [DVector<Complex64>; 2] {
        [
            self.rep.basis_state(&[0, 0]).expect("valid occupation"),
            self.rep.basis_state(&[1, 1]).expect("valid occupation"),
        ]
    }

    fn pair(&self, a: usize, b: usize) -> FockOperator {
        let m = MajoranaMonomial::from_product(Self::N_MODES, &[a, b])
            .expect("labels in range")
            .times_i_pow(3);
        self.rep.monomial(&m).expect("same algebra")
    }

    /// `σ̄^z = −iγ_1γ_2`.
    pub fn sigma_z(&self) -> FockOperator {
        self.pair(1, 2)
    }

    /// `σ̄^x = −iγ_2γ_3`.
    pub fn sigma_x(&self) -> FockOperator {
        self.pair(2, 3)
    }

    /// Matrix elements `⟨ā|O|b̄⟩` in the logical basis.
    pub fn restrict(&self, op: &DMatrix<Complex64>) -> Matrix2<Complex64> {
        let b = self.basis();
        Matrix2::from_fn(|r, c| b[r].dotc(&(op * &b[c])))
    }

    /// Norm of the part of `O|b̄⟩` outside the code space, maximized over `b̄`.
    pub fn leakage(&self, op: &DMatrix<Complex64>) -> f64 {
        let b = self.basis();
        b.iter()
            .map(|v| {
                let out = op * v;
                let inside: DVector<Complex64> = b.iter().fold(DVector::zeros(out.len()), |acc, e| {
                    acc + e * e.dotc(&out)
                });
                (out - inside).norm()
            })
            .fold(0.0, f64::max)
    }
}

/// A 2×2 unitary compared modulo global phase.
#[derive(Clone, Debug, PartialEq)]
pub struct LogicalGate {
    matrix: Matrix2<Complex64>,
}

pub const UNITARY_TOL: f64 = 1e-12;

impl LogicalGate {
    pub fn new(matrix: Matrix2<Complex64>) -> Result<Self, BraidError> {
        let r = (matrix.adjoint() * matrix - Matrix2::identity()).norm();
        if r > UNITARY_TOL {
            return Err(BraidError::NotUnitary(r));
        }
        Ok(Self { matrix })
    }

    pub fn identity() -> Self {
        Self { matrix: Matrix2::identity() }
    }

    pub fn pauli_x() -> Self {
        Self { matrix: Matrix2::new(ZERO, ONE, ONE, ZERO) }
    }

    pub fn pauli_z() -> Self {
        Self { matrix: Matrix2::new(ONE, ZERO, ZERO, -ONE) }
    }

    /// `exp(iθ σ^z)`.
    pub fn exp_i_z(theta: f64) -> Self {
        Self { matrix: Matrix2::new(Complex64::from_polar(1.0, theta), ZERO, ZERO, Complex64::from_polar(1.0, -theta)) }
    }

    /// `exp(iθ σ^x)`.
    pub fn exp_i_x(theta: f64) -> Self {
        let c = Complex64::new(theta.cos(), 0.0);
        let s = I * theta.sin();
        Self { matrix: Matrix2::new(c, s, s, c) }
    }

    pub fn matrix(&self) -> &Matrix2<Complex64> {
        &self.matrix
    }

    /// `self` applied after `first`.
    pub fn after(&self, first: &Self) -> Self {
        Self { matrix: self.matrix * first.matrix }
    }

    pub fn adjoint(&self) -> Self {
        Self { matrix: self.matrix.adjoint() }
    }

    /// Representative with the first entry of magnitude above 1e-9, in
    /// row-major order, rotated onto the positive real axis.
    pub fn canonical(&self) -> Matrix2<Complex64> {
        let first = (0..4)
            .map(|i| self.matrix[(i / 2, i % 2)])
            .find(|z| z.norm() > 1e-9)
            .unwrap_or(ONE);
        self.matrix * (first.conj() / first.norm())
    }

    /// `|tr(A† B)| / 2`, equal to 1 exactly when the gates agree up to phase.
    pub fn fidelity(&self, other: &Self) -> f64 {
        (self.matrix.adjoint() * other.matrix).trace().norm() / 2.0
    }

    pub fn distance_mod_phase(&self, other: &Self) -> f64 {
        let overlap = (other.matrix.adjoint() * self.matrix).trace();
        let phase = if overlap.norm() > 0.0 { overlap / overlap.norm() } else { ONE };
        (self.matrix - other.matrix * phase).norm()
    }

    pub fn eq_mod_phase(&self, other: &Self, tol: f64) -> bool {
        self.distance_mod_phase(other) < tol
    }

    fn key(&self) -> [i64; 8] {
        let c = self.canonical();
        let mut k = [0i64; 8];
        for i in 0..4 {
            let z = c[(i / 2, i % 2)];
            k[2 * i] = (z.re * 1e8).round() as i64;
            k[2 * i + 1] = (z.im * 1e8).round() as i64;
        }
        k
    }

    /// Row-major `[[[re, im], [re, im]], [[re, im], [re, im]]]`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(GateJson::from(self)).expect("plain numbers")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, BraidError> {
        let g: GateJson = serde_json::from_value(v.clone()).map_err(|e| BraidError::Json(e.to_string()))?;
        let m = g.0;
        Self::new(Matrix2::from_fn(|r, c| Complex64::new(m[r][c][0], m[r][c][1])))
    }
}

#[derive(Serialize, Deserialize)]
struct GateJson([[[f64; 2]; 2]; 2]);

impl From<&LogicalGate> for GateJson {
    fn from(g: &LogicalGate) -> Self {
        let mut out = [[[0.0; 2]; 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                let z = g.matrix[(r, c)];
                *cell = [z.re, z.im];
            }
        }
        GateJson(out)
    }
}

/// Maximum leakage tolerated when restricting a braid to the code space.
pub const LEAKAGE_TOL: f64 = 1e-12;

pub fn logical_gate_from_word(w: &BraidWord, enc: &QubitEncoding) -> Result<LogicalGate, BraidError> {
    if w.n_strands != QubitEncoding::N_STRANDS {
        return Err(BraidError::StrandMismatch(w.n_strands, QubitEncoding::N_STRANDS));
    }
    let u = word_unitary(w, QubitEncoding::N_MODES)?;
    let leak = enc.leakage(u.matrix());
    if leak > LEAKAGE_TOL {
        return Err(BraidError::Leakage(leak));
    }
    LogicalGate::new(enc.restrict(u.matrix()))
}

#[derive(Clone, Debug)]
pub struct CliffordClosure {
    /// One representative per class modulo phase, in discovery order.
    pub elements: Vec<LogicalGate>,
    pub closed: bool,
}

impl CliffordClosure {
    pub fn contains(&self, g: &LogicalGate) -> bool {
        self.elements.iter().any(|e| e.eq_mod_phase(g, 1e-9))
    }
}

/// Breadth-first closure of `generators` under multiplication, modulo phase.
pub fn clifford_closure(generators: &[LogicalGate], max_elements: usize) -> Result<CliffordClosure, BraidError> {
    if max_elements < 24 {
        return Err(BraidError::CapTooSmall(max_elements));
    }
    let mut seen: HashSet<[i64; 8]> = HashSet::new();
    let mut elements = vec![LogicalGate::identity()];
    seen.insert(LogicalGate::identity().key());
    let mut queue = VecDeque::from([LogicalGate::identity()]);
    while let Some(g) = queue.pop_front() {
        for h in generators {
            let next = h.after(&g);
            if seen.insert(next.key()) {
                if elements.len() == max_elements {
                    return Ok(CliffordClosure { elements, closed: false });
                }
                elements.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(CliffordClosure { elements, closed: true })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::parse_braid_word;
    use std::f64::consts::FRAC_PI_4;

    fn gate(text: &str) -> LogicalGate {
        logical_gate_from_word(&parse_braid_word(text, 4).unwrap(), &QubitEncoding::new()).unwrap()
    }

    #[test]
    fn encoding_operators() {
        let enc = QubitEncoding::new();
        let z = enc.restrict(enc.sigma_z().matrix());
        let x = enc.restrict(enc.sigma_x().matrix());
        assert!((z - LogicalGate::pauli_z().matrix()).norm() < 1e-15);
        assert!((x - LogicalGate::pauli_x().matrix()).norm() < 1e-15);
        assert!(enc.sigma_z().anticommutator_norm(&enc.sigma_x()) < 1e-13);
        // −iγ_1γ_2 = −iγ_3γ_4 on the even sector
        let z34 = enc.restrict(enc.pair(3, 4).matrix());
        assert!((z34 - z).norm() < 1e-15);
    }

    #[test]
    fn generators_compile_to_quarter_rotations() {
        let b1 = gate("B1");
        let b2 = gate("B2");
        assert!(b1.fidelity(&LogicalGate::exp_i_z(FRAC_PI_4)) > 1.0 - 1e-12);
        assert!(b2.fidelity(&LogicalGate::exp_i_x(FRAC_PI_4)) > 1.0 - 1e-12);
        assert!(gate("B3").eq_mod_phase(&b1, 1e-12));
        assert!(gate("B1 B1 B1 B1").eq_mod_phase(&LogicalGate::identity(), 1e-12));
    }

    #[test]
    fn closure_is_single_qubit_clifford_group() {
        let c = clifford_closure(&[LogicalGate::exp_i_z(FRAC_PI_4), LogicalGate::exp_i_x(FRAC_PI_4)], 100).unwrap();
        assert!(c.closed);
        assert_eq!(c.elements.len(), 24);
        assert!(c.contains(&LogicalGate::pauli_x()));
        assert!(c.contains(&LogicalGate::pauli_z()));
        let one = clifford_closure(&[LogicalGate::identity()], 24).unwrap();
        assert_eq!(one.elements.len(), 1);
        assert!(one.closed);
        let capped = clifford_closure(&[LogicalGate::exp_i_z(FRAC_PI_4), LogicalGate::exp_i_x(FRAC_PI_4)], 24).unwrap();
        assert!(capped.closed);
        assert!(clifford_closure(&[], 10).is_err());
    }

    #[test]
    fn t_gate_escapes_the_cap() {
        let c = clifford_closure(&[LogicalGate::exp_i_z(FRAC_PI_4 / 2.0), LogicalGate::exp_i_x(FRAC_PI_4)], 200).unwrap();
        assert!(!c.closed);
        assert_eq!(c.elements.len(), 200);
    }

    #[test]
    fn json_round_trip() {
        let g = gate("B1 B2");
        let back = LogicalGate::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);
        assert!(LogicalGate::from_json(&serde_json::json!([[1, 0]])).is_err());
    }

    #[test]
    fn wrong_strand_count_rejected() {
        let w = parse_braid_word("B1", 5).unwrap();
        assert!(logical_gate_from_word(&w, &QubitEncoding::new()).is_err());
    }
}
