//! Fixed-seed invariant suite covering every module.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::RunConfig;
use super::sweep::{run_sweep, Command};
use super::table::{emit_table, format_float};
use crate::algebra::{
    basis_convert, superselection_expectation, u1_rotate_modes, ConversionDirection,
    FockOperator, FockRepresentation, MajoranaMonomial, ModeConversion, ParitySector,
};
use crate::bdg::{
    bloch_gap, build_kitaev_bdg, build_nanowire_bdg, diagonalize, find_zero_modes,
    many_body_oracle, topological_charge, BdGMatrix, Boundary, ChargeMethod, KitaevChainParams,
    ModelParams, NambuLayout, NanowireParams, Z2Charge,
};
use crate::braid::{
    clifford_closure, logical_gate_from_word, parse_braid_word, representation_consistency,
    representation_residual, verify_braid_relations, word_action, word_action_with_gauge,
    word_unitary, BraidGauge, BraidWord, LogicalGate, QubitEncoding, Representation,
};
use crate::hybrid::{
    charge_splitting, dispersive_shift, jc_oracle, phase_gate_plan, simulate_phase_gate,
    ReadoutParams,
};

type Check = fn(&mut ChaCha8Rng) -> Result<String, String>;

#[derive(Clone, Debug)]
pub struct InvariantResult {
    pub module: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Default)]
pub struct SelftestReport {
    pub results: Vec<InvariantResult>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for r in &self.results {
            s += &format!(
                "{} {:<8} {:<34} {:>9.3} ms  {}\n",
                if r.passed { "PASS" } else { "FAIL" },
                r.module,
                r.name,
                r.elapsed.as_secs_f64() * 1e3,
                r.detail
            );
        }
        let failed = self.results.iter().filter(|r| !r.passed).count();
        s += &format!("{} invariants, {} failed\n", self.results.len(), failed);
        s
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

const CHECKS: &[(&str, &str, Check)] = &[
    ("algebra", "clifford relations", clifford_relations),
    ("algebra", "pair square is -1", pair_square),
    ("algebra", "parity projection", parity_projection),
    ("algebra", "dirac round trip", dirac_round_trip),
    ("algebra", "u1 rotation inverse", u1_inverse),
    ("algebra", "superselection", superselection),
    ("bdg", "phs spectrum symmetry", phs_symmetry),
    ("bdg", "many-body oracle", oracle_equivalence),
    ("bdg", "edge zero modes", edge_zero_modes),
    ("bdg", "charge methods agree", charge_agreement),
    ("bdg", "gap at k=0", gap_at_zero),
    ("braid", "braid relations", braid_relations),
    ("braid", "representation consistency", consistency),
    ("braid", "word times inverse", word_inverse),
    ("braid", "logical generators", logical_generators),
    ("braid", "clifford closure", closure),
    ("braid", "gauge mutation detected", gauge_mutation),
    ("hybrid", "splitting slope", splitting_slope),
    ("hybrid", "pi/8 gate", pi8_gate),
    ("hybrid", "dispersive convergence", dispersive_convergence),
    ("harness", "thread determinism", thread_determinism),
    ("harness", "float round trip", float_round_trip),
];

pub const DEFAULT_SEED: u64 = 20_240_601;

/// Run every invariant with its own generator derived from `seed`.
pub fn selftest(seed: u64) -> SelftestReport {
    let results = CHECKS
        .iter()
        .enumerate()
        .map(|(i, &(module, name, check))| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            let start = Instant::now();
            let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| check(&mut rng)))
                .unwrap_or_else(|_| Err("panicked".into()));
            let elapsed = start.elapsed();
            let (passed, detail) = match outcome {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            InvariantResult { module, name, passed, detail, elapsed }
        })
        .collect();
    SelftestReport { results }
}

fn clifford_relations(_: &mut ChaCha8Rng) -> Result<String, String> {
    let mut worst = 0.0f64;
    for n in 1..=4 {
        let rep = FockRepresentation::new(n).map_err(e)?;
        let id = FockOperator::identity(n);
        for i in 1..=2 * n {
            let gi = MajoranaMonomial::generator(n, i).map_err(e)?;
            ensure(gi.multiply(&gi).map_err(e)?.is_identity(), || format!("γ{i}² ≠ 1 symbolically"))?;
            let fi = rep.generator(i).map_err(e)?;
            worst = worst.max(fi.mul(&fi).distance(&id));
            for j in i + 1..=2 * n {
                let gj = MajoranaMonomial::generator(n, j).map_err(e)?;
                let ab = gi.multiply(&gj).map_err(e)?;
                let ba = gj.multiply(&gi).map_err(e)?;
                ensure(ab.times_i_pow(2) == ba, || format!("γ{i}γ{j} ≠ −γ{j}γ{i} symbolically"))?;
                worst = worst.max(fi.anticommutator_norm(&rep.generator(j).map_err(e)?));
            }
        }
    }
    ensure(worst < 1e-13, || format!("Fock residual {worst:e}"))?;
    Ok(format!("fock residual {worst:.1e}"))
}

fn pair_square(_: &mut ChaCha8Rng) -> Result<String, String> {
    let p = MajoranaMonomial::from_product(2, &[1, 2]).map_err(e)?;
    let sq = p.multiply(&p).map_err(e)?;
    ensure(sq.support().is_empty() && sq.coefficient() == Complex64::new(-1.0, 0.0), || format!("{sq:?}"))?;
    Ok(String::new())
}

fn parity_projection(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let n = 3;
    let rep = FockRepresentation::new(n).map_err(e)?;
    let p = rep.total_parity();
    for _ in 0..50 {
        let support: Vec<usize> = (1..=2 * n).filter(|_| rng.random_bool(0.5)).collect();
        let m = MajoranaMonomial::from_product(n, &support).map_err(e)?;
        let a = rep.monomial(&m).map_err(e)?;
        let pap = p.mul(&a).mul(&p);
        let target = if m.is_even() { a.clone() } else { a.scale(Complex64::new(-1.0, 0.0)) };
        ensure(pap.distance(&target) < 1e-13, || format!("support {support:?}"))?;
    }
    Ok(String::new())
}

fn dirac_round_trip(_: &mut ChaCha8Rng) -> Result<String, String> {
    let n = 3;
    for k in 1..=n {
        let ModeConversion::DiracToMajorana { odd, even } =
            basis_convert(n, k, ConversionDirection::DiracToMajorana).map_err(e)?
        else {
            return Err("wrong conversion variant".into());
        };
        for (sum, label) in [(odd, 2 * k - 1), (even, 2 * k)] {
            let back = sum.to_majorana(n).map_err(e)?;
            let target = MajoranaMonomial::generator(n, label).map_err(e)?;
            ensure(back == crate::algebra::MajoranaSum::from_monomial(&target), || format!("mode {k}"))?;
        }
    }
    Ok(String::new())
}

fn u1_inverse(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let phi = rng.random_range(-PI..PI);
        let r = u1_rotate_modes(2, phi, 2).map_err(e)?;
        let inv = u1_rotate_modes(2, -phi, 2).map_err(e)?;
        let c = r.compose(&inv);
        let dev = (c.matrix[0][0] - 1.0).abs() + c.matrix[0][1].abs() + c.matrix[1][0].abs() + (c.matrix[1][1] - 1.0).abs();
        worst = worst.max(dev).max((r.determinant() - 1.0).abs());
    }
    ensure(worst < 1e-14, || format!("deviation {worst:e}"))?;
    Ok(format!("max deviation {worst:.1e}"))
}

fn random_state(rng: &mut ChaCha8Rng, rep: &FockRepresentation, sector: ParitySector) -> DVector<Complex64> {
    let proj = rep.projector(sector).projector.into_matrix();
    let v = DVector::from_fn(rep.dim(), |_, _| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    let v = proj * v;
    let norm = v.norm();
    v / Complex64::new(norm, 0.0)
}

fn superselection(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let n = 3;
    let rep = FockRepresentation::new(n).map_err(e)?;
    let even: Vec<MajoranaMonomial> = (0u32..1 << (2 * n))
        .filter(|b| b.count_ones() % 2 == 0)
        .map(|b| MajoranaMonomial::from_product(n, &(1..=2 * n).filter(|i| b >> (i - 1) & 1 == 1).collect::<Vec<_>>()))
        .collect::<Result<_, _>>()
        .map_err(e)?;
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let mut a = DMatrix::<Complex64>::zeros(rep.dim(), rep.dim());
        for m in &even {
            let c = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            a += rep.monomial(m).map_err(e)?.matrix() * c;
        }
        let op = FockOperator::new(n, a).map_err(e)?;
        let plus = random_state(rng, &rep, ParitySector::Even);
        let minus = random_state(rng, &rep, ParitySector::Odd);
        let el = superselection_expectation(&op, &plus, &minus).map_err(e)?;
        ensure(el.operator_even, || "random even operator flagged odd".into())?;
        worst = worst.max(el.value.norm());
    }
    ensure(worst < 1e-12, || format!("cross-parity element {worst:e}"))?;
    Ok(format!("max |<-|A|+>| {worst:.1e}"))
}

fn phs_symmetry(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let mut worst = 0.0f64;
    for i in 0..50 {
        let layout = if i % 2 == 0 { NambuLayout::spinless(10, 1.0) } else { NambuLayout::spinful(5, 1.0) };
        let d = layout.dim();
        let raw = DMatrix::from_fn(d, d, |_, _| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
        let h = BdGMatrix::symmetrized(&raw, layout).map_err(e)?;
        worst = worst.max(diagonalize(&h).map_err(e)?.pairing_residual());
    }
    let models = [
        build_kitaev_bdg(&KitaevChainParams::open(30, 1.0, 0.4, 0.7)).map_err(e)?,
        build_kitaev_bdg(&KitaevChainParams::periodic(30, 1.0, -2.5, 0.3)).map_err(e)?,
        build_nanowire_bdg(&wire(30, 0.3, 1.5)).map_err(e)?,
        build_nanowire_bdg(&NanowireParams { boundary: Boundary::Periodic, ..wire(30, -0.2, 0.5) }).map_err(e)?,
    ];
    for h in &models {
        worst = worst.max(diagonalize(h).map_err(e)?.pairing_residual());
    }
    ensure(worst < 1e-10, || format!("pairing residual {worst:e}"))?;
    Ok(format!("max |E_n + E_-n| {worst:.1e}"))
}

fn wire(n: usize, mu: f64, ez: f64) -> NanowireParams {
    NanowireParams {
        n_sites: n,
        lattice_spacing: 1.0,
        mass: 0.05,
        mu,
        alpha_so: 4.0,
        e_zeeman: ez,
        delta: 1.0,
        boundary: Boundary::Open,
    }
}

fn oracle_equivalence(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let p = KitaevChainParams {
            n_sites: rng.random_range(1..=4),
            t: rng.random_range(0.5..1.5),
            mu: rng.random_range(-3.0..3.0),
            delta: rng.random_range(-1.5..1.5),
            boundary: Boundary::Open,
        };
        worst = worst.max(many_body_oracle(&p).map_err(e)?.max_mismatch);
    }
    ensure(worst < 1e-9, || format!("mismatch {worst:e}"))?;
    Ok(format!("max mismatch {worst:.1e}"))
}

fn edge_zero_modes(_: &mut ChaCha8Rng) -> Result<String, String> {
    let s = diagonalize(&build_kitaev_bdg(&KitaevChainParams::open(60, 1.0, 0.3, 0.5)).map_err(e)?).map_err(e)?;
    let r = find_zero_modes(&s, 1e-8);
    ensure(r.count == 2, || format!("{} zero modes", r.count))?;
    let res = r.majorana_residuals.iter().copied().fold(0.0, f64::max);
    ensure(res < 1e-6, || format!("majorana residual {res:e}"))?;
    ensure(r.one_per_edge(0.95), || format!("edge weights {:?}", r.edge_weights))?;
    let trivial = diagonalize(&build_kitaev_bdg(&KitaevChainParams::open(60, 1.0, 3.0, 0.5)).map_err(e)?).map_err(e)?;
    ensure(find_zero_modes(&trivial, 1e-8).count == 0, || "zero modes in the trivial phase".into())?;
    Ok(format!("residual {res:.1e}"))
}

fn charge_agreement(_: &mut ChaCha8Rng) -> Result<String, String> {
    let mut compared = 0;
    for i in 0..12 {
        for j in 0..12 {
            let p = NanowireParams {
                boundary: Boundary::Periodic,
                ..wire(2, -3.0 + 6.0 * j as f64 / 11.0, 3.0 * i as f64 / 11.0)
            };
            let m = ModelParams::Nanowire(p);
            let a = topological_charge(&m, ChargeMethod::Analytic).map_err(e)?;
            if a == Z2Charge::Critical {
                continue;
            }
            let n = topological_charge(&m, ChargeMethod::Numeric).map_err(e)?;
            ensure(a == n, || format!("analytic {a:?} vs numeric {n:?} at {m:?}"))?;
            compared += 1;
        }
    }
    Ok(format!("{compared} points"))
}

fn gap_at_zero(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let mut p = wire(2, rng.random_range(-2.0..2.0), rng.random_range(0.0..3.0));
        p.delta = rng.random_range(0.1..2.0);
        p.boundary = Boundary::Periodic;
        let expect = ((p.mu * p.mu + p.delta * p.delta).sqrt() - p.e_zeeman).abs();
        let got = bloch_gap(&ModelParams::Nanowire(p), 0.0).map_err(e)?;
        worst = worst.max((got - expect).abs());
    }
    ensure(worst < 1e-10, || format!("deviation {worst:e}"))?;
    Ok(format!("max deviation {worst:.1e}"))
}

fn braid_relations(_: &mut ChaCha8Rng) -> Result<String, String> {
    let mut worst = 0.0f64;
    for n in 2..=6 {
        let perm = verify_braid_relations(n, Representation::SignedPerm).map_err(e)?;
        ensure(perm.passed() && perm.max_residual() == 0.0, || format!("signed-perm relations fail for n = {n}"))?;
        let fock = verify_braid_relations(n, Representation::Fock).map_err(e)?;
        ensure(fock.passed(), || format!("Fock relations fail for n = {n}"))?;
        worst = worst.max(fock.max_residual());
    }
    Ok(format!("fock residual {worst:.1e}"))
}

fn consistency(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let w = BraidWord::random(rng, 6, 8);
        worst = worst.max(representation_consistency(&w, 3).map_err(e)?);
    }
    ensure(worst < 1e-12, || format!("residual {worst:e}"))?;
    Ok(format!("max residual {worst:.1e}"))
}

fn word_inverse(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let id = FockOperator::identity(3);
    for _ in 0..50 {
        let w = BraidWord::random(rng, 6, 6);
        let ww = w.then(&w.inverse()).map_err(e)?;
        ensure(word_action(&ww).is_identity(), || format!("{w} then inverse is not the identity"))?;
        let u = word_unitary(&ww, 3).map_err(e)?;
        ensure(u.distance(&id) < 1e-12, || format!("{w}: unitary product differs from 1"))?;
        let p = FockRepresentation::new(3).map_err(e)?.total_parity();
        let uw = word_unitary(&w, 3).map_err(e)?;
        ensure(uw.commutator_norm(&p) < 1e-12, || format!("{w} does not conserve parity"))?;
    }
    Ok(String::new())
}

fn logical_generators(_: &mut ChaCha8Rng) -> Result<String, String> {
    let enc = QubitEncoding::new();
    let b1 = logical_gate_from_word(&parse_braid_word("B1", 4).map_err(e)?, &enc).map_err(e)?;
    let b2 = logical_gate_from_word(&parse_braid_word("B2", 4).map_err(e)?, &enc).map_err(e)?;
    let f1 = b1.fidelity(&LogicalGate::exp_i_z(PI / 4.0));
    let f2 = b2.fidelity(&LogicalGate::exp_i_x(PI / 4.0));
    ensure(f1 > 1.0 - 1e-12 && f2 > 1.0 - 1e-12, || format!("fidelities {f1}, {f2}"))?;
    Ok(format!("1-F = {:.1e}, {:.1e}", 1.0 - f1, 1.0 - f2))
}

fn closure(_: &mut ChaCha8Rng) -> Result<String, String> {
    let enc = QubitEncoding::new();
    let gens: Vec<LogicalGate> = ["B1", "B2", "B3"]
        .iter()
        .map(|t| logical_gate_from_word(&parse_braid_word(t, 4).map_err(e)?, &enc).map_err(e))
        .collect::<Result<_, _>>()?;
    let c = clifford_closure(&gens, 64).map_err(e)?;
    ensure(c.closed && c.elements.len() == 24, || format!("{} elements", c.elements.len()))?;
    Ok("24 elements".into())
}

fn gauge_mutation(_: &mut ChaCha8Rng) -> Result<String, String> {
    let flipped = BraidGauge { alpha_k: 1, alpha_k1: -1 };
    let w = parse_braid_word("B2", 4).map_err(e)?;
    let r = representation_residual(&w, 2, &word_action_with_gauge(&w, flipped)).map_err(e)?;
    ensure(r > 0.5, || format!("flipped gauge went unnoticed (residual {r:e})"))?;
    Ok(format!("mutant residual {r:.2}"))
}

fn splitting_slope(_: &mut ChaCha8Rng) -> Result<String, String> {
    let xs: Vec<f64> = (1..=10).map(|k| k as f64).collect();
    let ys: Vec<f64> = xs.iter().map(|x| charge_splitting(x * x, 1.0, 2.0).map(f64::ln)).collect::<Result<_, _>>().map_err(e)?;
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    let dev = (slope + 8f64.sqrt()).abs();
    ensure(dev < 1e-12, || format!("slope {slope}"))?;
    Ok(format!("slope deviation {dev:.1e}"))
}

fn pi8_gate(_: &mut ChaCha8Rng) -> Result<String, String> {
    let mut worst = 0.0f64;
    for delta in [1e-3, 0.05, 1.0, 7.0] {
        let g = simulate_phase_gate(&phase_gate_plan(PI / 8.0, delta).map_err(e)?);
        worst = worst.max(g.distance_mod_phase(&LogicalGate::exp_i_z(PI / 8.0)));
    }
    ensure(worst < 1e-12, || format!("gate error {worst:e}"))?;
    Ok(format!("max error {worst:.1e}"))
}

fn dispersive_convergence(_: &mut ChaCha8Rng) -> Result<String, String> {
    let g = 0.01;
    let mut last = f64::INFINITY;
    let mut at20 = f64::NAN;
    for ratio in [5.0, 10.0, 20.0, 40.0, 80.0] {
        let r = ReadoutParams { omega0: 5.0, g_jc: g, depsilon: 5.0 - ratio * g, delta: 0.0, sigma_z: 1 };
        let exact = jc_oracle(&r, 8).map_err(e)?.omega_excited_branch - r.omega0;
        let approx = dispersive_shift(&r).map_err(e)? - r.omega0;
        let err = ((approx - exact) / exact).abs();
        ensure(err < last, || format!("error grew to {err:e} at ratio {ratio}"))?;
        if ratio == 20.0 {
            at20 = err;
        }
        last = err;
    }
    ensure(at20 < 0.01, || format!("relative error {at20:e} at ratio 20"))?;
    Ok(format!("error at 20: {at20:.1e}"))
}

fn thread_determinism(_: &mut ChaCha8Rng) -> Result<String, String> {
    let cfg = RunConfig::from_json(
        r#"{"model":"kitaev","parameters":{"n_sites":24,"t":1,"mu":0,"delta":0.5},
        "observables":["lowest_energy","zero_mode_count","charge","bulk_gap"],
        "sweep":[{"parameter":"mu","start":-3,"stop":3,"points":7},{"parameter":"delta","start":0.2,"stop":1,"points":3}]}"#,
    )
    .map_err(e)?;
    let one = emit_table(&run_sweep(&cfg, Command::ZeroModes, 1).map_err(e)?, cfg.output.format).map_err(e)?;
    let three = emit_table(&run_sweep(&cfg, Command::ZeroModes, 3).map_err(e)?, cfg.output.format).map_err(e)?;
    ensure(one == three, || "output differs between 1 and 3 threads".into())?;
    Ok(format!("{} bytes", one.len()))
}

fn float_round_trip(rng: &mut ChaCha8Rng) -> Result<String, String> {
    for _ in 0..1000 {
        let x = f64::from_bits(rng.random::<u64>());
        if !x.is_finite() {
            continue;
        }
        let s = format_float(x);
        ensure(s.parse::<f64>().map(f64::to_bits) == Ok(x.to_bits()), || format!("{x:e} -> {s}"))?;
    }
    Ok(String::new())
}
