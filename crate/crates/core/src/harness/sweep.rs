//! Grid evaluation of observables over up to two parameter axes.

use std::f64::consts::PI;
use std::str::FromStr;

use rayon::prelude::*;
use serde_json::{Map, Value};

use super::config::{assign, is_integral, lookup, EnergyUnit, ModelKind, RunConfig};
use super::table::{Cell, Provenance, ResultTable};
use super::HarnessError;
use crate::bdg::{
    bloch_gap, build_kitaev_bdg, build_nanowire_bdg, bulk_gap, diagonalize, effective_params,
    find_zero_modes, topological_charge, Boundary, ChargeMethod, KitaevChainParams, ModelParams,
    NanowireParams, Spectrum, Z2Charge,
};
use crate::braid::{
    logical_gate_from_word, parse_braid_word, representation_consistency, word_action,
    QubitEncoding,
};
use crate::hybrid::{
    dispersive_shift, josephson_energy, phase_gate_plan, CooperPairBoxParams, ReadoutParams,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Spectrum,
    PhaseDiagram,
    ZeroModes,
    Braid,
    Readout,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::PhaseDiagram => "phase-diagram",
            Command::ZeroModes => "zero-modes",
            Command::Braid => "braid",
            Command::Readout => "readout",
        }
    }

    fn accepts(self, model: ModelKind) -> bool {
        match self {
            Command::Spectrum | Command::PhaseDiagram | Command::ZeroModes => {
                matches!(model, ModelKind::Kitaev | ModelKind::Nanowire)
            }
            Command::Braid => model == ModelKind::Braid,
            Command::Readout => model == ModelKind::Readout,
        }
    }

    fn default_observables(self) -> &'static [&'static str] {
        match self {
            Command::Spectrum => &[],
            Command::PhaseDiagram => &["charge", "charge_numeric", "bulk_gap"],
            Command::ZeroModes => {
                &["zero_mode_count", "lowest_energy", "majorana_residual", "edge_weight", "decay_length"]
            }
            Command::Braid => &[],
            Command::Readout => &["ej_over_ec", "delta", "omega_res_plus", "omega_res_minus", "contrast"],
        }
    }
}

impl FromStr for Command {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [Command::Spectrum, Command::PhaseDiagram, Command::ZeroModes, Command::Braid, Command::Readout]
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| HarnessError::Config(format!("unknown command {s:?}")))
    }
}

const LATTICE_OBSERVABLES: &[&str] = &[
    "lowest_energy",
    "zero_mode_count",
    "majorana_residual",
    "edge_weight",
    "decay_length",
    "bulk_gap",
    "gap_k0",
    "charge",
    "charge_numeric",
    "pairing_residual",
    "phs_residual",
];
const KITAEV_ONLY: &[&str] = &["coherence_length"];
const NANOWIRE_ONLY: &[&str] = &["mu_c", "mu_eff", "delta_eff"];
const READOUT_OBSERVABLES: &[&str] = &[
    "e_j",
    "ej_over_ec",
    "delta",
    "omega_res_plus",
    "omega_res_minus",
    "contrast",
    "gate_time",
    "dispersive",
];
const ENERGY_OBSERVABLES: &[&str] =
    &["lowest_energy", "bulk_gap", "gap_k0", "mu_c", "mu_eff", "e_j", "delta", "omega_res_plus", "omega_res_minus", "contrast"];

/// Keys accepted next to the lattice model fields.
const LATTICE_OPTIONS: &[&str] = &["threshold", "k_grid"];
const DEFAULT_K_GRID: usize = 256;

fn config_err(e: impl std::fmt::Display) -> HarnessError {
    HarnessError::Config(e.to_string())
}

fn observables(cfg: &RunConfig, cmd: Command) -> Result<Vec<String>, HarnessError> {
    let names: Vec<String> = if cfg.observables.is_empty() {
        cmd.default_observables().iter().map(|s| s.to_string()).collect()
    } else {
        cfg.observables.clone()
    };
    let allowed: Vec<&str> = match cfg.model {
        ModelKind::Kitaev => LATTICE_OBSERVABLES.iter().chain(KITAEV_ONLY).copied().collect(),
        ModelKind::Nanowire => LATTICE_OBSERVABLES.iter().chain(NANOWIRE_ONLY).copied().collect(),
        ModelKind::Readout => READOUT_OBSERVABLES.to_vec(),
        ModelKind::Braid => Vec::new(),
    };
    if let Some(bad) = names.iter().find(|n| !allowed.contains(&n.as_str())) {
        return Err(HarnessError::Config(format!("unknown observable {bad:?} for {:?}", cfg.model)));
    }
    Ok(names)
}

/// Value columns produced per grid point, after the coordinate columns.
fn value_columns(cfg: &RunConfig, cmd: Command) -> Result<Vec<String>, HarnessError> {
    Ok(match cmd {
        Command::Spectrum => vec!["index".into(), "energy".into()],
        Command::Braid => ["word", "permutation", "consistency_residual", "gate"].map(String::from).to_vec(),
        _ => observables(cfg, cmd)?,
    })
}

pub fn run_sweep(cfg: &RunConfig, cmd: Command, threads: usize) -> Result<ResultTable, HarnessError> {
    cfg.validate()?;
    if !cmd.accepts(cfg.model) {
        return Err(HarnessError::Config(format!("command {} does not apply to model {:?}", cmd.name(), cfg.model)));
    }
    if cmd == Command::Braid && !cfg.sweep.is_empty() {
        return Err(HarnessError::Config("braid runs take a word list, not a sweep".into()));
    }
    let values = value_columns(cfg, cmd)?;
    let names = observables(cfg, cmd).unwrap_or_default();

    // Cartesian grid, sorted so row order never depends on scheduling.
    let axes: Vec<Vec<f64>> = cfg.sweep.iter().map(|a| a.values()).collect();
    let mut points: Vec<Vec<f64>> = vec![Vec::new()];
    for ax in &axes {
        points = points
            .into_iter()
            .flat_map(|p| ax.iter().map(move |&x| [p.as_slice(), &[x]].concat()))
            .collect();
    }
    points.sort_by(|a, b| a.iter().zip(b).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal));

    // count-valued axes print as integers
    let integer_axes: Vec<bool> = cfg
        .sweep
        .iter()
        .zip(&axes)
        .map(|(a, vals)| {
            lookup(&cfg.parameters, &a.parameter).is_some_and(|v| v.is_i64() || v.is_u64())
                && vals.iter().all(|&x| is_integral(x))
        })
        .collect();

    let evaluate = |coords: &Vec<f64>| -> Result<Vec<Vec<Cell>>, HarnessError> {
        let mut params = cfg.parameters.clone();
        for (axis, &x) in cfg.sweep.iter().zip(coords) {
            assign(&mut params, &axis.parameter, x)?;
        }
        let coord_cells: Vec<Cell> = coords
            .iter()
            .zip(&integer_axes)
            .map(|(&x, &int)| if int { Cell::Int(x as i64) } else { Cell::Float(x) })
            .collect();
        let rows = match cmd {
            Command::Braid => braid_rows(&params)?,
            Command::Spectrum => spectrum_rows(cfg.model, &params, cfg.energy_unit)?,
            Command::Readout => vec![readout_row(&params, &names, cfg.energy_unit)?],
            Command::PhaseDiagram | Command::ZeroModes => {
                vec![lattice_row(cfg.model, &params, &names, cfg.energy_unit)?]
            }
        };
        Ok(rows.into_iter().map(|r| [coord_cells.clone(), r].concat()).collect())
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| HarnessError::Internal(e.to_string()))?;
    let blocks: Vec<Vec<Vec<Cell>>> =
        pool.install(|| points.par_iter().map(evaluate).collect::<Result<_, _>>())?;

    let mut table = ResultTable::new(cfg.sweep.iter().map(|a| a.parameter.clone()).chain(values).collect());
    table.rows = blocks.into_iter().flatten().collect();
    table.provenance = Some(Provenance::new(cfg.semantic_hash(cmd.name())));
    Ok(table)
}

enum Lattice {
    Kitaev(KitaevChainParams),
    Nanowire(NanowireParams),
}

struct LatticePoint {
    model: Lattice,
    threshold: f64,
    k_grid: usize,
}

impl LatticePoint {
    fn parse(kind: ModelKind, params: &Map<String, Value>) -> Result<Self, HarnessError> {
        let mut fields = params.clone();
        let opts: Map<String, Value> =
            LATTICE_OPTIONS.iter().filter_map(|k| fields.remove(*k).map(|v| (k.to_string(), v))).collect();
        let model = match kind {
            ModelKind::Kitaev => {
                let p: KitaevChainParams = serde_json::from_value(Value::Object(fields)).map_err(config_err)?;
                p.validate().map_err(config_err)?;
                Lattice::Kitaev(p)
            }
            _ => {
                let p: NanowireParams = serde_json::from_value(Value::Object(fields)).map_err(config_err)?;
                p.validate().map_err(config_err)?;
                Lattice::Nanowire(p)
            }
        };
        let threshold = match opts.get("threshold") {
            Some(v) => v.as_f64().ok_or_else(|| config_err("threshold must be a number"))?,
            None => match &model {
                Lattice::Kitaev(p) => 1e-8 * p.t,
                Lattice::Nanowire(p) => 1e-3 * p.delta,
            },
        };
        let k_grid = match opts.get("k_grid") {
            Some(v) => v.as_u64().ok_or_else(|| config_err("k_grid must be a positive integer"))? as usize,
            None => DEFAULT_K_GRID,
        };
        Ok(Self { model, threshold, k_grid })
    }

    fn energy_scale(&self, unit: EnergyUnit) -> Result<f64, HarnessError> {
        let s = match (unit, &self.model) {
            (EnergyUnit::Absolute, _) => 1.0,
            (EnergyUnit::Delta, Lattice::Kitaev(p)) => p.delta.abs(),
            (EnergyUnit::Delta, Lattice::Nanowire(p)) => p.delta,
            (EnergyUnit::T, Lattice::Kitaev(p)) => p.t,
            (EnergyUnit::T, Lattice::Nanowire(p)) => p.hopping(),
        };
        if s > 0.0 {
            Ok(s)
        } else {
            Err(config_err(format!("energy unit {unit:?} is zero at this point")))
        }
    }

    fn spectrum(&self) -> Result<Spectrum, HarnessError> {
        let h = match &self.model {
            Lattice::Kitaev(p) => build_kitaev_bdg(p),
            Lattice::Nanowire(p) => build_nanowire_bdg(p),
        }
        .map_err(config_err)?;
        diagonalize(&h).map_err(|e| HarnessError::Internal(e.to_string()))
    }

    fn bulk(&self) -> ModelParams {
        match &self.model {
            Lattice::Kitaev(p) => ModelParams::Kitaev(KitaevChainParams { boundary: Boundary::Periodic, ..p.clone() }),
            Lattice::Nanowire(p) => {
                ModelParams::Nanowire(NanowireParams { boundary: Boundary::Periodic, ..p.clone() })
            }
        }
    }
}

fn charge_cell(q: Z2Charge) -> Cell {
    match q.value() {
        Some(v) => Cell::Int(v as i64),
        None => Cell::Text("critical".into()),
    }
}

fn spectrum_rows(kind: ModelKind, params: &Map<String, Value>, unit: EnergyUnit) -> Result<Vec<Vec<Cell>>, HarnessError> {
    let pt = LatticePoint::parse(kind, params)?;
    let scale = pt.energy_scale(unit)?;
    let s = pt.spectrum()?;
    Ok(s.eigenvalues.iter().enumerate().map(|(i, e)| vec![Cell::Int(i as i64), Cell::Float(e / scale)]).collect())
}

fn lattice_row(
    kind: ModelKind,
    params: &Map<String, Value>,
    names: &[String],
    unit: EnergyUnit,
) -> Result<Vec<Cell>, HarnessError> {
    let pt = LatticePoint::parse(kind, params)?;
    let scale = pt.energy_scale(unit)?;
    let needs_spectrum = names.iter().any(|n| {
        ["lowest_energy", "zero_mode_count", "majorana_residual", "edge_weight", "decay_length", "pairing_residual"]
            .contains(&n.as_str())
    });
    let spectrum = if needs_spectrum { Some(pt.spectrum()?) } else { None };
    let report = spectrum.as_ref().map(|s| find_zero_modes(s, pt.threshold));
    let bdg = |e| config_err(e);
    let max_or_nan = |v: &[f64]| v.iter().copied().reduce(f64::max).unwrap_or(f64::NAN);

    names
        .iter()
        .map(|name| {
            let cell = match name.as_str() {
                "lowest_energy" => {
                    let s = spectrum.as_ref().expect("computed above");
                    Cell::Float(s.eigenvalues.iter().map(|e| e.abs()).fold(f64::INFINITY, f64::min))
                }
                "zero_mode_count" => Cell::Int(report.as_ref().expect("computed above").count as i64),
                "majorana_residual" => Cell::Float(max_or_nan(&report.as_ref().expect("computed above").majorana_residuals)),
                "edge_weight" => {
                    let w = &report.as_ref().expect("computed above").edge_weights;
                    Cell::Float(w.iter().map(|x| x[0].max(x[1])).reduce(f64::min).unwrap_or(f64::NAN))
                }
                "decay_length" => {
                    Cell::Float(report.as_ref().expect("computed above").decay_length_fit.unwrap_or(f64::NAN))
                }
                "pairing_residual" => Cell::Float(spectrum.as_ref().expect("computed above").pairing_residual()),
                "phs_residual" => {
                    let h = match &pt.model {
                        Lattice::Kitaev(p) => build_kitaev_bdg(p),
                        Lattice::Nanowire(p) => build_nanowire_bdg(p),
                    }
                    .map_err(bdg)?;
                    Cell::Float(h.phs_residual())
                }
                "bulk_gap" => Cell::Float(bulk_gap(&pt.bulk(), pt.k_grid).map_err(bdg)?),
                "gap_k0" => Cell::Float(bloch_gap(&pt.bulk(), 0.0).map_err(bdg)?),
                "charge" => charge_cell(topological_charge(&pt.bulk(), ChargeMethod::Analytic).map_err(bdg)?),
                "charge_numeric" => charge_cell(topological_charge(&pt.bulk(), ChargeMethod::Numeric).map_err(bdg)?),
                "coherence_length" => match &pt.model {
                    Lattice::Kitaev(p) => Cell::Float(p.coherence_length().unwrap_or(f64::NAN)),
                    Lattice::Nanowire(_) => unreachable!("filtered by observables()"),
                },
                "mu_c" | "mu_eff" | "delta_eff" => {
                    let Lattice::Nanowire(p) = &pt.model else { unreachable!("filtered by observables()") };
                    match name.as_str() {
                        "mu_c" => Cell::Float((p.e_zeeman * p.e_zeeman - p.delta * p.delta).max(0.0).sqrt()),
                        "mu_eff" => Cell::Float(effective_params(p).map(|e| e.mu_eff).unwrap_or(f64::NAN)),
                        _ => Cell::Float(effective_params(p).map(|e| e.delta_eff).unwrap_or(f64::NAN)),
                    }
                }
                other => return Err(HarnessError::Config(format!("unknown observable {other:?}"))),
            };
            Ok(scale_cell(name, cell, scale))
        })
        .collect()
}

fn scale_cell(name: &str, cell: Cell, scale: f64) -> Cell {
    match cell {
        Cell::Float(x) if ENERGY_OBSERVABLES.contains(&name) => Cell::Float(x / scale),
        c => c,
    }
}

fn sub_object<'a>(params: &'a Map<String, Value>, key: &str) -> Result<&'a Value, HarnessError> {
    params.get(key).ok_or_else(|| config_err(format!("readout parameters need a {key:?} object")))
}

fn readout_row(params: &Map<String, Value>, names: &[String], unit: EnergyUnit) -> Result<Vec<Cell>, HarnessError> {
    if let Some(k) = params.keys().find(|k| !["box", "cavity", "phi"].contains(&k.as_str())) {
        return Err(config_err(format!("unknown readout parameter {k:?}")));
    }
    let cpb: CooperPairBoxParams = serde_json::from_value(sub_object(params, "box")?.clone()).map_err(config_err)?;
    cpb.validate().map_err(config_err)?;
    #[derive(serde::Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Cavity {
        omega0: f64,
        g_jc: f64,
        depsilon: f64,
    }
    let cav: Cavity = serde_json::from_value(sub_object(params, "cavity")?.clone()).map_err(config_err)?;
    let phi = match params.get("phi") {
        Some(v) => v.as_f64().ok_or_else(|| config_err("phi must be a number"))?,
        None => PI / 8.0,
    };
    let scale = match unit {
        EnergyUnit::Absolute => 1.0,
        EnergyUnit::Delta => cpb.delta0,
        EnergyUnit::T => return Err(config_err("energy unit t does not apply to readout")),
    };
    let e_j = josephson_energy(&cpb).map_err(config_err)?;
    let delta = cpb.splitting().map_err(config_err)?;
    let r = ReadoutParams { omega0: cav.omega0, g_jc: cav.g_jc, depsilon: cav.depsilon, delta, sigma_z: 1 };
    let shift = |s: i8| dispersive_shift(&r.with_sigma(s)).map_err(config_err);
    names
        .iter()
        .map(|name| {
            let cell = match name.as_str() {
                "e_j" => Cell::Float(e_j),
                "ej_over_ec" => Cell::Float(e_j / cpb.e_c),
                "delta" => Cell::Float(delta),
                "omega_res_plus" => Cell::Float(shift(1)?),
                "omega_res_minus" => Cell::Float(shift(-1)?),
                "contrast" => Cell::Float(shift(1)? - shift(-1)?),
                "gate_time" => Cell::Float(phase_gate_plan(phi, delta).map(|p| p.tau * scale).unwrap_or(f64::INFINITY)),
                "dispersive" => Cell::Int(r.is_dispersive() as i64),
                other => return Err(HarnessError::Config(format!("unknown observable {other:?}"))),
            };
            Ok(scale_cell(name, cell, scale))
        })
        .collect()
}

fn braid_rows(params: &Map<String, Value>) -> Result<Vec<Vec<Cell>>, HarnessError> {
    if let Some(k) = params.keys().find(|k| !["n_strands", "word", "words"].contains(&k.as_str())) {
        return Err(config_err(format!("unknown braid parameter {k:?}")));
    }
    let n = params
        .get("n_strands")
        .and_then(Value::as_u64)
        .ok_or_else(|| config_err("braid parameters need an integer n_strands"))? as usize;
    let mut words: Vec<String> = Vec::new();
    if let Some(w) = params.get("word") {
        words.push(w.as_str().ok_or_else(|| config_err("word must be a string"))?.to_string());
    }
    if let Some(ws) = params.get("words") {
        let list = ws.as_array().ok_or_else(|| config_err("words must be a list of strings"))?;
        for w in list {
            words.push(w.as_str().ok_or_else(|| config_err("words must be a list of strings"))?.to_string());
        }
    }
    if words.is_empty() {
        return Err(config_err("braid parameters need word or words"));
    }
    let enc = QubitEncoding::new();
    words
        .iter()
        .map(|text| {
            let w = parse_braid_word(text, n).map_err(config_err)?;
            let perm = word_action(&w);
            let perm_text = perm
                .images()
                .iter()
                .enumerate()
                .map(|(j, &(i, s))| format!("{}->{}{}", j + 1, if s < 0 { "-" } else { "" }, i))
                .collect::<Vec<_>>()
                .join(" ");
            let residual = representation_consistency(&w, n.div_ceil(2)).map_err(config_err)?;
            let gate = if n == QubitEncoding::N_STRANDS {
                logical_gate_from_word(&w, &enc).map_err(config_err)?.to_json()
            } else {
                Value::Null
            };
            Ok(vec![Cell::Text(w.to_string()), Cell::Text(perm_text), Cell::Float(residual), Cell::Json(gate)])
        })
        .collect()
}
