//! Run configuration: parsing, validation and the semantic hash.

use std::path::PathBuf;

use serde::{Deserialize, Deserializer, Serialize};
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use super::HarnessError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Kitaev,
    Nanowire,
    Braid,
    Readout,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default)]
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum Threads {
    #[default]
    Auto,
    Count(usize),
}

impl<'de> Deserialize<'de> for Threads {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match Value::deserialize(d)? {
            Value::String(s) if s == "auto" => Ok(Threads::Auto),
            Value::Number(n) => match n.as_u64() {
                Some(k) if k > 0 => Ok(Threads::Count(k as usize)),
                _ => Err(serde::de::Error::custom("threads must be a positive integer or \"auto\"")),
            },
            _ => Err(serde::de::Error::custom("threads must be a positive integer or \"auto\"")),
        }
    }
}

impl Threads {
    pub fn parse(s: &str) -> Result<Self, HarnessError> {
        if s == "auto" {
            return Ok(Threads::Auto);
        }
        match s.trim().parse::<usize>() {
            Ok(k) if k > 0 => Ok(Threads::Count(k)),
            _ => Err(HarnessError::Config(format!("invalid thread count {s:?}"))),
        }
    }

    pub fn resolve(self) -> usize {
        match self {
            Threads::Auto => std::thread::available_parallelism().map_or(1, |n| n.get()),
            Threads::Count(k) => k,
        }
    }
}

/// Energies in output tables are divided by this scale.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnergyUnit {
    #[default]
    Absolute,
    Delta,
    T,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepAxis {
    /// Dotted path into `parameters`.
    pub parameter: String,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl SweepAxis {
    pub fn values(&self) -> Vec<f64> {
        let n = self.points;
        (0..n)
            .map(|i| {
                if i + 1 == n {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * i as f64 / (n - 1) as f64
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub model: ModelKind,
    #[serde(default)]
    pub parameters: Map<String, Value>,
    #[serde(default)]
    pub observables: Vec<String>,
    #[serde(default)]
    pub sweep: Vec<SweepAxis>,
    #[serde(default)]
    pub output: OutputSpec,
    #[serde(default)]
    pub threads: Threads,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub energy_unit: EnergyUnit,
}

pub const MAX_SWEEP_AXES: usize = 2;

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, HarnessError> {
        let cfg: RunConfig =
            serde_json::from_str(text).map_err(|e| HarnessError::Config(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.sweep.len() > MAX_SWEEP_AXES {
            return Err(HarnessError::Config(format!(
                "{} sweep axes given, at most {MAX_SWEEP_AXES} supported",
                self.sweep.len()
            )));
        }
        for (i, a) in self.sweep.iter().enumerate() {
            if a.points < 2 {
                return Err(HarnessError::Config(format!("axis {:?} needs at least 2 points", a.parameter)));
            }
            if !(a.start.is_finite() && a.stop.is_finite()) {
                return Err(HarnessError::Config(format!("axis {:?} has non-finite bounds", a.parameter)));
            }
            match lookup(&self.parameters, &a.parameter) {
                Some(Value::Number(_)) => {}
                Some(_) => {
                    return Err(HarnessError::Config(format!("sweep parameter {:?} is not numeric", a.parameter)))
                }
                None => {
                    return Err(HarnessError::Config(format!("sweep parameter {:?} not found", a.parameter)))
                }
            }
            if self.sweep[..i].iter().any(|b| b.parameter == a.parameter) {
                return Err(HarnessError::Config(format!("axis {:?} repeated", a.parameter)));
            }
        }
        Ok(())
    }

    /// SHA-256 of the canonical semantic content: everything except the
    /// output location and thread count, with all numbers as doubles and
    /// object keys sorted.
    pub fn semantic_hash(&self, command: &str) -> String {
        let doc = serde_json::json!({
            "command": command,
            "model": self.model,
            "parameters": normalize(&Value::Object(self.parameters.clone())),
            "observables": self.observables,
            "sweep": normalize(&serde_json::to_value(&self.sweep).expect("plain data")),
            "seed": self.seed,
            "energy_unit": self.energy_unit,
            "format": self.output.format,
        });
        let bytes = serde_json::to_vec(&doc).expect("plain data");
        Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
    }
}

fn normalize(v: &Value) -> Value {
    match v {
        Value::Number(n) => n
            .as_f64()
            .and_then(serde_json::Number::from_f64)
            .map_or_else(|| v.clone(), Value::Number),
        Value::Array(a) => Value::Array(a.iter().map(normalize).collect()),
        Value::Object(m) => Value::Object(m.iter().map(|(k, x)| (k.clone(), normalize(x))).collect()),
        _ => v.clone(),
    }
}

pub fn lookup<'a>(params: &'a Map<String, Value>, path: &str) -> Option<&'a Value> {
    let mut parts = path.split('.');
    let mut cur = params.get(parts.next()?)?;
    for p in parts {
        cur = cur.as_object()?.get(p)?;
    }
    Some(cur)
}

/// Overwrite a numeric leaf. Integral values are stored as integers so
/// that count-valued fields still deserialize.
pub fn assign(params: &mut Map<String, Value>, path: &str, x: f64) -> Result<(), HarnessError> {
    let missing = || HarnessError::Config(format!("invalid parameter path {path:?}"));
    let mut parts: Vec<&str> = path.split('.').collect();
    let last = parts.pop().ok_or_else(missing)?;
    let mut cur = params;
    for p in parts {
        cur = cur.get_mut(p).and_then(Value::as_object_mut).ok_or_else(missing)?;
    }
    let slot = cur.get_mut(last).ok_or_else(missing)?;
    *slot = if is_integral(x) {
        Value::from(x as i64)
    } else {
        serde_json::Number::from_f64(x).map(Value::Number).ok_or_else(missing)?
    };
    Ok(())
}

pub(crate) fn is_integral(x: f64) -> bool {
    x.fract() == 0.0 && x.abs() < 9.0e15
}
