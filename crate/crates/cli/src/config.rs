//! Flat `key = value` experiment files.
//!
//! ```text
//! # comments run to end of line
//! n_qubits = 1
//! target = 0.75, 0.25
//! methods = classical, qgan
//! lambda_sweep = 0.0, 0.5
//! seeds = 1, 2, 3
//! ```
//!
//! Every [`TrainingConfig`] field is also a key; absent keys keep the
//! `TrainingConfig::new` defaults.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use qgan_core::encoding::{DataSource, DatasetSpec};
use qgan_core::TrainingConfig;
use thiserror::Error;

pub const DEFAULT_OUTPUT_DIR: &str = "qgan-out";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("invalid `{key}`: {message}")]
    Invalid { key: String, message: String },
}

impl ConfigError {
    fn invalid(key: &str, message: impl fmt::Display) -> Self {
        ConfigError::Invalid {
            key: key.to_string(),
            message: message.to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Classical,
    Qgan,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Classical => "classical",
            Method::Qgan => "qgan",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "classical" => Ok(Method::Classical),
            "qgan" => Ok(Method::Qgan),
            other => Err(format!("unknown method `{other}` (expected classical or qgan)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    /// Shared by every run; `seed` and both `λ` are overwritten per run.
    pub training: TrainingConfig,
    pub dataset: DatasetSpec,
    pub methods: Vec<Method>,
    /// Applied to both players of each quantum run. Without a `lambda_sweep`
    /// key this is `[lambda_g]` and `lambda_d` keeps its own value.
    pub lambda_sweep: Vec<f64>,
    pub sweep_sets_lambda_d: bool,
    pub seeds: Vec<u64>,
    pub output_dir: PathBuf,
}

impl ExperimentConfig {
    /// Every `(method, λ, seed)` run in output order. Classical runs carry no `λ`.
    pub fn runs(&self) -> Vec<(Method, Option<f64>, u64)> {
        let mut out = Vec::new();
        for &m in &self.methods {
            let lambdas: Vec<Option<f64>> = match m {
                Method::Classical => vec![None],
                Method::Qgan => self.lambda_sweep.iter().map(|&l| Some(l)).collect(),
            };
            for l in lambdas {
                for &s in &self.seeds {
                    out.push((m, l, s));
                }
            }
        }
        out
    }

    /// The training config for one run.
    pub fn training_for(&self, lambda: Option<f64>, seed: u64) -> TrainingConfig {
        let mut cfg = self.training.clone().with_seed(seed);
        if let Some(l) = lambda {
            cfg.lambda_g = l;
            if self.sweep_sets_lambda_d {
                cfg.lambda_d = l;
            }
        }
        cfg
    }
}

pub fn parse_config(path: &Path) -> Result<ExperimentConfig, ConfigError> {
    let text = fs::read_to_string(path).map_err(|e| ConfigError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    parse_config_str(&text, base)
}

/// `base` resolves a relative `target_file`.
pub fn parse_config_str(text: &str, base: &Path) -> Result<ExperimentConfig, ConfigError> {
    let mut entries: Vec<(usize, String, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(ConfigError::Syntax {
                line: line_no,
                message: format!("expected `key = value`, got {line:?}"),
            });
        };
        let key = key.trim();
        let value = value.trim();
        if key.is_empty() || key.contains(char::is_whitespace) {
            return Err(ConfigError::Syntax {
                line: line_no,
                message: format!("malformed key {key:?}"),
            });
        }
        if !KEYS.contains(&key) {
            return Err(ConfigError::UnknownKey {
                line: line_no,
                key: key.to_string(),
            });
        }
        if let Some((prev, ..)) = entries.iter().find(|(_, k, _)| k == key) {
            return Err(ConfigError::Syntax {
                line: line_no,
                message: format!("`{key}` already set on line {prev}"),
            });
        }
        if value.is_empty() {
            return Err(ConfigError::Syntax {
                line: line_no,
                message: format!("`{key}` has no value"),
            });
        }
        entries.push((line_no, key.to_string(), value.to_string()));
    }
    build(&entries, base)
}

const KEYS: &[&str] = &[
    "n_qubits",
    "target",
    "target_file",
    "methods",
    "lambda_sweep",
    "seeds",
    "output_dir",
    "generator_ansatz",
    "discriminator_ansatz",
    "lambda_g",
    "lambda_d",
    "objective_mode",
    "learning_rate_g",
    "learning_rate_d",
    "fd_step",
    "max_iterations",
    "d_steps_per_g_step",
    "epsilon",
    "patience",
    "seed",
    "evolution_time",
];

fn scalar<T: FromStr>(key: &str, value: &str) -> Result<T, ConfigError>
where
    T::Err: fmt::Display,
{
    value
        .parse()
        .map_err(|e| ConfigError::invalid(key, format!("{value:?}: {e}")))
}

fn list<T: FromStr>(key: &str, value: &str) -> Result<Vec<T>, ConfigError>
where
    T::Err: fmt::Display,
{
    value.split(',').map(|item| scalar(key, item.trim())).collect()
}

fn build(entries: &[(usize, String, String)], base: &Path) -> Result<ExperimentConfig, ConfigError> {
    let get = |key: &str| entries.iter().find(|(_, k, _)| k == key).map(|(_, _, v)| v.as_str());

    let n_qubits: usize = match get("n_qubits") {
        Some(v) => scalar("n_qubits", v)?,
        None => return Err(ConfigError::invalid("n_qubits", "required")),
    };
    let mut t = TrainingConfig::new(n_qubits);
    if let Some(v) = get("generator_ansatz") {
        t.generator_ansatz = scalar("generator_ansatz", v)?;
    }
    if let Some(v) = get("discriminator_ansatz") {
        t.discriminator_ansatz = scalar("discriminator_ansatz", v)?;
    }
    if let Some(v) = get("lambda_g") {
        t.lambda_g = scalar("lambda_g", v)?;
    }
    if let Some(v) = get("lambda_d") {
        t.lambda_d = scalar("lambda_d", v)?;
    }
    if let Some(v) = get("objective_mode") {
        t.objective_mode = scalar("objective_mode", v)?;
    }
    if let Some(v) = get("learning_rate_g") {
        t.learning_rate_g = scalar("learning_rate_g", v)?;
    }
    if let Some(v) = get("learning_rate_d") {
        t.learning_rate_d = scalar("learning_rate_d", v)?;
    }
    if let Some(v) = get("fd_step") {
        t.fd_step = scalar("fd_step", v)?;
    }
    if let Some(v) = get("max_iterations") {
        t.max_iterations = scalar("max_iterations", v)?;
    }
    if let Some(v) = get("d_steps_per_g_step") {
        t.d_steps_per_g_step = scalar("d_steps_per_g_step", v)?;
    }
    if let Some(v) = get("epsilon") {
        t.epsilon = scalar("epsilon", v)?;
    }
    if let Some(v) = get("patience") {
        t.patience = scalar("patience", v)?;
    }
    if let Some(v) = get("seed") {
        t.seed = scalar("seed", v)?;
    }
    if let Some(v) = get("evolution_time") {
        t.evolution_time = scalar("evolution_time", v)?;
    }
    t.validate().map_err(|e| match e {
        qgan_core::Error::Invalid { what, reason } => ConfigError::invalid(what, reason),
        other => ConfigError::invalid("training", other),
    })?;

    let source = match (get("target"), get("target_file")) {
        (Some(v), None) => DataSource::Inline(list("target", v)?),
        (None, Some(v)) => DataSource::SampleFile(base.join(v)),
        (Some(_), Some(_)) => {
            return Err(ConfigError::invalid(
                "target",
                "give either target or target_file, not both",
            ))
        }
        (None, None) => return Err(ConfigError::invalid("target", "required (or target_file)")),
    };
    if let DataSource::Inline(p) = &source {
        let dim = 1usize << n_qubits;
        if p.len() != dim {
            return Err(ConfigError::invalid(
                "target",
                format!("{} entries, expected 2^{n_qubits} = {dim}", p.len()),
            ));
        }
        qgan_core::ProbabilityVector::new(p.clone()).map_err(|e| ConfigError::invalid("target", e))?;
    }

    let methods: Vec<Method> = match get("methods") {
        Some(v) => list("methods", v)?,
        None => vec![Method::Classical, Method::Qgan],
    };
    for (i, m) in methods.iter().enumerate() {
        if methods[..i].contains(m) {
            return Err(ConfigError::invalid("methods", format!("{m} listed twice")));
        }
    }

    let lambda_sweep: Vec<f64> = match get("lambda_sweep") {
        Some(v) => list("lambda_sweep", v)?,
        None => vec![t.lambda_g],
    };
    if let Some(l) = lambda_sweep.iter().find(|l| !(l.is_finite() && **l >= 0.0)) {
        return Err(ConfigError::invalid(
            "lambda_sweep",
            format!("{l} must be finite and >= 0"),
        ));
    }

    let seeds: Vec<u64> = match get("seeds") {
        Some(v) => list("seeds", v)?,
        None => vec![t.seed],
    };
    for (i, s) in seeds.iter().enumerate() {
        if seeds[..i].contains(s) {
            return Err(ConfigError::invalid("seeds", format!("seed {s} listed twice")));
        }
    }

    let output_dir = PathBuf::from(get("output_dir").unwrap_or(DEFAULT_OUTPUT_DIR));

    Ok(ExperimentConfig {
        training: t,
        dataset: DatasetSpec { source, n_qubits },
        methods,
        sweep_sets_lambda_d: get("lambda_sweep").is_some(),
        lambda_sweep,
        seeds,
        output_dir,
    })
}
