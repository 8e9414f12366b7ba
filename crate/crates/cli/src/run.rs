use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::thread;

use qgan_core::metrics::{MethodRuns, RunSummary};
use qgan_core::{build_compare_report, load_dataset, train, train_classical, CompareReport, ProbabilityVector};

use crate::config::{ConfigError, ExperimentConfig, Method};
use crate::history::write_history;
use crate::CliError;

pub const REPORT_FILE: &str = "report.json";

/// One finished `(method, λ, seed)` run.
#[derive(Debug, Clone)]
pub struct RunRecord {
    pub method: Method,
    pub lambda: Option<f64>,
    pub seed: u64,
    pub file: PathBuf,
    pub summary: RunSummary,
    pub failure: Option<String>,
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub runs: Vec<RunRecord>,
    pub report: CompareReport,
    pub report_file: PathBuf,
}

impl RunOutcome {
    pub fn failures(&self) -> impl Iterator<Item = &RunRecord> {
        self.runs.iter().filter(|r| r.failure.is_some())
    }

    pub fn exit_code(&self) -> i32 {
        if self.failures().next().is_some() {
            2
        } else {
            0
        }
    }
}

pub fn history_file_name(method: Method, lambda: Option<f64>, seed: u64) -> String {
    match lambda {
        Some(l) => format!("{method}_{l}_{seed}.csv"),
        None => format!("{method}_none_{seed}.csv"),
    }
}

/// Runs the whole sweep on all available cores.
pub fn run(config: &ExperimentConfig) -> Result<RunOutcome, CliError> {
    let threads = thread::available_parallelism().map_or(1, |n| n.get());
    run_with_threads(config, threads)
}

/// Files are identical for any thread count apart from `wall_time_ms`.
pub fn run_with_threads(config: &ExperimentConfig, threads: usize) -> Result<RunOutcome, CliError> {
    let target: ProbabilityVector<f64> = load_dataset(&config.dataset).map_err(|e| match e {
        qgan_core::Error::Io { path, message } => CliError::Io { path, message },
        other => CliError::Config(ConfigError::Invalid {
            key: "target".into(),
            message: other.to_string(),
        }),
    })?;
    let dir = &config.output_dir;
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;

    let jobs = config.runs();
    let workers = threads.clamp(1, jobs.len().max(1));
    let mut results: Vec<Option<Result<RunRecord, CliError>>> = (0..jobs.len()).map(|_| None).collect();
    thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let jobs = &jobs;
                let target = &target;
                scope.spawn(move || {
                    (w..jobs.len())
                        .step_by(workers)
                        .map(|i| {
                            let (m, l, s) = jobs[i];
                            (i, execute(config, target, dir, m, l, s))
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (i, r) in h.join().expect("run worker panicked") {
                results[i] = Some(r);
            }
        }
    });
    let runs = results
        .into_iter()
        .map(|r| r.expect("every job assigned"))
        .collect::<Result<Vec<_>, _>>()?;

    let report = build_compare_report(&group(&runs)).map_err(|e| CliError::Numeric(e.to_string()))?;
    let report_file = dir.join(REPORT_FILE);
    let mut json = serde_json::to_string_pretty(&report).map_err(|e| CliError::Numeric(e.to_string()))?;
    json.push('\n');
    fs::write(&report_file, json).map_err(|e| CliError::io(&report_file, e))?;
    Ok(RunOutcome {
        runs,
        report,
        report_file,
    })
}

fn execute(
    config: &ExperimentConfig,
    target: &ProbabilityVector<f64>,
    dir: &Path,
    method: Method,
    lambda: Option<f64>,
    seed: u64,
) -> Result<RunRecord, CliError> {
    let cfg = config.training_for(lambda, seed);
    let result = match method {
        Method::Classical => train_classical(&cfg, target),
        Method::Qgan => train(&cfg, target),
    };
    // a run that could not start still gets a header-only file
    let (history, summary, failure) = match result {
        Ok(r) => {
            let summary = r.summary(seed);
            (r.history, summary, r.failure)
        }
        Err(e) => (
            Vec::new(),
            RunSummary {
                seed,
                iterations_to_convergence: None,
                final_tv: None,
                final_fidelity: None,
            },
            Some(e.to_string()),
        ),
    };

    let file = dir.join(history_file_name(method, lambda, seed));
    let write = || -> std::io::Result<()> {
        let mut out = BufWriter::new(File::create(&file)?);
        write_history(&mut out, &history).map_err(std::io::Error::other)?;
        out.flush()
    };
    write().map_err(|e| CliError::io(&file, e))?;

    Ok(RunRecord {
        method,
        lambda,
        seed,
        summary,
        failure,
        file,
    })
}

/// Consecutive runs sharing `(method, λ)` form one report entry.
fn group(runs: &[RunRecord]) -> Vec<MethodRuns> {
    let mut out: Vec<MethodRuns> = Vec::new();
    for r in runs {
        match out.last_mut() {
            Some(g) if g.method == r.method.name() && g.lambda == r.lambda => g.runs.push(r.summary.clone()),
            _ => out.push(MethodRuns {
                method: r.method.name().to_string(),
                lambda: r.lambda,
                runs: vec![r.summary.clone()],
            }),
        }
    }
    out
}
