//! Acceptance scenarios shared by the `acceptance` test target.
//!
//! Reference-run fixtures live in `tests/fixtures`; set `QGAN_BLESS=1` to
//! regenerate them after an intentional change to the training dynamics.

use std::fs;
use std::path::{Path, PathBuf};

use qgan_core::CompareReport;
use qgan_lab::config::parse_config_str;
use qgan_lab::ExperimentConfig;

/// Classical against quantum at `λ ∈ {0, 0.5}` on a skewed one-qubit target.
pub const SPEEDUP_CONFIG: &str = include_str!("../../../configs/speedup.cfg");

/// Two-qubit perfectly correlated target with the entangling term switched on.
pub const ENTANGLED_CONFIG: &str = include_str!("../../../configs/entangled.cfg");

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn experiment(text: &str, out: &Path) -> ExperimentConfig {
    let mut cfg = parse_config_str(text, Path::new(".")).expect("scenario config parses");
    cfg.output_dir = out.to_path_buf();
    cfg
}

/// Iteration counts must match exactly; final metrics to 1e-9.
pub fn matches_fixture(report: &CompareReport, name: &str) -> Result<(), String> {
    let path = fixtures().join(name);
    if std::env::var_os("QGAN_BLESS").is_some() {
        fs::create_dir_all(fixtures()).map_err(|e| e.to_string())?;
        let text = serde_json::to_string_pretty(report).unwrap() + "\n";
        fs::write(&path, text).map_err(|e| e.to_string())?;
    }
    let text = fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    let fixture: CompareReport = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    if fixture.methods.len() != report.methods.len() {
        return Err(format!("{name}: method count differs"));
    }
    let close = |a: &[Option<f64>], b: &[Option<f64>]| {
        a.len() == b.len()
            && a.iter().zip(b).all(|(x, y)| match (x, y) {
                (Some(x), Some(y)) => (x - y).abs() < 1e-9,
                (None, None) => true,
                _ => false,
            })
    };
    for (a, b) in report.methods.iter().zip(&fixture.methods) {
        let same = a.method == b.method
            && a.lambda == b.lambda
            && a.seeds == b.seeds
            && a.iterations_to_convergence == b.iterations_to_convergence
            && a.median_iterations == b.median_iterations
            && close(&a.final_tv, &b.final_tv)
            && close(&a.final_fidelity, &b.final_fidelity);
        if !same {
            return Err(format!(
                "{name}: {} lambda {:?} differs from reference run",
                a.method, a.lambda
            ));
        }
    }
    Ok(())
}
