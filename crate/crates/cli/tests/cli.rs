use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use qgan_core::metrics::{iterations_to_convergence, median};
use qgan_core::CompareReport;
use qgan_lab::read_history;

fn qgan_lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgan-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path, text: &str) -> String {
    let path = dir.join("experiment.cfg");
    fs::write(&path, text).unwrap();
    path.display().to_string()
}

const SMALL_COMPARE: &str = "\
n_qubits = 1
target = 0.75, 0.25
methods = classical, qgan
lambda_sweep = 0.0, 0.5
seeds = 1, 2, 3
max_iterations = 400
";

fn csv_names(dir: &Path) -> Vec<String> {
    let mut names: Vec<String> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n.ends_with(".csv"))
        .collect();
    names.sort();
    names
}

#[test]
fn compare_writes_nine_histories_and_a_report() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), SMALL_COMPARE);
    let out = tmp.path().join("out");
    let res = qgan_lab(&["compare", &cfg, "--output-dir", out.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(0), "{}", String::from_utf8_lossy(&res.stderr));

    let names = csv_names(&out);
    assert_eq!(names.len(), 9, "{names:?}");
    for seed in 1..=3 {
        for name in [
            format!("classical_none_{seed}.csv"),
            format!("qgan_0_{seed}.csv"),
            format!("qgan_0.5_{seed}.csv"),
        ] {
            assert!(names.contains(&name), "missing {name}");
        }
    }
    let report: CompareReport = serde_json::from_str(&fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(report.methods.len(), 3);

    // medians recomputed by hand from the emitted files
    for m in &report.methods {
        let mut counts = Vec::new();
        for (seed, reported) in m.seeds.iter().zip(&m.iterations_to_convergence) {
            let name = match m.lambda {
                Some(l) => format!("{}_{l}_{seed}.csv", m.method),
                None => format!("{}_none_{seed}.csv", m.method),
            };
            let history = read_history(fs::File::open(out.join(name)).unwrap()).unwrap();
            let tv: Vec<f64> = history.iter().map(|h| h.tv_to_target).collect();
            let count = iterations_to_convergence(&tv, 0.01, 10);
            assert_eq!(&count, reported);
            counts.extend(count);
        }
        assert_eq!(median(&counts), m.median_iterations);
        assert_eq!(m.converged_fraction, counts.len() as f64 / m.seeds.len() as f64);
    }
}

#[test]
fn rerun_gives_identical_csv_bodies() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), SMALL_COMPARE);
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    for dir in [&a, &b] {
        assert_eq!(
            qgan_lab(&["compare", &cfg, "--output-dir", dir.to_str().unwrap()])
                .status
                .code(),
            Some(0)
        );
    }
    assert_eq!(
        fs::read(a.join("report.json")).unwrap(),
        fs::read(b.join("report.json")).unwrap()
    );
    for name in csv_names(&a) {
        let strip = |p: &Path| {
            fs::read_to_string(p)
                .unwrap()
                .lines()
                .map(|l| l.rsplit_once(',').unwrap().0.to_string())
                .collect::<Vec<_>>()
        };
        assert_eq!(strip(&a.join(&name)), strip(&b.join(&name)), "{name}");
    }
}

#[test]
fn train_runs_a_single_method() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), SMALL_COMPARE);
    let out = tmp.path().join("out");
    let res = qgan_lab(&[
        "train",
        &cfg,
        "--method",
        "classical",
        "--output-dir",
        out.to_str().unwrap(),
    ]);
    assert_eq!(res.status.code(), Some(0));
    assert_eq!(
        csv_names(&out),
        vec!["classical_none_1.csv", "classical_none_2.csv", "classical_none_3.csv"]
    );

    // two methods configured and none chosen
    let res = qgan_lab(&["train", &cfg, "--output-dir", out.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(1));
}

#[test]
fn output_dir_from_config_is_used() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("from-config");
    let text = format!(
        "n_qubits = 1\ntarget = 0.5, 0.5\nmethods = classical\noutput_dir = {}\n",
        out.display()
    );
    let cfg = write_config(tmp.path(), &text);
    assert_eq!(qgan_lab(&["compare", &cfg]).status.code(), Some(0));
    assert_eq!(csv_names(&out), vec!["classical_none_0.csv"]);
}

#[test]
fn sample_file_targets_resolve_next_to_the_config() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/from_samples.cfg");
    let out = tmp.path().join("out");
    let res = qgan_lab(&["compare", cfg.to_str().unwrap(), "--output-dir", out.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(0), "{}", String::from_utf8_lossy(&res.stderr));
    assert_eq!(csv_names(&out).len(), 2);
}

#[test]
fn exit_codes() {
    let tmp = tempfile::tempdir().unwrap();

    let bad = write_config(tmp.path(), "n_qubits = 1\ntarget = 0.75, 0.25\nepsilon = 1.5\n");
    let res = qgan_lab(&["compare", &bad]);
    assert_eq!(res.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&res.stderr).contains("epsilon"));

    let missing = tmp.path().join("nope.cfg");
    assert_eq!(qgan_lab(&["compare", missing.to_str().unwrap()]).status.code(), Some(1));

    let blocker = tmp.path().join("blocker");
    fs::write(&blocker, "").unwrap();
    let cfg = write_config(tmp.path(), "n_qubits = 1\ntarget = 0.5, 0.5\nmethods = classical\n");
    let res = qgan_lab(&["compare", &cfg, "--output-dir", blocker.join("sub").to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(3));

    let absent_samples = write_config(tmp.path(), "n_qubits = 1\ntarget_file = gone.txt\n");
    assert_eq!(qgan_lab(&["compare", &absent_samples]).status.code(), Some(3));
}

#[test]
fn validate_passes_and_is_repeatable() {
    let a = qgan_lab(&["validate"]);
    let b = qgan_lab(&["validate"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stdout));
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8_lossy(&a.stdout).contains("0 failed"));
}

#[test]
fn validate_names_an_injected_fault() {
    let res = qgan_lab(&["validate", "--inject-non-hermitian"]);
    assert_eq!(res.status.code(), Some(2));
    let text = String::from_utf8_lossy(&res.stdout);
    assert!(
        text.lines().any(|l| l.starts_with("FAIL hamiltonian_hermitian")),
        "{text}"
    );
}

#[test]
fn shipped_configs_parse() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let mut seen = 0;
    for entry in fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "cfg") {
            qgan_lab::parse_config(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            seen += 1;
        }
    }
    assert!(seen >= 3);
    let minimal = qgan_lab::parse_config(&dir.join("minimal.cfg")).unwrap();
    assert_eq!(minimal.training, qgan_core::TrainingConfig::new(1));
}
