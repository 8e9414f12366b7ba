use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qgan_lab::{parse_config, run, validate, CliError, ExperimentConfig, Method, RunOutcome, ValidateOptions};

#[derive(Parser)]
#[command(
    name = "qgan-lab",
    version,
    about = "Quantum and classical GAN experiments on small discrete targets"
)]
struct Cli {
    /// Overrides `output_dir` from the config file.
    #[arg(long, global = true)]
    output_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Train one model family over the configured seeds (and λ values).
    Train {
        config: PathBuf,
        /// Required when the config lists more than one method.
        #[arg(long)]
        method: Option<Method>,
    },
    /// Run every configured method, λ and seed and write the comparison report.
    Compare { config: PathBuf },
    /// Run the invariant and oracle checks.
    Validate {
        #[arg(long, hide = true)]
        inject_non_hermitian: bool,
    },
}

fn load(path: &Path, output_dir: &Option<PathBuf>) -> Result<ExperimentConfig, CliError> {
    let mut cfg = parse_config(path)?;
    if let Some(dir) = output_dir {
        cfg.output_dir = dir.clone();
    }
    Ok(cfg)
}

// a closed pipe (`| head`) is not worth a panic
fn print_outcome(outcome: &RunOutcome) {
    let _ = write_outcome(&mut io::stdout().lock(), outcome);
}

fn write_outcome(out: &mut impl Write, outcome: &RunOutcome) -> io::Result<()> {
    for r in &outcome.runs {
        let lambda = r.lambda.map_or("-".to_string(), |l| l.to_string());
        let status = match (&r.failure, r.summary.iterations_to_convergence) {
            (Some(f), _) => format!("FAILED: {f}"),
            (None, Some(it)) => format!("converged at {it}"),
            (None, None) => "not converged".to_string(),
        };
        let tv = r.summary.final_tv.map_or("-".to_string(), |t| format!("{t:.4}"));
        writeln!(
            out,
            "{:<9} lambda={lambda:<5} seed={:<4} tv={tv:<8} {status}",
            r.method, r.seed
        )?;
    }
    for m in &outcome.report.methods {
        let median = m.median_iterations.map_or("none".to_string(), |x| x.to_string());
        let lambda = m.lambda.map_or(String::new(), |l| format!(" lambda={l}"));
        writeln!(
            out,
            "{}{lambda}: median iterations {median}, converged {:.0}%",
            m.method,
            100.0 * m.converged_fraction
        )?;
    }
    writeln!(out, "report written to {}", outcome.report_file.display())
}

fn execute(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Train { config, method } => {
            let mut cfg = load(&config, &cli.output_dir)?;
            let method = match (method, cfg.methods.as_slice()) {
                (Some(m), _) => m,
                (None, [m]) => *m,
                (None, _) => {
                    return Err(qgan_lab::ConfigError::Invalid {
                        key: "methods".into(),
                        message: "train needs exactly one method; pass --method".into(),
                    }
                    .into())
                }
            };
            cfg.methods = vec![method];
            let outcome = run(&cfg)?;
            print_outcome(&outcome);
            Ok(outcome.exit_code())
        }
        Command::Compare { config } => {
            let cfg = load(&config, &cli.output_dir)?;
            let outcome = run(&cfg)?;
            print_outcome(&outcome);
            Ok(outcome.exit_code())
        }
        Command::Validate { inject_non_hermitian } => {
            let report = validate(ValidateOptions { inject_non_hermitian });
            let _ = write!(io::stdout().lock(), "{report}");
            Ok(report.exit_code())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
