use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use twistlab::commands::{self, envelope, Outcome};
use twistlab::verify::verify_all;
use twistlab::{exit_code, ConfigFile, ExperimentConfig, Format};
use twistlab_core::{Error, Result};

#[derive(Parser)]
#[command(
    name = "twistlab",
    version,
    about = "Exact experiments with twisted group rings over finite-field towers"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// JSON file with any ExperimentConfig fields; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    p: Option<u32>,
    #[arg(long, global = true)]
    q: Option<u32>,
    #[arg(long, global = true)]
    n: Option<usize>,
    #[arg(long = "kmax", global = true)]
    k_max: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Coefficient bound for the independence certificate.
    #[arg(long, global = true)]
    cert_bound: Option<u64>,
    #[arg(long, global = true)]
    order_budget: Option<u64>,
    #[arg(long, global = true)]
    grade_budget: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
}

#[derive(Subcommand)]
enum Command {
    /// Describe the field tower as JSON.
    Tower,
    /// Kernel lattice H_k of the action at level k.
    Center {
        #[arg(long)]
        k: Option<usize>,
    },
    /// Shrink an element to a unit of the ideal it generates.
    Simplicity {
        #[arg(long)]
        element: Option<String>,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Evaluate a standard polynomial on random tuples.
    PiTest {
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long)]
        trials: Option<u64>,
    },
    /// Growth of the generating filtration, as CSV.
    Growth {
        #[arg(long)]
        k: Option<usize>,
        #[arg(long = "nmax", alias = "Nmax")]
        n_max: Option<usize>,
    },
    /// Invert a fraction in the quotient division ring.
    Invert {
        #[arg(long)]
        element: Option<String>,
        /// Central denominator; defaults to 1.
        #[arg(long)]
        denominator: Option<String>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        allow_large: bool,
    },
    /// Run every invariant suite and summarize.
    VerifyAll {
        #[arg(long)]
        trials: Option<u64>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Tower => "tower",
            Command::Center { .. } => "center",
            Command::Simplicity { .. } => "simplicity",
            Command::PiTest { .. } => "pi-test",
            Command::Growth { .. } => "growth",
            Command::Invert { .. } => "invert",
            Command::VerifyAll { .. } => "verify-all",
        }
    }

    fn overrides(&self) -> ConfigFile {
        let mut f = ConfigFile::default();
        match self {
            Command::Tower => {}
            Command::Center { k } => f.k = *k,
            Command::Simplicity { element, k } => {
                f.element = element.clone();
                f.k = *k;
            }
            Command::PiTest { k, degree, trials } => {
                f.k = *k;
                f.degree = *degree;
                f.trials = *trials;
            }
            Command::Growth { k, n_max } => {
                f.k = *k;
                f.n_max = *n_max;
            }
            Command::Invert {
                element,
                denominator,
                k,
                allow_large,
            } => {
                f.element = element.clone();
                f.denominator = denominator.clone();
                f.k = *k;
                f.allow_large = allow_large.then_some(true);
            }
            Command::VerifyAll { trials } => f.trials = *trials,
        }
        f
    }
}

fn resolve(cli: &Cli) -> Result<ExperimentConfig> {
    let c = &cli.common;
    let file = match &c.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let flags = ConfigFile {
        p: c.p,
        q: c.q,
        n: c.n,
        k_max: c.k_max,
        seed: c.seed,
        cert_bound: c.cert_bound,
        order_budget: c.order_budget,
        grade_budget: c.grade_budget,
        output: c.output.clone(),
        format: c.format,
        ..cli.command.overrides()
    };
    let merged = file.merge(ConfigFile::from_env()?).merge(flags);
    let default_format = match cli.command {
        Command::Growth { .. } => Format::Csv,
        _ => Format::Json,
    };
    ExperimentConfig::resolve(merged, default_format)
}

fn run(cli: &Cli, config: &ExperimentConfig) -> Result<Outcome> {
    match cli.command {
        Command::Tower => commands::tower(config),
        Command::Center { .. } => commands::center(config),
        Command::Simplicity { .. } => commands::simplicity(config),
        Command::PiTest { .. } => commands::pi_test(config),
        Command::Growth { .. } => commands::growth(config),
        Command::Invert { .. } => commands::invert(config),
        Command::VerifyAll { .. } => {
            let summary = verify_all(config)?;
            let failures = summary.failures();
            let total: usize = summary.suites.iter().map(|s| s.checks.len()).sum();
            Ok(Outcome {
                report: envelope("verify-all", config, &summary)?,
                verdict: format!("{} of {total} invariants hold", total - failures.len()),
                failures,
            })
        }
    }
}

fn emit(config: &ExperimentConfig, report: &str) -> Result<()> {
    match &config.output {
        Some(path) => std::fs::write(path, report)
            .map_err(|e| Error::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{report}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = resolve(&cli).and_then(|config| {
        let outcome = run(&cli, &config)?;
        emit(&config, &outcome.report)?;
        Ok(outcome)
    });
    match result {
        Ok(outcome) => {
            eprintln!("{}: {}", cli.command.name(), outcome.verdict);
            if outcome.passed() {
                ExitCode::SUCCESS
            } else {
                for f in &outcome.failures {
                    eprintln!("FAILED invariant: {f}");
                }
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("{}: {e}", cli.command.name());
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
