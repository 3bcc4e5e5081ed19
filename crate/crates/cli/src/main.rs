use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use clspace::{Regime, WitnessKind};
use clspace_cli::error::CliError;
use clspace_cli::jobs::{self, Command, JobSpec};

/// Quasi-normed Calderón–Lozanovskiĭ spaces: norms, indices, Δ-conditions,
/// l∞ witnesses and the reproducibility suite.
#[derive(Debug, Parser)]
#[command(name = "clspace", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Orlicz function: JSON file, inline JSON or a built-in name
    #[arg(long, global = true)]
    function: Option<String>,
    /// Space descriptor: JSON file or inline JSON
    #[arg(long, global = true)]
    space: Option<String>,
    /// Step vector: JSON file or inline JSON
    #[arg(long, global = true)]
    vector: Option<String>,
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,
    /// zero, inf or all; every regime when omitted
    #[arg(long, global = true)]
    regime: Option<String>,
    /// Depth of witness constructions
    #[arg(long = "N", global = true, default_value_t = 10)]
    n: usize,
    #[arg(long, global = true, value_delimiter = ',', default_value = "0.5,0.25")]
    eps: Vec<f64>,
    #[arg(long, global = true, default_value_t = 1_000_000)]
    horizon: u64,
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Worker threads for the suite
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Re-check the reported numbers against library calls
    #[arg(long, global = true)]
    audit: bool,
    /// Ratio the blow-up search must exceed
    #[arg(long, global = true, default_value_t = 10.0)]
    target: f64,
    /// Directory for report.json and summary.csv
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Luxemburg–Nakano quasi-norm of a vector
    Norm,
    /// Modular of a vector
    Modular,
    /// Mazur–Orlicz F-norm of a vector
    Fnorm,
    /// Lower Matuszewska–Orlicz index brackets
    Index,
    /// Δ₂, Δ_ε and Δ_{2-str} verdicts
    Check {
        /// delta2, delta_eps, delta_2str or all
        #[arg(default_value = "all")]
        condition: String,
    },
    /// l∞-copy witness bundle
    Witness {
        /// nonatomic_infinity, nonatomic_zero, plateau, bounded_units, capped or vanishing_units
        kind: String,
    },
    /// Quasi-triangle blow-up search over characteristic functions
    Blowup,
    /// All acceptance criteria
    Suite,
}

fn job(cli: Cli) -> Result<(JobSpec, Option<PathBuf>), CliError> {
    let command = match &cli.command {
        Cmd::Norm => Command::Norm,
        Cmd::Modular => Command::Modular,
        Cmd::Fnorm => Command::Fnorm,
        Cmd::Index => Command::Index,
        Cmd::Check { condition } => Command::Check(jobs::parse_condition(condition)?),
        Cmd::Witness { kind } => Command::Witness(
            WitnessKind::parse(kind).ok_or_else(|| CliError::malformed("witness kind", format!("unknown kind {kind:?}")))?,
        ),
        Cmd::Blowup => Command::Blowup,
        Cmd::Suite => Command::Suite,
    };
    let regime = match &cli.regime {
        Some(r) => Some(Regime::parse(r).ok_or_else(|| CliError::malformed("regime", format!("{r:?}; expected zero, inf or all")))?),
        None => None,
    };
    let job_spec = JobSpec {
        command,
        function: cli.function,
        space: cli.space,
        vector: cli.vector,
        tol: cli.tol,
        regime,
        n: cli.n,
        eps: cli.eps,
        horizon: cli.horizon,
        seed: cli.seed,
        jobs: cli.jobs,
        audit: cli.audit,
        target: cli.target,
    };
    Ok((job_spec, cli.out))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = job(cli).and_then(|(job_spec, out)| {
        let rep = jobs::run(&job_spec)?;
        if let Some(dir) = out {
            rep.write(&dir)?;
        }
        Ok(rep)
    });
    match result {
        Ok(rep) => {
            print!("{}", rep.table_text());
            ExitCode::from(rep.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
