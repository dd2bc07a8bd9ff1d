mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use carlitz_core::verify::Suite;
use carlitz_core::{Error, Result};
use clap::{Args, Parser, Subcommand};

use commands::{Output, VerifyArgs};
use config::{Format, Overrides, RunConfig};

/// Carlitz basis, Carlitz exponential and ladder operators over F_q((x)).
#[derive(Parser)]
#[command(name = "carlitz", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// JSON file with default settings.
    #[arg(long, env = "CARLITZ_DEFAULTS", global = true, value_name = "FILE")]
    defaults: Option<PathBuf>,
    /// Characteristic.
    #[arg(long, global = true)]
    p: Option<u32>,
    /// Degree of F_q over F_p.
    #[arg(long, global = true)]
    gamma: Option<u32>,
    /// Irreducible modulus for F_q, constant term first: `1,1,1`.
    #[arg(long, global = true, value_delimiter = ',')]
    modulus: Option<Vec<u32>>,
    #[arg(long, global = true)]
    imax: Option<usize>,
    /// Number of Carlitz coefficients kept.
    #[arg(long = "M", global = true, value_name = "M")]
    m: Option<usize>,
    /// Precision in units of x^(1/d).
    #[arg(long, global = true)]
    prec: Option<i64>,
    /// Largest ramification denominator (a power of q).
    #[arg(long, global = true)]
    ram_cap: Option<u64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Subcommand)]
enum Command {
    /// Brackets, factorials, e_i, f_i, h_j and Q_j.
    Table,
    /// Run identity suites.
    Verify {
        /// basis, orthonormal, prop2, exp, oscillator, coherent or all.
        #[arg(conflicts_with = "suite_flag")]
        suite: Option<String>,
        #[arg(long = "suite", value_name = "SUITE")]
        suite_flag: Option<String>,
        /// Include wall time in the reports.
        #[arg(long)]
        timing: bool,
        /// Run cases on one thread.
        #[arg(long)]
        sequential: bool,
        #[arg(long, hide = true, value_name = "FAULT")]
        inject_fault: Option<String>,
    },
    /// f_i(t) for i <= imax, or phi(t) from coefficients.
    Eval {
        #[arg(long)]
        t: String,
        /// Coefficient c_i of f_i; repeat in order.
        #[arg(long = "c", value_name = "C")]
        c: Vec<String>,
    },
    /// The Carlitz exponential e_C(z).
    Exp {
        #[arg(long)]
        z: String,
    },
    /// The inverse series rho(zeta).
    Rho {
        #[arg(long)]
        zeta: String,
    },
    /// Compare the basis expansion of e_C(tz) with the direct series.
    Wz {
        #[arg(long)]
        z: String,
        #[arg(long)]
        t: String,
    },
    /// Eigenvector of the lowering operator.
    Coherent {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        c0: String,
    },
    /// Coefficients of h_n in the interpolation basis.
    ExpandH {
        #[arg(long)]
        n: u64,
    },
}

fn config(g: &GlobalArgs) -> Result<RunConfig> {
    let base = match &g.defaults {
        Some(path) => RunConfig::from_file(path)?,
        None => RunConfig::default(),
    };
    let o = Overrides {
        p: g.p,
        gamma: g.gamma,
        modulus: g.modulus.clone(),
        imax: g.imax,
        m: g.m,
        prec: g.prec,
        ram_cap: g.ram_cap,
        seed: g.seed,
        format: g.format,
    };
    Ok(base.apply(&o))
}

fn parse_fault(s: &str) -> Result<usize> {
    s.strip_prefix('d')
        .and_then(|i| i.parse().ok())
        .ok_or_else(|| Error::Parse(format!("unknown fault `{s}` (expected d<i>)")))
}

fn run(cli: Cli) -> Result<(Output, Format)> {
    let cfg = config(&cli.global)?;
    let out = match cli.command {
        Command::Table => commands::table(&cfg)?,
        Command::Verify { suite, suite_flag, timing, sequential, inject_fault } => {
            let name = suite.or(suite_flag).unwrap_or_else(|| "all".into());
            let suites = Suite::parse_selection(&name).ok_or_else(|| {
                Error::Parse(format!(
                    "unknown suite `{name}` (expected basis, orthonormal, prop2, exp, oscillator, coherent or all)"
                ))
            })?;
            let corrupt_d = inject_fault.as_deref().map(parse_fault).transpose()?;
            commands::verify(&cfg, &VerifyArgs { suites, timing, sequential, corrupt_d })?
        }
        Command::Eval { t, c } => commands::eval(&cfg, &t, &c)?,
        Command::Exp { z } => commands::exp(&cfg, &z)?,
        Command::Rho { zeta } => commands::rho_cmd(&cfg, &zeta)?,
        Command::Wz { z, t } => commands::wz(&cfg, &z, &t)?,
        Command::Coherent { lambda, c0 } => commands::coherent(&cfg, &lambda, &c0)?,
        Command::ExpandH { n } => commands::expand_h(&cfg, n)?,
    };
    Ok((out, cfg.format))
}

/// 2 for bad input, 3 when the precision budget ran out, 1 otherwise.
fn error_status(e: &Error) -> u8 {
    match e {
        Error::PrecisionExhausted(_) => 3,
        Error::InvalidField(_)
        | Error::Domain(_)
        | Error::Parse(_)
        | Error::RamificationBudget { .. }
        | Error::DivisionByZero
        | Error::Budget(_) => 2,
        Error::FieldMismatch | Error::Inexact(_) | Error::Inconsistent(_) => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, format)) => {
            if let Some(note) = &out.note {
                eprintln!("{note}");
            }
            match format {
                Format::Text => print!("{}", out.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable")),
            }
            ExitCode::from(out.status as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_status(&e))
        }
    }
}
