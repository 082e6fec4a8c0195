mod commands;
mod render;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use commands::CommandResult;

/// Numerical semigroups, row-factorization matrices and defining ideals.
#[derive(Parser, Debug)]
#[command(name = "rfsg", version, about)]
struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
enum Command {
    /// Apéry set with respect to an element (default: the multiplicity)
    Apery {
        #[arg(long, value_delimiter = ',', required = true)]
        gens: Vec<i64>,
        #[arg(long = "mod")]
        modulus: Option<i64>,
    },
    /// Pseudo-Frobenius numbers, Frobenius number and type
    Pf {
        #[arg(long, value_delimiter = ',', required = true)]
        gens: Vec<i64>,
    },
    /// Structure constants and pseudo-Frobenius candidates of m0, m0+d, ..., m0+pd, n
    Structure(PresentationArgs),
    /// Row-factorization matrices of a pseudo-Frobenius number
    Rf {
        #[command(flatten)]
        #[serde(flatten)]
        pres: PresentationArgs,
        #[arg(long)]
        f: i64,
        #[arg(long, value_enum, default_value_t = RfMode::Closed)]
        mode: RfMode,
        /// Stop enumeration after this many matrices
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Every RF-relation of a pseudo-Frobenius number
    Relations {
        #[command(flatten)]
        #[serde(flatten)]
        pres: PresentationArgs,
        #[arg(long)]
        f: i64,
    },
    /// Minimal binomial generating set of the defining ideal
    Ideal {
        #[arg(long, value_delimiter = ',', required = true)]
        gens: Vec<i64>,
    },
    /// Check that RF-relations minimally generate the defining ideal
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PresentationArgs {
    #[arg(long)]
    pub m0: i64,
    #[arg(long)]
    pub d: i64,
    #[arg(long)]
    pub p: usize,
    #[arg(long)]
    pub n: i64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RfMode {
    Closed,
    Enumerate,
    Count,
}

/// Parameters are single values, or with `--sweep` ranges `a..b`; `--n auto`
/// sweeps `[m0+1, 3·m0]`.
#[derive(Args, Debug, Clone, Serialize)]
pub struct VerifyArgs {
    #[arg(long)]
    pub m0: String,
    #[arg(long)]
    pub d: String,
    #[arg(long)]
    pub p: String,
    #[arg(long, default_value = "auto")]
    pub n: String,
    /// Treat the parameters as a box and verify every symmetric presentation in it
    #[arg(long)]
    pub sweep: bool,
    /// Worker threads for --sweep
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// JSON-lines report path for --sweep (default: stdout)
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = match &cli.command {
        Command::Apery { .. } => "apery",
        Command::Pf { .. } => "pf",
        Command::Structure(_) => "structure",
        Command::Rf { .. } => "rf",
        Command::Relations { .. } => "relations",
        Command::Ideal { .. } => "ideal",
        Command::Verify(_) => "verify",
    };
    let input = serde_json::to_value(&cli.command)
        .ok()
        .and_then(|v| v.as_object().and_then(|o| o.values().next().cloned()))
        .unwrap_or_default();
    let outcome = match &cli.command {
        Command::Apery { gens, modulus } => commands::apery(gens, *modulus),
        Command::Pf { gens } => commands::pf(gens),
        Command::Structure(pres) => commands::structure(pres),
        Command::Rf {
            pres,
            f,
            mode,
            limit,
        } => commands::rf(pres, *f, *mode, *limit),
        Command::Relations { pres, f } => commands::relations(pres, *f),
        Command::Ideal { gens } => commands::ideal(gens),
        Command::Verify(args) => commands::verify(args),
    };
    let (result, code) = CommandResult::new(name, input, outcome);
    // a sweep that streams records to stdout reports its summary on stderr
    let to_stderr = matches!(&cli.command, Command::Verify(a) if a.sweep && a.out.is_none());
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&result).expect("serializable result"),
        Format::Table => render::table(&serde_json::to_value(&result).expect("serializable result")),
    };
    // a closed pipe (e.g. `| head`) is not an error worth reporting
    let _ = if to_stderr {
        writeln!(io::stderr(), "{text}")
    } else {
        writeln!(io::stdout(), "{text}")
    };
    ExitCode::from(code)
}
