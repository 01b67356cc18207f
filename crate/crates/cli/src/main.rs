mod commands;
mod error;
mod record;
mod spec;
mod svg;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use beta_forge::expansions::{DEFAULT_FRONTIER_CAP, DEFAULT_MAX_STEPS};
use beta_forge::dimension::{DEFAULT_COUNT_CAP, DEFAULT_COUNT_DEPTH};
use beta_forge::Digit;
use clap::{Parser, Subcommand};
use serde_json::json;

use commands::{Mode, Outcome, Setup};
use error::CliError;
use record::{render, Format, OutputRecord, Params, Table};

#[derive(Parser)]
#[command(name = "beta-forge", version, about = "Constants, expansions and dimension bounds for beta-expansions")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "table")]
    format: Format,
    /// Certified tolerance for computed constants.
    #[arg(long, global = true, default_value = "1e-10")]
    tol: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// G(m), beta_f(m) and beta_c(m) for a range of m.
    Constants {
        /// A value or range such as 1..10.
        #[arg(long)]
        m: String,
    },
    /// Prefix tree, greedy expansion, or quasi-greedy expansion of 1.
    Expand {
        #[arg(long)]
        m: Digit,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        x: Option<String>,
        #[arg(long)]
        depth: usize,
        #[arg(long, value_enum, default_value = "tree")]
        mode: Mode,
        /// Refuse trees with more leaves than this.
        #[arg(long, default_value_t = 100_000)]
        max_prefixes: u64,
    },
    /// Number of admissible prefixes at each depth.
    Count {
        #[arg(long)]
        m: Digit,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        depth: usize,
        /// Distinct orbit points kept per level; counts past it are lower bounds.
        #[arg(long, default_value_t = DEFAULT_FRONTIER_CAP)]
        cap: usize,
    },
    /// Certificate of a unique or non-unique expansion.
    Unique {
        #[arg(long)]
        m: Digit,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        x: String,
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: usize,
    },
    /// Prefix-doubling constant and Hausdorff dimension lower bound.
    Dimension {
        #[arg(long)]
        m: Digit,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        x: Option<String>,
        #[arg(long, default_value_t = DEFAULT_COUNT_DEPTH)]
        depth: usize,
        /// Frontier cap for the empirical prefix count.
        #[arg(long, default_value_t = DEFAULT_COUNT_CAP)]
        cap: usize,
    },
    /// SVG of the interval geometry.
    Diagram {
        #[arg(long)]
        m: Digit,
        #[arg(long)]
        beta: String,
        /// Destination file; the SVG goes to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("BETA_FORGE_THREADS") else {
        return Ok(());
    };
    let n: usize = match v.trim().parse() {
        Ok(n) if n > 0 => n,
        _ => return Err(CliError::Usage(format!("BETA_FORGE_THREADS must be a positive integer, got '{v}'"))),
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

enum Output {
    Record(Box<Outcome>),
    Raw(String),
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    configure_threads()?;
    let tol = spec::parse_tol(&cli.tol)?;
    let out = match &cli.command {
        Command::Constants { m } => {
            let (lo, hi) = spec::parse_m_range(m)?;
            commands::constants(lo, hi, &tol)?
        }
        Command::Expand { m, beta, x, depth, mode, max_prefixes } => {
            commands::expand(&Setup::new(*m, beta, &tol)?, x.as_deref(), *depth, *mode, *max_prefixes)?
        }
        Command::Count { m, beta, x, depth, cap } => commands::count(&Setup::new(*m, beta, &tol)?, x, *depth, *cap)?,
        Command::Unique { m, beta, x, max_steps } => commands::unique(&Setup::new(*m, beta, &tol)?, x, *max_steps)?,
        Command::Dimension { m, beta, x, depth, cap } => {
            commands::dimension(&Setup::new(*m, beta, &tol)?, x.as_deref(), *depth, *cap)?
        }
        Command::Diagram { m, beta, out } => {
            let setup = Setup::new(*m, beta, &tol)?;
            let svg = svg::diagram(&setup.params, beta.trim())?;
            let Some(path) = out else {
                return Ok(Output::Raw(svg));
            };
            std::fs::write(path, &svg).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
            let payload = json!({"out": path.display().to_string(), "bytes": svg.len()});
            let record = OutputRecord {
                command: "diagram".into(),
                params: Params { m: (*m).into(), beta: None },
                payload,
                provenance: record::Provenance::Exact,
            };
            let table = Table::fields(vec![("out", path.display().to_string()), ("bytes", svg.len().to_string())]);
            Outcome { record, table, undecided: false }
        }
    };
    Ok(Output::Record(Box::new(out)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|out| match out {
        Output::Raw(s) => Ok((s, false)),
        Output::Record(o) => render(&o.record, &o.table, cli.format).map(|s| (s, o.undecided)),
    });
    match result {
        Ok((text, undecided)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(if undecided { 4 } else { 0 })
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
