//! `flagdl`: runs the verifications and writes deterministic reports.

mod cache;
mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use flagdl_core::groups::{Family, GroupSpec, DEFAULT_BUDGET};

use cache::TableCache;
use commands::Config;
use report::{csv_line, Outcome, Report, Status, REPORT_SCHEMA_VERSION};

#[derive(Parser)]
#[command(name = "flagdl", version, about = "Exact checks for GL_n and SL_n over F_q[π]/π^r")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// GL or SL.
    #[arg(long, global = true, default_value = "GL")]
    family: String,
    #[arg(long, global = true, default_value_t = 2)]
    n: usize,
    #[arg(long, global = true, default_value_t = 2)]
    q: u32,
    #[arg(long, global = true, default_value_t = 2)]
    r: usize,
    /// Degree of the residue field over F_q.
    #[arg(long, global = true, default_value_t = 1)]
    a: u32,
    /// Largest number of group elements any step may enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET as u64)]
    budget: u64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Report file; stdout when absent.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Character-table cache directory.
    #[arg(long, global = true, env = "FLAGDL_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Subcommand)]
enum Command {
    /// Block embedding M_n(W) → M_{nr}(F) is a ring monomorphism.
    EmbedVerify,
    /// Builds the four explicit flags and checks their stabilizers.
    Flags,
    /// Adjoint orbits on the Lie algebra over F_q.
    Orbits,
    /// Builds (or loads) and verifies the character table.
    Chartab,
    /// Nilpotent irreducibles by orbits and by induction.
    Nilpotent,
    /// Gelfand–Graev characters and regular coverage.
    Ggmod,
    /// Split representations with regular θ have no nilpotent constituent.
    NonNilpotency,
    /// Orbits of matched SL_n and GL_n constituents differ by a scalar.
    OrbitShift,
    /// Counting series for SL_n and GL_n agree.
    Lefschetz,
    /// Orbit-sum identity on the last congruence kernel.
    Invariant,
    /// Every check above.
    All,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::EmbedVerify => "embed-verify",
            Command::Flags => "flags",
            Command::Orbits => "orbits",
            Command::Chartab => "chartab",
            Command::Nilpotent => "nilpotent",
            Command::Ggmod => "ggmod",
            Command::NonNilpotency => "non-nilpotency",
            Command::OrbitShift => "orbit-shift",
            Command::Lefschetz => "lefschetz",
            Command::Invariant => "invariant",
            Command::All => "all",
        }
    }
}

fn build_spec(cli: &Cli) -> flagdl_core::Result<GroupSpec> {
    let family: Family = cli.family.parse()?;
    GroupSpec::new(family, cli.n, cli.q, cli.a, cli.r)
}

fn render(cli: &Cli, spec: &str, out: &Outcome) -> String {
    match cli.format {
        Format::Json => {
            let report = Report {
                schema_version: REPORT_SCHEMA_VERSION,
                command: cli.command.name(),
                spec: spec.to_string(),
                seed: cli.seed,
                budget: cli.budget.to_string(),
                status: out.status,
                result: &out.data,
            };
            let mut s = serde_json::to_string_pretty(&report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Csv => out.csv.clone().unwrap_or_else(|| {
            let status = serde_json::to_value(out.status).expect("status serializes");
            csv_line(&["command".into(), "status".into()])
                + &csv_line(&[cli.command.name().into(), status.as_str().unwrap_or_default().into()])
        }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (spec_text, outcome) = match build_spec(&cli) {
        Err(e) => ("invalid".to_string(), Outcome::from_error(&e)),
        Ok(spec) => {
            let cfg = Config {
                spec: spec.clone(),
                budget: cli.budget as u128,
                seed: cli.seed,
                cache: cli.cache_dir.clone().map(TableCache::new),
            };
            let out = match cli.command {
                Command::All => commands::all(&cfg),
                c => {
                    let f = commands::SUITE.iter().find(|(n, _)| *n == c.name()).expect("every command is in the suite").1;
                    commands::run_one(&cfg, f)
                }
            };
            (spec.canonical(), out)
        }
    };
    let text = render(&cli, &spec_text, &outcome);
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(3);
            }
        }
        None => print!("{text}"),
    }
    if outcome.status != Status::Pass && outcome.status != Status::Skipped {
        if let Some(err) = outcome.data.get("error") {
            eprintln!("{}: {}", cli.command.name(), err.as_str().unwrap_or_default());
        }
    }
    ExitCode::from(outcome.status.exit_code() as u8)
}
