//! `qacm`: command-line front end for computations on the quadric threefold.

mod commands;
mod session;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use commands::{Context, Report};
use session::{Session, SessionError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Session { path: String, source: SessionError },
    #[error(transparent)]
    Core(#[from] qacm::Error),
}

impl CliError {
    /// 2 for internal invariant violations, 1 for everything the user can fix.
    fn exit_code(&self) -> u8 {
        let core = match self {
            CliError::Core(e) => Some(e),
            CliError::Session { source, .. } => source.core(),
            _ => None,
        };
        match core {
            Some(qacm::Error::Invariant(_)) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Debug, Clone, Copy)]
struct Window {
    lo: i32,
    hi: i32,
}

fn parse_window(s: &str) -> Result<Window, String> {
    let (a, b) = s.split_once("..").ok_or("expected a..b")?;
    let lo: i32 = a.trim().parse().map_err(|_| format!("invalid bound `{a}`"))?;
    let hi: i32 = b.trim().parse().map_err(|_| format!("invalid bound `{b}`"))?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok(Window { lo, hi })
}

#[derive(Debug, Parser)]
#[command(name = "qacm", version, about = "Graded modules, resolutions and liaison on the quadric threefold")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Session file with the ring and named ideals/modules (default: the bundled canonical session).
    #[arg(long, global = true)]
    session: Option<PathBuf>,

    /// Degree window `a..b`, inclusive.
    #[arg(long, global = true, default_value = "-2..10", value_parser = parse_window, allow_hyphen_values = true)]
    range: Window,

    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    format: Format,

    /// Seed for randomized self-checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Name of the ideal or module to work on.
    #[arg(long, global = true)]
    about: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Reduced Gröbner basis over S of an ideal (with q) or of a module presentation.
    Gb,
    /// E-type resolution 0 → E → L → I → 0 of a curve ideal.
    Etype,
    /// Hilbert function over the window and, when it stabilizes, the Hilbert polynomial.
    Hilbert,
    /// h0 over the window and vanishing of h1, h2 from the depth.
    CohomologyTable,
    /// Whether a curve on Q is arithmetically Cohen-Macaulay.
    AcmCheck,
    /// Whether a module is maximal Cohen-Macaulay over R.
    McmCheck,
    /// Castelnuovo-Mumford regularity.
    Regularity,
    /// The rank-2 module E0 built from a line on Q.
    ConstructE0 {
        /// Ideal of the line (default "x0, x2, x4").
        #[arg(long)]
        line: Option<String>,
    },
    /// Matrix factorization (A, B) of q with A·B = B·A = q·Id.
    Mf,
    /// The first two syzygies against twists of the module.
    Periodicity,
    /// Splitting of an MCM module into twists of E0 and R.
    Decompose,
    /// Link a curve by a complete intersection (f, g) on Q.
    Link {
        /// The two forms, comma separated.
        #[arg(long)]
        ci: String,
    },
    /// Even liaison class fingerprint of an ACM curve.
    Fingerprint,
    /// Whether two ACM curves lie in the same even liaison class.
    SameClass {
        /// Name of the other curve ideal.
        #[arg(long)]
        with: String,
    },
    /// Degree and arithmetic genus of a curve.
    DegreeGenus,
}

fn load_session(path: Option<&PathBuf>) -> Result<Session, CliError> {
    match path {
        None => Ok(Session::canonical()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|source| CliError::Io { path: p.clone(), source })?;
            Session::parse(&text).map_err(|source| CliError::Session { path: p.display().to_string(), source })
        }
    }
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let session = load_session(cli.session.as_ref())?;
    let ctx = Context {
        session: &session,
        about: cli.about.as_deref(),
        lo: cli.range.lo,
        hi: cli.range.hi,
        seed: cli.seed,
    };
    match &cli.command {
        Command::Gb => ctx.gb(),
        Command::Etype => ctx.etype(),
        Command::Hilbert => ctx.hilbert(),
        Command::CohomologyTable => ctx.cohomology_table(),
        Command::AcmCheck => ctx.acm_check(),
        Command::McmCheck => ctx.mcm_check(),
        Command::Regularity => ctx.regularity(),
        Command::ConstructE0 { line } => ctx.construct_e0(line.as_deref()),
        Command::Mf => ctx.mf(),
        Command::Periodicity => ctx.periodicity(),
        Command::Decompose => ctx.decompose(),
        Command::Link { ci } => ctx.link(ci),
        Command::Fingerprint => ctx.fingerprint(),
        Command::SameClass { with } => ctx.same_class(with),
        Command::DegreeGenus => ctx.degree_genus(),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Gb => "gb",
        Command::Etype => "etype",
        Command::Hilbert => "hilbert",
        Command::CohomologyTable => "cohomology-table",
        Command::AcmCheck => "acm-check",
        Command::McmCheck => "mcm-check",
        Command::Regularity => "regularity",
        Command::ConstructE0 { .. } => "construct-e0",
        Command::Mf => "mf",
        Command::Periodicity => "periodicity",
        Command::Decompose => "decompose",
        Command::Link { .. } => "link",
        Command::Fingerprint => "fingerprint",
        Command::SameClass { .. } => "same-class",
        Command::DegreeGenus => "degree-genus",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Tsv => print!("{}", report.tsv),
                Format::Json => {
                    let doc = serde_json::json!({
                        "command": command_name(&cli.command),
                        "about": cli.about,
                        "result": report.json,
                    });
                    println!("{}", serde_json::to_string_pretty(&doc).expect("JSON output serializes"));
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            let code = e.exit_code();
            eprintln!("error: {e}");
            ExitCode::from(code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Core(qacm::Error::Invariant("x".into())).exit_code(), 2);
        assert_eq!(CliError::Core(qacm::Error::ZeroModule).exit_code(), 1);
        assert_eq!(CliError::Usage("x".into()).exit_code(), 1);
    }

    #[test]
    fn windows() {
        let w = parse_window("-2..10").unwrap();
        assert_eq!((w.lo, w.hi), (-2, 10));
        assert!(parse_window("3..1").is_err());
        assert!(parse_window("3").is_err());
    }
}
