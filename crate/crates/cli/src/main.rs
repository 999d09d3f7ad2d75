mod commands;
mod config;
mod error;
mod presets;

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::config::{AnalysisConfig, Format};
use crate::error::CliError;

/// Palindromic richness of infinite words under a finite symmetry group.
#[derive(Debug, Parser)]
#[command(name = "grich", version)]
struct Cli {
    /// Analysis config (TOML). Required by every command except `repro`.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Order of the graph for `graph`.
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Prefix length L (overrides the config).
    #[arg(long, global = true)]
    length: Option<usize>,
    /// Largest factor length analyzed (overrides the config).
    #[arg(long, global = true)]
    nmax: Option<usize>,
    /// Threshold N of the tree-like-structure property (overrides the config).
    #[arg(long, global = true)]
    threshold: Option<usize>,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the prefix of length L.
    Word,
    /// Describe the group: elements, involutive antimorphisms, distinguishing n.
    Group,
    /// C, ΔC, Δ²C and the palindromic complexities as CSV.
    Complexity,
    /// Per-prefix palindrome counts, G-lps and G-defect as CSV.
    Defect,
    /// Complete G-return words of a factor within the prefix.
    Returns { word: String },
    /// G-lps of the prefix of the given length.
    Lps { prefix_len: usize },
    /// Rauzy graph or graphs of symmetries of order --n as DOT.
    Graph { kind: GraphKind },
    /// Check every characterization of G-richness up to n_max.
    Verify,
    /// Reproduce a reference table, graph or example.
    Repro { target: presets::Target },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphKind {
    Rauzy,
    SymDirected,
    SymUndirected,
}

/// Rendered output plus an optional failure that still sets the exit code.
pub struct Output {
    pub text: String,
    pub failure: Option<CliError>,
}

impl From<String> for Output {
    fn from(text: String) -> Self {
        Output { text, failure: None }
    }
}

fn load(cli: &Cli) -> Result<AnalysisConfig, CliError> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| CliError::Config("this command needs --config <path>".into()))?;
    let mut cfg = AnalysisConfig::load(path)?;
    cfg.override_with(cli.length, cli.nmax, cli.threshold)?;
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    if let Command::Repro { target } = &cli.command {
        return presets::run(*target, cli);
    }
    let cfg = load(cli)?;
    if matches!(cli.command, Command::Group | Command::Complexity | Command::Verify) {
        cfg.check_lengths()?;
    }
    let format = |allowed: &[Format]| commands::pick_format(cli.format.or(cfg.format), allowed);
    match &cli.command {
        Command::Word => commands::word(&cfg, format(&[Format::Report, Format::Json])?),
        Command::Group => commands::group(&cfg, format(&[Format::Report, Format::Json])?),
        Command::Complexity => commands::complexity(&cfg, format(&[Format::Csv, Format::Json])?),
        Command::Defect => commands::defect(&cfg, format(&[Format::Csv, Format::Json])?),
        Command::Returns { word } => commands::returns(&cfg, word, format(&[Format::Report, Format::Json])?),
        Command::Lps { prefix_len } => commands::lps(&cfg, *prefix_len, format(&[Format::Report, Format::Json])?),
        Command::Graph { kind } => {
            let n = cli.n.ok_or_else(|| CliError::Config("graph needs --n <order>".into()))?;
            commands::graph(&cfg, *kind, n, format(&[Format::Dot, Format::Json])?)
        }
        Command::Verify => commands::verify(&cfg, format(&[Format::Report, Format::Json])?),
        Command::Repro { .. } => unreachable!("handled above"),
    }
}

fn write_out(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|source| CliError::Io { path: path.display().to_string(), source }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|source| CliError::Io { path: "stdout".into(), source })
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = run(&cli).and_then(|out| {
        write_out(&cli, &out.text)?;
        out.failure.map_or(Ok(()), Err)
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
