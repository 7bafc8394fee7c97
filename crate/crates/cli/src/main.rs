use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use palcore::io::GeneratorPair;
use palcore::Verdict;

mod commands;

#[derive(Parser)]
#[command(
    author,
    version,
    about = "Palindromic words, core geodesics and discreteness probes for ⟨A, B⟩ ⊂ PSL(2,C)"
)]
struct Args {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Options shared by all subcommands.
#[derive(Debug, clap::Args)]
pub struct Config {
    /// Relative determinant tolerance
    #[arg(long, global = true, default_value_t = 1e-12)]
    pub tol_det: f64,
    /// Trace classification tolerance
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol_class: f64,
    /// Geometric (endpoint) tolerance
    #[arg(long, global = true, default_value_t = 1e-6)]
    pub tol_geo: f64,
    /// Crossings with |s| above this count as escaping
    #[arg(long, global = true, default_value_t = 25.0)]
    pub escape: f64,
    /// Growth below this between depth-2 and depth counts as a plateau
    #[arg(long, global = true, default_value_t = 0.01)]
    pub plateau: f64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output format; JSON unless the command only makes sense as CSV
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

impl Config {
    pub fn tolerances(&self) -> Result<palcore::Tolerances> {
        Ok(palcore::Tolerances::new(self.tol_det, self.tol_class, self.tol_geo)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify a matrix given as JSON or as a path to a JSON file
    Classify { matrix: String },
    /// Primitive word for a rational p/q
    Primitive { rational: String },
    /// Enumerate the Farey tree with its words
    Enumerate {
        #[arg(long, default_value_t = 4)]
        depth: u32,
    },
    /// Π-image of every rational to the given depth
    PiMap {
        #[arg(long)]
        gens: PathBuf,
        #[arg(long, default_value_t = 6)]
        depth: u32,
    },
    /// Discreteness probe; exit code 0 bounded or parabolic, 2 unbounded, 3 inconclusive
    Probe {
        #[arg(long)]
        gens: PathBuf,
        #[arg(long, default_value_t = 8)]
        depth: u32,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Largest power n in the CⁿDC⁻ⁿ witness search
        #[arg(long, default_value_t = 12)]
        conj_power: u32,
        /// Longest C and D in the witness search
        #[arg(long, default_value_t = 3)]
        word_len: usize,
    },
    /// The right-angled hexagon of the generator axes
    Hexagon {
        #[arg(long)]
        gens: PathBuf,
    },
}

fn read_gens(path: &Path) -> Result<GeneratorPair> {
    GeneratorPair::read(path).with_context(|| format!("reading generators from {}", path.display()))
}

fn emit(config: &Config, text: &str) -> Result<()> {
    match &config.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(stdout.flush()?)
        }
    }
}

pub fn exit_code(verdict: Verdict) -> u8 {
    match verdict {
        Verdict::Bounded | Verdict::ParabolicEnds => 0,
        Verdict::Unbounded => 2,
        Verdict::Inconclusive => 3,
    }
}

fn run(args: Args) -> Result<u8> {
    let config = &args.config;
    let tol = config.tolerances()?;
    let (text, code) = match args.command {
        Command::Classify { matrix } => (commands::classify(&matrix, &tol)?, 0),
        Command::Primitive { rational } => (commands::primitive(&rational)?, 0),
        Command::Enumerate { depth } => (commands::enumerate(depth, config.format.unwrap_or(Format::Csv))?, 0),
        Command::PiMap { gens, depth } => {
            let gens = read_gens(&gens)?;
            (
                commands::pi_map(&gens, depth, tol, config.format.unwrap_or(Format::Csv))?,
                0,
            )
        }
        Command::Probe {
            gens,
            depth,
            samples,
            conj_power,
            word_len,
        } => {
            let gens = read_gens(&gens)?;
            let settings = palcore::ProbeSettings {
                depth,
                random_samples: samples,
                seed: config.seed,
                s_escape: config.escape,
                delta_plateau: config.plateau,
                witness_conj_power: conj_power,
                witness_word_len: word_len,
            };
            let report = commands::probe(&gens, tol, &settings)?;
            (serde_json::to_string_pretty(&report)? + "\n", exit_code(report.verdict))
        }
        Command::Hexagon { gens } => (commands::hexagon(&read_gens(&gens)?, tol)?, 0),
    };
    emit(config, &text)?;
    Ok(code)
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
