//! `gallai` command-line tool.
//!
//! Exit codes: 0 success / SAT / true, 1 UNSAT / false, 2 usage or input
//! error, 3 budget exhausted.

mod commands;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use manifest::RunManifest;

#[derive(Parser, Debug)]
#[command(
    name = "gallai",
    version,
    about = "Gallai colorings of complete graphs: constructions, checks and exhaustive search"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output style on stdout.
    #[arg(long, value_enum, global = true, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Write the run manifest here instead of stderr.
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,
    /// Seed for randomized commands.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Draw a seed from the environment instead of requiring --seed.
    #[arg(long, global = true, conflicts_with = "seed")]
    pub entropy: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Structured,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileFormat {
    Text,
    Json,
    Dot,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstructionName {
    Staircase,
    StaircaseTail,
    StaircaseFill,
    P5Tower,
    PowerTower,
    SubstitutionPower,
    K7FourColors,
    K8TwoBlocks,
    K9FiveColors,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a named coloring and write it out.
    Construct {
        #[arg(value_enum)]
        name: ConstructionName,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        c: Option<usize>,
        #[arg(long)]
        rounds: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FileFormat::Text)]
        out_format: FileFormat,
        /// Print the verified claims.
        #[arg(long)]
        verify: bool,
    },
    /// Check that a coloring is Gallai and, with --p/--q, that every K_p has at least q colors.
    Verify {
        file: PathBuf,
        #[arg(long, requires = "q")]
        p: Option<usize>,
        #[arg(long, requires = "p")]
        q: Option<usize>,
    },
    /// Find a Gallai partition.
    Partition {
        file: PathBuf,
        /// Use the fewest possible blocks.
        #[arg(long)]
        min_parts: bool,
    },
    /// Star colors of an exact Gallai coloring.
    Stars {
        file: PathBuf,
        /// Run the peeling procedure.
        #[arg(long)]
        peel: bool,
        /// Drop unused palette colors first.
        #[arg(long)]
        shrink: bool,
    },
    /// Decide whether a good coloring of K_n exists.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, conflicts_with = "jobs")]
        deterministic: bool,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        budget_nodes: Option<u64>,
        #[arg(long)]
        budget_seconds: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute g^k_q(p) by search.
    ComputeG {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        cap: usize,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        budget_nodes: Option<u64>,
        #[arg(long)]
        budget_seconds: Option<u64>,
        /// Witness on value-1 vertices.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Results file to update.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Formula bounds for g^k_q(p), or for g(n,p,q) with --n.
    Bounds {
        #[arg(long, conflicts_with = "n")]
        k: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        p: usize,
    },
    /// Local Lemma arithmetic and resampling.
    Lll {
        #[command(subcommand)]
        action: LllAction,
    },
    /// List colorings up to isomorphism.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        gallai: bool,
        /// Keep only colorings using all k colors.
        #[arg(long)]
        exact: bool,
        /// Every K_p must get at least q+1 colors; give as P,Q.
        #[arg(long, value_parser = parse_pair)]
        good: Option<(usize, usize)>,
        #[arg(long)]
        budget_nodes: Option<u64>,
        /// Only print the count.
        #[arg(long)]
        count: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum LllAction {
    /// Evaluate the three conditions at order n.
    Check {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        c1: f64,
        #[arg(long)]
        c2: f64,
        #[arg(long)]
        c3: f64,
        #[arg(long, default_value_t = gallai::probabilistic::DEFAULT_EPSILON)]
        epsilon: f64,
        #[arg(long)]
        n: f64,
    },
    /// Order n given by the closed form.
    Formula {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        c: f64,
    },
    /// Resample bad events until none remain.
    Resample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        r: f64,
        #[arg(long, default_value_t = 10_000)]
        max_rounds: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected P,Q, got {s:?}"))?;
    let a = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    Ok((a, b))
}

fn main() -> ExitCode {
    let started = Instant::now();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    let name = commands::command_name(&cli.command);
    let mut manifest = RunManifest::new(&name, argv);
    let mut run = commands::Run::new(cli.global.clone(), &mut manifest);
    let code = match commands::dispatch(&mut run, &cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            commands::EXIT_USAGE
        }
    };
    let stdout = std::mem::take(&mut run.stdout);
    print!("{stdout}");
    manifest.finish(&stdout, code, started.elapsed());
    let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    match &cli.global.manifest {
        Some(path) => {
            if let Err(e) = std::fs::write(path, json + "\n") {
                eprintln!("error: writing manifest {}: {e}", path.display());
            }
        }
        None => eprintln!("{json}"),
    }
    ExitCode::from(code)
}
