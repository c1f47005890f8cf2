mod commands;
mod poly;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use modp_core::codes::DEFAULT_BUDGET;
use modp_core::linearsets::DEFAULT_SEARCH_CAP;

use report::Report;

#[derive(Parser)]
#[command(name = "modp", version, about = "Constructions, checks and searches for (0 mod p)-multisets in finite geometries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Pg,
    Ag,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SpectrumArg {
    Support,
    Weighted,
}

#[derive(Args, Clone, Debug)]
pub struct Common {
    /// Characteristic.
    #[arg(long)]
    pub p: u32,
    /// Extension degree, q = p^h.
    #[arg(long, default_value_t = 1)]
    pub h: u32,
    /// Dimension of the space.
    #[arg(long)]
    pub m: usize,
    #[arg(long, value_enum, default_value_t = KindArg::Pg)]
    pub kind: KindArg,
    /// Monic modulus of GF(q) over F_p, constant term first, e.g. `2,2,1` or `221`.
    #[arg(long)]
    pub modulus: Option<String>,
    /// Size of the worker pool (defaults to the number of cores).
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the JSON report here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print the JSON report instead of the table.
    #[arg(long)]
    pub json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Build the symmetric-difference multiset of two linear sets and validate it.
    Construct {
        #[command(flatten)]
        common: Common,
        /// Linearized polynomial, e.g. `x^3`.
        #[arg(long)]
        f: String,
        /// Multiplicity given to the points of L_U.
        #[arg(long, default_value_t = 1)]
        t: u32,
        /// Export the projective multiset as `point,multiplicity` CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Export its restriction to the affine part of a disjoint hyperplane.
        #[arg(long)]
        affine_csv: Option<PathBuf>,
    },
    /// Validate a multiset file: line residues, bounds and hyperplane spectrum.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Exhaustive minimum weight and minimum size over the dual code.
    Minweight {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Largest number of codewords to enumerate.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Polynomial checks on a multiset through the field model of AG(m,q).
    Oracle {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        input: PathBuf,
    },
    /// Geometry enumeration and export.
    Geom {
        #[command(subcommand)]
        command: GeomCommand,
    },
    /// p-rank of the points-vs-k-spaces incidence matrix.
    Rank {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Hyperplane intersection spectrum of a multiset.
    Spectrum {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = SpectrumArg::Support)]
        mode: SpectrumArg,
    },
    /// Largest F_p-linear set of a given rank.
    SearchMaxlinearset {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        rank: usize,
        /// Sample this many random subspaces instead of enumerating all of them.
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_SEARCH_CAP)]
        cap: u128,
    },
}

#[derive(Subcommand)]
enum GeomCommand {
    /// Count points and subspaces; optionally export them as CSV.
    Enum {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1)]
        dim: usize,
        /// Points CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Blocks CSV.
        #[arg(long)]
        blocks_csv: Option<PathBuf>,
    },
}

fn common(cmd: &Command) -> &Common {
    match cmd {
        Command::Construct { common, .. }
        | Command::Verify { common, .. }
        | Command::Minweight { common, .. }
        | Command::Oracle { common, .. }
        | Command::Rank { common, .. }
        | Command::Spectrum { common, .. }
        | Command::SearchMaxlinearset { common, .. }
        | Command::Geom { command: GeomCommand::Enum { common, .. } } => common,
    }
}

fn run(cmd: &Command) -> anyhow::Result<Report> {
    match cmd {
        Command::Construct { common, f, t, csv, affine_csv } => {
            commands::construct(common, f, *t, csv.as_deref(), affine_csv.as_deref())
        }
        Command::Verify { common, input, k } => commands::verify(common, input, *k),
        Command::Minweight { common, k, budget } => commands::minweight(common, *k, *budget),
        Command::Oracle { common, input } => commands::oracle(common, input),
        Command::Geom { command: GeomCommand::Enum { common, dim, csv, blocks_csv } } => {
            commands::geom_enum(common, *dim, csv.as_deref(), blocks_csv.as_deref())
        }
        Command::Rank { common, k } => commands::rank(common, *k),
        Command::Spectrum { common, input, mode } => commands::spectrum(common, input, *mode),
        Command::SearchMaxlinearset { common, rank, samples, cap } => {
            commands::search_maxlinearset(common, *rank, *samples, *cap)
        }
    }
}

fn emit(c: &Common, report: &Report) -> anyhow::Result<()> {
    let json = serde_json::to_string_pretty(report)?;
    if let Some(path) = &c.out {
        std::fs::write(path, format!("{json}\n"))?;
    }
    if c.json {
        println!("{json}");
    } else {
        print!("{}", report.table());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let c = common(&cli.command);
    if let Some(n) = c.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let start = Instant::now();
    let mut report = match run(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    report.timing_ms = start.elapsed().as_millis();
    if let Err(e) = emit(c, &report) {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    if let Some(reason) = &report.refused {
        eprintln!("refused: {reason}");
        ExitCode::from(2)
    } else if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
