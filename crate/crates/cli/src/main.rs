//! `ramsey`: search for and certify Ramsey graphs.
//!
//! Exit codes: 0 success or witness, 1 `verify` found a non-witness,
//! 2 usage, 3 data or parse error, 4 search budget exhausted,
//! 5 a computed value contradicts a recorded claim.

/// `println!` that exits quietly when stdout is a closed pipe.
macro_rules! say {
    ($($t:tt)*) => { $crate::emit(format_args!($($t)*)) };
}

mod commands;
mod config;
mod graph_io;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::ModeKind;
use ramsey_core::bounds::DegreeRange;

/// Usage error raised after argument parsing (bad config values and the like).
#[derive(Debug)]
pub struct Usage(pub String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

pub fn emit(args: std::fmt::Arguments) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_fmt(args).and_then(|_| out.write_all(b"\n")) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(exit::OK.into());
        }
        eprintln!("error: writing output: {e}");
        std::process::exit(exit::DATA.into());
    }
}

pub mod exit {
    pub const OK: u8 = 0;
    pub const NOT_WITNESS: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const DATA: u8 = 3;
    pub const BUDGET: u8 = 4;
    pub const CONTRADICTION: u8 = 5;
}

#[derive(Parser)]
#[command(
    name = "ramsey",
    version,
    about = "Search for and certify Ramsey graphs"
)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the bee colony search.
    Search(SearchArgs),
    /// Re-run a recorded search and compare its history.
    Replay {
        /// `run.json` written by `search`.
        record: PathBuf,
    },
    /// Certify graph files: count p-cliques and independent q-sets.
    Verify {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        /// Print one JSON certificate per line.
        #[arg(long)]
        json: bool,
    },
    /// Check the bundled dataset graphs and all their single-vertex deletions.
    VerifyAppendix {
        /// Directory with graph_a.adj .. graph_d.adj (default: bundled copy).
        #[arg(long)]
        dataset: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Count cliques and independent sets of a graph file.
    Count {
        #[arg(long)]
        file: PathBuf,
        /// Independent-set sizes, e.g. `5..8` or `9`.
        #[arg(long, value_parser = parse_range)]
        indep: Option<(usize, usize)>,
        /// Clique sizes, e.g. `3` or `2..4`.
        #[arg(long, value_parser = parse_range)]
        cliques: Option<(usize, usize)>,
        /// With --q, print the fitness report.
        #[arg(long, requires = "q")]
        p: Option<usize>,
        #[arg(long, requires = "p")]
        q: Option<usize>,
    },
    /// Degree band of an r(p, q, n) graph.
    Bounds { p: usize, q: usize, n: usize },
    /// List triangle-free graphs on k vertices up to isomorphism, as graph6.
    EnumerateTf {
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the 35-vertex base graph and check its properties.
    ExtractBase {
        #[arg(long)]
        dataset: Option<PathBuf>,
        /// Output file (`.adj`); a `.g6` copy is written next to it.
        #[arg(long, default_value = "base.adj")]
        out: PathBuf,
    },
}

#[derive(Args, Debug, Default)]
struct SearchArgs {
    /// JSON run configuration; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_enum)]
    mode: Option<ModeKind>,
    /// Base graph for extension mode (default: bundled 35-vertex base).
    #[arg(long)]
    base: Option<PathBuf>,
    /// Vertices added to the base in extension mode.
    #[arg(long)]
    added: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Maximum fitness evaluations.
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    colony_size: Option<usize>,
    #[arg(long)]
    maxlimit: Option<u32>,
    #[arg(long)]
    alpha: Option<f64>,
    /// Edge probability of random starting graphs.
    #[arg(long)]
    density: Option<f64>,
    /// Allowed degrees of added vertices, e.g. `4..9`.
    #[arg(long, value_parser = parse_range)]
    degrees: Option<(usize, usize)>,
    /// Stop counting forbidden subgraphs at this many during the search.
    #[arg(long)]
    count_ceiling: Option<u64>,
    /// Run on one thread.
    #[arg(long)]
    sequential: bool,
    /// Parent directory for run directories.
    #[arg(long, env = "RAMSEY_OUT_DIR")]
    out_dir: Option<PathBuf>,
    /// Skip adjacency-list output.
    #[arg(long)]
    no_adj: bool,
    /// Skip graph6 output.
    #[arg(long)]
    no_g6: bool,
    /// Write the effective configuration to this file and exit.
    #[arg(long)]
    dump_config: Option<PathBuf>,
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once("..").unwrap_or((s, s));
    let a: usize = a
        .trim()
        .parse()
        .map_err(|_| format!("bad range start in {s:?}"))?;
    let b: usize = b
        .trim()
        .trim_start_matches('=')
        .parse()
        .map_err(|_| format!("bad range end in {s:?}"))?;
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok((a, b))
}

impl SearchArgs {
    fn to_config(&self) -> anyhow::Result<config::RunConfig> {
        let mut c = match &self.config {
            Some(path) => config::RunConfig::load(path)?,
            None => config::RunConfig::default(),
        };
        if self.config.is_none() && (self.p.is_none() || self.q.is_none()) {
            anyhow::bail!(Usage("--p and --q are required without --config".into()));
        }
        macro_rules! take {
            ($($field:ident => $target:ident),*) => { $(if let Some(v) = self.$field { c.$target = v; })* };
        }
        take!(p => p, q => q, seed => seed, budget => budget, colony_size => colony_size, maxlimit => maxlimit, alpha => alpha, mode => mode);
        if self.n.is_some() {
            c.n = self.n;
        }
        if self.base.is_some() {
            c.base = self.base.clone();
        }
        if self.added.is_some() {
            c.added = self.added;
        }
        if self.density.is_some() {
            c.init_density = self.density;
        }
        if let Some((lo, hi)) = self.degrees {
            c.degree_range = Some(DegreeRange::new(lo as i64, hi as i64));
        }
        if self.count_ceiling.is_some() {
            c.count_ceiling = self.count_ceiling;
        }
        if self.sequential {
            c.exec = ramsey_core::Exec::Sequential;
        }
        if self.out_dir.is_some() {
            c.out_dir = self.out_dir.clone();
        }
        if self.no_adj {
            c.formats.adjacency = false;
        }
        if self.no_g6 {
            c.formats.graph6 = false;
        }
        Ok(c)
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<Usage>().is_some() {
        return exit::USAGE;
    }
    match err.downcast_ref::<ramsey_core::Error>() {
        Some(ramsey_core::Error::InvalidArgument(_) | ramsey_core::Error::Unsupported(_)) => {
            exit::USAGE
        }
        _ => exit::DATA,
    }
}

fn configure_threads(threads: Option<usize>) -> anyhow::Result<()> {
    let Some(n) = threads else { return Ok(()) };
    if n == 0 {
        anyhow::bail!(Usage("--threads must be at least 1".into()));
    }
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()?;
    Ok(())
}

fn dispatch(cli: Cli) -> anyhow::Result<u8> {
    configure_threads(cli.threads)?;
    match cli.command {
        Command::Search(args) => {
            let config = args.to_config()?;
            if let Some(path) = &args.dump_config {
                std::fs::write(path, config.to_json() + "\n")?;
                return Ok(exit::OK);
            }
            commands::search(&config)
        }
        Command::Replay { record } => commands::replay(&record),
        Command::Verify { files, p, q, json } => commands::verify(&files, p, q, json),
        Command::VerifyAppendix { dataset, json } => {
            commands::verify_appendix(dataset.as_deref(), json)
        }
        Command::Count {
            file,
            indep,
            cliques,
            p,
            q,
        } => commands::count(&file, indep, cliques, p.zip(q)),
        Command::Bounds { p, q, n } => commands::bounds(p, q, n),
        Command::EnumerateTf { k, out } => commands::enumerate_tf(k, out.as_deref()),
        Command::ExtractBase { dataset, out } => commands::extract_base(dataset.as_deref(), &out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
