//! Run configuration files and the record written after each search.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use ramsey_core::bounds::DegreeRange;
use ramsey_core::counting::FitnessReport;
use ramsey_core::dataset::base_graph;
use ramsey_core::search::{Mode, Position, RoundRecord, SearchParams, SearchResult, Termination};
use ramsey_core::Exec;

use crate::graph_io::read_graph;
use crate::Usage;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ModeKind {
    #[default]
    Full,
    Extension,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OutputFormats {
    pub adjacency: bool,
    pub graph6: bool,
}

impl Default for OutputFormats {
    fn default() -> Self {
        OutputFormats {
            adjacency: true,
            graph6: true,
        }
    }
}

/// Everything needed to start (or replay) a search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub p: usize,
    pub q: usize,
    /// Total vertices. In extension mode, may be left out in favor of `added`.
    pub n: Option<usize>,
    pub mode: ModeKind,
    /// Base graph file for extension mode; the bundled 35-vertex base when absent.
    pub base: Option<PathBuf>,
    /// Vertices added to the base in extension mode.
    pub added: Option<usize>,
    pub colony_size: usize,
    pub maxlimit: u32,
    pub alpha: f64,
    pub seed: u64,
    pub budget: u64,
    pub init_density: Option<f64>,
    pub degree_range: Option<DegreeRange>,
    pub count_ceiling: Option<u64>,
    pub exec: Exec,
    pub out_dir: Option<PathBuf>,
    pub formats: OutputFormats,
}

impl Default for RunConfig {
    fn default() -> Self {
        let d = SearchParams::full_graph(3, 3, 5, 0, 100_000);
        RunConfig {
            p: d.p,
            q: d.q,
            n: None,
            mode: ModeKind::Full,
            base: None,
            added: None,
            colony_size: d.colony_size,
            maxlimit: d.maxlimit,
            alpha: d.alpha,
            seed: d.seed,
            budget: d.budget,
            init_density: None,
            degree_range: None,
            count_ceiling: None,
            exec: Exec::default(),
            out_dir: None,
            formats: OutputFormats::default(),
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| Usage(format!("{}: {e}", path.display())).into())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Resolves files and defaults into search parameters.
    pub fn to_params(&self) -> Result<SearchParams> {
        let mode = match self.mode {
            ModeKind::Full => {
                if self.base.is_some() || self.added.is_some() {
                    bail!(Usage(
                        "--base and --added only apply to extension mode".into()
                    ));
                }
                Mode::FullGraph
            }
            ModeKind::Extension => {
                let base = match &self.base {
                    Some(path) => read_graph(path)?,
                    None => base_graph()?,
                };
                Mode::Extension { base }
            }
        };
        let n = match (&mode, self.n, self.added) {
            (Mode::FullGraph, Some(n), _) => n,
            (Mode::FullGraph, None, _) => bail!(Usage("--n is required".into())),
            (Mode::Extension { base }, None, Some(k)) => base.order() + k,
            (Mode::Extension { base }, Some(n), Some(k)) if n != base.order() + k => {
                bail!(Usage(format!(
                    "n = {n} disagrees with base order {} plus {k} added",
                    base.order()
                )))
            }
            (Mode::Extension { .. }, Some(n), _) => n,
            (Mode::Extension { base }, None, None) => base.order() + 5,
        };
        let params = SearchParams {
            p: self.p,
            q: self.q,
            n,
            colony_size: self.colony_size,
            maxlimit: self.maxlimit,
            alpha: self.alpha,
            seed: self.seed,
            budget: self.budget,
            mode,
            init_density: self.init_density,
            degree_range: self.degree_range,
            count_ceiling: self.count_ceiling,
        };
        params.validate().map_err(|e| Usage(e.to_string()))?;
        Ok(params)
    }
}

/// Summary of one search, written as `run.json`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunRecord {
    pub tool_version: String,
    pub seed: u64,
    pub started_at: String,
    pub wall_clock_secs: f64,
    pub config: RunConfig,
    pub params: SearchParams,
    pub termination: Termination,
    pub rounds: u64,
    pub evaluations: u64,
    pub best_fitness: FitnessReport,
    pub best_graph6: String,
    pub best: Position,
    pub history: Vec<RoundRecord>,
}

impl RunRecord {
    pub fn new(
        config: &RunConfig,
        params: &SearchParams,
        result: &SearchResult,
        started_at: String,
        wall_clock_secs: f64,
    ) -> Self {
        RunRecord {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            seed: params.seed,
            started_at,
            wall_clock_secs,
            config: config.clone(),
            params: params.clone(),
            termination: result.termination,
            rounds: result.rounds,
            evaluations: result.evaluations,
            best_fitness: result.best_fitness,
            best_graph6: ramsey_core::format::encode_graph6(&result.best.graph()),
            best: result.best.clone(),
            history: result.history.clone(),
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text)
            .map_err(|e| ramsey_core::Error::Data(format!("{}: {e}", path.display())).into())
    }
}
