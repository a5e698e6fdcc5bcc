//! Artificial bee colony search for graphs with no `p`-clique and no
//! independent `q`-set, minimizing [`FitnessReport::total`].

mod colony;
mod landscape;

pub use colony::{selection_probabilities, stream, Bee, Colony, Role, Search};
pub use landscape::{ExtensionLandscape, FullGraphLandscape, Landscape};

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::bounds::{degree_range, DegreeRange};
use crate::construct::{enumerate_triangle_free, ExtensionState};
use crate::counting::{CountMode, FitnessReport};
use crate::error::{invalid, Error, Result};
use crate::exec::Exec;
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Mode {
    /// Any graph on `n` vertices; moves flip one vertex pair.
    FullGraph,
    /// `base` plus `n - base.order()` new vertices; moves flip one attachment edge.
    Extension { base: Graph },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchParams {
    pub p: usize,
    pub q: usize,
    pub n: usize,
    /// Total bees; half are employed.
    pub colony_size: usize,
    /// Stagnation count at which an employed bee turns scout.
    pub maxlimit: u32,
    pub alpha: f64,
    pub seed: u64,
    /// Maximum number of fitness evaluations, initial colony included.
    pub budget: u64,
    pub mode: Mode,
    /// Edge probability for random full graphs; derived from the degree band
    /// when absent.
    #[serde(default)]
    pub init_density: Option<f64>,
    /// Allowed degrees of added vertices in extension mode; derived from the
    /// known Ramsey numbers when absent.
    #[serde(default)]
    pub degree_range: Option<DegreeRange>,
    /// Counting ceiling used while searching full graphs.
    #[serde(default)]
    pub count_ceiling: Option<u64>,
}

impl SearchParams {
    /// Full-graph search with default colony settings.
    pub fn full_graph(p: usize, q: usize, n: usize, seed: u64, budget: u64) -> Self {
        SearchParams {
            p,
            q,
            n,
            colony_size: 20,
            maxlimit: 50,
            alpha: 1.0,
            seed,
            budget,
            mode: Mode::FullGraph,
            init_density: None,
            degree_range: None,
            count_ceiling: None,
        }
    }

    /// Extension search over `base` with `added` new vertices.
    pub fn extension(
        p: usize,
        q: usize,
        base: Graph,
        added: usize,
        seed: u64,
        budget: u64,
    ) -> Self {
        SearchParams {
            n: base.order() + added,
            mode: Mode::Extension { base },
            ..Self::full_graph(p, q, 0, seed, budget)
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.colony_size < 4 || !self.colony_size.is_multiple_of(2) {
            return invalid(format!(
                "colony size must be even and at least 4, got {}",
                self.colony_size
            ));
        }
        if self.maxlimit < 1 {
            return invalid("maxlimit must be at least 1");
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return invalid(format!("alpha must lie in (0, 1], got {}", self.alpha));
        }
        if self.budget < self.colony_size as u64 {
            return invalid(format!(
                "budget {} cannot cover the initial colony of {}",
                self.budget, self.colony_size
            ));
        }
        if self.p == 0 || self.q == 0 || self.p > self.n || self.q > self.n {
            return invalid(format!(
                "orders ({}, {}) outside 1..={}",
                self.p, self.q, self.n
            ));
        }
        if let Mode::Extension { base } = &self.mode {
            if self.n <= base.order() {
                return invalid(format!(
                    "n = {} must exceed the base order {}",
                    self.n,
                    base.order()
                ));
            }
        }
        Ok(())
    }

    /// Edge density for random full graphs: the middle of the degree band
    /// over `n - 1`, or one half when no band is known.
    pub fn effective_density(&self) -> f64 {
        if let Some(d) = self.init_density {
            return d;
        }
        match degree_range(self.p, self.q, self.n) {
            Ok(r) if r.is_feasible() && self.n > 1 => {
                let top = (self.n - 1) as f64;
                let mid = (r.lo.max(0) as f64 + (r.hi as f64).min(top)) / 2.0;
                (mid / top).clamp(0.0, 1.0)
            }
            _ => 0.5,
        }
    }

    pub fn effective_degree_range(&self) -> Result<DegreeRange> {
        match self.degree_range {
            Some(r) => Ok(r),
            None => degree_range(self.p, self.q, self.n),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Termination {
    WitnessFound,
    BudgetExhausted,
}

/// One row of the run log.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundRecord {
    pub round: u64,
    pub best_total: u64,
    pub best_cliques: u64,
    pub best_indep: u64,
    pub evaluations: u64,
    pub employed: usize,
    pub onlookers: usize,
    pub scouts: usize,
    pub followed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Position {
    Graph { graph: Graph },
    Extension { extension: ExtensionState },
}

impl Position {
    pub fn graph(&self) -> Graph {
        match self {
            Position::Graph { graph } => graph.clone(),
            Position::Extension { extension } => extension.to_graph(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub best: Position,
    /// Always exact, even if the search itself counted with a ceiling.
    pub best_fitness: FitnessReport,
    pub rounds: u64,
    pub evaluations: u64,
    pub termination: Termination,
    pub history: Vec<RoundRecord>,
}

pub fn run(params: &SearchParams) -> Result<SearchResult> {
    run_with(params, Exec::default())
}

pub fn run_with(params: &SearchParams, exec: Exec) -> Result<SearchResult> {
    params.validate()?;
    match &params.mode {
        Mode::FullGraph => {
            let mode = params
                .count_ceiling
                .map_or(CountMode::Exact, CountMode::Capped);
            let land = FullGraphLandscape::new(
                params.n,
                params.p,
                params.q,
                params.effective_density(),
                mode,
            )?;
            finish(params, &land, exec, |g| Position::Graph { graph: g })
        }
        Mode::Extension { base } => {
            let added = params.n - base.order();
            let range = params.effective_degree_range()?;
            let inners = enumerate_triangle_free(added)?;
            let land = ExtensionLandscape::new(base.clone(), inners, range, params.p, params.q)?;
            finish(params, &land, exec, |e| Position::Extension {
                extension: e,
            })
        }
    }
}

fn finish<L: Landscape>(
    params: &SearchParams,
    land: &L,
    exec: Exec,
    wrap: impl Fn(L::Position) -> Position,
) -> Result<SearchResult> {
    let search = Search::init(params, land, exec)?;
    let (colony, history) = search.run_to_end()?;
    let (best, _) = colony
        .best
        .ok_or_else(|| Error::Data("search produced no position".into()))?;
    let best_fitness = land.evaluate_exact(&best);
    Ok(SearchResult {
        best: wrap(best),
        best_fitness,
        rounds: colony.round,
        evaluations: colony.evaluations,
        termination: colony.termination.unwrap_or(Termination::BudgetExhausted),
        history,
    })
}

/// Writes the run log as CSV with a header row.
pub fn write_history_csv<W: Write>(history: &[RoundRecord], w: W) -> std::io::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for r in history {
        out.serialize(r).map_err(std::io::Error::other)?;
    }
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        let ok = SearchParams::full_graph(3, 3, 5, 1, 1000);
        ok.validate().unwrap();
        assert!(SearchParams {
            colony_size: 5,
            ..ok.clone()
        }
        .validate()
        .is_err());
        assert!(SearchParams {
            colony_size: 2,
            ..ok.clone()
        }
        .validate()
        .is_err());
        assert!(SearchParams {
            maxlimit: 0,
            ..ok.clone()
        }
        .validate()
        .is_err());
        assert!(SearchParams {
            alpha: 0.0,
            ..ok.clone()
        }
        .validate()
        .is_err());
        assert!(SearchParams {
            alpha: 1.5,
            ..ok.clone()
        }
        .validate()
        .is_err());
        assert!(SearchParams {
            budget: 10,
            ..ok.clone()
        }
        .validate()
        .is_err());
        assert!(SearchParams { q: 6, ..ok }.validate().is_err());
    }

    #[test]
    fn density_defaults() {
        assert!(
            (SearchParams::full_graph(3, 3, 5, 0, 100).effective_density() - 0.5).abs() < 1e-12
        );
        // Band [2, 3] on 8 vertices.
        assert!(
            (SearchParams::full_graph(3, 4, 8, 0, 100).effective_density() - 2.5 / 7.0).abs()
                < 1e-12
        );
        // No band known for (6, 6).
        assert!(
            (SearchParams::full_graph(6, 6, 30, 0, 100).effective_density() - 0.5).abs() < 1e-12
        );
    }

    #[test]
    fn history_csv_has_header() {
        let r = RoundRecord {
            round: 1,
            best_total: 2,
            best_cliques: 1,
            best_indep: 1,
            evaluations: 30,
            employed: 2,
            onlookers: 2,
            scouts: 0,
            followed: 1,
        };
        let mut buf = Vec::new();
        write_history_csv(&[r], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "round,best_total,best_cliques,best_indep,evaluations,employed,onlookers,scouts,followed\n1,2,1,1,30,2,2,0,1\n");
    }
}
