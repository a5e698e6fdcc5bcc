//! The spaces the colony searches: whole graphs under single-edge flips, or
//! extensions of a fixed base under single attachment-edge flips.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::bounds::DegreeRange;
use crate::construct::{mutate_extension, random_extension, ExtensionState, InnerGraph};
use crate::counting::{
    build_indep_cache, extension_fitness, fitness_with, CountMode, FitnessReport, IndepSetCache,
    DEFAULT_MAX_CACHED_SETS,
};
use crate::error::{invalid, Result};
use crate::exec::Exec;
use crate::graph::Graph;

/// A search space with a random generator, a one-step neighborhood, and the
/// fitness objective.
pub trait Landscape: Sync {
    type Position: Clone + Send + Sync;

    /// A fresh random position. `draw` numbers the draws of a run in order.
    fn random(&self, draw: u64, rng: &mut ChaCha8Rng) -> Result<Self::Position>;

    /// A uniformly random adjacent position, or `None` if there is none.
    fn neighbor(&self, pos: &Self::Position, rng: &mut ChaCha8Rng) -> Option<Self::Position>;

    /// Fitness as used during the search (possibly capped).
    fn evaluate(&self, pos: &Self::Position) -> FitnessReport;

    /// Uncapped fitness.
    fn evaluate_exact(&self, pos: &Self::Position) -> FitnessReport;

    fn to_graph(&self, pos: &Self::Position) -> Graph;
}

pub struct FullGraphLandscape {
    n: usize,
    p: usize,
    q: usize,
    density: f64,
    mode: CountMode,
}

impl FullGraphLandscape {
    pub fn new(n: usize, p: usize, q: usize, density: f64, mode: CountMode) -> Result<Self> {
        Graph::empty(n)?;
        if n < 2 {
            return invalid("full-graph search needs at least 2 vertices");
        }
        if p == 0 || q == 0 || p > n || q > n {
            return invalid(format!("orders ({p}, {q}) outside 1..={n}"));
        }
        if !(0.0..=1.0).contains(&density) {
            return invalid(format!("edge density {density} outside [0, 1]"));
        }
        Ok(FullGraphLandscape {
            n,
            p,
            q,
            density,
            mode,
        })
    }
}

impl Landscape for FullGraphLandscape {
    type Position = Graph;

    fn random(&self, _draw: u64, rng: &mut ChaCha8Rng) -> Result<Graph> {
        let mut g = Graph::empty(self.n)?;
        for v in 1..self.n {
            for u in 0..v {
                if rng.gen_bool(self.density) {
                    g.add_edge_unchecked(u, v);
                }
            }
        }
        Ok(g)
    }

    fn neighbor(&self, g: &Graph, rng: &mut ChaCha8Rng) -> Option<Graph> {
        let pairs = self.n * (self.n - 1) / 2;
        let k = rng.gen_range(0..pairs);
        // Unrank k into (u, v) with u < v.
        let mut v = 1;
        while v * (v + 1) / 2 <= k {
            v += 1;
        }
        let u = k - v * (v - 1) / 2;
        Some(g.toggle_edge(u, v).expect("pair is in range"))
    }

    fn evaluate(&self, g: &Graph) -> FitnessReport {
        fitness_with(g, self.p, self.q, self.mode, Exec::Sequential).expect("orders validated")
    }

    fn evaluate_exact(&self, g: &Graph) -> FitnessReport {
        fitness_with(g, self.p, self.q, CountMode::Exact, Exec::Sequential)
            .expect("orders validated")
    }

    fn to_graph(&self, g: &Graph) -> Graph {
        g.clone()
    }
}

pub struct ExtensionLandscape {
    base: Arc<Graph>,
    inners: Vec<InnerGraph>,
    range: DegreeRange,
    cache: IndepSetCache,
    p: usize,
    q: usize,
}

impl ExtensionLandscape {
    /// Inner graphs are cycled in the given order across draws.
    pub fn new(
        base: Graph,
        inners: Vec<InnerGraph>,
        range: DegreeRange,
        p: usize,
        q: usize,
    ) -> Result<Self> {
        let Some(first) = inners.first() else {
            return invalid("no inner graphs to extend with");
        };
        let added = first.order();
        if inners.iter().any(|g| g.order() != added) {
            return invalid("inner graphs differ in order");
        }
        let m = base.order();
        let n = m + added;
        if p == 0 || q == 0 || p > n || q > n {
            return invalid(format!("orders ({p}, {q}) outside 1..={n}"));
        }
        for (i, inner) in inners.iter().enumerate() {
            let demand: i64 = inner
                .degrees()
                .iter()
                .map(|&t| range.lo.max(t as i64) - t as i64)
                .sum();
            if inner.degrees().iter().any(|&t| t as i64 > range.hi) || demand > m as i64 {
                return invalid(format!(
                    "inner graph {i} cannot meet the degree range {range}"
                ));
            }
        }
        let hi = q.min(m);
        let lo = q.saturating_sub(added).clamp(1, hi);
        let cache = build_indep_cache(&base, lo..=hi, DEFAULT_MAX_CACHED_SETS)?;
        Ok(ExtensionLandscape {
            base: Arc::new(base),
            inners,
            range,
            cache,
            p,
            q,
        })
    }

    pub fn cache(&self) -> &IndepSetCache {
        &self.cache
    }
}

impl Landscape for ExtensionLandscape {
    type Position = ExtensionState;

    fn random(&self, draw: u64, rng: &mut ChaCha8Rng) -> Result<ExtensionState> {
        let idx = (draw % self.inners.len() as u64) as usize;
        random_extension(&self.base, &self.inners[idx], Some(idx), self.range, rng)
    }

    fn neighbor(&self, ext: &ExtensionState, rng: &mut ChaCha8Rng) -> Option<ExtensionState> {
        mutate_extension(ext, self.range, rng)
    }

    fn evaluate(&self, ext: &ExtensionState) -> FitnessReport {
        extension_fitness(&self.cache, ext, self.p, self.q)
            .expect("extension built on the cached base")
    }

    fn evaluate_exact(&self, ext: &ExtensionState) -> FitnessReport {
        self.evaluate(ext)
    }

    fn to_graph(&self, ext: &ExtensionState) -> Graph {
        ext.to_graph()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn full_graph_neighbors_flip_one_edge() {
        let land = FullGraphLandscape::new(7, 3, 3, 0.5, CountMode::Exact).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let g = land.random(0, &mut rng).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for _ in 0..2000 {
            let h = land.neighbor(&g, &mut rng).unwrap();
            assert_eq!(g.edge_distance(&h).unwrap(), 1);
            seen.insert(crate::format::encode_graph6(&h));
        }
        assert_eq!(seen.len(), 21);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(FullGraphLandscape::new(5, 3, 6, 0.5, CountMode::Exact).is_err());
        assert!(FullGraphLandscape::new(5, 3, 3, 1.5, CountMode::Exact).is_err());
        let inners = crate::construct::enumerate_triangle_free(3).unwrap();
        assert!(ExtensionLandscape::new(
            Graph::cycle(4).unwrap(),
            inners,
            DegreeRange::new(4, 9),
            3,
            3
        )
        .is_err());
    }
}
