//! Exact clique and independent-set counting and the Ramsey fitness.
//!
//! All counters walk subsets in increasing vertex order and only extend a
//! partial clique by common neighbors above its largest member, so every
//! p-subset is visited at most once. Independent sets are cliques of the
//! complement.

mod cache;

pub use cache::{
    build_indep_cache, extension_fitness, CachedSet, IndepSetCache, DEFAULT_MAX_CACHED_SETS,
};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::exec::Exec;
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// Objective value: number of forbidden cliques plus forbidden independent sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FitnessReport {
    pub clique_count: u64,
    pub indep_count: u64,
    pub total: u64,
    /// False when a counting ceiling was hit; the counts are then lower bounds.
    pub exact: bool,
}

impl FitnessReport {
    pub fn new(clique_count: u64, indep_count: u64) -> Self {
        FitnessReport {
            clique_count,
            indep_count,
            total: clique_count + indep_count,
            exact: true,
        }
    }

    pub fn is_witness(&self) -> bool {
        self.exact && self.total == 0
    }
}

/// How far the counters go before giving up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMode {
    #[default]
    Exact,
    /// Stop each count once it reaches the given ceiling.
    Capped(u64),
}

fn check_order(g: &Graph, k: usize, what: &str) -> Result<()> {
    if k == 0 || k > g.order() {
        return invalid(format!("{what} order {k} outside 1..={}", g.order()));
    }
    Ok(())
}

/// Number of `need`-cliques inside `cand`, saturating at `cap`.
pub(crate) fn count_within(adj: &[VertexSet], cand: VertexSet, need: usize, cap: u64) -> u64 {
    count_raw(adj, cand, need, cap).min(cap)
}

fn count_raw(adj: &[VertexSet], cand: VertexSet, need: usize, cap: u64) -> u64 {
    match need {
        0 => 1,
        1 => cand.len() as u64,
        2 => {
            let mut total = 0;
            for v in cand {
                total += adj[v]
                    .intersection(cand)
                    .intersection(VertexSet::above(v))
                    .len() as u64;
                if total >= cap {
                    break;
                }
            }
            total
        }
        _ => {
            let mut total = 0;
            let mut rest = cand;
            while let Some(v) = rest.first() {
                rest.remove(v);
                if rest.len() < need - 1 {
                    break;
                }
                let next = rest.intersection(adj[v]);
                if next.len() >= need - 1 {
                    total += count_raw(adj, next, need - 1, cap - total);
                    if total >= cap {
                        break;
                    }
                }
            }
            total
        }
    }
}

/// Exact count of `k`-cliques, split by smallest member across `exec`.
fn count_split(adj: &[VertexSet], k: usize, exec: Exec) -> u64 {
    let n = adj.len();
    if k == 1 {
        return n as u64;
    }
    let firsts: Vec<usize> = (0..n).collect();
    exec.sum(&firsts, |&v| {
        let cand = adj[v].intersection(VertexSet::above(v));
        count_within(adj, cand, k - 1, u64::MAX)
    })
}

pub fn count_cliques(g: &Graph, p: usize) -> Result<u64> {
    count_cliques_with(g, p, Exec::default())
}

pub fn count_cliques_with(g: &Graph, p: usize, exec: Exec) -> Result<u64> {
    check_order(g, p, "clique")?;
    Ok(count_split(g.adjacency(), p, exec))
}

pub fn count_independent_sets(g: &Graph, q: usize) -> Result<u64> {
    count_independent_sets_with(g, q, Exec::default())
}

pub fn count_independent_sets_with(g: &Graph, q: usize, exec: Exec) -> Result<u64> {
    check_order(g, q, "independent set")?;
    Ok(count_split(g.complement().adjacency(), q, exec))
}

pub fn fitness(g: &Graph, p: usize, q: usize) -> Result<FitnessReport> {
    fitness_with(g, p, q, CountMode::Exact, Exec::default())
}

/// Fitness with an explicit counting mode. Capped counting always runs
/// sequentially so that the early exit is deterministic.
pub fn fitness_with(
    g: &Graph,
    p: usize,
    q: usize,
    mode: CountMode,
    exec: Exec,
) -> Result<FitnessReport> {
    check_order(g, p, "clique")?;
    check_order(g, q, "independent set")?;
    let comp = g.complement();
    match mode {
        CountMode::Exact => Ok(FitnessReport::new(
            count_split(g.adjacency(), p, exec),
            count_split(comp.adjacency(), q, exec),
        )),
        CountMode::Capped(cap) => {
            let cap = cap.max(1);
            let c = count_within(g.adjacency(), g.vertices(), p, cap);
            let i = count_within(comp.adjacency(), g.vertices(), q, cap);
            let mut r = FitnessReport::new(c, i);
            r.exact = c < cap && i < cap;
            Ok(r)
        }
    }
}

/// Number of colors used by a greedy coloring of `cand`; an upper bound on
/// the largest clique inside `cand`.
fn greedy_color_bound(adj: &[VertexSet], cand: VertexSet) -> usize {
    let mut uncolored = cand;
    let mut colors = 0;
    while !uncolored.is_empty() {
        colors += 1;
        let mut avail = uncolored;
        while let Some(v) = avail.first() {
            avail = avail.difference(adj[v]).without(v);
            uncolored.remove(v);
        }
    }
    colors
}

fn find_within(
    adj: &[VertexSet],
    cand: VertexSet,
    current: VertexSet,
    need: usize,
) -> Option<VertexSet> {
    if need == 0 {
        return Some(current);
    }
    if cand.len() < need {
        return None;
    }
    if need == 1 {
        return cand.first().map(|v| current.with(v));
    }
    if need >= 3 && greedy_color_bound(adj, cand) < need {
        return None;
    }
    let mut rest = cand;
    while let Some(v) = rest.first() {
        rest.remove(v);
        if rest.len() < need - 1 {
            return None;
        }
        if let Some(found) = find_within(adj, rest.intersection(adj[v]), current.with(v), need - 1)
        {
            return Some(found);
        }
    }
    None
}

/// Lexicographically first `p`-clique, if any.
pub fn find_clique(g: &Graph, p: usize) -> Result<Option<VertexSet>> {
    check_order(g, p, "clique")?;
    Ok(find_within(
        g.adjacency(),
        g.vertices(),
        VertexSet::EMPTY,
        p,
    ))
}

/// Lexicographically first independent `q`-set, if any.
pub fn find_independent_set(g: &Graph, q: usize) -> Result<Option<VertexSet>> {
    check_order(g, q, "independent set")?;
    let comp = g.complement();
    Ok(find_within(
        comp.adjacency(),
        g.vertices(),
        VertexSet::EMPTY,
        q,
    ))
}

/// Vertices of `cand` ordered so that the greedy color number is
/// non-decreasing, paired with those color numbers.
fn color_sort(adj: &[VertexSet], cand: VertexSet) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(cand.len());
    let mut uncolored = cand;
    let mut color = 0;
    while !uncolored.is_empty() {
        color += 1;
        let mut avail = uncolored;
        while let Some(v) = avail.first() {
            avail = avail.difference(adj[v]).without(v);
            uncolored.remove(v);
            out.push((v, color));
        }
    }
    out
}

fn max_clique_rec(
    adj: &[VertexSet],
    mut cand: VertexSet,
    current: VertexSet,
    best: &mut VertexSet,
) {
    let order = color_sort(adj, cand);
    for &(v, bound) in order.iter().rev() {
        if current.len() + bound <= best.len() {
            return;
        }
        let next = cand.intersection(adj[v]);
        let grown = current.with(v);
        if next.is_empty() {
            if grown.len() > best.len() {
                *best = grown;
            }
        } else {
            max_clique_rec(adj, next, grown, best);
        }
        cand.remove(v);
    }
}

/// Largest clique, by branch and bound with greedy-coloring bounds.
pub fn max_clique(g: &Graph) -> (usize, VertexSet) {
    let mut best = VertexSet::EMPTY;
    max_clique_rec(g.adjacency(), g.vertices(), VertexSet::EMPTY, &mut best);
    (best.len(), best)
}

/// Independence number with a witness set.
pub fn max_independent_set(g: &Graph) -> (usize, VertexSet) {
    max_clique(&g.complement())
}

/// Visits every `k`-clique inside `cand` in lexicographic order.
pub(crate) fn for_each_clique(
    adj: &[VertexSet],
    cand: VertexSet,
    k: usize,
    f: &mut impl FnMut(VertexSet),
) {
    fn rec(
        adj: &[VertexSet],
        cand: VertexSet,
        current: VertexSet,
        need: usize,
        f: &mut impl FnMut(VertexSet),
    ) {
        if need == 0 {
            f(current);
            return;
        }
        let mut rest = cand;
        while let Some(v) = rest.first() {
            rest.remove(v);
            if rest.len() < need - 1 {
                return;
            }
            rec(adj, rest.intersection(adj[v]), current.with(v), need - 1, f);
        }
    }
    rec(adj, cand, VertexSet::EMPTY, k, f);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_count(g: &Graph, k: usize, clique: bool) -> u64 {
        let n = g.order();
        (0u64..1 << n)
            .filter(|m| m.count_ones() as usize == k)
            .filter(|&m| {
                let s = VertexSet(m);
                s.iter()
                    .all(|u| s.iter().all(|v| u == v || g.has_edge(u, v) == clique))
            })
            .count() as u64
    }

    fn g1() -> Graph {
        Graph::from_edges(5, [(0, 1), (1, 2), (1, 3), (2, 3), (3, 4)]).unwrap()
    }

    #[test]
    fn clique_examples() {
        assert_eq!(count_cliques(&Graph::complete(4).unwrap(), 3).unwrap(), 4);
        assert_eq!(count_cliques(&g1(), 3).unwrap(), 1);
        assert_eq!(
            count_cliques(&Graph::cycle(5).unwrap(), 3).unwrap(),
            naive_count(&Graph::cycle(5).unwrap(), 3, true)
        );
        assert_eq!(count_cliques(&Graph::cycle(5).unwrap(), 3).unwrap(), 0);
    }

    #[test]
    fn independent_set_examples() {
        assert_eq!(count_independent_sets(&g1(), 3).unwrap(), 1);
        assert_eq!(
            count_independent_sets(&Graph::empty(5).unwrap(), 3).unwrap(),
            10
        );
    }

    #[test]
    fn order_checks() {
        let g = Graph::complete(4).unwrap();
        assert!(count_cliques(&g, 0).is_err());
        assert!(count_cliques(&g, 5).is_err());
        assert!(count_independent_sets(&g, 0).is_err());
        assert!(fitness(&g, 3, 5).is_err());
    }

    #[test]
    fn fitness_examples() {
        assert_eq!(fitness(&g1(), 3, 3).unwrap().total, 2);
        let k5 = fitness(&Graph::complete(5).unwrap(), 3, 3).unwrap();
        assert_eq!((k5.clique_count, k5.indep_count, k5.total), (10, 0, 10));
        assert!(fitness(&Graph::cycle(5).unwrap(), 3, 3)
            .unwrap()
            .is_witness());
    }

    #[test]
    fn capped_fitness_saturates() {
        let k8 = Graph::complete(8).unwrap();
        let r = fitness_with(&k8, 3, 3, CountMode::Capped(5), Exec::Sequential).unwrap();
        assert!(!r.exact);
        assert_eq!(r.clique_count, 5);
        let r = fitness_with(&k8, 3, 3, CountMode::Capped(1000), Exec::Sequential).unwrap();
        assert!(r.exact);
        assert_eq!(r.clique_count, 56);
    }

    #[test]
    fn finders() {
        assert_eq!(
            find_clique(&g1(), 3).unwrap(),
            Some([1, 2, 3].into_iter().collect())
        );
        assert_eq!(
            find_independent_set(&g1(), 3).unwrap(),
            Some([0, 2, 4].into_iter().collect())
        );
        assert_eq!(
            find_independent_set(&Graph::cycle(5).unwrap(), 3).unwrap(),
            None
        );
        assert_eq!(
            find_independent_set(&Graph::complete(3).unwrap(), 2).unwrap(),
            None
        );
    }

    #[test]
    fn independence_numbers() {
        assert_eq!(max_independent_set(&Graph::cycle(5).unwrap()).0, 2);
        let (a, w) = max_independent_set(&Graph::empty(7).unwrap());
        assert_eq!((a, w.len()), (7, 7));
        assert_eq!(max_clique(&Graph::complete(6).unwrap()).0, 6);
    }

    #[test]
    fn exhaustive_small_graphs_match_naive() {
        for n in 1..=5usize {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            for mask in 0u32..1 << pairs.len() {
                let g = Graph::from_edges(
                    n,
                    pairs
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &e)| e),
                )
                .unwrap();
                for k in 1..=n {
                    assert_eq!(count_cliques(&g, k).unwrap(), naive_count(&g, k, true));
                    assert_eq!(
                        count_independent_sets(&g, k).unwrap(),
                        naive_count(&g, k, false)
                    );
                }
                let alpha = (1..=n)
                    .rev()
                    .find(|&k| naive_count(&g, k, false) > 0)
                    .unwrap();
                assert_eq!(max_independent_set(&g).0, alpha);
            }
        }
    }
}
