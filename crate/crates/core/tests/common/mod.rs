//! Slow, obviously-correct reference implementations used as test oracles.
#![allow(dead_code)]

use ramsey_core::Graph;
use rand::Rng;

/// Graph on `n` vertices whose edges are the set bits of `mask`, in the
/// order (0,1), (0,2), .., (n-2,n-1).
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn random_graph<R: Rng>(n: usize, density: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// All `k`-subsets of `0..n` as sorted vectors.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn is_clique(g: &Graph, s: &[usize]) -> bool {
    s.iter()
        .enumerate()
        .all(|(i, &u)| s[i + 1..].iter().all(|&v| g.has_edge(u, v)))
}

pub fn is_independent(g: &Graph, s: &[usize]) -> bool {
    s.iter()
        .enumerate()
        .all(|(i, &u)| s[i + 1..].iter().all(|&v| !g.has_edge(u, v)))
}

pub fn naive_cliques(g: &Graph, k: usize) -> u64 {
    subsets(g.order(), k)
        .iter()
        .filter(|s| is_clique(g, s))
        .count() as u64
}

pub fn naive_independent(g: &Graph, k: usize) -> u64 {
    subsets(g.order(), k)
        .iter()
        .filter(|s| is_independent(g, s))
        .count() as u64
}

pub fn naive_fitness(g: &Graph, p: usize, q: usize) -> u64 {
    naive_cliques(g, p) + naive_independent(g, q)
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Smallest edge mask over all relabelings.
pub fn canonical_mask(g: &Graph, perms: &[Vec<usize>]) -> u64 {
    let n = g.order();
    perms
        .iter()
        .map(|p| {
            let mut mask = 0u64;
            let mut bit = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if g.has_edge(p[u], p[v]) {
                        mask |= 1 << bit;
                    }
                    bit += 1;
                }
            }
            mask
        })
        .min()
        .unwrap()
}

/// Isomorphism classes of triangle-free graphs on `k` vertices, by brute
/// force over all labeled graphs.
pub fn triangle_free_classes(k: usize) -> usize {
    let perms = permutations(k);
    let pairs = k * (k - 1) / 2;
    let mut seen = std::collections::HashSet::new();
    for mask in 0..1u64 << pairs {
        let g = graph_from_mask(k, mask);
        if naive_cliques(&g, 3) == 0 || k < 3 {
            seen.insert(canonical_mask(&g, &perms));
        }
    }
    seen.len()
}
