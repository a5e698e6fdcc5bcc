mod common;

use common::*;
use proptest::prelude::*;
use ramsey_core::counting::{fitness, fitness_with, CountMode};
use ramsey_core::format::{
    decode_graph6, emit_adjacency_list, encode_graph6, parse_adjacency_list,
};
use ramsey_core::iso::{is_isomorphic, preserves_adjacency};
use ramsey_core::verify::certify;
use ramsey_core::{Exec, Graph};
use rand::{seq::SliceRandom, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mask = bits
                .iter()
                .enumerate()
                .fold(0u64, |m, (i, &b)| m | (b as u64) << i);
            graph_from_mask(n, mask)
        })
    })
}

fn arb_large_graph() -> impl Strategy<Value = Graph> {
    (1usize..=64, any::<u64>(), 0.0f64..1.0)
        .prop_map(|(n, seed, d)| random_graph(n, d, &mut ChaCha8Rng::seed_from_u64(seed)))
}

proptest! {
    #[test]
    fn adjacency_list_round_trips(g in arb_large_graph()) {
        let report = parse_adjacency_list(&emit_adjacency_list(&g)).unwrap();
        prop_assert!(report.warnings.is_empty());
        prop_assert_eq!(report.graph, g);
    }

    #[test]
    fn graph6_round_trips(g in arb_large_graph()) {
        prop_assert_eq!(decode_graph6(&encode_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn complement_is_an_involution(g in arb_large_graph()) {
        let c = g.complement();
        let n = g.order();
        prop_assert_eq!(c.edge_count() + g.edge_count(), n * (n - 1) / 2);
        prop_assert_eq!(c.complement(), g);
    }

    #[test]
    fn deleting_a_vertex_drops_its_edges(g in arb_large_graph(), pick in any::<usize>()) {
        prop_assume!(g.order() > 1);
        let v = pick % g.order();
        let (h, labels) = g.delete_vertex(v).unwrap();
        prop_assert_eq!(h.order(), g.order() - 1);
        prop_assert_eq!(h.edge_count(), g.edge_count() - g.degree(v));
        for (a, b) in h.edges() {
            prop_assert!(g.has_edge(labels[a], labels[b]));
        }
    }

    #[test]
    fn toggle_changes_exactly_one_pair(g in arb_large_graph(), a in any::<usize>(), b in any::<usize>()) {
        prop_assume!(g.order() > 1);
        let u = a % g.order();
        let v = (u + 1 + b % (g.order() - 1)) % g.order();
        let h = g.toggle_edge(u, v).unwrap();
        prop_assert_eq!(g.edge_distance(&h).unwrap(), 1);
        prop_assert_eq!(h.has_edge(u, v), !g.has_edge(u, v));
        prop_assert_eq!(h.toggle_edge(u, v).unwrap(), g);
    }

    #[test]
    fn fitness_is_relabeling_invariant(g in arb_graph(10), seed in any::<u64>(), p in 2usize..5, q in 2usize..5) {
        prop_assume!(p <= g.order() && q <= g.order());
        let mut perm: Vec<usize> = (0..g.order()).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let h = g.permute(&perm).unwrap();
        prop_assert_eq!(fitness(&g, p, q).unwrap(), fitness(&h, p, q).unwrap());
    }

    #[test]
    fn certificate_matches_brute_force(g in arb_graph(8), p in 2usize..6, q in 2usize..6) {
        prop_assume!(p <= g.order() && q <= g.order());
        let c = certify(&g, p, q).unwrap();
        prop_assert_eq!(c.clique_count, naive_cliques(&g, p));
        prop_assert_eq!(c.indep_count, naive_independent(&g, q));
        prop_assert_eq!(c.is_witness, c.clique_count + c.indep_count == 0);
        if let Some(s) = c.clique_violation {
            let members: Vec<usize> = s.iter().collect();
            prop_assert_eq!(members.len(), p);
            prop_assert!(is_clique(&g, &members));
            let sub = g.induced_subgraph(s).unwrap();
            prop_assert_eq!(sub.edge_count(), p * (p - 1) / 2);
        }
        if let Some(s) = c.indep_violation {
            let members: Vec<usize> = s.iter().collect();
            prop_assert_eq!(members.len(), q);
            prop_assert_eq!(g.induced_subgraph(s).unwrap().edge_count(), 0);
        }
    }

    #[test]
    fn capped_counts_never_exceed_exact(g in arb_graph(9), cap in 1u64..20) {
        prop_assume!(g.order() >= 3);
        let exact = fitness(&g, 3, 3).unwrap();
        let capped = fitness_with(&g, 3, 3, CountMode::Capped(cap), Exec::Sequential).unwrap();
        prop_assert_eq!(capped.clique_count, exact.clique_count.min(cap));
        prop_assert_eq!(capped.indep_count, exact.indep_count.min(cap));
        prop_assert_eq!(capped.total == 0, exact.total == 0);
    }

    #[test]
    fn isomorphism_of_relabelings(g in arb_large_graph(), seed in any::<u64>()) {
        let mut perm: Vec<usize> = (0..g.order()).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let h = g.permute(&perm).unwrap();
        let m = is_isomorphic(&g, &h);
        prop_assert!(m.is_some());
        prop_assert!(preserves_adjacency(&g, &h, &m.unwrap()));
        let back = is_isomorphic(&h, &g);
        prop_assert!(back.is_some());
        prop_assert!(preserves_adjacency(&h, &g, &back.unwrap()));
        prop_assert!(is_isomorphic(&g, &g).is_some());
    }

    #[test]
    fn isomorphism_agrees_with_canonical_masks((n, x, y) in (1usize..=6).prop_flat_map(|n| (Just(n), 0..1u64 << (n * (n - 1) / 2), 0..1u64 << (n * (n - 1) / 2)))) {
        let (a, b) = (graph_from_mask(n, x), graph_from_mask(n, y));
        let perms = permutations(a.order());
        let same = canonical_mask(&a, &perms) == canonical_mask(&b, &perms);
        let m = is_isomorphic(&a, &b);
        prop_assert_eq!(m.is_some(), same);
        prop_assert_eq!(is_isomorphic(&b, &a).is_some(), same);
        if let Some(m) = m {
            prop_assert!(preserves_adjacency(&a, &b, &m));
        }
    }
}

#[test]
fn parallel_and_sequential_counts_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let g = random_graph(30, 0.4, &mut rng);
        for (p, q) in [(3, 3), (4, 5), (3, 7)] {
            let a = fitness_with(&g, p, q, CountMode::Exact, Exec::Sequential).unwrap();
            let b = fitness_with(&g, p, q, CountMode::Exact, Exec::Parallel).unwrap();
            assert_eq!(a, b);
        }
    }
}
