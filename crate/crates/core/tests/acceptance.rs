//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.
//!
//! Criteria 5 and 6 adjudicate claims about the shipped dataset: the
//! criterion passes when the report is produced; each claim's own verdict is
//! printed next to it.

mod common;

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use common::*;
use ramsey_core::bounds::{degree_range, published_band_discrepancy, DegreeRange};
use ramsey_core::construct::{
    enumerate_triangle_free, mutate_extension, random_extension, ExtensionState,
};
use ramsey_core::counting::{
    build_indep_cache, count_cliques, count_independent_sets, extension_fitness, fitness,
    max_independent_set, DEFAULT_MAX_CACHED_SETS,
};
use ramsey_core::dataset::{appendix, base_of, BASE_ORDER};
use ramsey_core::iso::is_isomorphic;
use ramsey_core::search::{run_with, write_history_csv, SearchParams};
use ramsey_core::verify::{pairwise_isomorphism, verify_appendix, verify_deletions};
use ramsey_core::{Exec, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn base() -> Graph {
    base_of(appendix().unwrap()[0].graph()).unwrap()
}

fn independent_set_table() -> Outcome {
    let cache =
        build_indep_cache(&base(), 5..=8, DEFAULT_MAX_CACHED_SETS).map_err(|e| e.to_string())?;
    let counts: Vec<u64> = cache.counts().into_iter().map(|(_, c)| c).collect();
    ensure(
        counts == [20265, 22995, 13760, 3360],
        format!("k=5..8 counts {counts:?}"),
    )?;
    Ok(format!("k=5..8 counts {counts:?}"))
}

fn base_properties() -> Outcome {
    let b = base();
    let regular = b.regular_degree();
    let triangles = count_cliques(&b, 3).unwrap();
    let (alpha, _) = max_independent_set(&b);
    let nine = count_independent_sets(&b, 9).unwrap();
    ensure(
        b.order() == 35 && regular == Some(8) && triangles == 0 && alpha == 8 && nine == 0,
        format!(
            "order {} regular {regular:?} triangles {triangles} alpha {alpha} 9-sets {nine}",
            b.order()
        ),
    )?;
    Ok(format!(
        "35 vertices, 8-regular, triangle-free, independence number {alpha}"
    ))
}

fn degree_bands() -> Outcome {
    let a = degree_range(3, 10, 40).unwrap();
    let b = degree_range(5, 5, 43).unwrap();
    let c = degree_range(4, 6, 36).unwrap();
    ensure(a == DegreeRange::new(4, 9), format!("(3,10,40) -> {a}"))?;
    ensure(b == DegreeRange::new(18, 24), format!("(5,5,43) -> {b}"))?;
    ensure(c == DegreeRange::new(11, 17), format!("(4,6,36) -> {c}"))?;
    let d = published_band_discrepancy(4, 6, 36).ok_or("no recorded discrepancy for (4,6,36)")?;
    ensure(
        d.published == DegreeRange::new(11, 24),
        format!("published band {}", d.published),
    )?;
    ensure(
        published_band_discrepancy(3, 10, 40).is_none()
            && published_band_discrepancy(5, 5, 43).is_none(),
        "unexpected discrepancy",
    )?;
    Ok(format!(
        "(3,10,40) {a}, (5,5,43) {b}, (4,6,36) {c} (published {} differs)",
        d.published
    ))
}

fn triangle_free_inner_graphs() -> Outcome {
    let ours = enumerate_triangle_free(5).unwrap().len();
    let brute = triangle_free_classes(5);
    ensure(
        ours == 14 && brute == 14,
        format!("enumerated {ours}, brute force over 1024 labeled graphs {brute}"),
    )?;
    Ok("14 classes on 5 vertices, brute force agrees".into())
}

fn dataset_claims() -> Outcome {
    let ds = appendix().map_err(|e| e.to_string())?;
    let report = verify_appendix(&ds, Exec::default()).map_err(|e| e.to_string())?;
    for row in &report.rows {
        ensure(
            row.fitness_total == row.fitness_total_incremental,
            format!("graph {} totals disagree", row.name),
        )?;
    }
    let verdicts: Vec<String> = report
        .rows
        .iter()
        .map(|r| {
            let ok = r.claims.iter().all(|c| c.pass);
            format!(
                "{}: triangles {} 10-sets {} [{}]",
                r.name,
                r.triangles,
                r.ten_indep,
                if ok { "claims hold" } else { "CLAIM FAILS" }
            )
        })
        .collect();
    Ok(verdicts.join("; "))
}

fn deletion_claims() -> Outcome {
    let ds = appendix().map_err(|e| e.to_string())?;
    let report = verify_deletions(&ds, Exec::default()).map_err(|e| e.to_string())?;
    ensure(
        report.scan.len() == 160,
        format!("scan covered {} deletions", report.scan.len()),
    )?;
    ensure(
        report.scan.iter().all(|r| r.triangle_accounting_ok),
        "triangle accounting failed in the scan",
    )?;
    let named: Vec<String> = report
        .named
        .iter()
        .zip(&report.claims)
        .map(|(r, c)| {
            format!(
                "{}-{} {}",
                r.graph,
                r.vertex,
                if c.pass { "witness" } else { "CLAIM FAILS" }
            )
        })
        .collect();
    let witnesses: Vec<(String, Graph)> = report
        .witnesses()
        .map(|r| {
            let g = ds.iter().find(|g| g.name == r.graph).unwrap().graph();
            (
                format!("{}-{}", r.graph, r.vertex),
                g.delete_vertex(r.vertex - 1).unwrap().0,
            )
        })
        .collect();
    let iso = pairwise_isomorphism(&witnesses, Exec::default());
    let iso_pairs: Vec<String> = iso
        .iter()
        .filter(|o| o.isomorphic)
        .map(|o| format!("{}~{}", o.left, o.right))
        .collect();
    Ok(format!(
        "{}; {} witnesses in full scan; isomorphic pairs: {}",
        named.join(", "),
        witnesses.len(),
        if iso_pairs.is_empty() {
            "none".to_string()
        } else {
            iso_pairs.join(" ")
        }
    ))
}

fn worked_example() -> Outcome {
    let g1 = Graph::from_edges(5, [(0, 1), (1, 2), (1, 3), (2, 3), (3, 4)]).unwrap();
    let g3 = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
    let g2 = Graph::cycle(5).unwrap();
    let f1 = fitness(&g1, 3, 3).unwrap().total;
    let f2 = fitness(&g2, 3, 3).unwrap().total;
    ensure(f1 == 2 && f2 == 0, format!("f(G1) = {f1}, f(C5) = {f2}"))?;
    ensure(
        g1.toggle_edge(1, 3).unwrap() == g3 && g1.edge_distance(&g3).unwrap() == 1,
        "toggle(2,4) does not give G3",
    )?;
    // The 5-vertex witness is unique up to relabeling.
    for mask in 0..1u64 << 10 {
        let g = graph_from_mask(5, mask);
        if naive_fitness(&g, 3, 3) == 0 {
            ensure(
                is_isomorphic(&g, &g2).is_some(),
                format!("witness {g:?} is not a 5-cycle"),
            )?;
        }
    }
    Ok("f(G1) = 2, f(C5) = 0, G1 and G3 differ in the pair {2,4}".into())
}

fn search_capability() -> Outcome {
    let hits = |p, q, n, budget| {
        (0..10)
            .filter(|&seed| {
                run_with(
                    &SearchParams::full_graph(p, q, n, seed, budget),
                    Exec::default(),
                )
                .unwrap()
                .best_fitness
                .total
                    == 0
            })
            .count()
    };
    let small = hits(3, 3, 5, 10_000);
    let medium = hits(3, 4, 8, 1_000_000);
    ensure(
        small >= 9 && medium >= 5,
        format!("r(3,3,5) {small}/10, r(3,4,8) {medium}/10"),
    )?;
    Ok(format!(
        "r(3,3,5) found for {small}/10 seeds, r(3,4,8) for {medium}/10"
    ))
}

fn oracle_equivalence() -> Outcome {
    let mut checked = 0;
    for n in 1..=5 {
        for mask in 0..1u64 << (n * (n - 1) / 2) {
            let g = graph_from_mask(n, mask);
            for (p, q) in [(3, 3), (2, 3), (3, 2), (2, 2)] {
                if p > n || q > n {
                    continue;
                }
                ensure(
                    fitness(&g, p, q).unwrap().total == naive_fitness(&g, p, q),
                    format!("{g:?} at ({p},{q})"),
                )?;
            }
            checked += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(500);
    for _ in 0..500 {
        let n = rng.gen_range(2..=8);
        let g = random_graph(n, rng.gen_range(0.1..0.9), &mut rng);
        let (p, q) = (rng.gen_range(2..=n.min(5)), rng.gen_range(2..=n.min(5)));
        let r = fitness(&g, p, q).unwrap();
        ensure(
            r.clique_count == naive_cliques(&g, p) && r.indep_count == naive_independent(&g, q),
            format!("{g:?} at ({p},{q})"),
        )?;
    }
    Ok(format!(
        "{checked} graphs on up to 5 vertices and 500 random graphs on up to 8"
    ))
}

fn incremental_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let inners: Vec<_> = (1..=4)
        .map(|k| enumerate_triangle_free(k).unwrap())
        .collect();
    for case in 0..200 {
        let m = rng.gen_range(6..=12);
        let base = Arc::new(random_graph(m, rng.gen_range(0.2..0.6), &mut rng));
        let k = rng.gen_range(1..=4);
        let idx = rng.gen_range(0..inners[k - 1].len());
        let inner = &inners[k - 1][idx];
        let top = inner.degrees().iter().copied().max().unwrap_or(0);
        let range = DegreeRange::new(0, (top + m / k) as i64);
        let mut ext = random_extension(&base, inner, Some(idx), range, &mut rng).unwrap();
        if let Some(next) = mutate_extension(&ext, range, &mut rng) {
            ext = next;
        }
        let (p, q) = (3, rng.gen_range(3..=5));
        let cache = build_indep_cache(&base, 1..=q, DEFAULT_MAX_CACHED_SETS).unwrap();
        let g = ext.to_graph();
        let fast = extension_fitness(&cache, &ext, p, q).unwrap().total;
        ensure(
            fast == naive_fitness(&g, p, q),
            format!("case {case}: incremental {fast}"),
        )?;
    }
    let a = appendix().unwrap()[0].graph().clone();
    let ext = ExtensionState::decompose(&a, BASE_ORDER).unwrap();
    let cache = build_indep_cache(ext.base(), 5..=8, DEFAULT_MAX_CACHED_SETS).unwrap();
    let fast = extension_fitness(&cache, &ext, 3, 10).unwrap();
    let direct = fitness(&a, 3, 10).unwrap();
    ensure(
        fast == direct,
        format!("graph A: incremental {fast:?} direct {direct:?}"),
    )?;
    Ok(format!(
        "200 random extensions and graph A (total {})",
        direct.total
    ))
}

fn determinism() -> Outcome {
    let params = SearchParams::full_graph(3, 5, 13, 77, 30_000);
    let csv = |exec| {
        let r = run_with(&params, exec).unwrap();
        let mut out = Vec::new();
        write_history_csv(&r.history, &mut out).unwrap();
        out
    };
    let first = csv(Exec::default());
    let second = csv(Exec::default());
    let sequential = csv(Exec::Sequential);
    ensure(first == second, "repeated runs differ")?;
    ensure(first == sequential, "sequential and parallel runs differ")?;
    Ok(format!(
        "{} history bytes identical across repeats and execution modes",
        first.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("independent-set counts of the base", independent_set_table),
        ("base graph properties", base_properties),
        ("degree bands", degree_bands),
        ("triangle-free inner graphs", triangle_free_inner_graphs),
        ("dataset triangle and 10-set claims", dataset_claims),
        ("single-vertex deletion witnesses", deletion_claims),
        ("worked example", worked_example),
        ("search capability", search_capability),
        ("counting vs naive enumeration", oracle_equivalence),
        ("incremental vs direct fitness", incremental_equivalence),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
