use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use serde::Serialize;

use ramsey_core::bounds::{degree_range, published_band_discrepancy};
use ramsey_core::construct::enumerate_triangle_free;
use ramsey_core::counting::{count_cliques, count_independent_sets, fitness};
use ramsey_core::dataset::{appendix, base_of, load_dir, NamedGraph};
use ramsey_core::format::encode_graph6;
use ramsey_core::search::{run_with, write_history_csv, RoundRecord, Termination};
use ramsey_core::verify::{
    certify, pairwise_isomorphism, validate_base, verify_appendix as check_appendix,
    verify_deletions, Claim,
};
use ramsey_core::{Exec, Graph, VertexSet};

use crate::config::{OutputFormats, RunConfig, RunRecord};
use crate::graph_io::{read_graph, write_graph};
use crate::{exit, Usage};

fn history_csv(history: &[RoundRecord]) -> Vec<u8> {
    let mut out = Vec::new();
    write_history_csv(history, &mut out).expect("writing to memory");
    out
}

/// A fresh `<timestamp>-seed<seed>` directory under `parent`.
fn run_dir(parent: &Path, seed: u64) -> Result<PathBuf> {
    let stamp = chrono::Utc::now().format("%Y%m%dT%H%M%SZ");
    std::fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
    for attempt in 0.. {
        let name = if attempt == 0 {
            format!("{stamp}-seed{seed}")
        } else {
            format!("{stamp}-seed{seed}-{attempt}")
        };
        let dir = parent.join(name);
        match std::fs::create_dir(&dir) {
            Ok(()) => return Ok(dir),
            Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => continue,
            Err(e) => return Err(e).with_context(|| format!("creating {}", dir.display())),
        }
    }
    unreachable!()
}

pub fn search(config: &RunConfig) -> Result<u8> {
    let params = config.to_params()?;
    let started_at = chrono::Utc::now().to_rfc3339();
    let clock = Instant::now();
    let result = run_with(&params, config.exec)?;
    let secs = clock.elapsed().as_secs_f64();

    let parent = config
        .out_dir
        .clone()
        .unwrap_or_else(|| PathBuf::from("runs"));
    let dir = run_dir(&parent, params.seed)?;
    let record = RunRecord::new(config, &params, &result, started_at, secs);
    std::fs::write(dir.join("config.json"), config.to_json() + "\n")?;
    std::fs::write(
        dir.join("run.json"),
        serde_json::to_string_pretty(&record)? + "\n",
    )?;
    std::fs::write(dir.join("history.csv"), history_csv(&result.history))?;
    let best = result.best.graph();
    write_graph(&dir, "best", &best, &config.formats)?;
    let witness = result.termination == Termination::WitnessFound;
    if witness {
        write_graph(&dir, "witness", &best, &config.formats)?;
    }

    let f = result.best_fitness;
    say!("run directory: {}", dir.display());
    say!(
        "{}: r({},{},{}) after {} rounds, {} evaluations, {:.2}s",
        if witness {
            "witness found"
        } else {
            "budget exhausted"
        },
        params.p,
        params.q,
        params.n,
        result.rounds,
        result.evaluations,
        secs
    );
    say!(
        "best fitness {} ({} {}-cliques, {} independent {}-sets)",
        f.total,
        f.clique_count,
        params.p,
        f.indep_count,
        params.q
    );
    say!("best graph6 {}", encode_graph6(&best));
    Ok(if witness { exit::OK } else { exit::BUDGET })
}

pub fn replay(path: &Path) -> Result<u8> {
    let record = RunRecord::load(path)?;
    let result = run_with(&record.params, record.config.exec)?;
    let same = history_csv(&result.history) == history_csv(&record.history);
    if same {
        say!(
            "history reproduced: {} rounds, best fitness {}",
            result.rounds,
            result.best_fitness.total
        );
        Ok(exit::OK)
    } else {
        say!("history differs from {}", path.display());
        Ok(exit::CONTRADICTION)
    }
}

fn members(s: Option<VertexSet>) -> String {
    match s {
        Some(s) => format!(
            "{{{}}}",
            s.to_one_indexed()
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        ),
        None => "-".into(),
    }
}

#[derive(Serialize)]
struct FileCertificate<'a> {
    file: &'a Path,
    #[serde(flatten)]
    certificate: &'a ramsey_core::verify::Certificate,
}

pub fn verify(files: &[PathBuf], p: usize, q: usize, json: bool) -> Result<u8> {
    let mut all = true;
    for file in files {
        let g = read_graph(file)?;
        let c = certify(&g, p, q)?;
        all &= c.is_witness;
        if json {
            say!(
                "{}",
                serde_json::to_string(&FileCertificate {
                    file,
                    certificate: &c
                })?
            );
            continue;
        }
        say!(
            "{}: {} vertices, {}",
            file.display(),
            c.order,
            if c.is_witness {
                format!("r({p},{q},{}) witness", c.order)
            } else {
                "not a witness".into()
            }
        );
        say!(
            "  {p}-cliques: {} first {}",
            c.clique_count,
            members(c.clique_violation)
        );
        say!(
            "  independent {q}-sets: {} first {}",
            c.indep_count,
            members(c.indep_violation)
        );
        let band = match c.degree_feasible {
            Some(true) => "all degrees within the band",
            Some(false) => "some degree outside the band",
            None => "no degree band known",
        };
        say!("  {band}");
    }
    Ok(if all { exit::OK } else { exit::NOT_WITNESS })
}

fn load_dataset(dir: Option<&Path>) -> Result<Vec<NamedGraph>> {
    let graphs = match dir {
        Some(d) => load_dir(d)?,
        None => appendix()?,
    };
    for g in &graphs {
        for w in &g.report.warnings {
            eprintln!("warning: graph {}: {w}", g.name);
        }
    }
    Ok(graphs)
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

#[derive(Serialize)]
#[serde(tag = "record", rename_all = "kebab-case")]
enum AppendixLine<'a> {
    Graph(&'a ramsey_core::verify::AppendixRow),
    Deletion(&'a ramsey_core::verify::DeletionRow),
    DeletionClaim(&'a Claim),
    Isomorphism(&'a ramsey_core::verify::IsoOutcome),
}

pub fn verify_appendix(dir: Option<&Path>, json: bool) -> Result<u8> {
    let graphs = load_dataset(dir)?;
    let exec = Exec::default();
    let report = check_appendix(&graphs, exec)?;
    let deletions = verify_deletions(&graphs, exec)?;
    let witnesses: Vec<(String, Graph)> = deletions
        .witnesses()
        .map(|r| {
            let g = graphs
                .iter()
                .find(|g| g.name == r.graph)
                .expect("scan names dataset graphs")
                .graph();
            Ok((
                format!("{}-{}", r.graph, r.vertex),
                g.delete_vertex(r.vertex - 1)?.0,
            ))
        })
        .collect::<Result<_>>()?;
    let iso = pairwise_isomorphism(&witnesses, exec);
    let consistent = report
        .rows
        .iter()
        .all(|r| r.fitness_total == r.fitness_total_incremental)
        && deletions.scan.iter().all(|r| r.triangle_accounting_ok);
    let pass = report.all_pass() && deletions.all_pass() && consistent;

    if json {
        let mut lines: Vec<AppendixLine> = report.rows.iter().map(AppendixLine::Graph).collect();
        lines.extend(deletions.scan.iter().map(AppendixLine::Deletion));
        lines.extend(deletions.claims.iter().map(AppendixLine::DeletionClaim));
        lines.extend(iso.iter().map(AppendixLine::Isomorphism));
        for line in lines {
            say!("{}", serde_json::to_string(&line)?);
        }
        return Ok(if pass { exit::OK } else { exit::CONTRADICTION });
    }

    say!("graph  vertices  edges  warnings  triangles  10-sets  fitness(3,10)  claims");
    for r in &report.rows {
        let claims: Vec<String> = r
            .claims
            .iter()
            .map(|c| {
                format!(
                    "{} {} (expected {})",
                    c.property,
                    verdict(c.pass),
                    c.expected
                )
            })
            .collect();
        say!(
            "{:<5}  {:>8}  {:>5}  {:>8}  {:>9}  {:>7}  {:>13}  {}",
            r.name,
            r.vertices,
            r.edges,
            r.parse_warnings,
            r.triangles,
            r.ten_indep,
            r.fitness_total,
            claims.join(", ")
        );
    }
    say!("");
    say!("single-vertex deletions checked at (3,10):");
    for (r, c) in deletions.named.iter().zip(&deletions.claims) {
        say!(
            "  {}-{:<3} triangles {}  10-sets {}  {}  {}",
            r.graph,
            r.vertex,
            r.triangles,
            r.ten_indep,
            if r.is_witness {
                "witness"
            } else {
                "not a witness"
            },
            verdict(c.pass)
        );
    }
    let names: Vec<&str> = witnesses.iter().map(|(n, _)| n.as_str()).collect();
    say!(
        "all {} deletions scanned; witnesses: {}",
        deletions.scan.len(),
        if names.is_empty() {
            "none".into()
        } else {
            names.join(" ")
        }
    );
    if !iso.is_empty() {
        say!("isomorphism among deletion witnesses:");
        for o in &iso {
            say!(
                "  {} vs {}: {}",
                o.left,
                o.right,
                if o.isomorphic {
                    "isomorphic"
                } else {
                    "not isomorphic"
                }
            );
        }
    }
    if !consistent {
        say!("internal cross-check FAILED");
    }
    say!(
        "{}",
        if pass {
            "all claims hold"
        } else {
            "some claims FAIL"
        }
    );
    Ok(if pass { exit::OK } else { exit::CONTRADICTION })
}

pub fn count(
    file: &Path,
    indep: Option<(usize, usize)>,
    cliques: Option<(usize, usize)>,
    pq: Option<(usize, usize)>,
) -> Result<u8> {
    if indep.is_none() && cliques.is_none() && pq.is_none() {
        bail!(Usage("give --indep, --cliques, or --p with --q".into()));
    }
    let g = read_graph(file)?;
    let line = |(lo, hi): (usize, usize),
                f: &dyn Fn(usize) -> ramsey_core::Result<u64>|
     -> Result<String> {
        let counts = (lo..=hi)
            .map(f)
            .collect::<ramsey_core::Result<Vec<u64>>>()?;
        Ok(counts
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(" "))
    };
    if let Some(r) = cliques {
        say!("{}", line(r, &|k| count_cliques(&g, k))?);
    }
    if let Some(r) = indep {
        say!("{}", line(r, &|k| count_independent_sets(&g, k))?);
    }
    if let Some((p, q)) = pq {
        let f = fitness(&g, p, q)?;
        say!(
            "fitness {} ({} {p}-cliques, {} independent {q}-sets)",
            f.total,
            f.clique_count,
            f.indep_count
        );
    }
    Ok(exit::OK)
}

pub fn bounds(p: usize, q: usize, n: usize) -> Result<u8> {
    let band = degree_range(p, q, n)?;
    say!("{band}");
    if !band.is_feasible() {
        say!("empty band: no r({p},{q},{n}) graph exists");
    }
    if let Some(d) = published_band_discrepancy(p, q, n) {
        say!(
            "note: the commonly published band {} differs from the derived {}",
            d.published,
            d.computed
        );
    }
    Ok(exit::OK)
}

pub fn enumerate_tf(k: usize, out: Option<&Path>) -> Result<u8> {
    let graphs = enumerate_triangle_free(k)?;
    let text: String = graphs
        .iter()
        .map(|g| encode_graph6(g.graph()) + "\n")
        .collect();
    match out {
        Some(path) => {
            std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
            say!(
                "{} triangle-free graphs on {k} vertices written to {}",
                graphs.len(),
                path.display()
            );
        }
        None => say!("{}", text.trim_end()),
    }
    Ok(exit::OK)
}

pub fn extract_base(dir: Option<&Path>, out: &Path) -> Result<u8> {
    let graphs = load_dataset(dir)?;
    let base = base_of(graphs[0].graph())?;
    let parent = out
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let stem = out
        .file_stem()
        .and_then(|s| s.to_str())
        .ok_or_else(|| Usage(format!("bad output path {}", out.display())))?;
    std::fs::create_dir_all(parent)?;
    for path in write_graph(parent, stem, &base, &OutputFormats::default())? {
        say!("wrote {}", path.display());
    }
    let mut claims = validate_base(&base)?;
    for g in &graphs[1..] {
        claims.push(Claim::new(
            format!("graph {}", g.name),
            "shares the base (1 = yes)",
            1,
            (base_of(g.graph())? == base) as u64,
        ));
    }
    for c in &claims {
        say!(
            "{}  {} {}: {} (expected {})",
            verdict(c.pass),
            c.subject,
            c.property,
            c.computed,
            c.expected
        );
    }
    Ok(if claims.iter().all(|c| c.pass) {
        exit::OK
    } else {
        exit::CONTRADICTION
    })
}
