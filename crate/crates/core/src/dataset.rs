//! The four 40-vertex graphs shipped under `data/appendix`, and the
//! 35-vertex base graph they share.

use std::path::Path;

use crate::error::{Error, Result};
use crate::format::{parse_adjacency_list, ParseReport};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// Order of the base graph occupying vertices `1..=35` of every dataset graph.
pub const BASE_ORDER: usize = 35;

pub const NAMES: [&str; 4] = ["A", "B", "C", "D"];

const EMBEDDED: [&str; 4] = [
    include_str!("../data/appendix/graph_a.adj"),
    include_str!("../data/appendix/graph_b.adj"),
    include_str!("../data/appendix/graph_c.adj"),
    include_str!("../data/appendix/graph_d.adj"),
];

#[derive(Debug, Clone)]
pub struct NamedGraph {
    pub name: String,
    pub report: ParseReport,
}

impl NamedGraph {
    pub fn graph(&self) -> &Graph {
        &self.report.graph
    }
}

fn parse_named(name: &str, text: &str) -> Result<NamedGraph> {
    let report =
        parse_adjacency_list(text).map_err(|e| Error::Data(format!("graph {name}: {e}")))?;
    Ok(NamedGraph {
        name: name.to_string(),
        report,
    })
}

/// The embedded dataset, parsed.
pub fn appendix() -> Result<Vec<NamedGraph>> {
    NAMES
        .iter()
        .zip(EMBEDDED)
        .map(|(name, text)| parse_named(name, text))
        .collect()
}

/// Reads `graph_a.adj` .. `graph_d.adj` from `dir`.
pub fn load_dir(dir: &Path) -> Result<Vec<NamedGraph>> {
    NAMES
        .iter()
        .map(|name| {
            let path = dir.join(format!("graph_{}.adj", name.to_lowercase()));
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Error::Data(format!("{}: {e}", path.display())))?;
            parse_named(name, &text)
        })
        .collect()
}

/// Subgraph induced by vertices `1..=35`.
pub fn base_of(g: &Graph) -> Result<Graph> {
    if g.order() <= BASE_ORDER {
        return Err(Error::Data(format!(
            "graph has {} vertices, expected more than {BASE_ORDER}",
            g.order()
        )));
    }
    g.induced_subgraph(VertexSet::full(BASE_ORDER))
}

/// Parse warnings of `graphs` as `graph u v kind` lines under a header.
pub fn format_warnings(graphs: &[NamedGraph]) -> String {
    let mut out = String::from("# graph u v kind\n");
    for g in graphs {
        for w in &g.report.warnings {
            out.push_str(&format!("{} {} {} {}\n", g.name, w.u, w.v, w.kind));
        }
    }
    out
}

/// The base graph, taken from graph A.
pub fn base_graph() -> Result<Graph> {
    let graphs = appendix()?;
    base_of(graphs[0].graph())
}
