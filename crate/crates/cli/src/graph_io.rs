//! Reading and writing graph files.
//!
//! `.g6` files hold graph6 (first non-blank line); anything else is read as
//! an adjacency list.

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};

use ramsey_core::format::{
    decode_graph6, emit_adjacency_list, encode_graph6, parse_adjacency_list,
};
use ramsey_core::Graph;

use crate::config::OutputFormats;

fn is_graph6(path: &Path) -> bool {
    path.extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("g6"))
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| ramsey_core::Error::Data(format!("{}: {e}", path.display())).into())
}

/// Reads a graph, printing any reconciliation warnings to stderr.
pub fn read_graph(path: &Path) -> Result<Graph> {
    let text = read_text(path)?;
    if is_graph6(path) {
        let line = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
        return decode_graph6(line).with_context(|| path.display().to_string());
    }
    let report = parse_adjacency_list(&text).with_context(|| path.display().to_string())?;
    for w in &report.warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(report.graph)
}

/// Writes `<stem>.adj` and/or `<stem>.g6` into `dir`; returns the paths.
pub fn write_graph(
    dir: &Path,
    stem: &str,
    g: &Graph,
    formats: &OutputFormats,
) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    if formats.adjacency {
        let path = dir.join(format!("{stem}.adj"));
        std::fs::write(&path, emit_adjacency_list(g))
            .with_context(|| format!("writing {}", path.display()))?;
        written.push(path);
    }
    if formats.graph6 {
        let path = dir.join(format!("{stem}.g6"));
        std::fs::write(&path, encode_graph6(g) + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
        written.push(path);
    }
    Ok(written)
}
