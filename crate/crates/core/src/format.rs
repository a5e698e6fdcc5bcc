//! Interchange formats.
//!
//! * Adjacency lists: one line per vertex, `v:n1 n2 ...`, 1-indexed, LF
//!   terminated. Rows may be listed in any order but must cover `1..=n`
//!   exactly once.
//! * graph6: the standard printable encoding of the upper triangle.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};
use crate::vertex_set::VertexSet;

/// Why a raw adjacency entry needed reconciliation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WarningKind {
    /// `v` is listed in `u`'s row but `u` is missing from `v`'s row.
    Unreciprocated,
    /// A row lists its own vertex.
    SelfLoop,
    /// A row lists the same neighbor twice.
    Duplicate,
}

impl fmt::Display for WarningKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WarningKind::Unreciprocated => "unreciprocated",
            WarningKind::SelfLoop => "self-loop",
            WarningKind::Duplicate => "duplicate",
        })
    }
}

/// One reconciled entry. Vertex labels are 1-indexed as in the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ParseWarning {
    pub u: usize,
    pub v: usize,
    pub kind: WarningKind,
}

impl fmt::Display for ParseWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            WarningKind::Unreciprocated => write!(
                f,
                "{} lists {} but {} does not list {}",
                self.u, self.v, self.v, self.u
            ),
            WarningKind::SelfLoop => write!(f, "{} lists itself", self.u),
            WarningKind::Duplicate => write!(f, "{} lists {} more than once", self.u, self.v),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ParseReport {
    pub graph: Graph,
    pub warnings: Vec<ParseWarning>,
}

fn parse_err<T>(line: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        line,
        message: message.into(),
    })
}

/// Parses adjacency-list text. An edge is kept if either endpoint lists it;
/// every one-sided, duplicated, or self-referencing entry is reported.
pub fn parse_adjacency_list(text: &str) -> Result<ParseReport> {
    let mut rows: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let Some((head, tail)) = line.split_once(':') else {
            return parse_err(line_no, format!("missing ':' in {line:?}"));
        };
        let v: usize = match head.trim().parse() {
            Ok(v) if v >= 1 => v,
            _ => return parse_err(line_no, format!("bad vertex label {:?}", head.trim())),
        };
        let mut nbrs = Vec::new();
        for tok in tail.split_whitespace() {
            match tok.parse::<usize>() {
                Ok(w) if w >= 1 => nbrs.push(w),
                _ => return parse_err(line_no, format!("bad neighbor label {tok:?}")),
            }
        }
        rows.push((line_no, v, nbrs));
    }

    let n = rows.len();
    if n == 0 {
        return parse_err(1, "no vertex rows");
    }
    if n > MAX_VERTICES {
        return parse_err(
            rows[MAX_VERTICES].0,
            format!("more than {MAX_VERTICES} vertices"),
        );
    }

    let mut listed = vec![VertexSet::EMPTY; n];
    let mut seen_row = vec![false; n];
    let mut warnings = Vec::new();
    for (line_no, v, nbrs) in &rows {
        if *v > n {
            return parse_err(*line_no, format!("row label {v} exceeds vertex count {n}"));
        }
        let u = v - 1;
        if std::mem::replace(&mut seen_row[u], true) {
            return parse_err(*line_no, format!("duplicate row for vertex {v}"));
        }
        let mut in_row = BTreeSet::new();
        for &w in nbrs {
            if w > n {
                return parse_err(*line_no, format!("neighbor {w} exceeds vertex count {n}"));
            }
            if w == *v {
                warnings.push(ParseWarning {
                    u: *v,
                    v: w,
                    kind: WarningKind::SelfLoop,
                });
            } else if !in_row.insert(w) {
                warnings.push(ParseWarning {
                    u: *v,
                    v: w,
                    kind: WarningKind::Duplicate,
                });
            } else {
                listed[u].insert(w - 1);
            }
        }
    }

    let mut adj = listed.clone();
    for u in 0..n {
        for w in listed[u] {
            if !listed[w].contains(u) {
                warnings.push(ParseWarning {
                    u: u + 1,
                    v: w + 1,
                    kind: WarningKind::Unreciprocated,
                });
                adj[w].insert(u);
            }
        }
    }
    warnings.sort_by_key(|w| (w.u, w.v, w.kind as u8));

    Ok(ParseReport {
        graph: Graph::from_adjacency(adj)?,
        warnings,
    })
}

/// Writes one `v:neighbors` row per vertex, 1-indexed and sorted.
pub fn emit_adjacency_list(g: &Graph) -> String {
    let mut out = String::new();
    for v in 0..g.order() {
        out.push_str(&(v + 1).to_string());
        out.push(':');
        let row: Vec<String> = g.neighbors(v).iter().map(|w| (w + 1).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

const G6_BIAS: u8 = 63;

/// Encodes `g` in graph6. Orders up to 62 use the one-byte size prefix.
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(G6_BIAS + n as u8);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(G6_BIAS + ((n >> shift) & 0x3f) as u8);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(G6_BIAS + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(G6_BIAS + (acc << (6 - filled)));
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}

pub fn decode_graph6(text: &str) -> Result<Graph> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    let bytes = bytes.strip_prefix(b">>graph6<<").unwrap_or(bytes);
    if let Some(b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Graph6(format!("invalid character {:?}", *b as char)));
    }
    let (n, body) = match bytes {
        [] => return Err(Error::Graph6("empty input".into())),
        [126, 126, ..] => {
            return Err(Error::Graph6(
                "orders above 258047 are not supported".into(),
            ))
        }
        [126, a, b, c, rest @ ..] => {
            let n = (((a - G6_BIAS) as usize) << 12)
                | (((b - G6_BIAS) as usize) << 6)
                | (c - G6_BIAS) as usize;
            (n, rest)
        }
        [126, ..] => return Err(Error::Graph6("truncated size prefix".into())),
        [first, rest @ ..] => ((first - G6_BIAS) as usize, rest),
    };
    if n == 0 || n > MAX_VERTICES {
        return Err(Error::Graph6(format!(
            "order {n} outside 1..={MAX_VERTICES}"
        )));
    }
    let bits = n * (n - 1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(Error::Graph6(format!(
            "expected {expected} data bytes for order {n}, found {}",
            body.len()
        )));
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - G6_BIAS;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                g.add_edge_unchecked(i, j);
            }
            k += 1;
        }
    }
    let pad = expected * 6 - bits;
    if pad > 0 && (body[expected - 1] - G6_BIAS) & ((1 << pad) - 1) != 0 {
        return Err(Error::Graph6("nonzero padding bits".into()));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g1() -> Graph {
        Graph::from_edges(5, [(0, 1), (1, 2), (1, 3), (2, 3), (3, 4)]).unwrap()
    }

    #[test]
    fn symmetric_rows_parse_cleanly() {
        let r = parse_adjacency_list("1:2\n2:1").unwrap();
        assert_eq!(r.graph, Graph::complete(2).unwrap());
        assert!(r.warnings.is_empty());
    }

    #[test]
    fn one_sided_entry_is_reconciled_with_warning() {
        let r = parse_adjacency_list("1:2\n2:").unwrap();
        assert_eq!(r.graph, Graph::complete(2).unwrap());
        assert_eq!(
            r.warnings,
            vec![ParseWarning {
                u: 1,
                v: 2,
                kind: WarningKind::Unreciprocated
            }]
        );
    }

    #[test]
    fn self_loops_and_duplicates_are_reported() {
        let r = parse_adjacency_list("1:1 2 2\n2:1\n").unwrap();
        assert_eq!(r.graph, Graph::complete(2).unwrap());
        let kinds: Vec<_> = r.warnings.iter().map(|w| w.kind).collect();
        assert_eq!(kinds, vec![WarningKind::SelfLoop, WarningKind::Duplicate]);
    }

    #[test]
    fn tolerates_indentation_and_blank_lines() {
        let r = parse_adjacency_list(" 1:2 3\n\n 2:1\n3:1\n").unwrap();
        assert_eq!(r.graph.edge_count(), 2);
    }

    #[test]
    fn parse_errors_name_the_line() {
        let e = parse_adjacency_list("1:2\n2 1\n").unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                line: 2,
                message: "missing ':' in \"2 1\"".into()
            }
        );
        assert!(matches!(
            parse_adjacency_list("1:3\n2:1\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_adjacency_list("1:2\n1:2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_adjacency_list("1:x\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_adjacency_list("1:\n3:\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(parse_adjacency_list("\n\n").is_err());
    }

    #[test]
    fn emits_worked_example() {
        assert_eq!(
            emit_adjacency_list(&g1()),
            "1:2\n2:1 3 4\n3:2 4\n4:2 3 5\n5:4\n"
        );
    }

    #[test]
    fn graph6_small_cases() {
        assert_eq!(encode_graph6(&Graph::complete(2).unwrap()), "A_");
        assert_eq!(encode_graph6(&Graph::empty(1).unwrap()), "@");
        assert_eq!(decode_graph6("A_").unwrap(), Graph::complete(2).unwrap());
        assert_eq!(decode_graph6("@").unwrap(), Graph::empty(1).unwrap());
        // Well-known encoding of the 5-cycle 0-1-2-3-4-0.
        assert_eq!(encode_graph6(&Graph::cycle(5).unwrap()), "Dhc");
    }

    #[test]
    fn graph6_long_form_round_trip() {
        let g = Graph::cycle(64).unwrap();
        let s = encode_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(decode_graph6(&s).unwrap(), g);
    }

    #[test]
    fn graph6_rejects_garbage() {
        assert!(decode_graph6("A ").is_err());
        assert!(decode_graph6("").is_err());
        assert!(decode_graph6("A").is_err());
        assert!(decode_graph6("A`").is_err());
        assert!(decode_graph6("Dhcc").is_err());
    }
}
