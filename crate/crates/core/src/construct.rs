//! Extensions of a fixed base graph by a handful of new vertices.
//!
//! The new vertices carry a triangle-free inner graph (one representative per
//! isomorphism class) and each is attached to its own disjoint set of base
//! vertices. Attachment sets are cut from a random permutation of the base:
//! added vertex `k` takes permutation positions `(S_{k-1}, S_k]`, where `S_k`
//! sums `deg(u_j) - t_j` over `j <= k` and `t_j` is the inner degree.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::DegreeRange;
use crate::counting::count_cliques;
use crate::error::{invalid, Error, Result};
use crate::format::{decode_graph6, encode_graph6};
use crate::graph::{Graph, MAX_VERTICES};
use crate::vertex_set::VertexSet;

/// Largest inner-graph order [`enumerate_triangle_free`] supports.
pub const MAX_INNER_ORDER: usize = 7;

/// A triangle-free graph on the added vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InnerGraph {
    graph: Graph,
    degrees: Vec<usize>,
}

impl InnerGraph {
    pub fn new(graph: Graph) -> Result<Self> {
        if graph.order() >= 3 && count_cliques(&graph, 3)? > 0 {
            return invalid("inner graph contains a triangle");
        }
        let degrees = graph.degrees();
        Ok(InnerGraph { graph, degrees })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Degree of each added vertex inside the inner graph.
    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }
}

fn pair_index(i: usize, j: usize) -> usize {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    b * (b - 1) / 2 + a
}

fn for_each_permutation(k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(perm: &mut Vec<usize>, used: &mut [bool], f: &mut impl FnMut(&[usize])) {
        if perm.len() == used.len() {
            f(perm);
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                perm.push(v);
                rec(perm, used, f);
                perm.pop();
                used[v] = false;
            }
        }
    }
    rec(&mut Vec::with_capacity(k), &mut vec![false; k], f);
}

/// Smallest upper-triangle code over all relabelings.
fn canonical_code(g: &Graph) -> u32 {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut best = u32::MAX;
    for_each_permutation(g.order(), &mut |perm| {
        let code = edges
            .iter()
            .fold(0u32, |acc, &(u, v)| acc | 1 << pair_index(perm[u], perm[v]));
        best = best.min(code);
    });
    best
}

fn graph_from_code(k: usize, code: u32) -> Graph {
    let edges = (1..k)
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .filter(|&(i, j)| code >> pair_index(i, j) & 1 == 1);
    Graph::from_edges(k, edges).expect("code describes a valid graph")
}

/// One representative per isomorphism class of triangle-free graphs on `k`
/// vertices, ordered by edge count and then canonical code.
///
/// Every triangle-free graph on `k` vertices is a triangle-free graph on
/// `k - 1` vertices plus a vertex joined to an independent set, so classes
/// are grown one vertex at a time and deduplicated by canonical code.
pub fn enumerate_triangle_free(k: usize) -> Result<Vec<InnerGraph>> {
    if k == 0 || k > MAX_INNER_ORDER {
        return Err(Error::Unsupported(format!(
            "triangle-free enumeration supports 1..={MAX_INNER_ORDER} vertices, got {k}"
        )));
    }
    let mut codes: BTreeSet<u32> = BTreeSet::from([0]);
    for order in 2..=k {
        let mut next = BTreeSet::new();
        for &code in &codes {
            let prev = graph_from_code(order - 1, code);
            let comp = prev.complement();
            for mask in 0u64..1 << (order - 1) {
                let s = VertexSet(mask);
                if s.iter().any(|v| !s.without(v).is_subset(comp.neighbors(v))) {
                    continue;
                }
                let mut g = prev.with_isolated(1)?;
                for v in s {
                    g.add_edge_unchecked(v, order - 1);
                }
                next.insert(canonical_code(&g));
            }
        }
        codes = next;
    }
    let mut out: Vec<(usize, u32)> = codes
        .into_iter()
        .map(|c| (c.count_ones() as usize, c))
        .collect();
    out.sort_unstable();
    out.into_iter()
        .map(|(_, c)| InnerGraph::new(graph_from_code(k, c)))
        .collect()
}

/// A base graph extended by `inner.order()` new vertices.
///
/// Added vertex `i` gets index `base.order() + i` in the assembled graph and
/// is adjacent to the base vertices in `attachments[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ExtensionRecord", into = "ExtensionRecord")]
pub struct ExtensionState {
    base: Arc<Graph>,
    inner: Graph,
    inner_index: Option<usize>,
    attachments: Vec<VertexSet>,
}

impl ExtensionState {
    /// Checks only structure: sizes and index ranges. See
    /// [`check_invariants`](Self::check_invariants) for the search constraints.
    pub fn new(
        base: Arc<Graph>,
        inner: Graph,
        inner_index: Option<usize>,
        attachments: Vec<VertexSet>,
    ) -> Result<Self> {
        if attachments.len() != inner.order() {
            return invalid(format!(
                "{} attachment sets for {} added vertices",
                attachments.len(),
                inner.order()
            ));
        }
        if base.order() + inner.order() > MAX_VERTICES {
            return invalid(format!(
                "extension would have more than {MAX_VERTICES} vertices"
            ));
        }
        if let Some(i) = attachments
            .iter()
            .position(|a| !a.is_subset(base.vertices()))
        {
            return invalid(format!("attachment set {i} leaves the base vertex range"));
        }
        Ok(ExtensionState {
            base,
            inner,
            inner_index,
            attachments,
        })
    }

    /// Splits `g` into the subgraph on its first `base_order` vertices and
    /// the remaining added vertices.
    pub fn decompose(g: &Graph, base_order: usize) -> Result<Self> {
        if base_order == 0 || base_order >= g.order() {
            return invalid(format!(
                "base order {base_order} must be in 1..{}",
                g.order()
            ));
        }
        let base_set = VertexSet::full(base_order);
        let base = g.induced_subgraph(base_set)?;
        let inner = g.induced_subgraph(g.vertices().difference(base_set))?;
        let attachments = (base_order..g.order())
            .map(|u| g.neighbors(u).intersection(base_set))
            .collect();
        Self::new(Arc::new(base), inner, None, attachments)
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn shared_base(&self) -> &Arc<Graph> {
        &self.base
    }

    pub fn inner(&self) -> &Graph {
        &self.inner
    }

    /// Position of the inner graph in [`enumerate_triangle_free`] order, when
    /// it came from there.
    pub fn inner_index(&self) -> Option<usize> {
        self.inner_index
    }

    pub fn attachments(&self) -> &[VertexSet] {
        &self.attachments
    }

    pub fn added_count(&self) -> usize {
        self.inner.order()
    }

    /// Vertex count of the assembled graph.
    pub fn order(&self) -> usize {
        self.base.order() + self.inner.order()
    }

    pub fn added_degree(&self, i: usize) -> usize {
        self.attachments[i].len() + self.inner.degree(i)
    }

    /// Base vertices not attached to any added vertex.
    pub fn unattached(&self) -> VertexSet {
        let used = self
            .attachments
            .iter()
            .fold(VertexSet::EMPTY, |acc, a| acc.union(*a));
        self.base.vertices().difference(used)
    }

    /// Disjoint attachments and every added degree inside `range`.
    pub fn check_invariants(&self, range: DegreeRange) -> Result<()> {
        let mut seen = VertexSet::EMPTY;
        for (i, a) in self.attachments.iter().enumerate() {
            if !seen.is_disjoint(*a) {
                return invalid(format!(
                    "attachment set of added vertex {i} overlaps an earlier one"
                ));
            }
            seen = seen.union(*a);
            if !range.contains(self.added_degree(i)) {
                return invalid(format!(
                    "added vertex {i} has degree {} outside {range}",
                    self.added_degree(i)
                ));
            }
        }
        Ok(())
    }

    /// The assembled graph: base edges, inner edges on the added vertices, and
    /// attachment edges.
    pub fn to_graph(&self) -> Graph {
        let m = self.base.order();
        let mut g = self
            .base
            .with_isolated(self.inner.order())
            .expect("order checked at construction");
        for (u, v) in self.inner.edges() {
            g.add_edge_unchecked(m + u, m + v);
        }
        for (i, a) in self.attachments.iter().enumerate() {
            for v in *a {
                g.add_edge_unchecked(m + i, v);
            }
        }
        g
    }

    fn with_attachments(&self, attachments: Vec<VertexSet>) -> Self {
        ExtensionState {
            base: Arc::clone(&self.base),
            inner: self.inner.clone(),
            inner_index: self.inner_index,
            attachments,
        }
    }
}

/// Same as [`ExtensionState::to_graph`].
pub fn extension_to_graph(ext: &ExtensionState) -> Graph {
    ext.to_graph()
}

/// Cuts consecutive chunks of `permutation` (0-indexed base vertices) into
/// attachment sets of sizes `degrees[i] - t_i`.
pub fn extension_from_permutation(
    base: Arc<Graph>,
    inner: &InnerGraph,
    inner_index: Option<usize>,
    degrees: &[usize],
    permutation: &[usize],
) -> Result<ExtensionState> {
    let m = base.order();
    if degrees.len() != inner.order() {
        return invalid("one target degree per added vertex is required");
    }
    let mut sorted = permutation.to_vec();
    sorted.sort_unstable();
    if sorted != (0..m).collect::<Vec<_>>() {
        return invalid(format!("not a permutation of the {m} base vertices"));
    }
    let mut attachments = Vec::with_capacity(degrees.len());
    let mut start = 0;
    for (i, (&d, &t)) in degrees.iter().zip(inner.degrees()).enumerate() {
        let Some(take) = d.checked_sub(t) else {
            return invalid(format!(
                "target degree {d} of added vertex {i} is below its inner degree {t}"
            ));
        };
        if start + take > m {
            return invalid(format!("attachment demand exceeds the {m} base vertices"));
        }
        attachments.push(permutation[start..start + take].iter().copied().collect());
        start += take;
    }
    ExtensionState::new(base, inner.graph().clone(), inner_index, attachments)
}

const MAX_DEGREE_DRAWS: usize = 1_000_000;

/// Draws target degrees uniformly from `range` (at least the inner degree),
/// redrawing until the attachments fit in the base, then chunks a uniform
/// random permutation of the base.
pub fn random_extension<R: Rng + ?Sized>(
    base: &Arc<Graph>,
    inner: &InnerGraph,
    inner_index: Option<usize>,
    range: DegreeRange,
    rng: &mut R,
) -> Result<ExtensionState> {
    let m = base.order();
    let mut lows = Vec::with_capacity(inner.order());
    for (i, &t) in inner.degrees().iter().enumerate() {
        let lo = range.lo.max(t as i64);
        if lo > range.hi {
            return invalid(format!(
                "added vertex {i} has inner degree {t}, above the degree range {range}"
            ));
        }
        lows.push(lo as usize);
    }
    let min_demand: usize = lows.iter().zip(inner.degrees()).map(|(l, t)| l - t).sum();
    if min_demand > m {
        return invalid(format!("the degree range {range} needs at least {min_demand} attachments but the base has {m} vertices"));
    }
    let hi = range.hi as usize;
    let mut degrees = vec![0; inner.order()];
    let mut draws = 0;
    loop {
        for (d, &lo) in degrees.iter_mut().zip(&lows) {
            *d = rng.gen_range(lo..=hi);
        }
        let demand: usize = degrees
            .iter()
            .zip(inner.degrees())
            .map(|(d, t)| d - t)
            .sum();
        if demand <= m {
            break;
        }
        draws += 1;
        if draws >= MAX_DEGREE_DRAWS {
            return Err(Error::Unsupported(format!(
                "no degree vector fitting the base found in {MAX_DEGREE_DRAWS} draws"
            )));
        }
    }
    let mut perm: Vec<usize> = (0..m).collect();
    perm.shuffle(rng);
    extension_from_permutation(Arc::clone(base), inner, inner_index, &degrees, &perm)
}

/// Toggles one attachment edge while keeping attachments disjoint and added
/// degrees within `range`. `None` when no such move exists.
pub fn mutate_extension<R: Rng + ?Sized>(
    ext: &ExtensionState,
    range: DegreeRange,
    rng: &mut R,
) -> Option<ExtensionState> {
    let free = ext.unattached();
    let moves: Vec<(usize, VertexSet, VertexSet)> = (0..ext.added_count())
        .map(|i| {
            let d = ext.added_degree(i) as i64;
            let removable = if d > range.lo {
                ext.attachments[i]
            } else {
                VertexSet::EMPTY
            };
            let addable = if d < range.hi { free } else { VertexSet::EMPTY };
            (i, removable, addable)
        })
        .filter(|(_, r, a)| !r.is_empty() || !a.is_empty())
        .collect();
    let &(i, removable, addable) = moves.get(rng.gen_range(0..moves.len().max(1)))?;
    let pick = rng.gen_range(0..removable.len() + addable.len());
    let mut attachments = ext.attachments.clone();
    if pick < removable.len() {
        attachments[i].remove(removable.iter().nth(pick).expect("index in range"));
    } else {
        attachments[i].insert(
            addable
                .iter()
                .nth(pick - removable.len())
                .expect("index in range"),
        );
    }
    Some(ext.with_attachments(attachments))
}

/// On-disk form of an [`ExtensionState`]. Attachment labels are 1-indexed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionRecord {
    pub base: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inner_index: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inner: Option<String>,
    pub attachments: Vec<Vec<usize>>,
}

impl From<ExtensionState> for ExtensionRecord {
    fn from(ext: ExtensionState) -> Self {
        ExtensionRecord {
            base: encode_graph6(&ext.base),
            inner_index: ext.inner_index,
            inner: ext.inner_index.is_none().then(|| encode_graph6(&ext.inner)),
            attachments: ext.attachments.iter().map(|a| a.to_one_indexed()).collect(),
        }
    }
}

impl TryFrom<ExtensionRecord> for ExtensionState {
    type Error = Error;

    fn try_from(rec: ExtensionRecord) -> Result<Self> {
        let base = decode_graph6(&rec.base)?;
        let added = rec.attachments.len();
        let inner = match (&rec.inner, rec.inner_index) {
            (Some(g6), _) => decode_graph6(g6)?,
            (None, Some(idx)) => enumerate_triangle_free(added)?
                .get(idx)
                .map(|ig| ig.graph().clone())
                .ok_or_else(|| Error::Data(format!("inner-graph index {idx} out of range")))?,
            (None, None) => {
                return Err(Error::Data("extension record names no inner graph".into()))
            }
        };
        let mut attachments = Vec::with_capacity(added);
        for row in &rec.attachments {
            let mut s = VertexSet::EMPTY;
            for &v in row {
                if v == 0 || v > base.order() {
                    return Err(Error::Data(format!(
                        "attachment label {v} outside 1..={}",
                        base.order()
                    )));
                }
                s.insert(v - 1);
            }
            attachments.push(s);
        }
        ExtensionState::new(Arc::new(base), inner, rec.inner_index, attachments)
    }
}
