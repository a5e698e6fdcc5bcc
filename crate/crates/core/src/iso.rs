//! Pairwise graph isomorphism by backtracking over refined vertex colorings.
//!
//! Both graphs are colored jointly, so a color means the same thing on either
//! side. Colors start from degrees and are refined by the multiset of
//! neighbor colors until stable. The search then individualizes one vertex of
//! `g` against each same-colored vertex of `h`, refines again, and recurses
//! until every class is a singleton.

use std::collections::BTreeMap;

use crate::graph::Graph;

/// A bijection `mapping[v_g] = v_h` if `g` and `h` are isomorphic.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    if g.order() != h.order() || g.edge_count() != h.edge_count() {
        return None;
    }
    let mut dg = g.degrees();
    let mut dh = h.degrees();
    let cg = dg.clone();
    let ch = dh.clone();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return None;
    }
    let (cg, ch) = refine(g, h, cg, ch)?;
    let mapping = search(g, h, cg, ch)?;
    debug_assert!(preserves_adjacency(g, h, &mapping));
    Some(mapping)
}

/// True if `mapping` is a bijection carrying every edge and non-edge of `g`
/// onto `h`.
pub fn preserves_adjacency(g: &Graph, h: &Graph, mapping: &[usize]) -> bool {
    let n = g.order();
    if h.order() != n || mapping.len() != n {
        return false;
    }
    let mut hit = vec![false; n];
    for &w in mapping {
        if w >= n || std::mem::replace(&mut hit[w], true) {
            return false;
        }
    }
    (0..n).all(|u| (u + 1..n).all(|v| g.has_edge(u, v) == h.has_edge(mapping[u], mapping[v])))
}

type Signature = (usize, Vec<usize>);

fn signature(g: &Graph, colors: &[usize], v: usize) -> Signature {
    let mut nb: Vec<usize> = g.neighbors(v).iter().map(|w| colors[w]).collect();
    nb.sort_unstable();
    (colors[v], nb)
}

fn histogram(colors: &[usize]) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for &c in colors {
        *m.entry(c).or_insert(0) += 1;
    }
    m
}

/// Joint refinement to a stable coloring; `None` once the two color
/// histograms diverge.
fn refine(
    g: &Graph,
    h: &Graph,
    mut cg: Vec<usize>,
    mut ch: Vec<usize>,
) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = g.order();
    let mut classes = histogram(&cg).len();
    loop {
        if histogram(&cg) != histogram(&ch) {
            return None;
        }
        let sg: Vec<Signature> = (0..n).map(|v| signature(g, &cg, v)).collect();
        let sh: Vec<Signature> = (0..n).map(|v| signature(h, &ch, v)).collect();
        let mut ids: BTreeMap<&Signature, usize> = BTreeMap::new();
        for s in sg.iter().chain(&sh) {
            ids.entry(s).or_insert(0);
        }
        for (i, id) in ids.values_mut().enumerate() {
            *id = i;
        }
        let next_g: Vec<usize> = sg.iter().map(|s| ids[s]).collect();
        let next_h: Vec<usize> = sh.iter().map(|s| ids[s]).collect();
        let next_classes = ids.len();
        cg = next_g;
        ch = next_h;
        if next_classes == classes {
            return (histogram(&cg) == histogram(&ch)).then_some((cg, ch));
        }
        classes = next_classes;
    }
}

fn search(g: &Graph, h: &Graph, cg: Vec<usize>, ch: Vec<usize>) -> Option<Vec<usize>> {
    let n = g.order();
    let hist = histogram(&cg);
    // Smallest non-singleton class; ties by color id.
    let target = hist
        .iter()
        .filter(|(_, &c)| c > 1)
        .min_by_key(|(&col, &c)| (c, col))
        .map(|(&col, _)| col);
    let Some(color) = target else {
        let mut where_h = vec![usize::MAX; hist.len().max(n) + 1];
        let mut mapping = vec![0; n];
        for (w, &c) in ch.iter().enumerate() {
            if c >= where_h.len() {
                where_h.resize(c + 1, usize::MAX);
            }
            where_h[c] = w;
        }
        for (v, &c) in cg.iter().enumerate() {
            mapping[v] = where_h[c];
        }
        return preserves_adjacency(g, h, &mapping).then_some(mapping);
    };

    let v = (0..n).find(|&v| cg[v] == color)?;
    let fresh = cg.iter().chain(&ch).max().copied().unwrap_or(0) + 1;
    for w in (0..n).filter(|&w| ch[w] == color) {
        let mut ng = cg.clone();
        let mut nh = ch.clone();
        ng[v] = fresh;
        nh[w] = fresh;
        if let Some((rg, rh)) = refine(g, h, ng, nh) {
            if let Some(m) = search(g, h, rg, rh) {
                return Some(m);
            }
        }
    }
    None
}
