//! Independent sets of a fixed base graph, precomputed once so that the
//! fitness of many extensions of that base can be evaluated incrementally.

use std::io::{BufRead, Write};
use std::ops::RangeInclusive;

use crate::construct::ExtensionState;
use crate::error::{invalid, Error, Result};
use crate::format::{decode_graph6, encode_graph6};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

use super::{check_order, count_within, for_each_clique, FitnessReport};

/// Stored independent-set count above which building a cache fails.
pub const DEFAULT_MAX_CACHED_SETS: usize = 1 << 26;

const CACHE_MAGIC: &str = "ramsey-indep-cache";
const CACHE_VERSION: u32 = 1;

/// One independent set of the base graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CachedSet {
    pub members: VertexSet,
    /// Base vertices neither in the set nor adjacent to any member.
    pub non_adjacent: VertexSet,
}

impl CachedSet {
    fn new(base: &Graph, members: VertexSet) -> Self {
        let closed = members
            .iter()
            .fold(members, |acc, v| acc.union(base.neighbors(v)));
        CachedSet {
            members,
            non_adjacent: base.vertices().difference(closed),
        }
    }

    /// True if no member is attached to any vertex of `attached`.
    #[inline]
    pub fn avoids(&self, attached: VertexSet) -> bool {
        self.members.is_disjoint(attached)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndepSetCache {
    base: Graph,
    base_complement: Graph,
    k_range: RangeInclusive<usize>,
    sets_by_size: Vec<Vec<CachedSet>>,
}

impl IndepSetCache {
    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn k_range(&self) -> RangeInclusive<usize> {
        self.k_range.clone()
    }

    /// Cached `k`-sets, or `None` when `k` is outside the cached range.
    pub fn sets(&self, k: usize) -> Option<&[CachedSet]> {
        self.k_range
            .contains(&k)
            .then(|| self.sets_by_size[k - self.k_range.start()].as_slice())
    }

    pub fn count(&self, k: usize) -> Option<u64> {
        self.sets(k).map(|s| s.len() as u64)
    }

    /// `(k, count)` for every cached size.
    pub fn counts(&self) -> Vec<(usize, u64)> {
        self.k_range
            .clone()
            .map(|k| (k, self.count(k).unwrap_or(0)))
            .collect()
    }

    /// Number of independent `k`-sets of the base that avoid `blocked`.
    fn count_avoiding(&self, k: usize, blocked: VertexSet) -> u64 {
        if k == 0 {
            return 1;
        }
        if k > self.base.order() {
            return 0;
        }
        match self.sets(k) {
            Some(sets) => sets.iter().filter(|s| s.avoids(blocked)).count() as u64,
            None => {
                let free = self.base.vertices().difference(blocked);
                count_within(self.base_complement.adjacency(), free, k, u64::MAX)
            }
        }
    }

    /// Writes the versioned text form, keyed by the base graph's graph6 string.
    pub fn write_to<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "{CACHE_MAGIC} v{CACHE_VERSION}")?;
        writeln!(w, "base {}", encode_graph6(&self.base))?;
        writeln!(w, "range {} {}", self.k_range.start(), self.k_range.end())?;
        for k in self.k_range.clone() {
            let sets = self.sets(k).unwrap_or(&[]);
            writeln!(w, "k {k} {}", sets.len())?;
            for s in sets {
                writeln!(w, "{:016x}", s.members.bits())?;
            }
        }
        Ok(())
    }

    /// Reads a cache written by [`write_to`](Self::write_to), rejecting it
    /// unless its key matches `expected_base`.
    pub fn read_from<R: BufRead>(r: R, expected_base: &Graph) -> Result<Self> {
        let mut lines = r.lines().enumerate().map(|(i, l)| (i + 1, l));
        let mut next = |what: &str| -> Result<(usize, String)> {
            match lines.next() {
                Some((no, Ok(l))) => Ok((no, l)),
                Some((no, Err(e))) => Err(Error::Parse {
                    line: no,
                    message: e.to_string(),
                }),
                None => Err(Error::Data(format!("cache truncated before {what}"))),
            }
        };
        let bad = |line: usize, msg: &str| Error::Parse {
            line,
            message: msg.to_string(),
        };

        let (no, header) = next("header")?;
        if header.trim() != format!("{CACHE_MAGIC} v{CACHE_VERSION}") {
            return Err(bad(no, "unrecognized cache header or version"));
        }
        let (no, key) = next("base key")?;
        let key = key
            .strip_prefix("base ")
            .ok_or_else(|| bad(no, "missing base key"))?;
        let base = decode_graph6(key.trim())?;
        if &base != expected_base {
            return Err(Error::Data(
                "cache was built for a different base graph".into(),
            ));
        }
        let (no, range) = next("range")?;
        let nums: Vec<usize> = range
            .strip_prefix("range ")
            .ok_or_else(|| bad(no, "missing range"))?
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad(no, "bad range bound")))
            .collect::<Result<_>>()?;
        let [lo, hi] = nums[..] else {
            return Err(bad(no, "range needs two bounds"));
        };
        if lo == 0 || lo > hi {
            return Err(bad(no, "empty or zero-based range"));
        }

        let mut sets_by_size = Vec::new();
        for k in lo..=hi {
            let (no, head) = next("size header")?;
            let fields: Vec<&str> = head.split_whitespace().collect();
            let count: usize = match fields[..] {
                ["k", kk, c] if kk.parse() == Ok(k) => {
                    c.parse().map_err(|_| bad(no, "bad set count"))?
                }
                _ => return Err(bad(no, "expected size header")),
            };
            let mut sets = Vec::with_capacity(count);
            for _ in 0..count {
                let (no, hex) = next("set")?;
                let members = VertexSet(
                    u64::from_str_radix(hex.trim(), 16).map_err(|_| bad(no, "bad set mask"))?,
                );
                let independent = members
                    .iter()
                    .all(|v| base.neighbors(v).is_disjoint(members));
                if members.len() != k || !members.is_subset(base.vertices()) || !independent {
                    return Err(bad(
                        no,
                        "stored set is not an independent set of the stated size",
                    ));
                }
                sets.push(CachedSet::new(&base, members));
            }
            sets_by_size.push(sets);
        }
        Ok(IndepSetCache {
            base_complement: base.complement(),
            base,
            k_range: lo..=hi,
            sets_by_size,
        })
    }
}

/// Lists every independent set of `base` whose size is in `k_range`.
pub fn build_indep_cache(
    base: &Graph,
    k_range: RangeInclusive<usize>,
    max_sets: usize,
) -> Result<IndepSetCache> {
    let (lo, hi) = (*k_range.start(), *k_range.end());
    if lo == 0 || lo > hi || hi > base.order() {
        return invalid(format!(
            "cache range {lo}..={hi} outside 1..={}",
            base.order()
        ));
    }
    let comp = base.complement();
    let mut stored = 0usize;
    let mut sets_by_size = Vec::with_capacity(hi - lo + 1);
    for k in lo..=hi {
        let expected = count_within(comp.adjacency(), base.vertices(), k, u64::MAX);
        stored = stored.saturating_add(expected as usize);
        if stored > max_sets {
            return Err(Error::Resource {
                class: format!("{k}-independent sets"),
                detail: format!("{stored} sets exceed the budget of {max_sets}"),
            });
        }
        let mut sets = Vec::with_capacity(expected as usize);
        for_each_clique(comp.adjacency(), base.vertices(), k, &mut |s| {
            sets.push(CachedSet::new(base, s))
        });
        sets_by_size.push(sets);
    }
    Ok(IndepSetCache {
        base: base.clone(),
        base_complement: comp,
        k_range,
        sets_by_size,
    })
}

/// Fitness of the assembled extension, computed from the cache.
///
/// Cliques are split by the set `T` of added vertices they contain: `T` must
/// be a clique of the inner graph and the rest a clique of the base inside the
/// common attachment set of `T`. Independent sets are split the same way: `T`
/// independent in the inner graph and the rest an independent set of the base
/// containing no vertex attached to `T`.
pub fn extension_fitness(
    cache: &IndepSetCache,
    ext: &ExtensionState,
    p: usize,
    q: usize,
) -> Result<FitnessReport> {
    if ext.base() != cache.base() {
        return invalid("extension base differs from the cached base graph");
    }
    let base = cache.base();
    let n = ext.order();
    if p == 0 || p > n || q == 0 || q > n {
        return invalid(format!(
            "clique order {p} or independent-set order {q} outside 1..={n}"
        ));
    }
    let inner = ext.inner();
    let added = inner.order();
    let attachments = ext.attachments();

    let mut cliques = if p <= base.order() {
        check_order(base, p, "clique")?;
        count_within(base.adjacency(), base.vertices(), p, u64::MAX)
    } else {
        0
    };
    let mut indep = cache.count_avoiding(q, VertexSet::EMPTY);

    for t in 1u64..1 << added {
        let subset = VertexSet(t);
        let size = subset.len();
        let is_clique = subset
            .iter()
            .all(|u| subset.without(u).is_subset(inner.neighbors(u)));
        let is_independent = subset
            .iter()
            .all(|u| inner.neighbors(u).is_disjoint(subset));

        if is_clique && size <= p {
            let common = subset
                .iter()
                .fold(base.vertices(), |acc, u| acc.intersection(attachments[u]));
            cliques += count_within(base.adjacency(), common, p - size, u64::MAX);
        }
        if is_independent && size <= q {
            let blocked = subset
                .iter()
                .fold(VertexSet::EMPTY, |acc, u| acc.union(attachments[u]));
            indep += cache.count_avoiding(q - size, blocked);
        }
    }
    Ok(FitnessReport::new(cliques, indep))
}
