//! Known two-color Ramsey numbers, the degree band of Ramsey graphs, and the
//! Erdős lower bound for diagonal numbers.

use serde::Serialize;

use crate::error::{invalid, Error, Result};

/// Best known bounds on `R(p, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RamseyValue {
    pub p: usize,
    pub q: usize,
    pub lower: u32,
    pub upper: u32,
    pub exact: bool,
    pub source: &'static str,
}

impl RamseyValue {
    pub fn exact_value(&self) -> Option<u32> {
        self.exact.then_some(self.lower)
    }
}

// (p, q, lower, upper, source), p <= q.
const TABLE: &[(usize, usize, u32, u32, &str)] = &[
    (3, 3, 6, 6, "Greenwood and Gleason 1955"),
    (3, 4, 9, 9, "Greenwood and Gleason 1955"),
    (3, 5, 14, 14, "Greenwood and Gleason 1955"),
    (3, 6, 18, 18, "Graver and Yackel 1968"),
    (3, 7, 23, 23, "Kalbfleisch 1966"),
    (3, 8, 28, 28, "McKay and Min 1992"),
    (3, 9, 36, 36, "Grinstead and Roberts 1982"),
    (3, 10, 40, 42, "Exoo 1989; Goedgebeur and Radziszowski 2012"),
    (3, 11, 46, 50, "Goedgebeur and Radziszowski 2012"),
    (4, 4, 18, 18, "Greenwood and Gleason 1955"),
    (4, 5, 25, 25, "McKay and Radziszowski 1992"),
    (4, 6, 36, 41, "Exoo 2012"),
    (4, 8, 59, 84, "Exoo 2015"),
    (5, 5, 43, 49, "McKay and Radziszowski 1995"),
    (5, 10, 149, 442, "Exoo 2015"),
];

/// Looks up `R(p, q)`. `Ok(None)` means the pair is not tabulated.
pub fn known_ramsey(p: usize, q: usize) -> Result<Option<RamseyValue>> {
    if p < 2 || q < 2 {
        return invalid(format!("Ramsey orders must be at least 2, got ({p}, {q})"));
    }
    if p == 2 || q == 2 {
        let v = p.max(q) as u32;
        let v = if p == 2 && q == 2 { 2 } else { v };
        return Ok(Some(RamseyValue {
            p,
            q,
            lower: v,
            upper: v,
            exact: true,
            source: "R(m,2) = m",
        }));
    }
    let (a, b) = (p.min(q), p.max(q));
    Ok(TABLE
        .iter()
        .find(|row| row.0 == a && row.1 == b)
        .map(|&(_, _, lower, upper, source)| RamseyValue {
            p,
            q,
            lower,
            upper,
            exact: lower == upper,
            source,
        }))
}

/// Admissible vertex degrees in an `r(p, q, n)` graph. `lo > hi` means no
/// such graph exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct DegreeRange {
    pub lo: i64,
    pub hi: i64,
}

impl DegreeRange {
    pub fn new(lo: i64, hi: i64) -> Self {
        DegreeRange { lo, hi }
    }

    pub fn contains(&self, d: usize) -> bool {
        (self.lo..=self.hi).contains(&(d as i64))
    }

    pub fn is_feasible(&self) -> bool {
        self.lo <= self.hi
    }
}

impl std::fmt::Display for DegreeRange {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

fn require_exact(p: usize, q: usize) -> Result<i64> {
    let missing = || Error::Unsupported(format!("R({p},{q}) is not known exactly"));
    if p < 2 || q < 2 {
        return Err(missing());
    }
    known_ramsey(p, q)?
        .and_then(|v| v.exact_value())
        .map(i64::from)
        .ok_or_else(missing)
}

/// Degree band `[n - R(p, q-1), R(p-1, q) - 1]`.
///
/// A vertex of degree `d` has `d` neighbors that must avoid a `(p-1)`-clique
/// and `n-1-d` non-neighbors that must avoid an independent `(q-1)`-set.
pub fn degree_range(p: usize, q: usize, n: usize) -> Result<DegreeRange> {
    if p < 3 || q < 3 {
        return invalid(format!("degree band needs p, q >= 3, got ({p}, {q})"));
    }
    let indep_side = require_exact(p, q - 1);
    let clique_side = require_exact(p - 1, q);
    match (indep_side, clique_side) {
        (Ok(a), Ok(b)) => Ok(DegreeRange::new(n as i64 - a, b - 1)),
        (Err(e), Ok(_)) | (Ok(_), Err(e)) => Err(e),
        (Err(Error::Unsupported(a)), Err(Error::Unsupported(b))) => {
            Err(Error::Unsupported(format!("{a}; {b}")))
        }
        (Err(e), Err(_)) => Err(e),
    }
}

/// Degree bands as commonly published for three Ramsey graphs. The
/// `(4, 6, 36)` row prints an upper end of 24, which the derivation in
/// [`degree_range`] does not support: it gives `R(3, 6) - 1 = 17`.
pub const PUBLISHED_DEGREE_BANDS: &[(usize, usize, usize, DegreeRange)] = &[
    (3, 10, 40, DegreeRange { lo: 4, hi: 9 }),
    (5, 5, 43, DegreeRange { lo: 18, hi: 24 }),
    (4, 6, 36, DegreeRange { lo: 11, hi: 24 }),
];

/// A published band that disagrees with the computed one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BandDiscrepancy {
    pub p: usize,
    pub q: usize,
    pub n: usize,
    pub published: DegreeRange,
    pub computed: DegreeRange,
}

pub fn published_band_discrepancy(p: usize, q: usize, n: usize) -> Option<BandDiscrepancy> {
    let &(_, _, _, published) = PUBLISHED_DEGREE_BANDS
        .iter()
        .find(|r| (r.0, r.1, r.2) == (p, q, n))?;
    let computed = degree_range(p, q, n).ok()?;
    (computed != published).then_some(BandDiscrepancy {
        p,
        q,
        n,
        published,
        computed,
    })
}

/// `k 2^(k/2) / (e sqrt 2)`, a strict lower bound on `R(k, k)`.
pub fn erdos_diagonal_lower(k: usize) -> Result<f64> {
    if k < 2 {
        return invalid(format!("diagonal bound needs k >= 2, got {k}"));
    }
    let k = k as f64;
    Ok(k * 2f64.powf(k / 2.0) / (std::f64::consts::E * std::f64::consts::SQRT_2))
}
