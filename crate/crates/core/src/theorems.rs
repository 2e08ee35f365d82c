//! Triangle color multisets, the pigeonhole bound for disjoint triangles,
//! and threshold dimension (closed form for complete multipartite graphs
//! and exact brute force for small graphs).

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::representation::{color_of_weight, RankAssignment, Representation, ThresholdVector};

/// Sorted edge colors of one triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ColorMultiset(pub [usize; 3]);

impl ColorMultiset {
    pub fn new(mut colors: [usize; 3]) -> Self {
        colors.sort_unstable();
        ColorMultiset(colors)
    }
}

impl fmt::Display for ColorMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        write!(f, "{{{a},{b},{c}}}")
    }
}

/// The triangles of `g` if `g` is a disjoint union of triangles.
pub fn triangles(g: &Graph) -> Option<Vec<[usize; 3]>> {
    g.components()
        .into_iter()
        .map(|c| match c.as_slice() {
            &[a, b, d] if g.has_edge(a, b) && g.has_edge(a, d) && g.has_edge(b, d) => {
                Some([a, b, d])
            }
            _ => None,
        })
        .collect()
}

fn multisets_of(
    tris: &[[usize; 3]],
    th: &ThresholdVector,
    r: &RankAssignment,
) -> Option<Vec<ColorMultiset>> {
    let ranks = r.ranks();
    tris.iter()
        .map(|&[a, b, c]| {
            let color = |u: usize, v: usize| color_of_weight(th, &(&ranks[u] + &ranks[v]));
            Some(ColorMultiset::new([
                color(a, b)?,
                color(a, c)?,
                color(b, c)?,
            ]))
        })
        .collect()
}

fn pairwise_distinct(ms: &[ColorMultiset]) -> bool {
    ms.iter().collect::<HashSet<_>>().len() == ms.len()
}

/// `Some(distinct?)` when `g` is a union of triangles all of whose edges are
/// colored by `(th, r)`; `None` otherwise. Used as a debug hook on every
/// constructed [`Representation`].
pub fn rainbow_holds(g: &Graph, th: &ThresholdVector, r: &RankAssignment) -> Option<bool> {
    if r.len() != g.n() {
        return None;
    }
    let tris = triangles(g)?;
    multisets_of(&tris, th, r).map(|ms| pairwise_distinct(&ms))
}

/// Color multiset of each triangle, in component order.
pub fn triangle_multisets(rep: &Representation) -> Result<Vec<ColorMultiset>> {
    let tris = triangles(rep.graph())
        .ok_or_else(|| Error::Precondition("graph is not a disjoint union of triangles".into()))?;
    multisets_of(&tris, rep.thresholds(), rep.ranks())
        .ok_or_else(|| Error::Precondition("some triangle edge has no color".into()))
}

/// Whether all triangle color multisets are pairwise distinct. For a valid
/// representation this always holds; `false` means a bug upstream.
pub fn rainbow_check(rep: &Representation) -> Result<bool> {
    Ok(pairwise_distinct(&triangle_multisets(rep)?))
}

/// `C(k + 2, 3)`, the number of size-3 multisets over `k` symbols.
pub fn pigeonhole_bound(k: u64) -> u64 {
    (k + 2) * (k + 1) * k / 6
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Pk3Lower {
    /// Smallest `k` with `C(k + 2, 3) >= p`.
    pub k_min: u64,
    /// `ceil((6p)^(1/3) / 2)`, computed exactly as the smallest `c` with `8c^3 >= 6p`.
    pub crude: u64,
}

/// Lower bounds on the threshold number of `pK3`.
pub fn theta_lower_pk3(p: u64) -> Result<Pk3Lower> {
    if p == 0 {
        return Err(Error::Parameter("p must be positive".into()));
    }
    let k_min = (1..)
        .find(|&k| pigeonhole_bound(k) >= p)
        .expect("bound grows");
    let crude = (1..)
        .find(|&c: &u64| 8 * c * c * c >= 6 * p)
        .expect("cube grows");
    Ok(Pk3Lower { k_min, crude })
}

/// Threshold dimension of the complete multipartite graph with the given
/// part sizes: the second largest part.
///
/// A single part is an edgeless graph, whose threshold dimension is 0.
pub fn cozzens_tdim(parts: &[usize]) -> Result<usize> {
    if parts.is_empty() || parts.contains(&0) {
        return Err(Error::Parameter(
            "parts must be a nonempty list of positive sizes".into(),
        ));
    }
    let mut sorted = parts.to_vec();
    sorted.sort_unstable();
    Ok(match sorted.len() {
        1 => 0,
        p => sorted[p - 2],
    })
}

pub const TDIM_MAX_VERTICES: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", content = "value", rename_all = "snake_case")]
pub enum TdimOutcome {
    Exact(usize),
    ExceedsLimit(usize),
}

struct PairIndex {
    n: usize,
}

impl PairIndex {
    fn bit(&self, u: usize, v: usize) -> u64 {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        // row-major index of (a, b) among pairs a < b
        let idx = a * (2 * self.n - a - 1) / 2 + (b - a - 1);
        1u64 << idx
    }
}

/// Edge sets (as pair bitmasks) of every labeled threshold graph on
/// `V(g)` that is a subgraph of `g`, built from creation sequences.
fn threshold_subgraphs(g: &Graph) -> Vec<u64> {
    let n = g.n();
    let idx = PairIndex { n };
    let mut seen: HashSet<(u32, u64)> = HashSet::new();
    let mut out: HashSet<u64> = HashSet::new();
    let mut stack = vec![(0u32, 0u64)];
    let full = (1u32 << n) - 1;
    while let Some((placed, edges)) = stack.pop() {
        if !seen.insert((placed, edges)) {
            continue;
        }
        if placed == full {
            out.insert(edges);
            continue;
        }
        for v in 0..n {
            if placed & (1 << v) != 0 {
                continue;
            }
            let next = placed | (1 << v);
            stack.push((next, edges));
            let mut dominated = edges;
            let fits = (0..n).filter(|&u| placed & (1 << u) != 0).all(|u| {
                dominated |= idx.bit(u, v);
                g.has_edge(u, v)
            });
            if fits {
                stack.push((next, dominated));
            }
        }
    }
    let mut all: Vec<u64> = out.into_iter().collect();
    all.sort_unstable();
    all
}

fn maximal(sets: &[u64]) -> Vec<u64> {
    sets.iter()
        .copied()
        .filter(|&s| s != 0 && !sets.iter().any(|&t| t != s && t & s == s))
        .collect()
}

fn cover(universe: u64, candidates: &[u64], covered: u64, depth: usize, best: &mut usize) {
    if covered == universe {
        *best = (*best).min(depth);
        return;
    }
    if depth + 1 >= *best {
        return;
    }
    let missing = universe & !covered;
    let e = missing & missing.wrapping_neg();
    for &c in candidates.iter().filter(|&&c| c & e != 0) {
        cover(universe, candidates, covered | c, depth + 1, best);
    }
}

/// Minimum number of threshold graphs whose edge union is `E(g)`.
///
/// Returns [`TdimOutcome::ExceedsLimit`] when more than `limit` are needed.
pub fn tdim_bruteforce(g: &Graph, limit: usize) -> Result<TdimOutcome> {
    if g.n() > TDIM_MAX_VERTICES {
        return Err(Error::TooLarge {
            n: g.n(),
            limit: TDIM_MAX_VERTICES,
        });
    }
    let idx = PairIndex { n: g.n() };
    let universe = g.edges().fold(0u64, |acc, (u, v)| acc | idx.bit(u, v));
    if universe == 0 {
        return Ok(TdimOutcome::Exact(0));
    }
    let candidates = maximal(&threshold_subgraphs(g));
    let mut best = limit + 1;
    cover(universe, &candidates, 0, 0, &mut best);
    Ok(if best <= limit {
        TdimOutcome::Exact(best)
    } else {
        TdimOutcome::ExceedsLimit(limit)
    })
}
