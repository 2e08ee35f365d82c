//! Threshold vectors, rank assignments and the parity rule that turns them
//! into a graph.
//!
//! A pair `{u, v}` is an edge iff the number of thresholds `θ_i` with
//! `θ_i <= r(u) + r(v)` is odd. Equivalently, with `θ_0 = -inf` and
//! `θ_{k+1} = +inf`, the weight falls in the weight interval
//! `[θ_j, θ_{j+1})` for an odd index `j`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::interval::Interval;
use crate::rational::{parse_list, ExtRational, Rational};

/// Strictly increasing thresholds `θ_1 < ... < θ_k`.
///
/// `k = 0` is allowed; it describes the edgeless graphs.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Rational>", into = "Vec<Rational>")]
pub struct ThresholdVector(Vec<Rational>);

impl ThresholdVector {
    pub fn new(thetas: Vec<Rational>) -> Result<Self> {
        if thetas.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::NotIncreasing);
        }
        Ok(ThresholdVector(thetas))
    }

    /// Convenience for integer thresholds. Panics if they are not increasing.
    pub fn ints(thetas: &[i64]) -> Self {
        Self::new(thetas.iter().map(|&t| Rational::from(t)).collect())
            .expect("increasing thresholds")
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn thetas(&self) -> &[Rational] {
        &self.0
    }

    /// Number of thresholds at or below `w`; this is the index of the weight
    /// interval containing `w`.
    pub fn count_at_most(&self, w: &Rational) -> usize {
        self.0.partition_point(|t| t <= w)
    }

    /// The weight interval `[θ_j, θ_{j+1})`, `0 <= j <= k`.
    pub fn weight_interval(&self, j: usize) -> Interval {
        assert!(j <= self.k(), "interval index {j} out of range");
        let (lo, lo_closed) = match j {
            0 => (ExtRational::NegInf, false),
            _ => (ExtRational::Finite(self.0[j - 1].clone()), true),
        };
        let hi = match self.0.get(j) {
            Some(t) => ExtRational::Finite(t.clone()),
            None => ExtRational::PosInf,
        };
        Interval::new(lo, lo_closed, hi, false).expect("thresholds are increasing")
    }
}

impl TryFrom<Vec<Rational>> for ThresholdVector {
    type Error = Error;
    fn try_from(v: Vec<Rational>) -> Result<Self> {
        ThresholdVector::new(v)
    }
}

impl From<ThresholdVector> for Vec<Rational> {
    fn from(t: ThresholdVector) -> Self {
        t.0
    }
}

impl std::str::FromStr for ThresholdVector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ThresholdVector::new(parse_list(s)?)
    }
}

impl fmt::Display for ThresholdVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Rational::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Debug for ThresholdVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Ranks indexed by vertex.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RankAssignment(Vec<Rational>);

impl RankAssignment {
    pub fn new(ranks: Vec<Rational>) -> Self {
        RankAssignment(ranks)
    }

    pub fn ints(ranks: &[i64]) -> Self {
        RankAssignment(ranks.iter().map(|&r| Rational::from(r)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn ranks(&self) -> &[Rational] {
        &self.0
    }

    pub fn get(&self, v: usize) -> Result<&Rational> {
        self.0.get(v).ok_or(Error::VertexOutOfRange {
            vertex: v,
            n: self.0.len(),
        })
    }
}

impl std::str::FromStr for RankAssignment {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_list(s).map(RankAssignment)
    }
}

impl fmt::Debug for RankAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.0).finish()
    }
}

/// The weight `r(u) + r(v)` of the pair `{u, v}`.
pub fn weight(r: &RankAssignment, u: usize, v: usize) -> Result<Rational> {
    if u == v {
        return Err(Error::Parameter(format!("weight of a loop at {u}")));
    }
    Ok(r.get(u)? + r.get(v)?)
}

pub fn parity_adjacent(th: &ThresholdVector, w: &Rational) -> bool {
    th.count_at_most(w) % 2 == 1
}

pub fn induced_graph(n: usize, th: &ThresholdVector, r: &RankAssignment) -> Result<Graph> {
    if r.len() != n {
        return Err(Error::Parameter(format!(
            "{} ranks for {n} vertices",
            r.len()
        )));
    }
    let ranks = r.ranks();
    Graph::from_edges(
        n,
        (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| parity_adjacent(th, &(&ranks[u] + &ranks[v]))),
    )
}

/// Why a rank assignment fails to represent a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Discrepancy {
    RankCount {
        expected: usize,
        found: usize,
    },
    Pair {
        u: usize,
        v: usize,
        weight: Rational,
        interval: Box<Interval>,
        is_edge: bool,
    },
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Discrepancy::RankCount { expected, found } => {
                write!(f, "expected {expected} ranks, found {found}")
            }
            Discrepancy::Pair {
                u,
                v,
                weight,
                interval,
                is_edge,
            } => write!(
                f,
                "pair ({u}, {v}) has weight {weight} in {interval}, which makes it {} but it is {}",
                if *is_edge { "a non-edge" } else { "an edge" },
                if *is_edge { "an edge" } else { "a non-edge" },
            ),
        }
    }
}

/// Checks every pair; on failure reports the lexicographically first
/// offending pair.
pub fn verify(
    g: &Graph,
    th: &ThresholdVector,
    r: &RankAssignment,
) -> std::result::Result<(), Discrepancy> {
    if r.len() != g.n() {
        return Err(Discrepancy::RankCount {
            expected: g.n(),
            found: r.len(),
        });
    }
    let ranks = r.ranks();
    for (u, v) in g.pairs() {
        let w = &ranks[u] + &ranks[v];
        let j = th.count_at_most(&w);
        let is_edge = g.has_edge(u, v);
        if (j % 2 == 1) != is_edge {
            return Err(Discrepancy::Pair {
                u,
                v,
                weight: w,
                interval: Box::new(th.weight_interval(j)),
                is_edge,
            });
        }
    }
    Ok(())
}

/// Color of a weight: the `i >= 1` with `w` in `[θ_{2i-1}, θ_{2i})`, or
/// `None` when `w` lies in a gap.
pub fn color_of_weight(th: &ThresholdVector, w: &Rational) -> Option<usize> {
    let j = th.count_at_most(w);
    (j % 2 == 1).then_some(j.div_ceil(2))
}

pub fn edge_color(th: &ThresholdVector, r: &RankAssignment, u: usize, v: usize) -> Result<usize> {
    let w = weight(r, u, v)?;
    color_of_weight(th, &w).ok_or_else(|| Error::NotAnEdge {
        u,
        v,
        weight: w.to_string(),
    })
}

/// A verified `(θ_1, ..., θ_k)`-representation of a graph.
#[derive(Clone, PartialEq, Eq)]
pub struct Representation {
    graph: Graph,
    thresholds: ThresholdVector,
    ranks: RankAssignment,
}

impl Representation {
    pub fn new(graph: Graph, thresholds: ThresholdVector, ranks: RankAssignment) -> Result<Self> {
        verify(&graph, &thresholds, &ranks).map_err(|d| Error::Invalid(Box::new(d)))?;
        debug_assert_ne!(
            crate::theorems::rainbow_holds(&graph, &thresholds, &ranks),
            Some(false),
            "two triangles share a color multiset in a valid representation"
        );
        Ok(Representation {
            graph,
            thresholds,
            ranks,
        })
    }

    /// Skips verification; for negative tests and for loading files that
    /// are about to be checked.
    pub fn new_unchecked(graph: Graph, thresholds: ThresholdVector, ranks: RankAssignment) -> Self {
        Representation {
            graph,
            thresholds,
            ranks,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn thresholds(&self) -> &ThresholdVector {
        &self.thresholds
    }

    pub fn ranks(&self) -> &RankAssignment {
        &self.ranks
    }

    pub fn verify(&self) -> std::result::Result<(), Discrepancy> {
        verify(&self.graph, &self.thresholds, &self.ranks)
    }

    pub fn to_json(&self) -> RepresentationJson {
        RepresentationJson {
            n: self.graph.n(),
            edges: self.graph.edges().map(|(u, v)| [u, v]).collect(),
            thetas: self.thresholds.clone(),
            ranks: self.ranks.clone(),
        }
    }
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Representation")
            .field("graph", &self.graph)
            .field("thresholds", &self.thresholds)
            .field("ranks", &self.ranks)
            .finish()
    }
}

/// On-disk form: `{"n": 4, "edges": [[0,1],[2,3]], "thetas": ["-1","1"], "ranks": ["-2", ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    pub thetas: ThresholdVector,
    pub ranks: RankAssignment,
}

impl RepresentationJson {
    pub fn graph(&self) -> Result<Graph> {
        Graph::from_edges(self.n, self.edges.iter().map(|&[u, v]| (u, v)))
    }

    pub fn into_checked(self) -> Result<Representation> {
        let g = self.graph()?;
        Representation::new(g, self.thetas, self.ranks)
    }

    pub fn into_unchecked(self) -> Result<Representation> {
        let g = self.graph()?;
        Ok(Representation::new_unchecked(g, self.thetas, self.ranks))
    }
}

impl Serialize for Representation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Representation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        RepresentationJson::deserialize(d)?
            .into_checked()
            .map_err(serde::de::Error::custom)
    }
}

/// Moves a representation onto `target` thresholds by `r' = a r + b`, `a > 0`.
///
/// Weights map as `w -> a w + 2b`, so each `θ_i` must map to the target's
/// `θ_i` under that same map. For `k = 1` the map is a pure translation.
pub fn affine_normalize(rep: &Representation, target: &ThresholdVector) -> Result<Representation> {
    let src = rep.thresholds.thetas();
    let dst = target.thetas();
    if src.len() != dst.len() {
        return Err(Error::NoAffineMap(format!(
            "{} thresholds cannot map onto {}",
            src.len(),
            dst.len()
        )));
    }
    let (a, two_b) = match src.len() {
        0 => (Rational::one(), Rational::zero()),
        1 => (Rational::one(), &dst[0] - &src[0]),
        _ => {
            let a = (&dst[1] - &dst[0]) / (&src[1] - &src[0]);
            let two_b = &dst[0] - &a * &src[0];
            (a, two_b)
        }
    };
    for (i, (s, d)) in src.iter().zip(dst).enumerate() {
        let image = &a * s + &two_b;
        if image != *d {
            return Err(Error::NoAffineMap(format!(
                "the map fixed by the first two thresholds sends θ_{} = {s} to {image}, not {d}",
                i + 1
            )));
        }
    }
    let b = two_b / Rational::from(2);
    let ranks = RankAssignment(rep.ranks.ranks().iter().map(|r| &a * r + &b).collect());
    Representation::new(rep.graph.clone(), target.clone(), ranks)
}
