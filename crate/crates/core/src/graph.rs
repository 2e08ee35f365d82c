//! Finite simple graphs on dense vertex labels `0..n`, the named families
//! used throughout the crate, and classical threshold-graph utilities.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    adj: Vec<bool>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: BTreeSet::new(),
            adj: vec![false; n * n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert(u, v);
            }
        }
        g
    }

    /// Builds a graph, rejecting loops and out-of-range endpoints.
    /// Duplicate pairs (in either orientation) collapse to one edge.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::Parameter(format!("self-loop at vertex {u}")));
            }
            g.insert(u, v);
        }
        Ok(g)
    }

    fn insert(&mut self, u: usize, v: usize) {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.edges.insert((a, b));
        self.adj[a * self.n + b] = true;
        self.adj[b * self.n + a] = true;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u * self.n + v]
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.adj[u * self.n + v])
    }

    pub fn degree(&self, u: usize) -> usize {
        self.neighbors(u).count()
    }

    /// All unordered pairs `(u, v)`, `u < v`, in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| (u + 1..self.n).map(move |v| (u, v)))
    }

    /// Connected components, each sorted ascending, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The subgraph induced on `vertices`, relabeled `0..len` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::empty(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.insert(i, j);
                }
            }
        }
        g
    }

    /// Graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        let mut check = perm.to_vec();
        check.sort_unstable();
        if check != (0..self.n).collect::<Vec<_>>() {
            return Err(Error::Parameter("relabeling is not a permutation".into()));
        }
        Graph::from_edges(self.n, self.edges().map(|(u, v)| (perm[u], perm[v])))
    }

    /// Vertex-disjoint union; `other`'s vertices are shifted past `self`'s.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = Graph::empty(self.n + other.n);
        for (u, v) in self.edges() {
            g.insert(u, v);
        }
        for (u, v) in other.edges() {
            g.insert(u + self.n, v + self.n);
        }
        g
    }

    /// Parses the edge-list text format: a header `n m`, then `m` lines `u v`.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("missing `n m` header".into()))?;
        let nums = |line: &str| -> Result<Vec<usize>> {
            line.split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad integer `{t}` in `{line}`")))
                })
                .collect()
        };
        let (n, m) = match nums(header)?.as_slice() {
            &[n, m] => (n, m),
            _ => return Err(Error::Parse(format!("header `{header}` is not `n m`"))),
        };
        let mut edges = Vec::with_capacity(m);
        for line in lines.by_ref() {
            match nums(line)?.as_slice() {
                &[u, v] => edges.push((u, v)),
                _ => return Err(Error::Parse(format!("edge line `{line}` is not `u v`"))),
            }
        }
        if edges.len() != m {
            return Err(Error::Parse(format!(
                "header promises {m} edges but {} were given",
                edges.len()
            )));
        }
        let g = Graph::from_edges(n, edges)?;
        if g.num_edges() != m {
            return Err(Error::Parse("duplicate edges in edge list".into()));
        }
        Ok(g)
    }

    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.num_edges());
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

/// Complement on the same vertex set.
pub fn complement(g: &Graph) -> Graph {
    let mut h = Graph::empty(g.n());
    for (u, v) in g.pairs() {
        if !g.has_edge(u, v) {
            h.insert(u, v);
        }
    }
    h
}

/// Named graph families.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    /// `p` disjoint edges.
    PK2(usize),
    /// `p` disjoint triangles.
    PK3(usize),
    /// Complete multipartite graph with the given part sizes.
    CompleteMultipartite(Vec<usize>),
    Complement(Box<FamilySpec>),
    DisjointUnion(Vec<FamilySpec>),
}

impl FamilySpec {
    fn validate(&self) -> Result<()> {
        match self {
            FamilySpec::PK2(0) | FamilySpec::PK3(0) => {
                Err(Error::Parameter("family needs p >= 1".into()))
            }
            FamilySpec::PK2(_) | FamilySpec::PK3(_) => Ok(()),
            FamilySpec::CompleteMultipartite(parts) => {
                if parts.is_empty() {
                    Err(Error::Parameter(
                        "complete multipartite graph needs a part".into(),
                    ))
                } else if parts.contains(&0) {
                    Err(Error::Parameter(
                        "multipartite parts must be nonempty".into(),
                    ))
                } else {
                    Ok(())
                }
            }
            FamilySpec::Complement(inner) => inner.validate(),
            FamilySpec::DisjointUnion(list) => {
                if list.is_empty() {
                    return Err(Error::Parameter("disjoint union of nothing".into()));
                }
                list.iter().try_for_each(FamilySpec::validate)
            }
        }
    }
}

fn copies(p: usize, component: &Graph) -> Graph {
    (0..p).fold(Graph::empty(0), |acc, _| acc.disjoint_union(component))
}

/// Builds a family with the canonical layout: components laid out
/// consecutively (`pK2` edges are `{2i, 2i+1}`, `pK3` triangles are
/// `{3i, 3i+1, 3i+2}`), multipartite parts sorted ascending by size and
/// occupying consecutive vertex ranges.
pub fn build_family(spec: &FamilySpec) -> Result<Graph> {
    spec.validate()?;
    Ok(match spec {
        FamilySpec::PK2(p) => copies(*p, &Graph::complete(2)),
        FamilySpec::PK3(p) => copies(*p, &Graph::complete(3)),
        FamilySpec::CompleteMultipartite(parts) => {
            let mut parts = parts.clone();
            parts.sort_unstable();
            let n: usize = parts.iter().sum();
            let mut part_of = Vec::with_capacity(n);
            for (i, &m) in parts.iter().enumerate() {
                part_of.extend(std::iter::repeat_n(i, m));
            }
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    if part_of[u] != part_of[v] {
                        g.insert(u, v);
                    }
                }
            }
            g
        }
        FamilySpec::Complement(inner) => complement(&build_family(inner)?),
        FamilySpec::DisjointUnion(list) => {
            let mut g = Graph::empty(0);
            for s in list {
                g = g.disjoint_union(&build_family(s)?);
            }
            g
        }
    })
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::PK2(p) => write!(f, "pk2:{p}"),
            FamilySpec::PK3(p) => write!(f, "pk3:{p}"),
            FamilySpec::CompleteMultipartite(parts) => {
                let parts: Vec<String> = parts.iter().map(usize::to_string).collect();
                write!(f, "kpartite:{}", parts.join(","))
            }
            FamilySpec::Complement(inner) => write!(f, "comp({inner})"),
            FamilySpec::DisjointUnion(list) => {
                let parts: Vec<String> = list.iter().map(|s| s.to_string()).collect();
                f.write_str(&parts.join("+"))
            }
        }
    }
}

/// Family DSL: `pk2:4`, `pk3:3`, `kpartite:3,3`, `comp(pk3:2)`, and
/// disjoint unions joined by `+` such as `pk2:1+pk3:2`.
impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        // split on top-level '+'
        let mut parts = Vec::new();
        let mut depth = 0usize;
        let mut start = 0;
        for (i, ch) in s.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => {
                    depth = depth
                        .checked_sub(1)
                        .ok_or_else(|| Error::Parse(format!("unbalanced `)` in `{s}`")))?
                }
                '+' if depth == 0 => {
                    parts.push(&s[start..i]);
                    start = i + 1;
                }
                _ => {}
            }
        }
        if depth != 0 {
            return Err(Error::Parse(format!("unbalanced `(` in `{s}`")));
        }
        parts.push(&s[start..]);
        if parts.len() > 1 {
            return parts
                .into_iter()
                .map(str::parse)
                .collect::<Result<Vec<_>>>()
                .map(FamilySpec::DisjointUnion);
        }

        if let Some(inner) = s.strip_prefix("comp(").and_then(|r| r.strip_suffix(')')) {
            return Ok(FamilySpec::Complement(Box::new(inner.parse()?)));
        }
        let (name, args) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("`{s}` is not a family (try pk2:3)")))?;
        let ints = args
            .split(',')
            .map(|a| {
                a.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad family parameter `{a}` in `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        let single = |ints: &[usize]| match ints {
            [p] => Ok(*p),
            _ => Err(Error::Parse(format!(
                "`{name}` takes exactly one parameter"
            ))),
        };
        match name.trim() {
            "pk2" => Ok(FamilySpec::PK2(single(&ints)?)),
            "pk3" => Ok(FamilySpec::PK3(single(&ints)?)),
            "kpartite" => Ok(FamilySpec::CompleteMultipartite(ints)),
            other => Err(Error::Parse(format!("unknown family `{other}`"))),
        }
    }
}

/// One step of a creation sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Creation {
    Isolated(usize),
    Dominating(usize),
}

/// A creation sequence for `g` if it is a threshold graph.
///
/// Repeatedly peels off an isolated or a dominating vertex of the remaining
/// graph; the returned sequence lists the vertices in the order they are
/// added back (the reverse of the removal order).
pub fn creation_sequence(g: &Graph) -> Option<Vec<Creation>> {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = (0..n).map(|u| g.degree(u)).collect();
    let mut remaining = n;
    let mut removed = Vec::with_capacity(n);
    while remaining > 0 {
        let pick = (0..n).filter(|&u| alive[u]).find_map(|u| {
            if deg[u] == 0 {
                Some(Creation::Isolated(u))
            } else if deg[u] == remaining - 1 {
                Some(Creation::Dominating(u))
            } else {
                None
            }
        })?;
        let u = match pick {
            Creation::Isolated(u) | Creation::Dominating(u) => u,
        };
        alive[u] = false;
        remaining -= 1;
        for v in g.neighbors(u) {
            if alive[v] {
                deg[v] -= 1;
            }
        }
        removed.push(pick);
    }
    removed.reverse();
    Some(removed)
}

pub fn is_threshold(g: &Graph) -> bool {
    creation_sequence(g).is_some()
}

/// Whether some four vertices induce exactly two disjoint edges.
pub fn contains_induced_2k2(g: &Graph) -> bool {
    let n = g.n();
    for (a, b) in g.edges() {
        for (c, d) in g.edges() {
            if c <= a {
                continue;
            }
            let quad = [a, b, c, d];
            let distinct = quad.iter().collect::<BTreeSet<_>>().len() == 4;
            if distinct
                && !g.has_edge(a, c)
                && !g.has_edge(a, d)
                && !g.has_edge(b, c)
                && !g.has_edge(b, d)
            {
                debug_assert!(quad.iter().all(|&x| x < n));
                return true;
            }
        }
    }
    false
}
