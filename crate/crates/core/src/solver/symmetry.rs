//! Rank-order constraints that pick a canonical representative among
//! solutions related by simple graph automorphisms.
//!
//! Two kinds of automorphism are used together:
//!
//! * swapping twins inside a component (vertices with the same neighbours
//!   apart from each other), e.g. the two endpoints of a `K2`;
//! * swapping whole components that are identical under the order-preserving
//!   map of their vertex lists, e.g. the `p` edges of `pK2`.
//!
//! Any solution can first be sorted inside every twin class and then have its
//! identical components reordered by the rank of a fixed local vertex; the
//! second step maps twin classes onto twin classes in order, so both orderings
//! hold at once.

use crate::graph::Graph;

fn twins(g: &Graph, u: usize, v: usize) -> bool {
    (0..g.n())
        .filter(|&w| w != u && w != v)
        .all(|w| g.has_edge(u, w) == g.has_edge(v, w))
}

fn twin_classes(g: &Graph, comp: &[usize]) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in comp {
        match classes.iter_mut().find(|c| twins(g, c[0], v)) {
            Some(c) => c.push(v),
            None => classes.push(vec![v]),
        }
    }
    classes
}

fn shape(g: &Graph, comp: &[usize]) -> Graph {
    g.induced(comp)
}

/// Pairs `(a, b)` meaning `r(a) <= r(b)` may be imposed without losing any
/// graph that has a representation.
pub(crate) fn rank_order_constraints(g: &Graph) -> Vec<(usize, usize)> {
    let comps = g.components();
    let mut out = Vec::new();
    for comp in &comps {
        for class in twin_classes(g, comp) {
            out.extend(class.windows(2).map(|w| (w[0], w[1])));
        }
    }
    let mut groups: Vec<(Graph, Vec<usize>)> = Vec::new();
    for comp in &comps {
        let s = shape(g, comp);
        let rep = *comp.last().expect("components are nonempty");
        match groups.iter_mut().find(|(gs, _)| *gs == s) {
            Some((_, reps)) => reps.push(rep),
            None => groups.push((s, vec![rep])),
        }
    }
    for (_, reps) in groups {
        out.extend(reps.windows(2).map(|w| (w[0], w[1])));
    }
    out
}
