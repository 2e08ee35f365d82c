//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use multithreshold::lp::{ConstraintSystem, LinearConstraint, Relation, Var};
use multithreshold::{Graph, Rational};
use rand::Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Kind {
    Eq,
    Le,
    Lt,
}

/// Row `a·x (=, <= or <) b` used by the elimination oracle.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Row {
    coeffs: Vec<Rational>,
    bound: Rational,
    kind: Kind,
}

impl Row {
    // Scale so the first nonzero coefficient has absolute value 1; keeps the
    // dedup set small.
    fn normalized(mut self) -> Row {
        if let Some(lead) = self.coeffs.iter().find(|c| !c.is_zero()).cloned() {
            let s = lead.abs();
            for c in &mut self.coeffs {
                *c = &*c / &s;
            }
            self.bound = &self.bound / &s;
        }
        self
    }

    fn holds_trivially(&self) -> bool {
        match self.kind {
            Kind::Eq => self.bound.is_zero(),
            Kind::Le => !self.bound.is_negative(),
            Kind::Lt => self.bound.is_positive(),
        }
    }
}

/// Fourier–Motzkin elimination with strictness tracking. Decides whether a
/// mixed strict/non-strict system has a real solution. Equalities are
/// substituted away first.
pub fn fm_feasible(sys: &ConstraintSystem) -> bool {
    let n = sys.num_vars();
    let mut rows: BTreeSet<Row> = BTreeSet::new();
    for c in sys.constraints() {
        let mut coeffs = vec![Rational::zero(); n];
        for (v, a) in c.terms() {
            coeffs[v.0] = a.clone();
        }
        let kind = match c.relation() {
            Relation::Eq => Kind::Eq,
            Relation::Le => Kind::Le,
            Relation::Lt => Kind::Lt,
        };
        rows.insert(
            Row {
                coeffs,
                bound: c.bound().clone(),
                kind,
            }
            .normalized(),
        );
    }
    let mut live: Vec<usize> = (0..n).collect();
    while !live.is_empty() {
        let pivot = rows.iter().filter(|r| r.kind == Kind::Eq).find_map(|r| {
            live.iter()
                .copied()
                .find(|&j| !r.coeffs[j].is_zero())
                .map(|j| (r.clone(), j))
        });
        if let Some((e, j)) = pivot {
            rows.remove(&e);
            rows = rows
                .into_iter()
                .map(|r| {
                    if r.coeffs[j].is_zero() {
                        return r;
                    }
                    let f = &r.coeffs[j] / &e.coeffs[j];
                    let coeffs = r
                        .coeffs
                        .iter()
                        .zip(&e.coeffs)
                        .map(|(a, b)| a - &(&f * b))
                        .collect();
                    let bound = &r.bound - &(&f * &e.bound);
                    Row {
                        coeffs,
                        bound,
                        kind: r.kind,
                    }
                    .normalized()
                })
                .collect();
            live.retain(|&v| v != j);
            continue;
        }
        // cheapest variable: fewest new rows
        let (idx, j) = live
            .iter()
            .copied()
            .enumerate()
            .min_by_key(|&(_, j)| {
                let pos = rows.iter().filter(|r| r.coeffs[j].is_positive()).count();
                let neg = rows.iter().filter(|r| r.coeffs[j].is_negative()).count();
                pos * neg
            })
            .unwrap();
        live.remove(idx);
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), BTreeSet::new());
        for r in rows {
            if r.coeffs[j].is_positive() {
                pos.push(r);
            } else if r.coeffs[j].is_negative() {
                neg.push(r);
            } else {
                rest.insert(r);
            }
        }
        for p in &pos {
            for q in &neg {
                let sp = p.coeffs[j].abs();
                let sq = q.coeffs[j].abs();
                let coeffs = p
                    .coeffs
                    .iter()
                    .zip(&q.coeffs)
                    .map(|(a, b)| a / &sp + b / &sq)
                    .collect();
                let bound = &p.bound / &sp + &q.bound / &sq;
                let kind = p.kind.max(q.kind);
                rest.insert(
                    Row {
                        coeffs,
                        bound,
                        kind,
                    }
                    .normalized(),
                );
            }
        }
        rows = rest;
    }
    rows.iter().all(Row::holds_trivially)
}

/// A random system with `1..=max_vars` variables and `1..=max_rows`
/// constraints, small integer coefficients and mixed relations.
pub fn random_system(rng: &mut impl Rng, max_vars: usize, max_rows: usize) -> ConstraintSystem {
    let mut sys = ConstraintSystem::new();
    let nv = rng.gen_range(1..=max_vars);
    let vars: Vec<Var> = (0..nv).map(|i| sys.add_var(format!("x{i}"))).collect();
    let rows = rng.gen_range(1..=max_rows);
    for _ in 0..rows {
        let terms: Vec<(Var, Rational)> = vars
            .iter()
            .map(|&v| (v, Rational::from(rng.gen_range(-3i64..=3))))
            .collect();
        let bound = Rational::from(rng.gen_range(-5i64..=5));
        let c = match rng.gen_range(0..7) {
            0..=2 => LinearConstraint::le(terms, bound),
            3..=5 => LinearConstraint::lt(terms, bound),
            _ => LinearConstraint::eq(terms, bound),
        };
        sys.push(c).unwrap();
    }
    sys
}

/// Pair index of `(u, v)` with `u < v` in the order of [`Graph::pairs`].
fn pair_bit(n: usize, u: usize, v: usize) -> usize {
    let (u, v) = if u < v { (u, v) } else { (v, u) };
    u * n - u * (u + 1) / 2 + (v - u - 1)
}

pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let edges = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| mask >> pair_bit(n, u, v) & 1 == 1);
    Graph::from_edges(n, edges).unwrap()
}

pub fn mask_of(g: &Graph) -> u64 {
    g.edges()
        .fold(0, |m, (u, v)| m | 1 << pair_bit(g.n(), u, v))
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn permute_mask(n: usize, mask: u64, perm: &[usize]) -> u64 {
    let mut out = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> pair_bit(n, u, v) & 1 == 1 {
                out |= 1 << pair_bit(n, perm[u], perm[v]);
            }
        }
    }
    out
}

/// Smallest edge mask over all relabelings.
pub fn canonical_mask(n: usize, mask: u64, perms: &[Vec<usize>]) -> u64 {
    perms
        .iter()
        .map(|p| permute_mask(n, mask, p))
        .min()
        .unwrap()
}

/// One representative per isomorphism class of graphs on `n` vertices,
/// keyed by canonical mask.
pub fn isomorphism_classes(n: usize) -> BTreeMap<u64, Graph> {
    let perms = permutations(n);
    let pairs = n * (n.saturating_sub(1)) / 2;
    let mut out = BTreeMap::new();
    for mask in 0..1u64 << pairs {
        let c = canonical_mask(n, mask, &perms);
        out.entry(c).or_insert_with(|| graph_from_mask(n, c));
    }
    out
}

/// Every graph induced by ranks on the grid `lo/den, (lo+1)/den, ..., hi/den`
/// with integer thresholds given in the same units. Returns canonical masks.
pub fn grid_induced_classes(n: usize, thetas_scaled: &[i64], lo: i64, hi: i64) -> BTreeSet<u64> {
    let perms = permutations(n);
    let mut labeled = BTreeSet::new();
    // ranks are enumerated as non-decreasing tuples; relabeling covers the rest
    let mut ranks = vec![lo; n];
    loop {
        let mut mask = 0u64;
        for u in 0..n {
            for v in u + 1..n {
                let w = ranks[u] + ranks[v];
                let count = thetas_scaled.iter().filter(|&&t| t <= w).count();
                if count % 2 == 1 {
                    mask |= 1 << pair_bit(n, u, v);
                }
            }
        }
        labeled.insert(mask);
        // next non-decreasing tuple
        let mut i = n;
        loop {
            if i == 0 {
                return labeled
                    .into_iter()
                    .map(|m| canonical_mask(n, m, &perms))
                    .collect();
            }
            i -= 1;
            if ranks[i] < hi {
                let next = ranks[i] + 1;
                for r in &mut ranks[i..] {
                    *r = next;
                }
                break;
            }
        }
    }
}

/// All complete multipartite part lists (non-decreasing, at least one part)
/// with total size in `1..=max_n`.
pub fn multipartite_part_lists(max_n: usize) -> Vec<Vec<usize>> {
    fn go(remaining: usize, min_part: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for part in min_part..=remaining {
            cur.push(part);
            go(remaining - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(max_n, 1, &mut Vec::new(), &mut out);
    out
}
