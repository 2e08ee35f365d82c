//! Depth-first branch-and-prune over pair labels.
//!
//! Each unordered vertex pair is labeled with the index `j` of the weight
//! interval `[θ_j, θ_{j+1})` its weight must fall in; the parity of `j`
//! is fixed by adjacency. A node is the base system plus the constraints of
//! the labels assigned so far.
//!
//! At every node the surviving labels of each open pair are filtered by
//! exact feasibility checks. Every feasible point found along the way is
//! kept as a witness and supports, for free, the label it induces on every
//! pair. Pairs left with a single label are assigned on the spot. Only
//! infeasibility ever removes a label, so every feasible full labeling is
//! still reached.

use std::time::Instant;

use rayon::prelude::*;

use crate::graph::Graph;
use crate::interval::IntervalSet;
use crate::lp::{feasible_strict_with, project_onto, ConstraintSystem, LinearConstraint, Var};
use crate::rational::Rational;

use super::SearchStats;

#[derive(Debug, Clone)]
pub(crate) enum Theta {
    Fixed(Rational),
    Var(Var),
}

/// A labeling problem: ranks are variables `0..n` of `base`.
#[derive(Debug, Clone)]
pub(crate) struct Model {
    pub graph: Graph,
    pub base: ConstraintSystem,
    pub thetas: Vec<Theta>,
    pub pairs: Vec<(usize, usize)>,
    pub domains: Vec<Vec<usize>>,
}

impl Model {
    pub fn new(graph: Graph, base: ConstraintSystem, thetas: Vec<Theta>) -> Self {
        let k = thetas.len();
        let pairs: Vec<(usize, usize)> = graph.pairs().collect();
        let domains = pairs
            .iter()
            .map(|&(u, v)| {
                let edge = graph.has_edge(u, v);
                (0..=k).filter(|j| (j % 2 == 1) == edge).collect()
            })
            .collect();
        Model {
            graph,
            base,
            thetas,
            pairs,
            domains,
        }
    }

    pub fn theta_value(&self, i: usize, point: &[Rational]) -> Rational {
        match &self.thetas[i] {
            Theta::Fixed(c) => c.clone(),
            Theta::Var(v) => point[v.0].clone(),
        }
    }

    fn label_at(&self, point: &[Rational], p: usize) -> usize {
        let (u, v) = self.pairs[p];
        let w = &point[u] + &point[v];
        (0..self.thetas.len())
            .take_while(|&i| self.theta_value(i, point) <= w)
            .count()
    }

    /// `θ_j <= r(u) + r(v) < θ_{j+1}` with absent bounds dropped.
    pub fn label_constraints(&self, p: usize, j: usize) -> Vec<LinearConstraint> {
        let (u, v) = self.pairs[p];
        let one = Rational::one();
        let sum = || vec![(Var(u), one.clone()), (Var(v), one.clone())];
        let mut out = Vec::with_capacity(2);
        if j >= 1 {
            out.push(match &self.thetas[j - 1] {
                Theta::Fixed(c) => LinearConstraint::ge(sum(), c.clone()),
                Theta::Var(t) => {
                    let mut terms = sum();
                    terms.push((*t, -one.clone()));
                    LinearConstraint::ge(terms, Rational::zero())
                }
            });
        }
        if j < self.thetas.len() {
            out.push(match &self.thetas[j] {
                Theta::Fixed(c) => LinearConstraint::lt(sum(), c.clone()),
                Theta::Var(t) => {
                    let mut terms = sum();
                    terms.push((*t, -one.clone()));
                    LinearConstraint::lt(terms, Rational::zero())
                }
            });
        }
        out
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) enum Mode {
    /// Stop at the first point inducing the graph.
    FirstWitness,
    /// Visit every feasible full labeling and union the projections onto the variable.
    Project(Var),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct TimedOut;

type BranchResult = (
    Result<Option<Vec<Rational>>, TimedOut>,
    SearchStats,
    IntervalSet,
);

#[derive(Debug, Clone)]
struct Witness {
    point: Vec<Rational>,
    labels: Vec<usize>,
}

#[derive(Debug, Clone)]
struct Node {
    extra: Vec<LinearConstraint>,
    domains: Vec<Vec<usize>>,
    assigned: Vec<bool>,
    witnesses: Vec<Witness>,
}

pub(crate) struct Searcher<'m> {
    model: &'m Model,
    mode: Mode,
    deadline: Option<Instant>,
    workers: usize,
    pub stats: SearchStats,
    pub projection: IntervalSet,
}

impl<'m> Searcher<'m> {
    pub fn new(model: &'m Model, mode: Mode, deadline: Option<Instant>, workers: usize) -> Self {
        Searcher {
            model,
            mode,
            deadline,
            workers: workers.max(1),
            stats: SearchStats::default(),
            projection: IntervalSet::empty(),
        }
    }

    fn check_clock(&self) -> Result<(), TimedOut> {
        match self.deadline {
            Some(d) if Instant::now() >= d => Err(TimedOut),
            _ => Ok(()),
        }
    }

    fn feasible(&mut self, extra: &[LinearConstraint]) -> Result<Option<Vec<Rational>>, TimedOut> {
        self.check_clock()?;
        self.stats.lp_calls += 1;
        Ok(feasible_strict_with(&self.model.base, extra))
    }

    fn witness(&self, point: Vec<Rational>) -> Witness {
        let labels = (0..self.model.pairs.len())
            .map(|p| self.model.label_at(&point, p))
            .collect();
        Witness { point, labels }
    }

    fn induces_graph(&self, w: &Witness) -> bool {
        self.model
            .pairs
            .iter()
            .zip(&w.labels)
            .all(|(&(u, v), &j)| (j % 2 == 1) == self.model.graph.has_edge(u, v))
    }

    /// Runs the search from the root. Returns the first witness point in
    /// `FirstWitness` mode; in `Project` mode the result accumulates in
    /// `self.projection`.
    pub fn run(&mut self) -> Result<Option<Vec<Rational>>, TimedOut> {
        let started = Instant::now();
        let result = self.run_inner();
        self.stats.wall_time = started.elapsed();
        result
    }

    fn run_inner(&mut self) -> Result<Option<Vec<Rational>>, TimedOut> {
        if self.model.domains.iter().any(Vec::is_empty) {
            return Ok(None);
        }
        let Some(point) = self.feasible(&[])? else {
            return Ok(None);
        };
        let root = Node {
            extra: Vec::new(),
            domains: self.model.domains.clone(),
            assigned: vec![false; self.model.pairs.len()],
            witnesses: vec![self.witness(point)],
        };
        self.explore(root, 0)
    }

    fn assign(&self, node: &mut Node, p: usize, j: usize) {
        node.extra.extend(self.model.label_constraints(p, j));
        node.domains[p] = vec![j];
        node.assigned[p] = true;
        node.witnesses.retain(|w| w.labels[p] == j);
        debug_assert!(
            !node.witnesses.is_empty(),
            "assigned label lost its support"
        );
    }

    /// Filters domains to labels with a feasible extension and assigns
    /// forced pairs until nothing changes. `false` means the node is dead.
    fn propagate(&mut self, node: &mut Node) -> Result<bool, TimedOut> {
        loop {
            let mut changed = false;
            for p in 0..self.model.pairs.len() {
                if node.assigned[p] {
                    continue;
                }
                let mut keep = Vec::with_capacity(node.domains[p].len());
                for &j in &node.domains[p] {
                    if node.witnesses.iter().any(|w| w.labels[p] == j) {
                        keep.push(j);
                        continue;
                    }
                    let mut extra = node.extra.clone();
                    extra.extend(self.model.label_constraints(p, j));
                    if let Some(point) = self.feasible(&extra)? {
                        let w = self.witness(point);
                        debug_assert_eq!(w.labels[p], j);
                        node.witnesses.push(w);
                        keep.push(j);
                    }
                }
                match keep.len() {
                    0 => return Ok(false),
                    1 => {
                        self.assign(node, p, keep[0]);
                        changed = true;
                    }
                    _ => node.domains[p] = keep,
                }
            }
            if !changed {
                return Ok(true);
            }
        }
    }

    fn explore(&mut self, mut node: Node, depth: usize) -> Result<Option<Vec<Rational>>, TimedOut> {
        self.check_clock()?;
        self.stats.nodes += 1;
        self.stats.max_depth = self.stats.max_depth.max(depth);

        if let Mode::FirstWitness = self.mode {
            if let Some(w) = node.witnesses.iter().find(|w| self.induces_graph(w)) {
                return Ok(Some(w.point.clone()));
            }
        }
        if !self.propagate(&mut node)? {
            return Ok(None);
        }
        if let Mode::FirstWitness = self.mode {
            if let Some(w) = node.witnesses.iter().find(|w| self.induces_graph(w)) {
                return Ok(Some(w.point.clone()));
            }
        }

        let open = (0..self.model.pairs.len())
            .filter(|&p| !node.assigned[p])
            .min_by_key(|&p| node.domains[p].len());
        let Some(p) = open else {
            return self.leaf(&node);
        };

        // the label the first witness already satisfies goes first
        let mut labels = node.domains[p].clone();
        let lead = node.witnesses[0].labels[p];
        labels.sort_by_key(|&j| (j != lead, j));

        let children: Vec<Node> = labels
            .iter()
            .map(|&j| {
                let mut child = node.clone();
                self.assign(&mut child, p, j);
                child
            })
            .collect();

        if depth == 0 && self.workers > 1 {
            return self.explore_parallel(children);
        }
        for child in children {
            if let Some(found) = self.explore(child, depth + 1)? {
                return Ok(Some(found));
            }
        }
        Ok(None)
    }

    fn leaf(&mut self, node: &Node) -> Result<Option<Vec<Rational>>, TimedOut> {
        self.stats.leaves += 1;
        match self.mode {
            Mode::FirstWitness => {
                let w = &node.witnesses[0];
                debug_assert!(self.induces_graph(w));
                Ok(Some(w.point.clone()))
            }
            Mode::Project(var) => {
                self.check_clock()?;
                let mut sys = self.model.base.clone();
                sys.extend(node.extra.iter().cloned())
                    .expect("label constraints use declared variables");
                let interval = project_onto(&sys, var).expect("leaf system is feasible");
                // one feasibility check, two optimizations, one pinned check per finite end
                let finite_ends = [interval.lo(), interval.hi()]
                    .iter()
                    .filter(|e| e.is_finite())
                    .count();
                self.stats.lp_calls += 3 + finite_ends as u64;
                self.projection.insert(interval);
                Ok(None)
            }
        }
    }

    // Children run on separate searchers; results merge in branch order so
    // the output matches a sequential run.
    fn explore_parallel(&mut self, children: Vec<Node>) -> Result<Option<Vec<Rational>>, TimedOut> {
        let model = self.model;
        let (mode, deadline) = (self.mode, self.deadline);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .expect("thread pool");
        let results: Vec<BranchResult> = pool.install(|| {
            children
                .into_par_iter()
                .map(|child| {
                    let mut sub = Searcher::new(model, mode, deadline, 1);
                    let r = sub.explore(child, 1);
                    (r, sub.stats, sub.projection)
                })
                .collect()
        });
        let mut first = None;
        for (r, stats, proj) in results {
            self.stats.absorb(&stats);
            self.projection = self.projection.union(&proj);
            match r {
                Err(TimedOut) if first.is_none() => return Err(TimedOut),
                Ok(Some(point)) if first.is_none() => first = Some(point),
                _ => {}
            }
        }
        Ok(first)
    }
}
