//! Exact decision procedures for multithreshold representations.
//!
//! * [`decide_fixed`]: is `g` a `(θ_1, ..., θ_k)`-threshold graph for given thresholds?
//! * [`threshold_set`]: the exact set of `t > 1` for which `g` is `(-1, 1, t)`-threshold.
//! * [`decide_k`]: is `g` `k`-threshold for some thresholds?
//! * [`theta_number`]: the least such `k`.
//!
//! All of them run the same branch-and-prune search (see [`search`]) over
//! an exact linear system whose variables are the vertex ranks plus any
//! free thresholds. Every returned witness is verified before it leaves this
//! module.

mod search;
mod symmetry;

use std::time::{Duration, Instant};

use serde::{Serialize, Serializer};

use crate::graph::Graph;
use crate::interval::IntervalSet;
use crate::lp::{ConstraintSystem, LinearConstraint, Var};
use crate::rational::Rational;
use crate::representation::{RankAssignment, Representation, ThresholdVector};

use search::{Mode, Model, Searcher, Theta, TimedOut};

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub timeout: Option<Duration>,
    /// Worker threads for the root's subtrees; 1 runs everything inline.
    pub workers: usize,
    pub symmetry_breaking: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            timeout: None,
            workers: 1,
            symmetry_breaking: true,
        }
    }
}

fn millis<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u64(d.as_millis() as u64)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub lp_calls: u64,
    pub max_depth: usize,
    pub leaves: u64,
    #[serde(rename = "wall_time_ms", serialize_with = "millis")]
    pub wall_time: Duration,
}

impl SearchStats {
    fn absorb(&mut self, other: &SearchStats) {
        self.nodes += other.nodes;
        self.lp_calls += other.lp_calls;
        self.leaves += other.leaves;
        self.max_depth = self.max_depth.max(other.max_depth);
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome<T> {
    Complete(T),
    /// The search was interrupted; nothing is known about the answer.
    TimedOut,
}

impl<T> Outcome<T> {
    pub fn complete(self) -> Option<T> {
        match self {
            Outcome::Complete(t) => Some(t),
            Outcome::TimedOut => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Run<T> {
    pub outcome: Outcome<T>,
    pub stats: SearchStats,
}

impl<T> Run<T> {
    fn expect_complete(self) -> T {
        self.outcome
            .complete()
            .expect("search without a timeout always completes")
    }
}

/// Result of [`theta_number`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ThetaResult {
    Exact {
        theta: usize,
        witness: Representation,
    },
    /// No representation with at most `cap` thresholds exists.
    ExceedsCap { cap: usize },
}

impl ThetaResult {
    pub fn theta(&self) -> Option<usize> {
        match self {
            ThetaResult::Exact { theta, .. } => Some(*theta),
            ThetaResult::ExceedsCap { .. } => None,
        }
    }
}

fn rank_system(g: &Graph, cfg: &SearchConfig) -> ConstraintSystem {
    let mut sys = ConstraintSystem::new();
    for v in 0..g.n() {
        sys.add_var(format!("r{v}"));
    }
    if cfg.symmetry_breaking {
        for (a, b) in symmetry::rank_order_constraints(g) {
            sys.push(LinearConstraint::le(
                [(Var(a), Rational::one()), (Var(b), -Rational::one())],
                Rational::zero(),
            ))
            .expect("rank variables are declared");
        }
    }
    sys
}

fn deadline(cfg: &SearchConfig) -> Option<Instant> {
    cfg.timeout.map(|t| Instant::now() + t)
}

fn witness_representation(model: &Model, point: &[Rational]) -> Representation {
    let n = model.graph.n();
    let thetas = (0..model.thetas.len())
        .map(|i| model.theta_value(i, point))
        .collect();
    let thresholds = ThresholdVector::new(thetas).expect("ordered thresholds in witness");
    let ranks = RankAssignment::new(point[..n].to_vec());
    Representation::new(model.graph.clone(), thresholds, ranks).expect("search witness must verify")
}

fn first_witness(model: &Model, cfg: &SearchConfig) -> Run<Option<Representation>> {
    let mut searcher = Searcher::new(model, Mode::FirstWitness, deadline(cfg), cfg.workers);
    let outcome = match searcher.run() {
        Ok(point) => Outcome::Complete(point.map(|p| witness_representation(model, &p))),
        Err(TimedOut) => Outcome::TimedOut,
    };
    Run {
        outcome,
        stats: searcher.stats,
    }
}

/// Decides whether `g` is `th`-threshold; `Some` carries a verified witness.
pub fn decide_fixed(g: &Graph, th: &ThresholdVector) -> Option<Representation> {
    decide_fixed_with(g, th, &SearchConfig::default()).expect_complete()
}

pub fn decide_fixed_with(
    g: &Graph,
    th: &ThresholdVector,
    cfg: &SearchConfig,
) -> Run<Option<Representation>> {
    let thetas = th.thetas().iter().cloned().map(Theta::Fixed).collect();
    let model = Model::new(g.clone(), rank_system(g, cfg), thetas);
    first_witness(&model, cfg)
}

/// The exact set of `t > 1` such that `g` is `(-1, 1, t)`-threshold.
pub fn threshold_set(g: &Graph) -> IntervalSet {
    threshold_set_with(g, &SearchConfig::default()).expect_complete()
}

pub fn threshold_set_with(g: &Graph, cfg: &SearchConfig) -> Run<IntervalSet> {
    let mut sys = rank_system(g, cfg);
    let t = sys.add_var("t");
    sys.push(LinearConstraint::gt(
        [(t, Rational::one())],
        Rational::one(),
    ))
    .expect("t is declared");
    let thetas = vec![
        Theta::Fixed(Rational::from(-1)),
        Theta::Fixed(Rational::one()),
        Theta::Var(t),
    ];
    let model = Model::new(g.clone(), sys, thetas);
    let mut searcher = Searcher::new(&model, Mode::Project(t), deadline(cfg), cfg.workers);
    let outcome = match searcher.run() {
        Ok(_) => Outcome::Complete(std::mem::take(&mut searcher.projection)),
        Err(TimedOut) => Outcome::TimedOut,
    };
    Run {
        outcome,
        stats: searcher.stats,
    }
}

/// Decides whether `g` is `k`-threshold for some thresholds.
///
/// Thresholds are normalized to `θ_1 = 0` for `k = 1` and to
/// `θ_1 = -1, θ_2 = 1` for `k >= 2`; an increasing affine change of ranks
/// reaches any other choice of the first two.
pub fn decide_k(g: &Graph, k: usize) -> Option<Representation> {
    decide_k_with(g, k, &SearchConfig::default()).expect_complete()
}

pub fn decide_k_with(g: &Graph, k: usize, cfg: &SearchConfig) -> Run<Option<Representation>> {
    let mut sys = rank_system(g, cfg);
    let mut thetas = Vec::with_capacity(k);
    match k {
        0 => {}
        1 => thetas.push(Theta::Fixed(Rational::zero())),
        _ => {
            thetas.push(Theta::Fixed(Rational::from(-1)));
            thetas.push(Theta::Fixed(Rational::one()));
            let mut prev: Option<Var> = None;
            for i in 3..=k {
                let v = sys.add_var(format!("theta{i}"));
                let order = match prev {
                    None => LinearConstraint::gt([(v, Rational::one())], Rational::one()),
                    Some(p) => LinearConstraint::gt(
                        [(v, Rational::one()), (p, -Rational::one())],
                        Rational::zero(),
                    ),
                };
                sys.push(order).expect("threshold variable declared");
                thetas.push(Theta::Var(v));
                prev = Some(v);
            }
        }
    }
    let model = Model::new(g.clone(), sys, thetas);
    first_witness(&model, cfg)
}

/// Default cap on the number of thresholds tried: `C(n, 2) + 1`.
pub fn default_k_max(g: &Graph) -> usize {
    let n = g.n();
    n * n.saturating_sub(1) / 2 + 1
}

/// Smallest `k <= k_max` such that `g` is `k`-threshold, with a witness.
pub fn theta_number(g: &Graph, k_max: usize) -> ThetaResult {
    theta_number_with(g, k_max, &SearchConfig::default()).expect_complete()
}

pub fn theta_number_with(g: &Graph, k_max: usize, cfg: &SearchConfig) -> Run<ThetaResult> {
    let started = Instant::now();
    let mut stats = SearchStats::default();
    let finish = |outcome, mut stats: SearchStats| {
        stats.wall_time = started.elapsed();
        Run { outcome, stats }
    };
    if g.num_edges() == 0 {
        let witness = Representation::new(
            g.clone(),
            ThresholdVector::new(Vec::new()).expect("empty is increasing"),
            RankAssignment::new(vec![Rational::zero(); g.n()]),
        )
        .expect("edgeless graph has the empty representation");
        return finish(
            Outcome::Complete(ThetaResult::Exact { theta: 0, witness }),
            stats,
        );
    }
    for k in 1..=k_max {
        let mut sub = cfg.clone();
        if let Some(t) = cfg.timeout {
            match t.checked_sub(started.elapsed()) {
                Some(left) => sub.timeout = Some(left),
                None => return finish(Outcome::TimedOut, stats),
            }
        }
        let run = decide_k_with(g, k, &sub);
        stats.absorb(&run.stats);
        match run.outcome {
            Outcome::TimedOut => return finish(Outcome::TimedOut, stats),
            Outcome::Complete(Some(witness)) => {
                return finish(
                    Outcome::Complete(ThetaResult::Exact { theta: k, witness }),
                    stats,
                )
            }
            Outcome::Complete(None) => {}
        }
    }
    finish(
        Outcome::Complete(ThetaResult::ExceedsCap { cap: k_max }),
        stats,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_family, FamilySpec};

    fn fam(s: &str) -> Graph {
        build_family(&s.parse::<FamilySpec>().unwrap()).unwrap()
    }

    #[test]
    fn fixed_examples() {
        assert!(decide_fixed(&fam("pk2:2"), &ThresholdVector::ints(&[-1, 1])).is_some());
        assert!(decide_fixed(&fam("pk2:2"), &ThresholdVector::ints(&[0])).is_none());
        assert!(decide_fixed(&fam("pk2:4"), &ThresholdVector::ints(&[-1, 1, 3])).is_none());
    }

    #[test]
    fn threshold_set_examples() {
        assert_eq!(threshold_set(&fam("pk2:2")).to_string(), "(1, inf)");
        assert_eq!(threshold_set(&Graph::complete(3)).to_string(), "(1, inf)");
    }

    #[test]
    fn decide_k_examples() {
        assert!(decide_k(&fam("pk3:2"), 2).is_none());
        assert!(decide_k(&fam("pk3:2"), 3).is_some());
        assert!(decide_k(&Graph::complete(3), 1).is_some());
        assert!(decide_k(&fam("pk2:1"), 0).is_none());
    }

    #[test]
    fn theta_examples() {
        assert_eq!(theta_number(&Graph::complete(3), 3).theta(), Some(1));
        assert_eq!(theta_number(&fam("pk2:2"), 3).theta(), Some(2));
        assert_eq!(theta_number(&fam("pk3:2"), 4).theta(), Some(3));
        assert_eq!(theta_number(&Graph::empty(3), 3).theta(), Some(0));
        assert_eq!(
            theta_number(&fam("pk3:2"), 2),
            ThetaResult::ExceedsCap { cap: 2 }
        );
    }

    #[test]
    fn zero_timeout_is_reported() {
        let cfg = SearchConfig {
            timeout: Some(Duration::ZERO),
            ..SearchConfig::default()
        };
        let run = decide_fixed_with(&fam("pk2:3"), &ThresholdVector::ints(&[-1, 1, 2]), &cfg);
        assert_eq!(run.outcome, Outcome::TimedOut);
    }
}
