mod common;

use std::time::Duration;

use multithreshold::graph::is_threshold;
use multithreshold::solver::{
    decide_fixed, decide_fixed_with, decide_k, theta_number, threshold_set, threshold_set_with,
    Outcome, SearchConfig,
};
use multithreshold::{build_family, complement, Graph, Rational, ThresholdVector};
use proptest::prelude::*;

fn fam(s: &str) -> Graph {
    build_family(&s.parse().unwrap()).unwrap()
}

fn no_symmetry() -> SearchConfig {
    SearchConfig {
        symmetry_breaking: false,
        ..SearchConfig::default()
    }
}

#[test]
fn grid_oracle_on_small_graphs() {
    // ranks on the grid k/4 for k in -12..=12, thresholds (-1, 1, 2) scaled by 4
    let th = ThresholdVector::ints(&[-1, 1, 2]);
    for n in 1..=4 {
        let grid = common::grid_induced_classes(n, &[-4, 4, 8], -12, 12);
        for (mask, g) in common::isomorphism_classes(n) {
            let solved = decide_fixed(&g, &th);
            if let Some(rep) = &solved {
                assert!(rep.verify().is_ok());
                assert_eq!(rep.graph(), &g);
            }
            if grid.contains(&mask) {
                assert!(
                    solved.is_some(),
                    "grid finds {} but the solver does not",
                    g.to_edge_list()
                );
            }
        }
    }
}

#[test]
fn one_threshold_is_classic_threshold() {
    let th = ThresholdVector::ints(&[0]);
    for n in 1..=5 {
        for g in common::isomorphism_classes(n).into_values() {
            assert_eq!(
                decide_fixed(&g, &th).is_some(),
                is_threshold(&g),
                "{}",
                g.to_edge_list()
            );
            assert_eq!(decide_k(&g, 1).is_some(), is_threshold(&g));
        }
    }
}

#[test]
fn symmetry_breaking_keeps_every_answer() {
    let th = ThresholdVector::ints(&[-1, 1, 3]);
    for n in 1..=5 {
        for g in common::isomorphism_classes(n).into_values() {
            let with = decide_fixed(&g, &th).is_some();
            let without = decide_fixed_with(&g, &th, &no_symmetry())
                .outcome
                .complete()
                .unwrap()
                .is_some();
            assert_eq!(with, without, "{}", g.to_edge_list());
        }
    }
    for family in ["pk2:2", "pk2:3", "pk3:2", "kpartite:2,2"] {
        let g = fam(family);
        let a = threshold_set(&g);
        let b = threshold_set_with(&g, &no_symmetry())
            .outcome
            .complete()
            .unwrap();
        assert_eq!(a, b, "{family}");
    }
}

#[test]
fn threshold_set_agrees_with_pointwise_decisions() {
    let probes: Vec<Rational> = [
        (5, 4),
        (3, 2),
        (2, 1),
        (5, 2),
        (3, 1),
        (13, 4),
        (7, 2),
        (5, 1),
        (11, 2),
        (9, 1),
    ]
    .iter()
    .map(|&(a, b)| Rational::frac(a, b))
    .collect();
    for family in ["pk2:2", "pk2:3", "pk3:2", "pk2:1+pk3:1", "comp(pk2:3)"] {
        let g = fam(family);
        let set = threshold_set(&g);
        assert!(set.is_normalized());
        for t in &probes {
            let th =
                ThresholdVector::new(vec![Rational::from(-1), Rational::one(), t.clone()]).unwrap();
            assert_eq!(
                set.contains(t),
                decide_fixed(&g, &th).is_some(),
                "{family} at t = {t}"
            );
        }
    }
}

#[test]
fn searches_are_deterministic() {
    let g = fam("pk2:3");
    let a = threshold_set_with(&g, &SearchConfig::default());
    let b = threshold_set_with(&g, &SearchConfig::default());
    assert_eq!(a.outcome, b.outcome);
    assert_eq!(
        (a.stats.nodes, a.stats.lp_calls, a.stats.leaves),
        (b.stats.nodes, b.stats.lp_calls, b.stats.leaves)
    );

    let th = ThresholdVector::ints(&[-1, 1, 2]);
    let x = decide_fixed_with(&fam("pk2:1+pk3:1"), &th, &SearchConfig::default());
    let y = decide_fixed_with(&fam("pk2:1+pk3:1"), &th, &SearchConfig::default());
    assert_eq!(x.outcome, y.outcome);
    assert_eq!(x.stats.nodes, y.stats.nodes);
}

#[test]
fn workers_do_not_change_results() {
    let parallel = SearchConfig {
        workers: 4,
        ..SearchConfig::default()
    };
    for family in ["pk2:3", "pk3:2", "kpartite:2,3"] {
        let g = fam(family);
        assert_eq!(
            threshold_set(&g),
            threshold_set_with(&g, &parallel)
                .outcome
                .complete()
                .unwrap()
        );
        let th = ThresholdVector::ints(&[-1, 1, 4]);
        let seq = decide_fixed(&g, &th);
        let par = decide_fixed_with(&g, &th, &parallel)
            .outcome
            .complete()
            .unwrap();
        assert_eq!(seq, par, "{family}");
    }
}

#[test]
fn zero_timeout_reports_timed_out() {
    let cfg = SearchConfig {
        timeout: Some(Duration::ZERO),
        ..SearchConfig::default()
    };
    let run = threshold_set_with(&fam("pk2:3"), &cfg);
    assert_eq!(run.outcome, Outcome::TimedOut);
}

#[test]
fn theta_of_complement_twice_and_known_values() {
    let cases = [
        ("pk2:1", 1),
        ("pk2:2", 2),
        ("pk3:1", 1),
        ("pk3:2", 3),
        ("kpartite:2,2", 2),
    ];
    for (family, theta) in cases {
        let g = fam(family);
        let got = theta_number(&g, 6);
        assert_eq!(got.theta(), Some(theta), "{family}");
        assert_eq!(
            theta_number(&complement(&complement(&g)), 6).theta(),
            Some(theta)
        );
    }
    assert_eq!(theta_number(&Graph::empty(4), 3).theta(), Some(0));
}

fn arb_graph_and_perm() -> impl Strategy<Value = (Graph, Vec<usize>)> {
    (2usize..=5).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (
            (0..1u64 << pairs).prop_map(move |mask| common::graph_from_mask(n, mask)),
            Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn theta_is_invariant_under_relabeling((g, perm) in arb_graph_and_perm()) {
        let h = g.relabel(&perm).unwrap();
        let a = theta_number(&g, 5);
        let b = theta_number(&h, 5);
        prop_assert_eq!(a.theta(), b.theta());
        if let multithreshold::solver::ThetaResult::Exact { witness, .. } = &a {
            prop_assert!(witness.verify().is_ok());
        }
    }

    #[test]
    fn fixed_decisions_are_invariant_under_relabeling((g, perm) in arb_graph_and_perm(), t in 2i64..6) {
        let th = ThresholdVector::ints(&[-1, 1, t]);
        let h = g.relabel(&perm).unwrap();
        prop_assert_eq!(decide_fixed(&g, &th).is_some(), decide_fixed(&h, &th).is_some());
    }
}

#[test]
fn threshold_set_shapes_on_small_graphs() {
    // every graph on at most 5 vertices is (-1, 1, t)-threshold for all t > 1,
    // except C5, which is not for any t
    let c5 = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
    let perms = common::permutations(5);
    let c5_class = common::canonical_mask(5, common::mask_of(&c5), &perms);
    let everything: multithreshold::IntervalSet = "(1, inf)".parse().unwrap();
    for n in 1..=5 {
        for (mask, g) in common::isomorphism_classes(n) {
            let set = threshold_set(&g);
            if n == 5 && mask == c5_class {
                assert!(set.is_empty(), "T(C5) = {set}");
            } else {
                assert_eq!(set, everything, "{}", g.to_edge_list());
            }
        }
    }
}
