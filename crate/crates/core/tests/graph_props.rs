mod common;

use multithreshold::graph::{contains_induced_2k2, creation_sequence, is_threshold, Creation};
use multithreshold::{build_family, complement, FamilySpec, Graph};
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mask = bits
                .iter()
                .enumerate()
                .fold(0u64, |m, (i, &b)| m | (b as u64) << i);
            common::graph_from_mask(n, mask)
        })
    })
}

fn arb_perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

// Threshold graphs are exactly the graphs with no induced 2K2, P4 or C4.
fn forbidden_free(g: &Graph) -> bool {
    let n = g.n();
    let four_sets = (0..n).flat_map(|a| {
        (a + 1..n)
            .flat_map(move |b| (b + 1..n).flat_map(move |c| (c + 1..n).map(move |d| [a, b, c, d])))
    });
    for s in four_sets {
        let h = g.induced(&s);
        let mut degs: Vec<usize> = (0..4).map(|v| h.degree(v)).collect();
        degs.sort_unstable();
        let bad = match h.num_edges() {
            2 => degs == [1, 1, 1, 1],
            3 => degs == [1, 1, 2, 2],
            4 => degs == [2, 2, 2, 2],
            _ => false,
        };
        if bad {
            return false;
        }
    }
    true
}

#[test]
fn threshold_recognition_matches_forbidden_subgraphs() {
    for n in 1..=6 {
        let pairs = n * (n - 1) / 2;
        for mask in 0..1u64 << pairs {
            let g = common::graph_from_mask(n, mask);
            assert_eq!(is_threshold(&g), forbidden_free(&g), "{}", g.to_edge_list());
        }
    }
}

#[test]
fn creation_sequence_rebuilds_the_graph() {
    for n in 1..=6 {
        let pairs = n * (n - 1) / 2;
        for mask in 0..1u64 << pairs {
            let g = common::graph_from_mask(n, mask);
            let Some(seq) = creation_sequence(&g) else {
                continue;
            };
            assert_eq!(seq.len(), n);
            let mut placed: Vec<usize> = Vec::new();
            let mut edges = Vec::new();
            for step in seq {
                match step {
                    Creation::Isolated(v) => placed.push(v),
                    Creation::Dominating(v) => {
                        edges.extend(placed.iter().map(|&u| (u, v)));
                        placed.push(v);
                    }
                }
            }
            assert_eq!(Graph::from_edges(n, edges).unwrap(), g);
        }
    }
}

#[test]
fn family_sizes() {
    let cases = [
        ("pk2:4", 8, 4),
        ("pk3:3", 9, 9),
        ("kpartite:3,3", 6, 9),
        ("kpartite:1,2,3", 6, 11),
        ("comp(pk2:2)", 4, 4),
        ("pk2:1+pk3:1", 5, 4),
    ];
    for (text, n, m) in cases {
        let spec: FamilySpec = text.parse().unwrap();
        assert_eq!(spec.to_string(), text);
        let g = build_family(&spec).unwrap();
        assert_eq!((g.n(), g.num_edges()), (n, m), "{text}");
    }
}

proptest! {
    #[test]
    fn complement_is_an_involution(g in arb_graph(8)) {
        let c = complement(&g);
        prop_assert_eq!(c.num_edges() + g.num_edges(), g.n() * (g.n() - 1) / 2);
        prop_assert_eq!(complement(&c), g);
    }

    #[test]
    fn threshold_is_closed_under_complement(g in arb_graph(7)) {
        prop_assert_eq!(is_threshold(&g), is_threshold(&complement(&g)));
    }

    #[test]
    fn threshold_graphs_are_2k2_free(g in arb_graph(7)) {
        if is_threshold(&g) {
            prop_assert!(!contains_induced_2k2(&g));
        }
    }

    #[test]
    fn relabel_preserves_structure((g, perm) in arb_graph(7).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), arb_perm(n))
    })) {
        let h = g.relabel(&perm).unwrap();
        prop_assert_eq!(h.num_edges(), g.num_edges());
        for (u, v) in g.edges() {
            prop_assert!(h.has_edge(perm[u], perm[v]));
        }
        prop_assert_eq!(is_threshold(&h), is_threshold(&g));
    }

    #[test]
    fn edge_list_roundtrip(g in arb_graph(8)) {
        prop_assert_eq!(Graph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
    }
}
