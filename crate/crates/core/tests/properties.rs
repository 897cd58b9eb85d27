mod common;

use heavypath::conditions::{d_star, lattice_violations, ConditionKind};
use heavypath::constructive::{
    find_path_t5, find_path_t8, find_paths_t10, validate_path_outcome, validate_t10_outcome, ConstructOptions,
};
use heavypath::format::{parse_graph, write_graph};
use heavypath::graph::WeightedGraph;
use heavypath::instances::random_two_connected;
use heavypath::oracle::{self, OracleBudget};
use heavypath::rational::{int, ratio, ExtRational, Rational};
use num_traits::Zero;
use proptest::prelude::*;

use common::naive;

fn two_connected() -> impl Strategy<Value = WeightedGraph> {
    (3usize..=7, 0i64..=3, 1i64..=10, any::<u64>())
        .prop_map(|(n, lo, span, seed)| random_two_connected(n, lo, lo + span, seed).unwrap())
}

/// Connected graph built from a random spanning tree plus extra edges.
fn connected() -> impl Strategy<Value = WeightedGraph> {
    (2usize..=8).prop_flat_map(|n| {
        (proptest::collection::vec(any::<prop::sample::Index>(), n - 1), any::<u64>(), 1i64..=5).prop_map(
            move |(parents, extra, w)| {
                let mut g = WeightedGraph::new(n);
                for (i, p) in parents.iter().enumerate() {
                    g.add_edge(i + 1, p.index(i + 1), int(w)).unwrap();
                }
                let mut bit = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if extra >> (bit % 64) & 1 == 1 && !g.has_edge(u, v) {
                            g.add_edge(u, v, int(1 + (bit as i64 % 3))).unwrap();
                        }
                        bit += 7;
                    }
                }
                g
            },
        )
    })
}

fn scaled(g: &WeightedGraph, c: &Rational) -> WeightedGraph {
    let edges: Vec<_> = g.edges().map(|(u, v, w)| (u, v, w * c)).collect();
    WeightedGraph::from_edges(g.capacity(), edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn weighted_degrees_sum_to_twice_total(g in two_connected()) {
        let sum = g.vertices().fold(Rational::zero(), |acc, v| acc + g.weighted_degree(v, None).unwrap());
        prop_assert_eq!(sum, g.total_weight() * int(2));
    }

    #[test]
    fn cut_vertices_match_brute_force(g in connected()) {
        let fast = g.cut_vertices().unwrap();
        let slow: Vec<usize> = g.vertices().filter(|&v| !g.without(&[v]).unwrap().is_connected()).collect();
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn text_format_round_trips(g in two_connected()) {
        prop_assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn lattice_holds(g in two_connected(), x in 0usize..7) {
        prop_assert!(lattice_violations(&g, &[]).unwrap().is_empty());
        let x = x % g.vertex_count();
        prop_assert!(lattice_violations(&g, &[x]).unwrap().is_empty());
    }

    #[test]
    fn d_star_scales_linearly(g in two_connected(), num in 1i64..6, den in 1i64..4) {
        let c = ratio(num, den);
        let h = scaled(&g, &c);
        for kind in ConditionKind::ALL {
            let a = d_star(&g, kind, &[0]).unwrap().d_star;
            let b = d_star(&h, kind, &[0]).unwrap().d_star;
            let expected = match a {
                ExtRational::Finite(v) => ExtRational::Finite(v * &c),
                ExtRational::PosInf => ExtRational::PosInf,
            };
            prop_assert_eq!(b, expected);
        }
    }

    #[test]
    fn oracle_scales_linearly(g in two_connected(), num in 1i64..6, den in 1i64..4) {
        let c = ratio(num, den);
        let h = scaled(&g, &c);
        let b = OracleBudget::default();
        let n = g.vertex_count();
        let a = oracle::heaviest_xy_path(&g, 0, n - 1, &b).unwrap().unwrap();
        let s = oracle::heaviest_xy_path(&h, 0, n - 1, &b).unwrap().unwrap();
        prop_assert_eq!(s.weight, a.weight * &c);
        let a = oracle::heaviest_cycle(&g, &b).unwrap().unwrap();
        let s = oracle::heaviest_cycle(&h, &b).unwrap().unwrap();
        prop_assert_eq!(s.weight, a.weight * &c);
    }

    #[test]
    fn adding_an_edge_never_lowers_optima(g in two_connected(), u in 0usize..7, v in 0usize..7, w in 0i64..5) {
        let n = g.vertex_count();
        let (u, v) = (u % n, v % n);
        prop_assume!(u != v && !g.has_edge(u, v));
        let mut h = g.clone();
        h.add_edge(u, v, int(w)).unwrap();
        let b = OracleBudget::default();
        let before = oracle::heaviest_path(&g, &b).unwrap().unwrap().weight;
        let after = oracle::heaviest_path(&h, &b).unwrap().unwrap().weight;
        prop_assert!(after >= before);
        let before = oracle::heaviest_x_path(&g, 0, &b).unwrap().weight;
        let after = oracle::heaviest_x_path(&h, 0, &b).unwrap().weight;
        prop_assert!(after >= before);
        prop_assert!(oracle::hamilton_path(&g, &b).unwrap().is_none() || oracle::hamilton_path(&h, &b).unwrap().is_some());
    }

    #[test]
    fn oracle_agrees_with_enumeration(g in two_connected(), x in 0usize..7, y in 0usize..7) {
        let n = g.vertex_count();
        let (x, y) = (x % n, y % n);
        prop_assume!(x != y);
        let b = OracleBudget::default();
        let h = oracle::heaviest_xy_path(&g, x, y, &b).unwrap().map(|h| (h.weight, h.path.into_vertices()));
        prop_assert_eq!(h, naive::heaviest_xy(&g, x, y));
        prop_assert_eq!(oracle::hamilton_xy_path(&g, x, y, &b).unwrap().is_some(), naive::has_hamilton_xy(&g, x, y));
        prop_assert_eq!(oracle::spanning_disjoint_pair(&g, x, y, &b).unwrap().is_some(), naive::has_spanning_pair(&g, x, y));
    }

    #[test]
    fn constructions_validate_and_replay(g in two_connected(), x in 0usize..7, y in 0usize..7, cut in 0i64..4) {
        let n = g.vertex_count();
        let (x, y) = (x % n, y % n);
        prop_assume!(x != y);
        let opts = ConstructOptions::default();
        let below = |kind, anchors: &[usize]| match d_star(&g, kind, anchors).unwrap().d_star {
            ExtRational::Finite(d) => d - int(cut),
            ExtRational::PosInf => g.total_weight() + int(1),
        };
        let d = below(ConditionKind::PairMax, &[x, y]);
        let (o, t) = find_path_t5(&g, x, y, &d, &opts).unwrap();
        prop_assert!(validate_path_outcome(&g, x, Some(y), &d, &o).is_ok());
        prop_assert!(t.replay_matches());
        let d = below(ConditionKind::TripleMax, &[x]);
        let (o, t) = find_path_t8(&g, x, &d, &opts).unwrap();
        prop_assert!(validate_path_outcome(&g, x, None, &d, &o).is_ok());
        prop_assert!(t.replay_matches());
        let d = below(ConditionKind::TripleMax, &[x, y]);
        let (o, t) = find_paths_t10(&g, x, y, &d, &opts).unwrap();
        prop_assert!(validate_t10_outcome(&g, x, y, &d, &o).is_ok());
        prop_assert!(t.replay_matches());
        prop_assert!(t.max_depth() <= 4 * n + 4);
    }
}
