use heavypath::conditions::{d_star, ConditionKind};
use heavypath::constructive::{
    find_path_t5, find_path_t8, find_paths_t10, validate_path_outcome, validate_t10_outcome, ConstructOptions,
};
use heavypath::graph::WeightedGraph;
use heavypath::instances::enumerate_two_connected;
use heavypath::rational::{int, ExtRational, Rational};

fn threshold(g: &WeightedGraph, kind: ConditionKind, excluded: &[usize]) -> Rational {
    match d_star(g, kind, excluded).unwrap().d_star {
        ExtRational::Finite(d) => d,
        ExtRational::PosInf => g.total_weight() + int(1),
    }
}

fn sweep(n: usize, weights: &[i64]) -> usize {
    let ws: Vec<Rational> = weights.iter().map(|&w| int(w)).collect();
    let opts = ConstructOptions::default();
    let mut runs = 0;
    for g in enumerate_two_connected(n, &ws).unwrap() {
        for x in 0..n {
            let d = threshold(&g, ConditionKind::TripleMax, &[x]);
            let (o, _) = find_path_t8(&g, x, &d, &opts).unwrap_or_else(|e| panic!("T8 {g:?} x={x} d={d}: {e}"));
            validate_path_outcome(&g, x, None, &d, &o).unwrap();
            runs += 1;
            for y in x + 1..n {
                let d = threshold(&g, ConditionKind::PairMax, &[x, y]);
                let (o, _) =
                    find_path_t5(&g, x, y, &d, &opts).unwrap_or_else(|e| panic!("T5 {g:?} x={x} y={y} d={d}: {e}"));
                validate_path_outcome(&g, x, Some(y), &d, &o).unwrap();
                let d = threshold(&g, ConditionKind::TripleMax, &[x, y]);
                let (o, _) =
                    find_paths_t10(&g, x, y, &d, &opts).unwrap_or_else(|e| panic!("T10 {g:?} x={x} y={y} d={d}: {e}"));
                validate_t10_outcome(&g, x, y, &d, &o).unwrap();
                runs += 2;
            }
        }
    }
    runs
}

#[test]
fn every_four_vertex_instance_with_weights_up_to_3() {
    assert!(sweep(4, &[1, 2, 3]) > 0);
}
