mod common;

use common::{all_graphs, arb_graph, brute_ged, mapping_cost};
use graphmatch::edit::{ged_with, GedOptions, Heuristic};
use graphmatch::{ged, ged_bipartite, EditCostParams};
use proptest::prelude::*;

fn params(x_node: f64, x_edge: f64) -> EditCostParams {
    EditCostParams {
        x_node,
        x_edge,
        ..EditCostParams::default()
    }
}

#[test]
fn exact_matches_enumeration_up_to_three_vertices() {
    let graphs: Vec<_> = (0..=3).flat_map(all_graphs).collect();
    let p = params(1.0, 1.0);
    for a in &graphs {
        for b in &graphs {
            let got = ged(a, b, &p, None).unwrap();
            assert_eq!(got.total_cost, brute_ged(a, b, 1.0, 1.0));
            assert!(got.complete);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_matches_enumeration_with_uneven_costs(a in arb_graph(5), b in arb_graph(5)) {
        let (xn, xe) = (1.5, 0.5);
        let path = ged(&a, &b, &params(xn, xe), None).unwrap();
        prop_assert!((path.total_cost - brute_ged(&a, &b, xn, xe)).abs() < 1e-9);
        prop_assert!((path.total_cost - mapping_cost(&a, &b, &path.mapping, xn, xe)).abs() < 1e-9);
    }

    #[test]
    fn symmetric(a in arb_graph(5), b in arb_graph(5)) {
        let p = params(1.0, 1.0);
        prop_assert_eq!(ged(&a, &b, &p, None).unwrap().total_cost, ged(&b, &a, &p, None).unwrap().total_cost);
    }

    #[test]
    fn heuristic_does_not_change_the_optimum(a in arb_graph(6), b in arb_graph(6)) {
        let p = params(1.0, 1.0);
        let plain = ged(&a, &b, &p, None).unwrap().total_cost;
        let opts = GedOptions { heuristic: Heuristic::LowerBound, ..GedOptions::default() };
        prop_assert_eq!(ged_with(&a, &b, &p, &opts).unwrap().total_cost, plain);
    }

    #[test]
    fn approximations_bound_from_above(a in arb_graph(6), b in arb_graph(6), w in 1usize..8) {
        let p = params(1.0, 1.0);
        let exact = ged(&a, &b, &p, None).unwrap().total_cost;
        let beam = ged(&a, &b, &p, Some(w)).unwrap();
        prop_assert!(beam.total_cost >= exact - 1e-9);
        prop_assert!(beam.complete);
        prop_assert!(ged_bipartite(&a, &b, &p).unwrap().total_cost >= exact - 1e-9);
    }

    #[test]
    fn triangle_inequality(a in arb_graph(4), b in arb_graph(4), c in arb_graph(4)) {
        let p = params(1.0, 1.0);
        let d = |x, y| ged(x, y, &p, None).unwrap().total_cost;
        prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c) + 1e-9);
    }
}

#[test]
fn huge_beam_is_exact() {
    let p = params(1.0, 1.0);
    for a in all_graphs(3) {
        for b in all_graphs(4).iter().step_by(5) {
            assert_eq!(
                ged(&a, b, &p, Some(10_000)).unwrap().total_cost,
                brute_ged(&a, b, 1.0, 1.0)
            );
        }
    }
}
