mod common;

use proptest::prelude::*;
use tetraflow::graphflow::{evaluate_kgraph, gamma1, gamma2, KGraph};
use tetraflow::multivector::MultiVector;

use common::{naive_kgraph, strategies};

fn small_bivector() -> impl Strategy<Value = MultiVector> {
    strategies::ctx(2..=3).prop_flat_map(|ctx| strategies::bivector(ctx, 3, 2))
}

fn graphs() -> Vec<KGraph> {
    [
        "1; (S1,S2)",
        "2; (S1,V2) (V1,S2)",
        "2; (S1,S2) (V1,V1)",
        "3; (S1,V3) (V1,S2) (V1,V2)",
        "4; (S1,S2) (V1,V4) (V1,V2) (V1,V3)",
        "4; (S1,V4) (V1,S2) (V2,V1) (V3,V2)",
        "4; (S1,S2) (V1,V4) (V1,V4) (V2,V3)",
    ]
    .iter()
    .map(|s| s.parse().unwrap())
    .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pruned_matches_naive(p in small_bivector()) {
        for g in graphs() {
            prop_assert_eq!(evaluate_kgraph(&g, &p).unwrap().raw, naive_kgraph(&g, &p));
        }
    }

    #[test]
    fn swapping_sinks_transposes(p in small_bivector()) {
        for g in graphs() {
            let r = evaluate_kgraph(&g, &p).unwrap();
            let s = evaluate_kgraph(&g.swap_sinks(), &p).unwrap();
            prop_assert_eq!(s.raw, r.raw.transpose());
            prop_assert_eq!(s.skew, r.skew.scale(&tetraflow::polyring::rat(-1)));
        }
    }

    #[test]
    fn tetrahedra_match_closed_forms(p in small_bivector()) {
        prop_assert_eq!(evaluate_kgraph(&KGraph::gamma1_tetrahedron(), &p).unwrap(), gamma1(&p).unwrap());
        prop_assert_eq!(evaluate_kgraph(&KGraph::gamma2_tetrahedron(), &p).unwrap(), gamma2(&p).unwrap());
    }

    #[test]
    fn two_cycle_graph_vanishes(p in small_bivector()) {
        prop_assert!(evaluate_kgraph(&KGraph::skew_vanishing(), &p).unwrap().raw.is_zero());
    }

    #[test]
    fn graph_text_round_trips(g in prop::sample::select(graphs())) {
        prop_assert_eq!(g.to_string().parse::<KGraph>().unwrap(), g);
    }
}

#[test]
fn closed_forms_in_dimension_four() {
    let ctx = tetraflow::polyring::Context::new(4).unwrap();
    let mut r = tetraflow::sampling::rng(11);
    let p = tetraflow::sampling::random_bivector(ctx, &mut r, 3, 2);
    assert_eq!(
        evaluate_kgraph(&KGraph::gamma1_tetrahedron(), &p).unwrap(),
        gamma1(&p).unwrap()
    );
    assert_eq!(
        evaluate_kgraph(&KGraph::gamma2_tetrahedron(), &p).unwrap(),
        gamma2(&p).unwrap()
    );
}
