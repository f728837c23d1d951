//! Baselines and component counting against brute-force oracles.

mod support;

use laee_core::baselines::knn_topology;
use laee_core::{Deployment, DeploymentConfig, SimRng};
use proptest::prelude::*;

#[test]
fn dtg_matches_empty_circumcircle_oracle() {
    let mut rng = SimRng::new(2024, 0);
    for instance in 0..1000 {
        if let Err(e) = support::check_dtg_instance(&mut rng) {
            panic!("instance {instance}: {e}");
        }
    }
}

#[test]
fn knn_matches_distance_sort_oracle() {
    let mut rng = SimRng::new(77, 0);
    for instance in 0..1000 {
        if let Err(e) = support::check_knn_instance(&mut rng) {
            panic!("instance {instance}: {e}");
        }
    }
}

#[test]
fn knn_breaks_distance_ties_by_id() {
    let positions = vec![[5.0, 5.0], [6.0, 5.0], [4.0, 5.0], [5.0, 6.0], [5.0, 4.0]];
    let cfg = DeploymentConfig {
        n: 5,
        side: 10.0,
        r: 2.0,
        sink_position: [5.0, 5.0],
    };
    let dep = Deployment::from_parts(cfg, positions, vec![1.0; 5]).unwrap();
    assert_eq!(knn_topology(&dep, 2).neighbors(0), &[1, 2]);
}

#[test]
fn collinear_points_form_a_path() {
    let positions: Vec<_> = (0..6).map(|i| [10.0 * i as f64, 0.0]).collect();
    let cfg = DeploymentConfig {
        n: 6,
        side: 60.0,
        r: 15.0,
        sink_position: [0.0, 0.0],
    };
    let dep = Deployment::from_parts(cfg, positions, vec![1.0; 6]).unwrap();
    let g = laee_core::baselines::dtg_topology(&dep);
    assert_eq!(g.edges(), (0..5).map(|i| (i, i + 1)).collect::<Vec<_>>());
}

fn graph_strategy() -> impl Strategy<Value = (usize, Vec<(usize, usize)>, Vec<bool>, usize, bool)> {
    (1usize..=64).prop_flat_map(|n| {
        (
            Just(n),
            prop::collection::vec((0..n, 0..n), 0..=3 * n),
            prop::collection::vec(prop::bool::weighted(0.2), n),
            0..n,
            any::<bool>(),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, ..ProptestConfig::default() })]

    #[test]
    fn giant_components_match_bfs((n, raw, removed, sink, directed) in graph_strategy()) {
        let edges: Vec<(usize, usize)> = raw.into_iter().filter(|(u, v)| u != v).collect();
        let checked = support::check_components(n, &edges, &removed, sink, directed);
        prop_assert!(checked.is_ok(), "{:?}", checked);
    }
}
