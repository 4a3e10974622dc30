mod common;

use std::collections::BTreeMap;

use bus_topology::metrics::{self, DistanceScope, PathSweep};
use bus_topology::spaces::{self, Graph};
use common::*;
use proptest::prelude::*;

fn arb_graph() -> impl Strategy<Value = Graph> {
    (1usize..40, 0.0f64..0.5, any::<u64>())
        .prop_map(|(n, p, seed)| random_graph(&mut rng(seed), n, p))
}

#[test]
fn three_line_p_space_tables() {
    let p = spaces::build_p_space(&three_line());
    let deg = metrics::degree_report(&p, 50).unwrap();
    assert_eq!(deg.average, 6.4);
    assert_eq!(deg.per_node.values().sum::<usize>(), 64);
    assert_eq!((deg.max, deg.max_node.as_str()), (9, "3"));
    assert_eq!(
        metrics::top_k(&deg.per_node, 2, None),
        vec![("3".to_string(), 9), ("5".to_string(), 9)]
    );

    let dist = metrics::distance_report(&p, DistanceScope::All).unwrap();
    assert_eq!(dist.histogram, BTreeMap::from([(1, 32), (2, 13)]));
    assert!((dist.average - 58.0 / 45.0).abs() < 1e-12);
    assert_eq!(dist.diameter, 2);
    assert!((dist.cumulative_fraction[&1] - 32.0 / 45.0).abs() < 1e-12);
    assert_eq!(dist.cumulative_fraction[&2], 1.0);

    let comp = metrics::giant_component(&p).unwrap();
    assert_eq!((comp.giant_fraction, comp.component_count), (1.0, 1));

    assert_eq!(metrics::closeness(&p).unwrap()["3"], 1.0);
}

#[test]
fn three_line_b_space_partition_averages() {
    let b = spaces::build_b_space(&three_line());
    let r = metrics::bipartite_degree_report(&b, 50).unwrap();
    let parts = r.partitions.unwrap();
    assert!((parts.route_average - 17.0 / 3.0).abs() < 1e-12);
    assert_eq!(parts.stop_average, 1.7);
    assert_eq!(r.average, 34.0 / 13.0);
}

#[test]
fn five_line_cs3_giant() {
    let c = spaces::build_c_space(&five_line());
    let c3 = spaces::threshold_c_space(&c, 3).unwrap();
    let r = metrics::giant_component(&c3).unwrap();
    assert_eq!(r.giant_nodes, vec!["A", "D"]);
    assert_eq!(r.giant_fraction, 0.4);
}

#[test]
fn star_values() {
    let star = Graph::from_labeled_edges(&[("c", "l1"), ("c", "l2"), ("c", "l3")]).unwrap();
    let close = metrics::closeness(&star).unwrap();
    assert_eq!(close["c"], 1.0);
    assert_eq!(close["l1"], 0.6);
    let bc = metrics::betweenness(&star).unwrap();
    assert_eq!(bc["c"], 1.0);
    assert_eq!(bc["l2"], 0.0);
}

#[test]
fn weighted_graphs_use_hop_distance() {
    let c = spaces::build_c_space(&five_line());
    let d = metrics::distance_report(&c, DistanceScope::All).unwrap();
    assert_eq!(d.histogram, BTreeMap::from([(1, 10)]));
}

#[test]
fn giant_fraction_falls_with_threshold() {
    let feed = bus_topology::synthetic::generate(&bus_topology::synthetic::SyntheticConfig::small(
        400, 40, 30, 11,
    ))
    .unwrap();
    let c = spaces::build_c_space(&feed);
    let mut last = f64::INFINITY;
    for n in 1..=12 {
        let g = spaces::threshold_c_space(&c, n).unwrap();
        let frac = metrics::giant_component(&g).unwrap().giant_fraction;
        assert!(frac <= last, "n={n}: {frac} > {last}");
        last = frac;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matches_geodesic_oracle(graph in arb_graph()) {
        let oracle = GeodesicOracle::of(&graph);
        let result = PathSweep::new().run(&graph, true).unwrap();
        prop_assert_eq!(&result.distance.histogram, &oracle.histogram());
        prop_assert!((result.distance.average - oracle.average_distance()).abs() < 1e-9);
        prop_assert!(max_abs_diff(&result.closeness, &oracle.closeness()) < 1e-9);
        prop_assert!(max_abs_diff(&result.betweenness, &oracle.betweenness()) < 1e-9);
    }

    #[test]
    fn degree_sum_is_twice_edges(graph in arb_graph()) {
        let r = metrics::degree_report(&graph, 5).unwrap();
        prop_assert_eq!(r.per_node.values().sum::<usize>(), 2 * graph.edge_count());
        prop_assert_eq!(r.average, (2 * graph.edge_count()) as f64 / graph.node_count() as f64);
        prop_assert_eq!(r.histogram.iter().map(|b| b.count).sum::<usize>(), graph.node_count());
    }

    #[test]
    fn distance_report_invariants(graph in arb_graph()) {
        let d = metrics::distance_report(&graph, DistanceScope::All).unwrap();
        let n = graph.node_count() as u64;
        prop_assert_eq!(d.reachable_pair_count + d.unreachable_pair_count, n * (n - 1) / 2);
        prop_assert_eq!(d.histogram.values().sum::<u64>(), d.reachable_pair_count);
        if let Some((&last, _)) = d.histogram.iter().next_back() {
            prop_assert_eq!(last, d.diameter);
            prop_assert_eq!(d.cumulative_fraction[&last], 1.0);
        }
        let fr: Vec<f64> = d.cumulative_fraction.values().copied().collect();
        prop_assert!(fr.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn giant_component_is_largest(graph in arb_graph()) {
        let r = metrics::giant_component(&graph).unwrap();
        let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
        for id in r.component_id.values() {
            *sizes.entry(*id).or_default() += 1;
        }
        prop_assert_eq!(sizes.len(), r.component_count);
        prop_assert_eq!(*sizes.values().max().unwrap(), r.giant_size());
        prop_assert_eq!(r.giant_fraction, r.giant_size() as f64 / graph.node_count() as f64);
        // tie rule: giant holds the smallest label among largest components
        let smallest = r.component_id.iter()
            .find(|(_, id)| sizes[id] == r.giant_size())
            .map(|(l, _)| l.clone())
            .unwrap();
        prop_assert!(r.giant_nodes.contains(&smallest));
    }

    #[test]
    fn top_k_threshold_matches_filter(values in prop::collection::btree_map("[a-e]{1,3}", 0.0f64..1.0, 0..20), t in 0.0f64..1.0) {
        let ranked = metrics::top_k(&values, 0, Some(t));
        let expected = values.values().filter(|&&v| v > t).count();
        prop_assert_eq!(ranked.len(), expected);
        prop_assert!(ranked.windows(2).all(|w| w[0].1 > w[1].1 || (w[0].1 == w[1].1 && w[0].0 < w[1].0)));
    }
}
