mod common;

use std::collections::{BTreeMap, BTreeSet};

use bus_topology::feed::Feed;
use bus_topology::spaces::{self, pajek};
use common::*;
use proptest::prelude::*;

/// Random feed: up to 12 routes over stops `s0..s29`.
fn arb_routes() -> impl Strategy<Value = Vec<(String, Vec<String>)>> {
    prop::collection::vec(prop::collection::btree_set(0u8..30, 1..12), 1..12).prop_map(|routes| {
        routes
            .into_iter()
            .enumerate()
            .map(|(i, stops)| {
                (
                    format!("R{i:02}"),
                    stops.into_iter().map(|s| format!("s{s}")).collect(),
                )
            })
            .collect()
    })
}

fn feed_from(routes: &[(String, Vec<String>)]) -> Feed {
    Feed::from_route_lists("prop", routes.to_vec()).unwrap()
}

#[test]
fn three_line_spaces_match_oracles() {
    let feed = three_line();
    let sets = route_sets(&feed);
    let p = spaces::build_p_space(&feed);
    assert_eq!(unweighted(&p.labeled_edges()), oracle_p_edges(&sets));
    let c = spaces::build_c_space(&feed);
    assert_eq!(c.labeled_edges(), oracle_c_edges(&sets));
}

#[test]
fn five_line_c_space_matches_oracle() {
    let feed = five_line();
    let c = spaces::build_c_space(&feed);
    assert_eq!(c.labeled_edges(), oracle_c_edges(&route_sets(&feed)));
    assert_eq!(c.edge_count(), 10);
}

proptest! {
    #[test]
    fn projections_match_bipartite(routes in arb_routes()) {
        let feed = feed_from(&routes);
        let b = spaces::build_b_space(&feed);

        // one-mode projections computed from the incidence list alone
        let mut routes_of: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
        let mut stops_of: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
        for (r, s) in b.edges() {
            let (r, s) = (b.route_labels()[r].as_str(), b.stop_labels()[s].as_str());
            routes_of.entry(s).or_default().insert(r);
            stops_of.entry(r).or_default().insert(s);
        }
        let mut p_expected = BTreeSet::new();
        for rs in stops_of.values() {
            for a in rs {
                for c in rs {
                    if a < c {
                        p_expected.insert((a.to_string(), c.to_string()));
                    }
                }
            }
        }
        let p = spaces::build_p_space(&feed);
        prop_assert_eq!(unweighted(&p.labeled_edges()), p_expected);

        let mut c_expected = BTreeSet::new();
        for (x, sx) in &stops_of {
            for (y, sy) in &stops_of {
                if x < y {
                    let shared = sx.intersection(sy).count() as u32;
                    if shared > 0 {
                        c_expected.insert((x.to_string(), y.to_string(), shared));
                    }
                }
            }
        }
        let c = spaces::build_c_space(&feed);
        prop_assert_eq!(c.labeled_edges(), c_expected);
        prop_assert_eq!(c.labeled_edges(), oracle_c_edges(&route_sets(&feed)));
    }

    #[test]
    fn b_space_degree_identity(routes in arb_routes()) {
        let b = spaces::build_b_space(&feed_from(&routes));
        prop_assert_eq!(b.route_degrees().iter().sum::<usize>(), b.edge_count());
        prop_assert_eq!(b.stop_degrees().iter().sum::<usize>(), b.edge_count());
    }

    #[test]
    fn every_route_is_a_clique(routes in arb_routes()) {
        let feed = feed_from(&routes);
        let p = spaces::build_p_space(&feed);
        for route in feed.routes().values() {
            let idx: Vec<usize> = route.served_stops.iter().map(|s| p.index_of(s).unwrap()).collect();
            for &a in &idx {
                for &b in &idx {
                    if a != b {
                        prop_assert!(p.weight(a, b).is_some());
                    }
                }
            }
        }
    }

    #[test]
    fn thresholds_are_monotone(routes in arb_routes(), n1 in 1u32..6, step in 0u32..5) {
        let c = spaces::build_c_space(&feed_from(&routes));
        let lo = spaces::threshold_c_space(&c, n1).unwrap();
        let hi = spaces::threshold_c_space(&c, n1 + step).unwrap();
        prop_assert_eq!(lo.node_count(), c.node_count());
        prop_assert_eq!(hi.node_count(), c.node_count());
        prop_assert!(hi.labeled_edges().is_subset(&lo.labeled_edges()));
        prop_assert_eq!(spaces::threshold_c_space(&c, 1).unwrap(), c);
    }

    #[test]
    fn net_round_trip(routes in arb_routes()) {
        let feed = feed_from(&routes);
        let c = spaces::build_c_space(&feed);
        let text = pajek::graph_to_net(&c).unwrap();
        let back = pajek::net_to_graph(pajek::parse_net(&text).unwrap()).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(pajek::graph_to_net(&back).unwrap(), text);

        let b = spaces::build_b_space(&feed);
        let text = pajek::bipartite_to_net(&b).unwrap();
        let back = pajek::net_to_bipartite(pajek::parse_net(&text).unwrap()).unwrap();
        prop_assert_eq!(back, b);
    }
}

#[test]
fn net_files_on_disk() {
    let dir = tempfile::tempdir().unwrap();
    let c = spaces::build_c_space(&three_line());
    let path = dir.path().join("cs.net");
    spaces::write_pajek_net(&c, &path).unwrap();
    assert_eq!(spaces::read_pajek_net(&path).unwrap(), c);

    let b = spaces::build_b_space(&three_line());
    let path = dir.path().join("bs.net");
    spaces::write_pajek_bipartite(&b, &path).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("*Vertices 13 3\n1 \"A\"\n"));
    assert_eq!(spaces::read_pajek_bipartite(&path).unwrap(), b);
}
