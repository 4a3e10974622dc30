//! B-space, P-space and C-space construction.
//!
//! * B-space: bipartite route–stop incidence.
//! * P-space: stops adjacent when some route serves both.
//! * C-space: routes adjacent when they share a stop, weighted by the number
//!   of shared stops. [`threshold_c_space`] keeps edges with at least `n`
//!   shared stops.
//!
//! Orphan stops (served by no route) are left out of every space. Nodes are
//! ordered by label: routes lexicographically, then stops lexicographically.

mod graph;
pub mod pajek;

use std::collections::BTreeMap;

pub use graph::{BipartiteGraph, Graph};
pub use pajek::{read_pajek_bipartite, read_pajek_net, write_pajek_bipartite, write_pajek_net};

use crate::error::{Error, Result};
use crate::feed::Feed;

/// Routes and non-orphan stops of a feed as dense indices.
struct Incidence {
    route_labels: Vec<String>,
    stop_labels: Vec<String>,
    /// Sorted stop indices per route.
    route_stops: Vec<Vec<u32>>,
}

impl Incidence {
    fn of(feed: &Feed) -> Self {
        let stop_pos: BTreeMap<&str, u32> = feed
            .served_stop_ids()
            .into_iter()
            .enumerate()
            .map(|(i, s)| (s, i as u32))
            .collect();
        let stop_labels = stop_pos.keys().map(|s| s.to_string()).collect();
        let mut route_labels = Vec::with_capacity(feed.routes().len());
        let mut route_stops = Vec::with_capacity(feed.routes().len());
        for (id, route) in feed.routes() {
            route_labels.push(id.clone());
            // served_stops is a BTreeSet and stop_pos preserves its order
            route_stops.push(
                route
                    .served_stops
                    .iter()
                    .map(|s| stop_pos[s.as_str()])
                    .collect(),
            );
        }
        Incidence {
            route_labels,
            stop_labels,
            route_stops,
        }
    }

    fn stop_routes(&self) -> Vec<Vec<u32>> {
        let mut index = vec![Vec::new(); self.stop_labels.len()];
        for (r, stops) in self.route_stops.iter().enumerate() {
            for &s in stops {
                index[s as usize].push(r as u32);
            }
        }
        index
    }
}

pub fn build_b_space(feed: &Feed) -> BipartiteGraph {
    let inc = Incidence::of(feed);
    let edges: Vec<(usize, usize)> = inc
        .route_stops
        .iter()
        .enumerate()
        .flat_map(|(r, stops)| stops.iter().map(move |&s| (r, s as usize)))
        .collect();
    BipartiteGraph::new(inc.route_labels, inc.stop_labels, edges).expect("feed incidence is valid")
}

pub fn build_p_space(feed: &Feed) -> Graph {
    let inc = Incidence::of(feed);
    let stop_routes = inc.stop_routes();
    let n = inc.stop_labels.len();
    let mut mark = vec![u32::MAX; n];
    let mut adjacency = Vec::with_capacity(n);
    for (u, routes) in stop_routes.iter().enumerate() {
        mark[u] = u as u32;
        let mut nbrs = Vec::new();
        for &r in routes {
            for &v in &inc.route_stops[r as usize] {
                if mark[v as usize] != u as u32 {
                    mark[v as usize] = u as u32;
                    nbrs.push(v);
                }
            }
        }
        nbrs.sort_unstable();
        adjacency.push(nbrs);
    }
    Graph::from_sorted_adjacency(inc.stop_labels, adjacency)
}

pub fn build_c_space(feed: &Feed) -> Graph {
    let inc = Incidence::of(feed);
    let stop_routes = inc.stop_routes();
    let n = inc.route_labels.len();
    let mut mark = vec![u32::MAX; n];
    let mut edges = Vec::new();
    for (r, stops) in inc.route_stops.iter().enumerate() {
        // candidates: later routes sharing at least one stop with r
        let mut candidates = Vec::new();
        for &s in stops {
            for &q in &stop_routes[s as usize] {
                if q as usize > r && mark[q as usize] != r as u32 {
                    mark[q as usize] = r as u32;
                    candidates.push(q as usize);
                }
            }
        }
        for q in candidates {
            let shared = sorted_intersection_len(stops, &inc.route_stops[q]);
            edges.push((r, q, shared as u32));
        }
    }
    Graph::from_edges(inc.route_labels, edges).expect("route pairs are unique")
}

fn sorted_intersection_len(a: &[u32], b: &[u32]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Keep C-space edges whose routes share at least `min_shared` stops.
pub fn threshold_c_space(cs: &Graph, min_shared: u32) -> Result<Graph> {
    if min_shared < 1 {
        return Err(Error::InvalidThreshold(min_shared));
    }
    if !cs.is_weighted() {
        return Err(Error::InvalidGraph(
            "C-space graph must carry shared-stop weights".into(),
        ));
    }
    Ok(cs.filter_edges(|w| w >= min_shared))
}
