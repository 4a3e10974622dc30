//! Fixtures and brute-force oracles shared by the integration tests.
//!
//! The oracles work from plain edge lists and route definitions and never
//! call into the crate's construction or metric code.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use bus_topology::feed::Feed;
use bus_topology::spaces::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type RouteDefs = Vec<(&'static str, Vec<&'static str>)>;

pub fn three_line_routes() -> RouteDefs {
    vec![
        ("A", vec!["1", "2", "3", "4", "5"]),
        ("B", vec!["2", "3", "5", "6", "7", "8"]),
        ("C", vec!["3", "4", "5", "8", "9", "10"]),
    ]
}

pub fn five_line_routes() -> RouteDefs {
    vec![
        ("A", vec!["1", "2", "3", "4", "5"]),
        ("B", vec!["2", "4", "6", "8"]),
        ("C", vec!["2", "6", "7"]),
        ("D", vec!["2", "3", "4"]),
        ("E", vec!["1", "4", "6", "7"]),
    ]
}

pub fn feed_of(label: &str, routes: &RouteDefs) -> Feed {
    Feed::from_route_lists(label, routes.clone()).unwrap()
}

pub fn three_line() -> Feed {
    feed_of("three_line", &three_line_routes())
}

pub fn five_line() -> Feed {
    feed_of("five_line", &five_line_routes())
}

/// P-space edges by enumerating every within-route stop pair.
pub fn oracle_p_edges(routes: &[(String, BTreeSet<String>)]) -> BTreeSet<(String, String)> {
    let mut edges = BTreeSet::new();
    for (_, stops) in routes {
        for a in stops {
            for b in stops {
                if a < b {
                    edges.insert((a.clone(), b.clone()));
                }
            }
        }
    }
    edges
}

/// C-space edges by intersecting every pair of route stop sets.
pub fn oracle_c_edges(routes: &[(String, BTreeSet<String>)]) -> BTreeSet<(String, String, u32)> {
    let mut edges = BTreeSet::new();
    for (i, (ra, sa)) in routes.iter().enumerate() {
        for (rb, sb) in &routes[i + 1..] {
            let shared = sa.intersection(sb).count() as u32;
            if shared > 0 {
                let (x, y) = if ra < rb { (ra, rb) } else { (rb, ra) };
                edges.insert((x.clone(), y.clone(), shared));
            }
        }
    }
    edges
}

pub fn route_sets(feed: &Feed) -> Vec<(String, BTreeSet<String>)> {
    feed.routes()
        .values()
        .map(|r| (r.id.clone(), r.served_stops.clone()))
        .collect()
}

pub fn unweighted(edges: &BTreeSet<(String, String, u32)>) -> BTreeSet<(String, String)> {
    edges
        .iter()
        .map(|(a, b, _)| (a.clone(), b.clone()))
        .collect()
}

/// Random simple graph with labels `v000..`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let labels: Vec<String> = (0..n).map(|i| format!("v{i:03}")).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_unweighted_edges(labels, edges).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All-pairs geodesic data from one BFS per node with path counting.
pub struct GeodesicOracle {
    pub n: usize,
    pub labels: Vec<String>,
    /// `dist[s][t]`, `usize::MAX` when unreachable.
    pub dist: Vec<Vec<usize>>,
    /// Number of shortest s-t paths.
    pub count: Vec<Vec<f64>>,
}

impl GeodesicOracle {
    pub fn new(labels: Vec<String>, edges: &[(usize, usize)]) -> Self {
        let n = labels.len();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut dist = vec![vec![usize::MAX; n]; n];
        let mut count = vec![vec![0.0; n]; n];
        for s in 0..n {
            dist[s][s] = 0;
            count[s][s] = 1.0;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if dist[s][w] == usize::MAX {
                        dist[s][w] = dist[s][v] + 1;
                        queue.push_back(w);
                    }
                    if dist[s][w] == dist[s][v] + 1 {
                        count[s][w] += count[s][v];
                    }
                }
            }
        }
        GeodesicOracle {
            n,
            labels,
            dist,
            count,
        }
    }

    pub fn of(graph: &Graph) -> Self {
        let edges: Vec<(usize, usize)> = graph.edges().map(|(u, v, _)| (u, v)).collect();
        Self::new(graph.labels().to_vec(), &edges)
    }

    pub fn histogram(&self) -> BTreeMap<u32, u64> {
        let mut h = BTreeMap::new();
        for s in 0..self.n {
            for t in s + 1..self.n {
                let d = self.dist[s][t];
                if d != usize::MAX {
                    *h.entry(d as u32).or_insert(0) += 1;
                }
            }
        }
        h
    }

    pub fn average_distance(&self) -> f64 {
        let h = self.histogram();
        let pairs: u64 = h.values().sum();
        if pairs == 0 {
            return 0.0;
        }
        h.iter().map(|(&d, &c)| d as f64 * c as f64).sum::<f64>() / pairs as f64
    }

    pub fn closeness(&self) -> BTreeMap<String, f64> {
        (0..self.n)
            .map(|v| {
                let reach: Vec<usize> = (0..self.n)
                    .filter(|&u| u != v && self.dist[v][u] != usize::MAX)
                    .map(|u| self.dist[v][u])
                    .collect();
                let value = if reach.is_empty() {
                    0.0
                } else {
                    reach.len() as f64 / reach.iter().sum::<usize>() as f64
                };
                (self.labels[v].clone(), value)
            })
            .collect()
    }

    /// Pair-by-pair geodesic fractions through each interior node.
    pub fn betweenness(&self) -> BTreeMap<String, f64> {
        let n = self.n;
        let mut raw = vec![0.0; n];
        for s in 0..n {
            for t in s + 1..n {
                let d = self.dist[s][t];
                if d == usize::MAX {
                    continue;
                }
                for v in 0..n {
                    if v == s || v == t {
                        continue;
                    }
                    let (dsv, dvt) = (self.dist[s][v], self.dist[v][t]);
                    if dsv != usize::MAX && dvt != usize::MAX && dsv + dvt == d {
                        raw[v] += self.count[s][v] * self.count[v][t] / self.count[s][t];
                    }
                }
            }
        }
        let norm = if n < 3 {
            0.0
        } else {
            2.0 / ((n - 1) as f64 * (n - 2) as f64)
        };
        (0..n)
            .map(|v| (self.labels[v].clone(), raw[v] * norm))
            .collect()
    }
}

pub fn max_abs_diff(a: &BTreeMap<String, f64>, b: &BTreeMap<String, f64>) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().map(|(k, v)| (v - b[k]).abs()).fold(0.0, f64::max)
}

/// Write a four-file GTFS directory. `trips` are `(route_id, trip_id, stop ids)`.
pub fn write_gtfs(
    dir: &std::path::Path,
    stop_ids: &[String],
    trips: &[(String, String, Vec<String>)],
) {
    use std::fmt::Write as _;
    let mut stops = String::from("stop_id,stop_name,stop_lat,stop_lon\n");
    for (i, s) in stop_ids.iter().enumerate() {
        writeln!(
            stops,
            "{s},\"Stop {s}\",{:.6},{:.6}",
            -22.9 + i as f64 * 1e-3,
            -43.2 - i as f64 * 1e-3
        )
        .unwrap();
    }
    let route_ids: BTreeSet<&String> = trips.iter().map(|t| &t.0).collect();
    let mut routes = String::from("route_id,route_short_name,route_type\n");
    for r in route_ids {
        writeln!(routes, "{r},{r},3").unwrap();
    }
    let mut trips_txt = String::from("route_id,service_id,trip_id,direction_id\n");
    let mut times = String::from("trip_id,arrival_time,departure_time,stop_id,stop_sequence\n");
    for (route, trip, seq) in trips {
        writeln!(trips_txt, "{route},WD,{trip},0").unwrap();
        for (k, s) in seq.iter().enumerate() {
            writeln!(
                times,
                "{trip},07:{:02}:00,07:{:02}:00,{s},{}",
                k % 60,
                k % 60,
                k + 1
            )
            .unwrap();
        }
    }
    std::fs::write(dir.join("stops.txt"), stops).unwrap();
    std::fs::write(dir.join("routes.txt"), routes).unwrap();
    std::fs::write(dir.join("trips.txt"), trips_txt).unwrap();
    std::fs::write(dir.join("stop_times.txt"), times).unwrap();
}

/// GTFS trips for route definitions, one trip per route.
pub fn single_trips(routes: &RouteDefs) -> Vec<(String, String, Vec<String>)> {
    routes
        .iter()
        .map(|(r, stops)| {
            (
                r.to_string(),
                format!("{r}-1"),
                stops.iter().map(|s| s.to_string()).collect(),
            )
        })
        .collect()
}

pub fn numbered_stops(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}
