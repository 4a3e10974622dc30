//! Hop-distance metrics from one breadth-first search per source node.
//!
//! Distance distribution, closeness and betweenness all come out of the same
//! sweep. Betweenness uses dependency accumulation over the BFS order
//! (Brandes), walking neighbours one level closer to the source instead of
//! storing predecessor lists.
//!
//! Sources are processed in fixed-size chunks whose size depends only on the
//! node count. Each chunk is summed sequentially and chunk totals are added
//! in chunk order, so floating-point results do not depend on the worker
//! count or scheduling.

use std::collections::BTreeMap;
use std::ops::Range;

use rayon::prelude::*;
use serde::Serialize;

use super::components::giant_subgraph;
use crate::error::{Error, Result};
use crate::spaces::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DistanceScope {
    #[default]
    All,
    GiantOnly,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceReport {
    /// Distance -> number of unordered reachable pairs at that distance.
    pub histogram: BTreeMap<u32, u64>,
    /// Mean over reachable unordered pairs; 0 when no pair is reachable.
    pub average: f64,
    pub diameter: u32,
    pub cumulative_fraction: BTreeMap<u32, f64>,
    pub reachable_pair_count: u64,
    pub unreachable_pair_count: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PathMetrics {
    pub distance: DistanceReport,
    pub closeness: BTreeMap<String, f64>,
    /// Empty unless betweenness was requested.
    pub betweenness: BTreeMap<String, f64>,
}

/// Sweep configuration. `workers == 0` uses the global rayon pool.
#[derive(Debug, Clone, Copy, Default)]
pub struct PathSweep {
    workers: usize,
}

impl PathSweep {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn distance_report(&self, graph: &Graph, scope: DistanceScope) -> Result<DistanceReport> {
        let sub;
        let graph = match scope {
            DistanceScope::All => graph,
            DistanceScope::GiantOnly => {
                sub = giant_subgraph(graph)?;
                &sub
            }
        };
        Ok(self.run(graph, false)?.distance)
    }

    pub fn closeness(&self, graph: &Graph) -> Result<BTreeMap<String, f64>> {
        Ok(self.run(graph, false)?.closeness)
    }

    pub fn betweenness(&self, graph: &Graph) -> Result<BTreeMap<String, f64>> {
        Ok(self.run(graph, true)?.betweenness)
    }

    /// Distances, closeness and (optionally) betweenness in one pass.
    pub fn run(&self, graph: &Graph, with_betweenness: bool) -> Result<PathMetrics> {
        let n = graph.node_count();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let chunk = (n / 64).max(32);
        let ranges: Vec<Range<usize>> = (0..n)
            .step_by(chunk)
            .map(|s| s..(s + chunk).min(n))
            .collect();
        let sweep = || {
            ranges
                .par_iter()
                .map_init(
                    || Scratch::new(n),
                    |scratch, range| scratch.sweep(graph, range.clone(), with_betweenness),
                )
                .collect::<Vec<_>>()
        };
        let partials = if self.workers == 0 {
            sweep()
        } else {
            rayon::ThreadPoolBuilder::new()
                .num_threads(self.workers)
                .build()
                .map_err(|e| Error::InvalidArgument(format!("worker pool: {e}")))?
                .install(sweep)
        };
        Ok(assemble(graph, partials, with_betweenness))
    }
}

struct Scratch {
    dist: Vec<u32>,
    sigma: Vec<f64>,
    delta: Vec<f64>,
    order: Vec<u32>,
}

struct ChunkResult {
    /// Ordered-pair counts by distance.
    hist: Vec<u64>,
    /// `(reached, distance sum)` per source in the chunk.
    per_source: Vec<(u64, u64)>,
    dependency: Vec<f64>,
}

const UNSEEN: u32 = u32::MAX;

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            dist: vec![UNSEEN; n],
            sigma: vec![0.0; n],
            delta: vec![0.0; n],
            order: Vec::with_capacity(n),
        }
    }

    fn sweep(&mut self, graph: &Graph, sources: Range<usize>, with_bc: bool) -> ChunkResult {
        let mut result = ChunkResult {
            hist: Vec::new(),
            per_source: Vec::with_capacity(sources.len()),
            dependency: if with_bc {
                vec![0.0; graph.node_count()]
            } else {
                Vec::new()
            },
        };
        for s in sources {
            self.bfs(graph, s, with_bc);
            let mut sum = 0u64;
            for &v in &self.order[1..] {
                let d = self.dist[v as usize] as usize;
                if d >= result.hist.len() {
                    result.hist.resize(d + 1, 0);
                }
                result.hist[d] += 1;
                sum += d as u64;
            }
            result.per_source.push(((self.order.len() - 1) as u64, sum));
            if with_bc {
                self.accumulate(graph, &mut result.dependency);
            }
            self.reset();
        }
        result
    }

    fn bfs(&mut self, graph: &Graph, s: usize, with_bc: bool) {
        let dist = &mut self.dist;
        let sigma = &mut self.sigma;
        let order = &mut self.order;
        dist[s] = 0;
        sigma[s] = 1.0;
        order.push(s as u32);
        let mut head = 0;
        while head < order.len() {
            let v = order[head] as usize;
            head += 1;
            let next = dist[v] + 1;
            for &w in graph.neighbors(v) {
                let w = w as usize;
                if dist[w] == UNSEEN {
                    dist[w] = next;
                    order.push(w as u32);
                }
                if with_bc && dist[w] == next {
                    sigma[w] += sigma[v];
                }
            }
        }
    }

    fn accumulate(&mut self, graph: &Graph, dependency: &mut [f64]) {
        for &w in self.order[1..].iter().rev() {
            let w = w as usize;
            let coeff = (1.0 + self.delta[w]) / self.sigma[w];
            let prev = self.dist[w] - 1;
            for &v in graph.neighbors(w) {
                let v = v as usize;
                if self.dist[v] == prev {
                    self.delta[v] += self.sigma[v] * coeff;
                }
            }
            dependency[w] += self.delta[w];
        }
    }

    fn reset(&mut self) {
        for &v in &self.order {
            let v = v as usize;
            self.dist[v] = UNSEEN;
            self.sigma[v] = 0.0;
            self.delta[v] = 0.0;
        }
        self.order.clear();
    }
}

fn assemble(graph: &Graph, partials: Vec<ChunkResult>, with_bc: bool) -> PathMetrics {
    let n = graph.node_count();
    let mut hist: Vec<u64> = Vec::new();
    let mut closeness = BTreeMap::new();
    let mut dependency = vec![0.0; if with_bc { n } else { 0 }];
    let mut source = 0;
    for part in partials {
        if part.hist.len() > hist.len() {
            hist.resize(part.hist.len(), 0);
        }
        for (d, c) in part.hist.iter().enumerate() {
            hist[d] += c;
        }
        for (reached, sum) in part.per_source {
            let value = if reached == 0 {
                0.0
            } else {
                reached as f64 / sum as f64
            };
            closeness.insert(graph.label(source).to_string(), value);
            source += 1;
        }
        for (acc, x) in dependency.iter_mut().zip(&part.dependency) {
            *acc += x;
        }
    }

    // every unordered pair was seen from both ends
    let histogram: BTreeMap<u32, u64> = hist
        .iter()
        .enumerate()
        .filter(|&(d, &c)| d > 0 && c > 0)
        .map(|(d, &c)| (d as u32, c / 2))
        .collect();
    let reachable: u64 = histogram.values().sum();
    let total_pairs = n as u64 * (n as u64 - 1) / 2;
    let weighted: u64 = histogram.iter().map(|(&d, &c)| d as u64 * c).sum();
    let mut running = 0u64;
    let cumulative_fraction = histogram
        .iter()
        .map(|(&d, &c)| {
            running += c;
            (d, running as f64 / reachable as f64)
        })
        .collect();
    let distance = DistanceReport {
        average: if reachable == 0 {
            0.0
        } else {
            weighted as f64 / reachable as f64
        },
        diameter: histogram.keys().next_back().copied().unwrap_or(0),
        cumulative_fraction,
        reachable_pair_count: reachable,
        unreachable_pair_count: total_pairs - reachable,
        histogram,
    };

    let betweenness = if with_bc {
        // ordered-pair dependencies double count each unordered pair
        let scale = if n < 3 {
            0.0
        } else {
            1.0 / ((n - 1) as f64 * (n - 2) as f64)
        };
        (0..n)
            .map(|v| (graph.label(v).to_string(), dependency[v] * scale))
            .collect()
    } else {
        BTreeMap::new()
    };

    PathMetrics {
        distance,
        closeness,
        betweenness,
    }
}

pub fn distance_report(graph: &Graph, scope: DistanceScope) -> Result<DistanceReport> {
    PathSweep::new().distance_report(graph, scope)
}

/// Component-local closeness: `(|C| - 1) / sum of distances` within the
/// node's component, 0 for isolated nodes.
pub fn closeness(graph: &Graph) -> Result<BTreeMap<String, f64>> {
    PathSweep::new().closeness(graph)
}

/// Betweenness over unordered pairs, normalised by `(n-1)(n-2)/2` with `n`
/// the whole-graph node count. All zero when `n < 3`.
pub fn betweenness(graph: &Graph) -> Result<BTreeMap<String, f64>> {
    PathSweep::new().betweenness(graph)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(edges: &[(&str, &str)]) -> Graph {
        Graph::from_labeled_edges(edges).unwrap()
    }

    #[test]
    fn path_of_three() {
        let p = g(&[("a", "b"), ("b", "c")]);
        let d = distance_report(&p, DistanceScope::All).unwrap();
        assert_eq!(d.histogram, BTreeMap::from([(1, 2), (2, 1)]));
        assert_eq!(d.diameter, 2);
        assert_eq!(d.average, 4.0 / 3.0);
        let c = closeness(&p).unwrap();
        assert_eq!(c["b"], 1.0);
        assert_eq!(c["a"], 2.0 / 3.0);
        let b = betweenness(&p).unwrap();
        assert_eq!(b["b"], 1.0);
        assert_eq!(b["a"], 0.0);
    }

    #[test]
    fn complete_graph() {
        let k4 = g(&[
            ("a", "b"),
            ("a", "c"),
            ("a", "d"),
            ("b", "c"),
            ("b", "d"),
            ("c", "d"),
        ]);
        let d = distance_report(&k4, DistanceScope::All).unwrap();
        assert_eq!(d.histogram, BTreeMap::from([(1, 6)]));
        assert_eq!(d.average, 1.0);
        assert_eq!(d.cumulative_fraction[&1], 1.0);
    }

    #[test]
    fn cycle_of_four() {
        let c4 = g(&[("w", "x"), ("x", "y"), ("y", "z"), ("z", "w")]);
        let b = betweenness(&c4).unwrap();
        for v in ["w", "x", "y", "z"] {
            assert!((b[v] - 1.0 / 6.0).abs() < 1e-12);
        }
    }

    #[test]
    fn disconnected_graph() {
        let two = g(&[("a", "b"), ("c", "d"), ("d", "e")]);
        let d = distance_report(&two, DistanceScope::All).unwrap();
        assert_eq!(d.reachable_pair_count, 4);
        assert_eq!(d.unreachable_pair_count, 6);
        let giant = distance_report(&two, DistanceScope::GiantOnly).unwrap();
        assert_eq!(giant.histogram, BTreeMap::from([(1, 2), (2, 1)]));
        let c = closeness(&two).unwrap();
        assert_eq!(c["a"], 1.0);
        assert_eq!(c["d"], 1.0);
    }

    #[test]
    fn edgeless_and_tiny() {
        let lone = Graph::from_unweighted_edges(vec!["a".into(), "b".into()], []).unwrap();
        let d = distance_report(&lone, DistanceScope::All).unwrap();
        assert!(d.histogram.is_empty());
        assert_eq!((d.average, d.diameter), (0.0, 0));
        assert_eq!(closeness(&lone).unwrap()["a"], 0.0);
        let pair = g(&[("a", "b")]);
        assert!(betweenness(&pair).unwrap().values().all(|&v| v == 0.0));
        let empty = Graph::from_unweighted_edges(vec![], []).unwrap();
        assert!(matches!(betweenness(&empty), Err(Error::EmptyGraph)));
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let mut edges = Vec::new();
        for i in 0..150usize {
            for j in [i * 7 % 150, (i * 13 + 5) % 150, (i + 1) % 150] {
                if i < j {
                    edges.push((format!("n{i:03}"), format!("n{j:03}")));
                }
            }
        }
        edges.sort();
        edges.dedup();
        let graph = Graph::from_labeled_edges(&edges).unwrap();
        let one = PathSweep::new().workers(1).run(&graph, true).unwrap();
        let four = PathSweep::new().workers(4).run(&graph, true).unwrap();
        assert_eq!(one, four);
    }
}
