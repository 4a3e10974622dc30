use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};

/// Undirected simple graph over string-labelled nodes.
///
/// Adjacency lists are sorted by node index. Edge weights are optional; an
/// unweighted graph reports weight 1 on every edge.
#[derive(Debug, Clone)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, u32>,
    adjacency: Vec<Vec<u32>>,
    /// Parallel to `adjacency` when present.
    weights: Option<Vec<Vec<u32>>>,
    edge_count: usize,
}

impl Graph {
    /// Weighted graph from index triples `(u, v, weight)`.
    pub fn from_edges<I>(labels: Vec<String>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, u32)>,
    {
        Self::build(labels, edges, true)
    }

    pub fn from_unweighted_edges<I>(labels: Vec<String>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::build(labels, edges.into_iter().map(|(u, v)| (u, v, 1)), false)
    }

    /// Unweighted graph from label pairs; the node set is the sorted set of
    /// endpoints.
    pub fn from_labeled_edges<S: AsRef<str>>(edges: &[(S, S)]) -> Result<Self> {
        let nodes: BTreeSet<&str> = edges
            .iter()
            .flat_map(|(a, b)| [a.as_ref(), b.as_ref()])
            .collect();
        let labels: Vec<String> = nodes.iter().map(|s| s.to_string()).collect();
        let pos: HashMap<&str, usize> = nodes.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        Self::from_unweighted_edges(
            labels,
            edges
                .iter()
                .map(|(a, b)| (pos[a.as_ref()], pos[b.as_ref()])),
        )
    }

    fn build<I>(labels: Vec<String>, edges: I, weighted: bool) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, u32)>,
    {
        let n = labels.len();
        let index = index_labels(&labels)?;
        let mut adj: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n];
        for (u, v, w) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) out of range for {n} nodes"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop on {:?}", labels[u])));
            }
            if w == 0 {
                return Err(Error::InvalidGraph(format!(
                    "zero weight on edge {:?}-{:?}",
                    labels[u], labels[v]
                )));
            }
            adj[u].push((v as u32, w));
            adj[v].push((u as u32, w));
        }
        let mut edge_count = 0;
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(pair) = list.windows(2).find(|p| p[0].0 == p[1].0) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge {:?}-{:?}",
                    labels[u], labels[pair[0].0 as usize]
                )));
            }
            edge_count += list.len();
        }
        let adjacency = adj
            .iter()
            .map(|l| l.iter().map(|&(v, _)| v).collect())
            .collect();
        let weights = weighted.then(|| {
            adj.iter()
                .map(|l| l.iter().map(|&(_, w)| w).collect())
                .collect()
        });
        Ok(Graph {
            labels,
            index,
            adjacency,
            weights,
            edge_count: edge_count / 2,
        })
    }

    /// Trusted constructor: adjacency must already be sorted, symmetric and
    /// free of loops and duplicates.
    pub(crate) fn from_sorted_adjacency(labels: Vec<String>, adjacency: Vec<Vec<u32>>) -> Self {
        debug_assert_eq!(labels.len(), adjacency.len());
        let edge_count = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        let index = index_labels(&labels).expect("unique labels");
        Graph {
            labels,
            index,
            adjacency,
            weights: None,
            edge_count,
        }
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, node: usize) -> &str {
        &self.labels[node]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).map(|&i| i as usize)
    }

    pub fn neighbors(&self, node: usize) -> &[u32] {
        &self.adjacency[node]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].len()
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<u32> {
        let pos = self.adjacency[u].binary_search(&(v as u32)).ok()?;
        Some(self.weights.as_ref().map_or(1, |w| w[u][pos]))
    }

    /// Edges as `(u, v, weight)` with `u < v`, in index order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(move |(u, list)| {
                list.iter()
                    .enumerate()
                    .filter(move |(_, &v)| (v as usize) > u)
                    .map(move |(k, &v)| {
                        let w = self.weights.as_ref().map_or(1, |w| w[u][k]);
                        (u, v as usize, w)
                    })
            })
    }

    /// Same nodes, keeping only edges for which `keep(weight)` holds.
    pub fn filter_edges(&self, keep: impl Fn(u32) -> bool) -> Graph {
        let mut adjacency = Vec::with_capacity(self.node_count());
        let mut weights = Vec::with_capacity(self.node_count());
        for u in 0..self.node_count() {
            let mut nbrs = Vec::new();
            let mut ws = Vec::new();
            for (k, &v) in self.adjacency[u].iter().enumerate() {
                let w = self.weights.as_ref().map_or(1, |w| w[u][k]);
                if keep(w) {
                    nbrs.push(v);
                    ws.push(w);
                }
            }
            adjacency.push(nbrs);
            weights.push(ws);
        }
        let edge_count = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        Graph {
            labels: self.labels.clone(),
            index: self.index.clone(),
            adjacency,
            weights: self.weights.is_some().then_some(weights),
            edge_count,
        }
    }

    /// Edge set keyed by label, each pair ordered `(smaller, larger)`.
    pub fn labeled_edges(&self) -> BTreeSet<(String, String, u32)> {
        self.edges()
            .map(|(u, v, w)| {
                let (a, b) = (&self.labels[u], &self.labels[v]);
                if a <= b {
                    (a.clone(), b.clone(), w)
                } else {
                    (b.clone(), a.clone(), w)
                }
            })
            .collect()
    }

    /// Copy with nodes reordered lexicographically by label.
    pub fn sorted_by_label(&self) -> Graph {
        let mut order: Vec<usize> = (0..self.node_count()).collect();
        order.sort_by(|&a, &b| self.labels[a].cmp(&self.labels[b]));
        let mut new_pos = vec![0u32; order.len()];
        for (new, &old) in order.iter().enumerate() {
            new_pos[old] = new as u32;
        }
        let labels = order.iter().map(|&i| self.labels[i].clone()).collect();
        let edges: Vec<(usize, usize, u32)> = self
            .edges()
            .map(|(u, v, w)| (new_pos[u] as usize, new_pos[v] as usize, w))
            .collect();
        Self::build(labels, edges, self.is_weighted()).expect("reordering keeps validity")
    }
}

/// Equality up to node order: same label set and same weighted edge set.
impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        if self.node_count() != other.node_count() || self.edge_count != other.edge_count {
            return false;
        }
        let a: BTreeSet<&String> = self.labels.iter().collect();
        let b: BTreeSet<&String> = other.labels.iter().collect();
        a == b && self.labeled_edges() == other.labeled_edges()
    }
}

fn index_labels(labels: &[String]) -> Result<HashMap<String, u32>> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.clone(), i as u32).is_some() {
            return Err(Error::InvalidGraph(format!("duplicate node label {l:?}")));
        }
    }
    Ok(index)
}

/// Route–stop incidence graph. Routes and stops live in separate
/// partitions, so a route and a stop may share a label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    route_labels: Vec<String>,
    stop_labels: Vec<String>,
    /// `(route index, stop index)`, sorted.
    edges: Vec<(u32, u32)>,
}

impl BipartiteGraph {
    pub fn new(
        route_labels: Vec<String>,
        stop_labels: Vec<String>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        index_labels(&route_labels)?;
        index_labels(&stop_labels)?;
        let mut list = Vec::new();
        for (r, s) in edges {
            if r >= route_labels.len() || s >= stop_labels.len() {
                return Err(Error::InvalidGraph(format!(
                    "incidence ({r}, {s}) out of range"
                )));
            }
            list.push((r as u32, s as u32));
        }
        list.sort_unstable();
        let before = list.len();
        list.dedup();
        if list.len() != before {
            return Err(Error::InvalidGraph("duplicate incidence edge".into()));
        }
        Ok(BipartiteGraph {
            route_labels,
            stop_labels,
            edges: list,
        })
    }

    pub fn route_labels(&self) -> &[String] {
        &self.route_labels
    }

    pub fn stop_labels(&self) -> &[String] {
        &self.stop_labels
    }

    pub fn route_count(&self) -> usize {
        self.route_labels.len()
    }

    pub fn stop_count(&self) -> usize {
        self.stop_labels.len()
    }

    pub fn node_count(&self) -> usize {
        self.route_count() + self.stop_count()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().map(|&(r, s)| (r as usize, s as usize))
    }

    pub fn route_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.route_count()];
        for &(r, _) in &self.edges {
            d[r as usize] += 1;
        }
        d
    }

    pub fn stop_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.stop_count()];
        for &(_, s) in &self.edges {
            d[s as usize] += 1;
        }
        d
    }

    /// One-mode view with routes first. Labels are prefixed with `route:`
    /// and `stop:` so the two partitions cannot collide.
    pub fn to_graph(&self) -> Graph {
        let offset = self.route_count();
        let labels = self
            .route_labels
            .iter()
            .map(|l| format!("route:{l}"))
            .chain(self.stop_labels.iter().map(|l| format!("stop:{l}")))
            .collect();
        let edges = self.edges().map(|(r, s)| (r, offset + s));
        Graph::from_unweighted_edges(labels, edges).expect("bipartite incidence is simple")
    }
}
