use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::spaces::Graph;

/// Disjoint-set forest with union by size and path halving.
pub struct DisjointSets {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let grand = self.parent[self.parent[x] as usize];
            self.parent[x] = grand;
            x = grand as usize;
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra as u32;
        self.size[ra] += self.size[rb];
        true
    }
}

/// Connected components numbered in order of their smallest node label.
pub(crate) struct Components {
    pub of: Vec<usize>,
    pub sizes: Vec<usize>,
}

impl Components {
    pub fn of(graph: &Graph) -> Self {
        let n = graph.node_count();
        let mut sets = DisjointSets::new(n);
        for (u, v, _) in graph.edges() {
            sets.union(u, v);
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| graph.label(a).cmp(graph.label(b)));
        let mut root_id = vec![usize::MAX; n];
        let mut of = vec![0; n];
        let mut sizes = Vec::new();
        for v in order {
            let root = sets.find(v);
            if root_id[root] == usize::MAX {
                root_id[root] = sizes.len();
                sizes.push(0);
            }
            of[v] = root_id[root];
            sizes[root_id[root]] += 1;
        }
        Components { of, sizes }
    }

    /// Largest component; ties go to the lowest id, i.e. the component
    /// holding the smallest label.
    pub fn giant(&self) -> usize {
        let mut best = 0;
        for (id, &size) in self.sizes.iter().enumerate() {
            if size > self.sizes[best] {
                best = id;
            }
        }
        best
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentReport {
    pub component_id: BTreeMap<String, usize>,
    pub component_count: usize,
    pub giant_nodes: Vec<String>,
    pub giant_fraction: f64,
}

impl ComponentReport {
    pub fn giant_size(&self) -> usize {
        self.giant_nodes.len()
    }
}

pub fn giant_component(graph: &Graph) -> Result<ComponentReport> {
    let n = graph.node_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let comps = Components::of(graph);
    let giant = comps.giant();
    let mut giant_nodes: Vec<String> = (0..n)
        .filter(|&v| comps.of[v] == giant)
        .map(|v| graph.label(v).to_string())
        .collect();
    giant_nodes.sort();
    Ok(ComponentReport {
        component_id: (0..n)
            .map(|v| (graph.label(v).to_string(), comps.of[v]))
            .collect(),
        component_count: comps.sizes.len(),
        giant_fraction: giant_nodes.len() as f64 / n as f64,
        giant_nodes,
    })
}

/// Subgraph induced by the giant component.
pub fn giant_subgraph(graph: &Graph) -> Result<Graph> {
    if graph.node_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let comps = Components::of(graph);
    let giant = comps.giant();
    let keep: Vec<usize> = (0..graph.node_count())
        .filter(|&v| comps.of[v] == giant)
        .collect();
    let mut new_pos = vec![usize::MAX; graph.node_count()];
    for (i, &v) in keep.iter().enumerate() {
        new_pos[v] = i;
    }
    let labels = keep.iter().map(|&v| graph.label(v).to_string()).collect();
    let edges: Vec<(usize, usize, u32)> = graph
        .edges()
        .filter(|&(u, _, _)| new_pos[u] != usize::MAX)
        .map(|(u, v, w)| (new_pos[u], new_pos[v], w))
        .collect();
    if graph.is_weighted() {
        Graph::from_edges(labels, edges)
    } else {
        Graph::from_unweighted_edges(labels, edges.into_iter().map(|(u, v, _)| (u, v)))
    }
}
