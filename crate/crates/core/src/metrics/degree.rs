use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::spaces::{BipartiteGraph, Graph};

pub const DEFAULT_BUCKET_WIDTH: usize = 50;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeBucket {
    pub lower: usize,
    /// Inclusive.
    pub upper: usize,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartitionDegrees {
    pub route_average: f64,
    pub route_max: usize,
    pub route_max_node: String,
    pub stop_average: f64,
    pub stop_max: usize,
    pub stop_max_node: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeReport {
    pub per_node: BTreeMap<String, usize>,
    /// `2m / n`
    pub average: f64,
    pub max: usize,
    /// Smallest label among the nodes of maximum degree.
    pub max_node: String,
    pub bucket_width: usize,
    pub histogram: Vec<DegreeBucket>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partitions: Option<PartitionDegrees>,
}

fn max_of<'a>(items: impl Iterator<Item = (&'a str, usize)>) -> (usize, String) {
    let mut best: Option<(usize, &str)> = None;
    for (label, d) in items {
        best = match best {
            Some((bd, bl)) if bd > d || (bd == d && bl <= label) => Some((bd, bl)),
            _ => Some((d, label)),
        };
    }
    best.map(|(d, l)| (d, l.to_string())).unwrap_or_default()
}

fn histogram(degrees: impl Iterator<Item = usize>, width: usize) -> Vec<DegreeBucket> {
    let mut counts: Vec<usize> = Vec::new();
    for d in degrees {
        let b = d / width;
        if b >= counts.len() {
            counts.resize(b + 1, 0);
        }
        counts[b] += 1;
    }
    counts
        .into_iter()
        .enumerate()
        .map(|(b, count)| DegreeBucket {
            lower: b * width,
            upper: (b + 1) * width - 1,
            count,
        })
        .collect()
}

fn check_width(width: usize) -> Result<()> {
    if width == 0 {
        return Err(Error::InvalidArgument("bucket width must be >= 1".into()));
    }
    Ok(())
}

pub fn degree_report(graph: &Graph, bucket_width: usize) -> Result<DegreeReport> {
    check_width(bucket_width)?;
    let n = graph.node_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let per_node: BTreeMap<String, usize> = (0..n)
        .map(|v| (graph.label(v).to_string(), graph.degree(v)))
        .collect();
    let (max, max_node) = max_of(per_node.iter().map(|(l, &d)| (l.as_str(), d)));
    Ok(DegreeReport {
        average: (2 * graph.edge_count()) as f64 / n as f64,
        max,
        max_node,
        bucket_width,
        histogram: histogram(per_node.values().copied(), bucket_width),
        per_node,
        partitions: None,
    })
}

/// Degree report over both partitions of a B-space graph. Node keys are
/// `route:<id>` and `stop:<id>`, as in [`BipartiteGraph::to_graph`].
pub fn bipartite_degree_report(
    graph: &BipartiteGraph,
    bucket_width: usize,
) -> Result<DegreeReport> {
    let one_mode = graph.to_graph();
    let mut report = degree_report(&one_mode, bucket_width)?;
    let m = graph.edge_count() as f64;
    let route_deg = graph.route_degrees();
    let stop_deg = graph.stop_degrees();
    let (route_max, route_max_node) = max_of(
        graph
            .route_labels()
            .iter()
            .map(String::as_str)
            .zip(route_deg.iter().copied()),
    );
    let (stop_max, stop_max_node) = max_of(
        graph
            .stop_labels()
            .iter()
            .map(String::as_str)
            .zip(stop_deg.iter().copied()),
    );
    let avg = |count: usize| if count == 0 { 0.0 } else { m / count as f64 };
    report.partitions = Some(PartitionDegrees {
        route_average: avg(graph.route_count()),
        route_max,
        route_max_node,
        stop_average: avg(graph.stop_count()),
        stop_max,
        stop_max_node,
    });
    Ok(report)
}
