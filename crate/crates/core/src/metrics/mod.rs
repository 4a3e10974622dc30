//! Network properties of built spaces: degree, giant component, distance
//! distribution and diameter, closeness and betweenness, plus ranking.

mod components;
mod degree;
mod paths;

use std::collections::BTreeMap;

pub use components::{giant_component, giant_subgraph, ComponentReport, DisjointSets};
pub use degree::{
    bipartite_degree_report, degree_report, DegreeBucket, DegreeReport, PartitionDegrees,
    DEFAULT_BUCKET_WIDTH,
};
pub use paths::{
    betweenness, closeness, distance_report, DistanceReport, DistanceScope, PathMetrics, PathSweep,
};

/// Numeric metric values that can be ranked.
pub trait MetricValue: Copy {
    fn as_f64(self) -> f64;
}

impl MetricValue for f64 {
    fn as_f64(self) -> f64 {
        self
    }
}

impl MetricValue for usize {
    fn as_f64(self) -> f64 {
        self as f64
    }
}

impl MetricValue for u32 {
    fn as_f64(self) -> f64 {
        self as f64
    }
}

impl MetricValue for u64 {
    fn as_f64(self) -> f64 {
        self as f64
    }
}

/// Highest values first, ties by ascending label. With a threshold, every
/// node whose value is strictly greater is returned and `k` is ignored.
pub fn top_k<T: MetricValue>(
    values: &BTreeMap<String, T>,
    k: usize,
    threshold: Option<f64>,
) -> Vec<(String, T)> {
    let mut ranked: Vec<(&String, T)> = match threshold {
        Some(t) => values
            .iter()
            .filter(|(_, v)| v.as_f64() > t)
            .map(|(l, &v)| (l, v))
            .collect(),
        None => values.iter().map(|(l, &v)| (l, v)).collect(),
    };
    // BTreeMap iteration is label-ordered and the sort is stable
    ranked.sort_by(|a, b| b.1.as_f64().total_cmp(&a.1.as_f64()));
    if threshold.is_none() {
        ranked.truncate(k);
    }
    ranked.into_iter().map(|(l, v)| (l.clone(), v)).collect()
}
