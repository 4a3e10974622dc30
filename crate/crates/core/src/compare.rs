//! Side-by-side comparison of two feed snapshots.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::Result;
use crate::feed::Feed;
use crate::metrics::{self, DistanceScope, PathSweep};
use crate::spaces::{self, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Up,
    Down,
    Flat,
}

impl Direction {
    pub fn arrow(self) -> char {
        match self {
            Direction::Up => '↑',
            Direction::Down => '↓',
            Direction::Flat => '−',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Quantity {
    pub name: String,
    pub integer: bool,
    pub value_a: f64,
    pub value_b: f64,
    /// `value_b - value_a`
    pub delta: f64,
    /// `100 * delta / value_a`; absent when `value_a` is 0 and the value changed.
    pub percent_change: Option<f64>,
    pub direction: Direction,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub label_a: String,
    pub label_b: String,
    pub thresholds: Vec<u32>,
    pub quantities: Vec<Quantity>,
}

#[derive(Debug, Clone)]
pub struct CompareOptions {
    /// Minimum shared-stop counts for the thresholded C-space rows.
    pub thresholds: Vec<u32>,
    pub integer_epsilon: f64,
    pub real_epsilon: f64,
    pub workers: usize,
}

impl Default for CompareOptions {
    fn default() -> Self {
        CompareOptions {
            thresholds: vec![1],
            integer_epsilon: 0.0,
            real_epsilon: 1e-9,
            workers: 0,
        }
    }
}

impl CompareOptions {
    pub fn with_thresholds(thresholds: impl Into<Vec<u32>>) -> Self {
        CompareOptions {
            thresholds: thresholds.into(),
            ..Self::default()
        }
    }
}

/// Size and node fraction of the giant component of C-space thresholded at
/// `min_shared`. An edgeless graph yields a single-node giant component.
pub fn giant_share(cs: &Graph, min_shared: u32) -> Result<(usize, f64)> {
    let filtered = spaces::threshold_c_space(cs, min_shared)?;
    let report = metrics::giant_component(&filtered)?;
    Ok((report.giant_size(), report.giant_fraction))
}

/// Every compared quantity for one snapshot, as `(name, value, is_integer)`.
pub fn snapshot_quantities(
    feed: &Feed,
    options: &CompareOptions,
) -> Result<Vec<(String, f64, bool)>> {
    let mut out = Vec::new();
    let mut int = |name: &str, v: usize| out.push((name.to_string(), v as f64, true));

    let b = spaces::build_b_space(feed);
    let p = spaces::build_p_space(feed);
    let c = spaces::build_c_space(feed);

    int("routes", b.route_count());
    int("stops", b.stop_count());
    int("b_nodes", b.node_count());
    int("b_edges", b.edge_count());
    int("p_nodes", p.node_count());
    int("p_edges", p.edge_count());
    int("c_nodes", c.node_count());
    int("c_edges", c.edge_count());

    let b_deg = metrics::bipartite_degree_report(&b, metrics::DEFAULT_BUCKET_WIDTH)?;
    let parts = b_deg.partitions.expect("bipartite report has partitions");
    out.push(("b_avg_degree_routes".into(), parts.route_average, false));
    out.push(("b_avg_degree_stops".into(), parts.stop_average, false));

    let sweep = PathSweep::new().workers(options.workers);
    for (prefix, graph) in [("p", &p), ("c", &c)] {
        let deg = metrics::degree_report(graph, metrics::DEFAULT_BUCKET_WIDTH)?;
        let giant = metrics::giant_component(graph)?;
        let dist = sweep.distance_report(graph, DistanceScope::All)?;
        out.push((format!("{prefix}_avg_degree"), deg.average, false));
        out.push((
            format!("{prefix}_giant_size"),
            giant.giant_size() as f64,
            true,
        ));
        out.push((
            format!("{prefix}_giant_fraction"),
            giant.giant_fraction,
            false,
        ));
        out.push((format!("{prefix}_avg_distance"), dist.average, false));
        out.push((format!("{prefix}_diameter"), dist.diameter as f64, true));
    }

    for &n in &options.thresholds {
        let (size, fraction) = giant_share(&c, n)?;
        out.push((format!("cs{n}_giant_size"), size as f64, true));
        out.push((format!("cs{n}_giant_fraction"), fraction, false));
    }
    Ok(out)
}

pub fn compare_quantity(
    name: &str,
    value_a: f64,
    value_b: f64,
    integer: bool,
    epsilon: f64,
) -> Quantity {
    let delta = value_b - value_a;
    let direction = if delta.abs() <= epsilon {
        Direction::Flat
    } else if delta > 0.0 {
        Direction::Up
    } else {
        Direction::Down
    };
    let percent_change = if value_a != 0.0 {
        Some(100.0 * delta / value_a)
    } else if delta == 0.0 {
        Some(0.0)
    } else {
        None
    };
    Quantity {
        name: name.to_string(),
        integer,
        value_a,
        value_b,
        delta,
        percent_change,
        direction,
    }
}

pub fn compare_feeds(a: &Feed, b: &Feed, options: &CompareOptions) -> Result<ComparisonReport> {
    let qa = snapshot_quantities(a, options).map_err(|e| e.in_snapshot(a.label()))?;
    let qb = snapshot_quantities(b, options).map_err(|e| e.in_snapshot(b.label()))?;
    let quantities = qa
        .into_iter()
        .zip(qb)
        .map(|((name, va, integer), (_, vb, _))| {
            let eps = if integer {
                options.integer_epsilon
            } else {
                options.real_epsilon
            };
            compare_quantity(&name, va, vb, integer, eps)
        })
        .collect();
    Ok(ComparisonReport {
        label_a: a.label().to_string(),
        label_b: b.label().to_string(),
        thresholds: options.thresholds.clone(),
        quantities,
    })
}

fn format_value(v: f64, integer: bool) -> String {
    if integer {
        format!("{v:.0}")
    } else {
        format!("{v:.4}")
    }
}

pub fn format_percent(p: Option<f64>) -> String {
    match p {
        None => "n/a".to_string(),
        Some(p) => {
            let text = format!("{:.2}%", p.abs());
            if text == "0.00%" {
                text
            } else if p < 0.0 {
                format!("\u{2212}{text}")
            } else {
                format!("+{text}")
            }
        }
    }
}

impl ComparisonReport {
    pub fn get(&self, name: &str) -> Option<&Quantity> {
        self.quantities.iter().find(|q| q.name == name)
    }

    /// One row per quantity: `name value_a value_b change arrow`.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "quantity {} {} change trend",
            self.label_a, self.label_b
        )
        .unwrap();
        for q in &self.quantities {
            writeln!(
                out,
                "{} {} {} {} {}",
                q.name,
                format_value(q.value_a, q.integer),
                format_value(q.value_b, q.integer),
                format_percent(q.percent_change),
                q.direction.arrow()
            )
            .unwrap();
        }
        out
    }
}
