//! Undirected Pajek NET files.
//!
//! ```text
//! *Vertices N        (bipartite: *Vertices N P, P = size of first partition)
//! 1 "label"
//! ...
//! *Edges
//! u v w              (1-based indices, integer weight, 1 when unweighted)
//! ```
//!
//! Output uses LF line endings and UTF-8.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use super::{BipartiteGraph, Graph};
use crate::error::{Error, Result};

/// Parsed NET contents before they are turned into a graph type.
#[derive(Debug)]
pub struct NetFile {
    pub labels: Vec<String>,
    pub partition: Option<usize>,
    /// 0-based `(u, v, weight)`.
    pub edges: Vec<(usize, usize, u32)>,
}

fn check_label(label: &str) -> Result<()> {
    if label.contains('"') || label.contains('\n') || label.contains('\r') {
        return Err(Error::InvalidGraph(format!(
            "label {label:?} cannot be written to a NET file"
        )));
    }
    Ok(())
}

fn render(
    labels: &[&str],
    partition: Option<usize>,
    edges: impl Iterator<Item = (usize, usize, u32)>,
) -> Result<String> {
    let mut out = String::new();
    match partition {
        Some(p) => writeln!(out, "*Vertices {} {}", labels.len(), p),
        None => writeln!(out, "*Vertices {}", labels.len()),
    }
    .unwrap();
    for (i, label) in labels.iter().enumerate() {
        check_label(label)?;
        writeln!(out, "{} \"{}\"", i + 1, label).unwrap();
    }
    out.push_str("*Edges\n");
    for (u, v, w) in edges {
        writeln!(out, "{} {} {}", u + 1, v + 1, w).unwrap();
    }
    Ok(out)
}

/// NET text for a one-mode graph, nodes in label order.
pub fn graph_to_net(graph: &Graph) -> Result<String> {
    let sorted_labels = graph.labels().windows(2).all(|w| w[0] <= w[1]);
    let reordered;
    let graph = if sorted_labels {
        graph
    } else {
        reordered = graph.sorted_by_label();
        &reordered
    };
    let labels: Vec<&str> = graph.labels().iter().map(String::as_str).collect();
    render(&labels, None, graph.edges())
}

/// NET text for a bipartite graph: routes first, then stops.
pub fn bipartite_to_net(graph: &BipartiteGraph) -> Result<String> {
    let offset = graph.route_count();
    let labels: Vec<&str> = graph
        .route_labels()
        .iter()
        .chain(graph.stop_labels())
        .map(String::as_str)
        .collect();
    let edges = graph.edges().map(|(r, s)| (r, offset + s, 1));
    render(&labels, Some(offset), edges)
}

pub fn write_pajek_net(graph: &Graph, file: impl AsRef<Path>) -> Result<()> {
    let file = file.as_ref();
    std::fs::write(file, graph_to_net(graph)?).map_err(|e| Error::io(file, e))
}

pub fn write_pajek_bipartite(graph: &BipartiteGraph, file: impl AsRef<Path>) -> Result<()> {
    let file = file.as_ref();
    std::fs::write(file, bipartite_to_net(graph)?).map_err(|e| Error::io(file, e))
}

pub fn parse_net(text: &str) -> Result<NetFile> {
    let bad = |line: usize, reason: String| Error::MalformedNet { line, reason };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('%'))
        .peekable();

    let (hline, header) = lines.next().ok_or_else(|| bad(1, "empty file".into()))?;
    let mut parts = header.split_whitespace();
    if !parts
        .next()
        .is_some_and(|h| h.eq_ignore_ascii_case("*vertices"))
    {
        return Err(bad(
            hline,
            format!("expected *Vertices header, found {header:?}"),
        ));
    }
    let n: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| bad(hline, "missing vertex count".into()))?;
    let partition = match parts.next() {
        None => None,
        Some(t) => {
            let p: usize = t
                .parse()
                .map_err(|_| bad(hline, format!("bad partition size {t:?}")))?;
            if p > n {
                return Err(bad(
                    hline,
                    format!("partition size {p} exceeds {n} vertices"),
                ));
            }
            Some(p)
        }
    };

    let mut labels: Vec<Option<String>> = vec![None; n];
    while let Some(&(ln, line)) = lines.peek() {
        if line.starts_with('*') {
            break;
        }
        lines.next();
        let (idx, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let idx: usize = idx
            .parse()
            .map_err(|_| bad(ln, format!("bad vertex index {idx:?}")))?;
        if idx == 0 || idx > n {
            return Err(bad(ln, format!("vertex index {idx} out of range 1..={n}")));
        }
        let rest = rest.trim_start();
        let label = if let Some(quoted) = rest.strip_prefix('"') {
            let end = quoted
                .find('"')
                .ok_or_else(|| bad(ln, "unterminated label".into()))?;
            &quoted[..end]
        } else {
            rest.split_whitespace().next().unwrap_or("")
        };
        if labels[idx - 1].replace(label.to_string()).is_some() {
            return Err(bad(ln, format!("vertex {idx} listed twice")));
        }
    }
    let labels: Vec<String> = labels
        .into_iter()
        .enumerate()
        .map(|(i, l)| l.unwrap_or_else(|| (i + 1).to_string()))
        .collect();

    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    if let Some((ln, section)) = lines.next() {
        if !section.eq_ignore_ascii_case("*edges") {
            return Err(bad(ln, format!("expected *Edges, found {section:?}")));
        }
        for (ln, line) in lines {
            if line.starts_with('*') {
                return Err(bad(ln, format!("unsupported section {line:?}")));
            }
            let mut toks = line.split_whitespace();
            let mut endpoint = || -> Result<usize> {
                let t = toks
                    .next()
                    .ok_or_else(|| bad(ln, "missing endpoint".into()))?;
                let i: usize = t
                    .parse()
                    .map_err(|_| bad(ln, format!("bad vertex index {t:?}")))?;
                if i == 0 || i > n {
                    return Err(bad(ln, format!("vertex index {i} out of range 1..={n}")));
                }
                Ok(i - 1)
            };
            let u = endpoint()?;
            let v = endpoint()?;
            let w = match toks.next() {
                None => 1,
                Some(t) => parse_weight(t).ok_or_else(|| bad(ln, format!("bad weight {t:?}")))?,
            };
            if u == v {
                return Err(bad(ln, format!("self-loop on vertex {}", u + 1)));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(bad(ln, format!("duplicate edge {} {}", u + 1, v + 1)));
            }
            edges.push((u, v, w));
        }
    }
    Ok(NetFile {
        labels,
        partition,
        edges,
    })
}

fn parse_weight(token: &str) -> Option<u32> {
    let w = token.parse::<u32>().ok().or_else(|| {
        let f: f64 = token.parse().ok()?;
        (f.fract() == 0.0 && f >= 0.0 && f <= u32::MAX as f64).then_some(f as u32)
    })?;
    (w >= 1).then_some(w)
}

fn net_error(e: Error) -> Error {
    match e {
        Error::InvalidGraph(reason) => Error::MalformedNet { line: 0, reason },
        other => other,
    }
}

pub fn net_to_graph(net: NetFile) -> Result<Graph> {
    Graph::from_edges(net.labels, net.edges).map_err(net_error)
}

pub fn net_to_bipartite(net: NetFile) -> Result<BipartiteGraph> {
    let p = net.partition.ok_or_else(|| Error::MalformedNet {
        line: 1,
        reason: "bipartite file needs a partition size on the *Vertices line".into(),
    })?;
    let mut labels = net.labels;
    let stops = labels.split_off(p);
    let mut incidence = Vec::with_capacity(net.edges.len());
    for (u, v, _) in net.edges {
        let (r, s) = if u < p { (u, v) } else { (v, u) };
        if r >= p || s < p {
            return Err(Error::MalformedNet {
                line: 0,
                reason: format!("edge {} {} stays inside one partition", u + 1, v + 1),
            });
        }
        incidence.push((r, s - p));
    }
    BipartiteGraph::new(labels, stops, incidence).map_err(net_error)
}

/// Read a NET file as a one-mode graph. A bipartite file is read as the
/// plain graph over all of its vertices.
pub fn read_pajek_net(file: impl AsRef<Path>) -> Result<Graph> {
    let file = file.as_ref();
    let text = std::fs::read_to_string(file).map_err(|e| Error::io(file, e))?;
    net_to_graph(parse_net(&text)?)
}

pub fn read_pajek_bipartite(file: impl AsRef<Path>) -> Result<BipartiteGraph> {
    let file = file.as_ref();
    let text = std::fs::read_to_string(file).map_err(|e| Error::io(file, e))?;
    net_to_bipartite(parse_net(&text)?)
}
