//! `bustopo` command line: ingest, build, metrics, compare, export.
//!
//! Exit codes: 0 success, 2 usage or input error, 3 internal error. Every
//! failure prints a single `error: ` line on stderr.

use std::collections::{BTreeMap, BTreeSet};
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::compare::{compare_feeds, CompareOptions};
use crate::error::{Error, Result};
use crate::feed::{self, Feed};
use crate::geo_export;
use crate::metrics::{self, DistanceScope, PathSweep};
use crate::spaces::{self, Graph};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "bustopo",
    version,
    about = "Bus network topology in B-, P- and C-space"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Read a GTFS directory and write a canonical snapshot.
    Ingest {
        #[arg(long)]
        gtfs: PathBuf,
        /// Canonical JSON file to write.
        #[arg(long)]
        out: PathBuf,
    },
    /// Build one space and write it as a Pajek NET file.
    Build {
        #[arg(long)]
        canonical: PathBuf,
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compute metric reports (JSON and CSV) for one space.
    Metrics(MetricsArgs),
    /// Compare two snapshots.
    Compare {
        /// Two canonical snapshots, earlier first.
        #[arg(long, num_args = 2, required = true)]
        canonical: Vec<PathBuf>,
        /// Shared-stop thresholds for the C-space giant-component rows.
        #[arg(long = "min-shared", value_delimiter = ',', default_value = "1")]
        min_shared: Vec<u32>,
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write a GeoJSON layer of stops.
    Export {
        #[arg(long)]
        canonical: PathBuf,
        /// CSV of `node,<metric>` rows, as written by `metrics`.
        #[arg(long, conflicts_with = "routes", required_unless_present = "routes")]
        values: Option<PathBuf>,
        /// Comma-separated route ids for a route-intensity layer.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        routes: Option<Vec<String>>,
        /// Keep only stops whose value is strictly greater.
        #[arg(long, requires = "values")]
        threshold: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Space {
    B,
    P,
    C,
}

#[derive(Debug, Args)]
struct SpaceArgs {
    #[arg(long, value_enum)]
    space: Space,
    /// Minimum shared stops for C-space edges.
    #[arg(long = "min-shared")]
    min_shared: Option<u32>,
}

#[derive(Debug, Args)]
struct MetricsArgs {
    #[arg(long, conflicts_with = "net", required_unless_present = "net")]
    canonical: Option<PathBuf>,
    /// Analyse a Pajek NET graph instead of a feed.
    #[arg(long)]
    net: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "p")]
    space: Space,
    #[arg(long = "min-shared")]
    min_shared: Option<u32>,
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "degree,components,distance,closeness,betweenness"
    )]
    metrics: Vec<Metric>,
    #[arg(long, default_value_t = 0)]
    workers: usize,
    #[arg(long = "bucket-width", default_value_t = metrics::DEFAULT_BUCKET_WIDTH)]
    bucket_width: usize,
    /// Only measure distances inside the giant component.
    #[arg(long)]
    giant_only: bool,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Metric {
    Degree,
    Components,
    Distance,
    Closeness,
    Betweenness,
}

impl FromStr for Metric {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim() {
            "degree" => Ok(Metric::Degree),
            "components" | "giant" => Ok(Metric::Components),
            "distance" => Ok(Metric::Distance),
            "closeness" => Ok(Metric::Closeness),
            "betweenness" => Ok(Metric::Betweenness),
            other => Err(format!("unknown metric {other:?}")),
        }
    }
}

/// Parse arguments and run; returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return EXIT_OK;
            }
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("usage error");
            let first = first.strip_prefix("error: ").unwrap_or(first);
            let _ = writeln!(stderr, "error: {first}");
            return EXIT_INPUT;
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.to_string().replace('\n', " "));
            if e.is_input_error() {
                EXIT_INPUT
            } else {
                EXIT_INTERNAL
            }
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<()> {
    match command {
        Command::Ingest { gtfs, out: file } => cmd_ingest(&gtfs, &file, out),
        Command::Build {
            canonical,
            space,
            out: file,
        } => cmd_build(&canonical, space.space, space.min_shared, &file, out),
        Command::Metrics(args) => cmd_metrics(&args, out),
        Command::Compare {
            canonical,
            min_shared,
            workers,
            out: dir,
        } => cmd_compare(&canonical[0], &canonical[1], min_shared, workers, &dir, out),
        Command::Export {
            canonical,
            values,
            routes,
            threshold,
            out: file,
        } => cmd_export(&canonical, values.as_deref(), routes, threshold, &file, out),
    }
}

fn say(out: &mut dyn Write, line: impl std::fmt::Display) {
    let _ = writeln!(out, "{line}");
}

fn create_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

fn write_file(path: &Path, contents: &[u8]) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::io(path, e))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_file(path, text.as_bytes())
}

fn write_csv<V: std::fmt::Display>(
    path: &Path,
    header: [&str; 2],
    rows: impl IntoIterator<Item = (String, V)>,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::InvalidArgument(format!("csv: {e}"));
    w.write_record(header).map_err(csv_err)?;
    for (k, v) in rows {
        w.write_record([k, v.to_string()]).map_err(csv_err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::InvalidArgument(format!("csv: {e}")))?;
    write_file(path, &bytes)
}

pub fn cmd_ingest(gtfs: &Path, file: &Path, out: &mut dyn Write) -> Result<()> {
    let import = feed::parse_gtfs(gtfs)?;
    feed::save_canonical(&import.feed, file)?;
    let stats = import.stats();
    say(out, &stats);
    for w in &stats.warnings {
        say(out, format!("warning: {w}"));
    }
    Ok(())
}

fn check_min_shared(space: Space, min_shared: Option<u32>) -> Result<()> {
    match (space, min_shared) {
        (_, Some(0)) => Err(Error::InvalidThreshold(0)),
        (Space::B | Space::P, Some(_)) => Err(Error::InvalidArgument(
            "--min-shared only applies to --space c".into(),
        )),
        _ => Ok(()),
    }
}

fn one_mode_space(feed: &Feed, space: Space, min_shared: Option<u32>) -> Result<Graph> {
    check_min_shared(space, min_shared)?;
    Ok(match space {
        Space::B => spaces::build_b_space(feed).to_graph(),
        Space::P => spaces::build_p_space(feed),
        Space::C => {
            let cs = spaces::build_c_space(feed);
            match min_shared {
                Some(n) => spaces::threshold_c_space(&cs, n)?,
                None => cs,
            }
        }
    })
}

pub fn cmd_build(
    canonical: &Path,
    space: Space,
    min_shared: Option<u32>,
    file: &Path,
    out: &mut dyn Write,
) -> Result<()> {
    check_min_shared(space, min_shared)?;
    let feed = feed::load_canonical(canonical)?;
    if space == Space::B {
        let b = spaces::build_b_space(&feed);
        spaces::write_pajek_bipartite(&b, file)?;
        say(
            out,
            format!(
                "vertices={} partition={} edges={}",
                b.node_count(),
                b.route_count(),
                b.edge_count()
            ),
        );
    } else {
        let g = one_mode_space(&feed, space, min_shared)?;
        spaces::write_pajek_net(&g, file)?;
        say(
            out,
            format!("vertices={} edges={}", g.node_count(), g.edge_count()),
        );
    }
    Ok(())
}

fn cmd_metrics(args: &MetricsArgs, out: &mut dyn Write) -> Result<()> {
    if args.bucket_width == 0 {
        return Err(Error::InvalidArgument("--bucket-width must be >= 1".into()));
    }
    let selected: BTreeSet<Metric> = args.metrics.iter().copied().collect();
    let (graph, bipartite) = match (&args.canonical, &args.net) {
        (Some(path), _) => {
            let feed = feed::load_canonical(path)?;
            check_min_shared(args.space, args.min_shared)?;
            let bip = (args.space == Space::B).then(|| spaces::build_b_space(&feed));
            (one_mode_space(&feed, args.space, args.min_shared)?, bip)
        }
        (None, Some(path)) => (spaces::read_pajek_net(path)?, None),
        (None, None) => unreachable!("clap requires one input"),
    };
    create_dir(&args.out)?;
    let dir = &args.out;
    say(
        out,
        format!("nodes={} edges={}", graph.node_count(), graph.edge_count()),
    );

    if selected.contains(&Metric::Degree) {
        let report = match &bipartite {
            Some(b) => metrics::bipartite_degree_report(b, args.bucket_width)?,
            None => metrics::degree_report(&graph, args.bucket_width)?,
        };
        write_json(&dir.join("degree.json"), &report)?;
        write_csv(
            &dir.join("degree.csv"),
            ["node", "degree"],
            report.per_node.iter().map(|(k, v)| (k.clone(), *v)),
        )?;
        if let Some(b) = &bipartite {
            let stops = b.stop_labels().iter().cloned().zip(b.stop_degrees());
            write_csv(&dir.join("degree_stops.csv"), ["node", "degree"], stops)?;
        }
        say(
            out,
            format!(
                "degree: average={:.4} max={} ({})",
                report.average, report.max, report.max_node
            ),
        );
        if let Some(p) = &report.partitions {
            say(
                out,
                format!(
                    "degree: route_average={:.4} stop_average={:.4}",
                    p.route_average, p.stop_average
                ),
            );
        }
    }

    if selected.contains(&Metric::Components) {
        let report = metrics::giant_component(&graph)?;
        write_json(&dir.join("components.json"), &report)?;
        say(
            out,
            format!(
                "components: count={} giant={} fraction={:.4}",
                report.component_count,
                report.giant_size(),
                report.giant_fraction
            ),
        );
    }

    let wants_paths = selected.contains(&Metric::Distance)
        || selected.contains(&Metric::Closeness)
        || selected.contains(&Metric::Betweenness);
    if wants_paths {
        let sweep = PathSweep::new().workers(args.workers);
        let with_bc = selected.contains(&Metric::Betweenness);
        let result = sweep.run(&graph, with_bc)?;
        if selected.contains(&Metric::Distance) {
            let dist = if args.giant_only {
                sweep.distance_report(&graph, DistanceScope::GiantOnly)?
            } else {
                result.distance.clone()
            };
            write_json(&dir.join("distance.json"), &dist)?;
            let mut w = String::from("distance,count,cumulative_fraction\n");
            for (d, c) in &dist.histogram {
                w.push_str(&format!("{d},{c},{}\n", dist.cumulative_fraction[d]));
            }
            write_file(&dir.join("distance.csv"), w.as_bytes())?;
            say(
                out,
                format!(
                    "distance: diameter={} average={:.4} unreachable_pairs={}",
                    dist.diameter, dist.average, dist.unreachable_pair_count
                ),
            );
        }
        if selected.contains(&Metric::Closeness) {
            write_json(&dir.join("closeness.json"), &result.closeness)?;
            write_csv(
                &dir.join("closeness.csv"),
                ["node", "closeness"],
                result.closeness.iter().map(|(k, v)| (k.clone(), *v)),
            )?;
            if let Some((node, v)) = metrics::top_k(&result.closeness, 1, None).first() {
                say(out, format!("closeness: max={v:.4} ({node})"));
            }
        }
        if with_bc {
            write_json(&dir.join("betweenness.json"), &result.betweenness)?;
            write_csv(
                &dir.join("betweenness.csv"),
                ["node", "betweenness"],
                result.betweenness.iter().map(|(k, v)| (k.clone(), *v)),
            )?;
            if let Some((node, v)) = metrics::top_k(&result.betweenness, 1, None).first() {
                say(out, format!("betweenness: max={v:.6} ({node})"));
            }
        }
    }
    Ok(())
}

pub fn cmd_compare(
    a: &Path,
    b: &Path,
    thresholds: Vec<u32>,
    workers: usize,
    dir: &Path,
    out: &mut dyn Write,
) -> Result<()> {
    if let Some(&bad) = thresholds.iter().find(|&&n| n < 1) {
        return Err(Error::InvalidThreshold(bad));
    }
    let feed_a = feed::load_canonical(a)?;
    let feed_b = feed::load_canonical(b)?;
    let options = CompareOptions {
        thresholds,
        workers,
        ..CompareOptions::default()
    };
    let report = compare_feeds(&feed_a, &feed_b, &options)?;
    create_dir(dir)?;
    write_json(&dir.join("comparison.json"), &report)?;
    let table = report.to_table();
    write_file(&dir.join("comparison.txt"), table.as_bytes())?;
    let _ = out.write_all(table.as_bytes());
    Ok(())
}

/// Read a two-column `node,<metric>` CSV. Returns the metric name and values.
pub fn read_metric_csv(path: &Path) -> Result<(String, BTreeMap<String, f64>)> {
    let file = path.display().to_string();
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| match e.into_kind() {
            csv::ErrorKind::Io(io) => Error::io(path, io),
            other => Error::InvalidArgument(format!("{other:?}")),
        })?;
    let malformed = |line: u64, reason: String| Error::MalformedRow {
        file: file.clone(),
        line,
        reason,
    };
    let headers = reader
        .headers()
        .map_err(|e| malformed(1, e.to_string()))?
        .clone();
    if headers.len() < 2 {
        return Err(malformed(1, "expected a node,<metric> header".into()));
    }
    let metric = headers[1].to_string();
    let mut values = BTreeMap::new();
    for rec in reader.records() {
        let rec =
            rec.map_err(|e| malformed(e.position().map_or(0, |p| p.line()), e.to_string()))?;
        let line = rec.position().map_or(0, |p| p.line());
        let v: f64 = rec[1]
            .parse()
            .map_err(|_| malformed(line, format!("bad value {:?}", &rec[1])))?;
        values.insert(rec[0].to_string(), v);
    }
    Ok((metric, values))
}

pub fn cmd_export(
    canonical: &Path,
    values: Option<&Path>,
    routes: Option<Vec<String>>,
    threshold: Option<f64>,
    file: &Path,
    out: &mut dyn Write,
) -> Result<()> {
    let feed = feed::load_canonical(canonical)?;
    let layer = match (values, routes) {
        (Some(csv_path), _) => {
            let (metric, values) = read_metric_csv(csv_path)?;
            geo_export::export_metric_layer(&feed, &metric, &values, threshold, file)?
        }
        (None, Some(routes)) => {
            let routes: Vec<String> = routes.into_iter().filter(|r| !r.is_empty()).collect();
            geo_export::export_route_intensity(&feed, &routes, file)?
        }
        (None, None) => unreachable!("clap requires one layer source"),
    };
    say(out, format!("features={}", layer.features.len()));
    Ok(())
}
