use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::Path;

use super::{Feed, FeedStats, Route, Stop};
use crate::error::{Error, Result};

/// Result of reading a GTFS directory: the feed plus what was discarded on
/// the way in.
#[derive(Debug, Clone)]
pub struct GtfsImport {
    pub feed: Feed,
    pub dropped_routes: Vec<String>,
    pub dangling_references: usize,
    pub warnings: Vec<String>,
}

impl GtfsImport {
    pub fn stats(&self) -> FeedStats {
        FeedStats {
            dropped_route_count: self.dropped_routes.len(),
            dangling_reference_count: self.dangling_references,
            warnings: self.warnings.clone(),
            ..super::feed_stats(&self.feed)
        }
    }
}

struct Table {
    file: String,
    headers: Vec<String>,
    rows: Vec<(u64, csv::StringRecord)>,
}

impl Table {
    fn read(dir: &Path, name: &str) -> Result<Self> {
        let path = dir.join(name);
        let bytes = match std::fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
                return Err(Error::MissingFile(path))
            }
            Err(e) => return Err(Error::io(path, e)),
        };
        let text = String::from_utf8(bytes).map_err(|e| Error::MalformedRow {
            file: name.to_string(),
            line: 0,
            reason: format!("not UTF-8: {e}"),
        })?;
        let text = text.strip_prefix('\u{feff}').unwrap_or(&text);

        let mut reader = csv::ReaderBuilder::new()
            .flexible(true)
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let malformed = |line: u64, reason: String| Error::MalformedRow {
            file: name.to_string(),
            line,
            reason,
        };
        let headers = reader
            .headers()
            .map_err(|e| malformed(1, e.to_string()))?
            .iter()
            .map(str::to_string)
            .collect();
        let mut rows = Vec::new();
        for record in reader.records() {
            let record = record.map_err(|e| {
                let line = e.position().map(|p| p.line()).unwrap_or(0);
                malformed(line, e.to_string())
            })?;
            let line = record.position().map(|p| p.line()).unwrap_or(0);
            // skip blank trailing lines
            if record.iter().all(str::is_empty) {
                continue;
            }
            rows.push((line, record));
        }
        Ok(Table {
            file: name.to_string(),
            headers,
            rows,
        })
    }

    fn column(&self, name: &str) -> Option<usize> {
        self.headers.iter().position(|h| h == name)
    }

    fn require(&self, name: &str) -> Result<usize> {
        self.column(name).ok_or_else(|| Error::MalformedRow {
            file: self.file.clone(),
            line: 1,
            reason: format!("missing required column {name}"),
        })
    }

    fn field<'a>(&self, line: u64, record: &'a csv::StringRecord, col: usize) -> Result<&'a str> {
        record.get(col).ok_or_else(|| Error::MalformedRow {
            file: self.file.clone(),
            line,
            reason: format!("missing field {}", self.headers[col]),
        })
    }
}

/// Read `stops.txt`, `routes.txt`, `trips.txt` and `stop_times.txt` from a
/// GTFS directory. Each route serves the union of the stops visited by all
/// of its trips.
pub fn parse_gtfs(dir: impl AsRef<Path>) -> Result<GtfsImport> {
    let dir = dir.as_ref();
    let names = ["stops.txt", "routes.txt", "trips.txt", "stop_times.txt"];
    for name in names {
        if !dir.join(name).is_file() {
            return Err(Error::MissingFile(dir.join(name)));
        }
    }
    let stops_t = Table::read(dir, "stops.txt")?;
    let routes_t = Table::read(dir, "routes.txt")?;
    let trips_t = Table::read(dir, "trips.txt")?;
    let times_t = Table::read(dir, "stop_times.txt")?;

    let stops = read_stops(&stops_t)?;
    let route_names = read_routes(&routes_t)?;

    let mut warnings = Vec::new();
    let mut dangling = 0usize;

    let trip_route_col = trips_t.require("route_id")?;
    let trip_id_col = trips_t.require("trip_id")?;
    let mut trip_route: HashMap<String, String> = HashMap::new();
    let mut unknown_route_trips = 0usize;
    for (line, rec) in &trips_t.rows {
        let route_id = trips_t.field(*line, rec, trip_route_col)?;
        let trip_id = trips_t.field(*line, rec, trip_id_col)?;
        if !route_names.contains_key(route_id) {
            unknown_route_trips += 1;
            continue;
        }
        trip_route.insert(trip_id.to_string(), route_id.to_string());
    }
    if unknown_route_trips > 0 {
        dangling += unknown_route_trips;
        warnings.push(format!(
            "trips.txt: {unknown_route_trips} trips reference unknown route_id"
        ));
    }

    let time_trip_col = times_t.require("trip_id")?;
    let time_stop_col = times_t.require("stop_id")?;
    let mut served: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    let mut bad_trip = 0usize;
    let mut bad_stop = 0usize;
    for (line, rec) in &times_t.rows {
        let trip_id = times_t.field(*line, rec, time_trip_col)?;
        let stop_id = times_t.field(*line, rec, time_stop_col)?;
        let Some(route_id) = trip_route.get(trip_id) else {
            bad_trip += 1;
            continue;
        };
        if !stops.contains_key(stop_id) {
            bad_stop += 1;
            continue;
        }
        served
            .entry(route_id.clone())
            .or_default()
            .insert(stop_id.to_string());
    }
    if bad_trip > 0 {
        warnings.push(format!(
            "stop_times.txt: {bad_trip} rows reference unknown trip_id"
        ));
    }
    if bad_stop > 0 {
        warnings.push(format!(
            "stop_times.txt: {bad_stop} rows reference unknown stop_id"
        ));
    }
    dangling += bad_trip + bad_stop;

    let mut routes = Vec::new();
    let mut dropped = Vec::new();
    for (id, name) in route_names {
        match served.remove(&id) {
            Some(stops) => routes.push(Route {
                id,
                name,
                served_stops: stops,
            }),
            None => dropped.push(id),
        }
    }
    if !dropped.is_empty() {
        warnings.push(format!(
            "dropped {} routes serving no resolvable stop: {}",
            dropped.len(),
            dropped.join(",")
        ));
    }

    let label = dir
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let feed = Feed::new(label, stops.into_values(), routes)?;
    Ok(GtfsImport {
        feed,
        dropped_routes: dropped,
        dangling_references: dangling,
        warnings,
    })
}

fn read_stops(t: &Table) -> Result<BTreeMap<String, Stop>> {
    let id_col = t.require("stop_id")?;
    let name_col = t.require("stop_name")?;
    let lat_col = t.require("stop_lat")?;
    let lon_col = t.require("stop_lon")?;
    let mut stops = BTreeMap::new();
    for (line, rec) in &t.rows {
        let malformed = |reason: String| Error::MalformedRow {
            file: t.file.clone(),
            line: *line,
            reason,
        };
        let id = t.field(*line, rec, id_col)?;
        if id.is_empty() {
            return Err(malformed("empty stop_id".into()));
        }
        let name = t.field(*line, rec, name_col)?;
        let coord = |col: usize, limit: f64| -> Result<f64> {
            let raw = t.field(*line, rec, col)?;
            let v: f64 = raw
                .parse()
                .map_err(|_| malformed(format!("unparseable {} {raw:?}", t.headers[col])))?;
            if !v.is_finite() || v.abs() > limit {
                return Err(malformed(format!("{} {v} out of range", t.headers[col])));
            }
            Ok(v)
        };
        let lat = coord(lat_col, 90.0)?;
        let lon = coord(lon_col, 180.0)?;
        if stops
            .insert(id.to_string(), Stop::new(id, name, lat, lon))
            .is_some()
        {
            return Err(malformed(format!("duplicate stop_id {id:?}")));
        }
    }
    Ok(stops)
}

fn read_routes(t: &Table) -> Result<BTreeMap<String, String>> {
    let id_col = t.require("route_id")?;
    let short = t.column("route_short_name");
    let long = t.column("route_long_name");
    if short.is_none() && long.is_none() {
        return Err(Error::MalformedRow {
            file: t.file.clone(),
            line: 1,
            reason: "missing required column route_short_name or route_long_name".into(),
        });
    }
    let mut routes = BTreeMap::new();
    for (line, rec) in &t.rows {
        let id = t.field(*line, rec, id_col)?;
        if id.is_empty() {
            return Err(Error::MalformedRow {
                file: t.file.clone(),
                line: *line,
                reason: "empty route_id".into(),
            });
        }
        let pick = |col: Option<usize>| col.and_then(|c| rec.get(c)).filter(|s| !s.is_empty());
        let name = pick(short).or_else(|| pick(long)).unwrap_or(id);
        routes.insert(id.to_string(), name.to_string());
    }
    Ok(routes)
}
