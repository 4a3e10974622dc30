//! Canonical JSON snapshot:
//!
//! ```json
//! {"label": "...", "stops": [{"id", "name", "lat", "lon"}], "routes": [{"id", "name", "stops": [...]}]}
//! ```
//!
//! Arrays are sorted by id and route stop lists are sorted, so equal feeds
//! serialize to identical bytes.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Feed, Route, Stop};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct CanonicalFeed {
    label: String,
    stops: Vec<CanonicalStop>,
    routes: Vec<CanonicalRoute>,
}

#[derive(Serialize, Deserialize)]
struct CanonicalStop {
    id: String,
    name: String,
    lat: f64,
    lon: f64,
}

#[derive(Serialize, Deserialize)]
struct CanonicalRoute {
    id: String,
    name: String,
    stops: Vec<String>,
}

pub fn to_canonical_string(feed: &Feed) -> String {
    let doc = CanonicalFeed {
        label: feed.label().to_string(),
        stops: feed
            .stops()
            .values()
            .map(|s| CanonicalStop {
                id: s.id.clone(),
                name: s.name.clone(),
                lat: s.lat,
                lon: s.lon,
            })
            .collect(),
        routes: feed
            .routes()
            .values()
            .map(|r| CanonicalRoute {
                id: r.id.clone(),
                name: r.name.clone(),
                stops: r.served_stops.iter().cloned().collect(),
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("feed serializes");
    out.push('\n');
    out
}

pub fn save_canonical(feed: &Feed, file: impl AsRef<Path>) -> Result<()> {
    let file = file.as_ref();
    std::fs::write(file, to_canonical_string(feed)).map_err(|e| Error::io(file, e))
}

pub fn load_canonical(file: impl AsRef<Path>) -> Result<Feed> {
    let file = file.as_ref();
    let text = std::fs::read_to_string(file).map_err(|e| Error::io(file, e))?;
    parse_canonical(&text)
}

pub(crate) fn parse_canonical(text: &str) -> Result<Feed> {
    let doc: CanonicalFeed =
        serde_json::from_str(text).map_err(|e| Error::SchemaViolation(e.to_string()))?;
    let stops = doc
        .stops
        .into_iter()
        .map(|s| Stop::new(s.id, s.name, s.lat, s.lon));
    let mut routes = Vec::with_capacity(doc.routes.len());
    for r in doc.routes {
        let route = Route::new(r.id, r.name, r.stops);
        routes.push(route);
    }
    Feed::new(doc.label, stops, routes)
}
