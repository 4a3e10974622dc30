//! GeoJSON point layers of stops.
//!
//! Coordinates are written `[lon, lat]`. Metric layers carry the metric
//! value under its own property name; route-intensity layers carry the
//! number of selected routes serving each stop.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::feed::{Feed, Stop};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureCollection {
    #[serde(rename = "type")]
    pub kind: String,
    pub features: Vec<Feature>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Feature {
    #[serde(rename = "type")]
    pub kind: String,
    pub geometry: Point,
    pub properties: Map<String, Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Point {
    #[serde(rename = "type")]
    pub kind: String,
    pub coordinates: [f64; 2],
}

impl FeatureCollection {
    fn new(features: Vec<Feature>) -> Self {
        FeatureCollection {
            kind: "FeatureCollection".into(),
            features,
        }
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("geojson serializes");
        out.push('\n');
        out
    }

    pub fn write(&self, file: impl AsRef<Path>) -> Result<()> {
        let file = file.as_ref();
        std::fs::write(file, self.to_json()).map_err(|e| Error::io(file, e))
    }

    /// Parse and check the FeatureCollection/Point structure.
    pub fn parse(text: &str) -> Result<Self> {
        let fc: FeatureCollection = serde_json::from_str(text)?;
        if fc.kind != "FeatureCollection" {
            return Err(Error::SchemaViolation(format!("type is {:?}", fc.kind)));
        }
        for f in &fc.features {
            if f.kind != "Feature" || f.geometry.kind != "Point" {
                return Err(Error::SchemaViolation("expected Point features".into()));
            }
        }
        Ok(fc)
    }
}

fn stop_feature(stop: &Stop, extra: impl IntoIterator<Item = (String, Value)>) -> Feature {
    let mut properties = Map::new();
    properties.insert("stop_id".into(), Value::from(stop.id.clone()));
    properties.insert("name".into(), Value::from(stop.name.clone()));
    properties.extend(extra);
    Feature {
        kind: "Feature".into(),
        geometry: Point {
            kind: "Point".into(),
            coordinates: [stop.lon, stop.lat],
        },
        properties,
    }
}

/// Stops annotated with `metric`. With a threshold only values strictly
/// greater are kept.
pub fn metric_layer(
    feed: &Feed,
    metric: &str,
    values: &BTreeMap<String, f64>,
    threshold: Option<f64>,
) -> Result<FeatureCollection> {
    if let Some(unknown) = values.keys().find(|k| feed.stop(k).is_none()) {
        return Err(Error::UnknownStop(unknown.clone()));
    }
    let features = values
        .iter()
        .filter(|(_, &v)| threshold.is_none_or(|t| v > t))
        .map(|(id, &v)| {
            let value = serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number);
            stop_feature(&feed.stops()[id], [(metric.to_string(), value)])
        })
        .collect();
    Ok(FeatureCollection::new(features))
}

pub fn export_metric_layer(
    feed: &Feed,
    metric: &str,
    values: &BTreeMap<String, f64>,
    threshold: Option<f64>,
    file: impl AsRef<Path>,
) -> Result<FeatureCollection> {
    let layer = metric_layer(feed, metric, values, threshold)?;
    layer.write(file)?;
    Ok(layer)
}

/// Stops served by two or more of the selected routes, with the number of
/// selected routes serving each.
pub fn route_intensity_layer(feed: &Feed, selected: &[String]) -> Result<FeatureCollection> {
    if selected.is_empty() {
        return Err(Error::InvalidArgument("no routes selected".into()));
    }
    let selected: BTreeSet<&String> = selected.iter().collect();
    let mut intensity: BTreeMap<&str, u64> = BTreeMap::new();
    for id in &selected {
        let route = feed
            .route(id)
            .ok_or_else(|| Error::UnknownRoute(id.to_string()))?;
        for s in &route.served_stops {
            *intensity.entry(s.as_str()).or_default() += 1;
        }
    }
    let features = intensity
        .into_iter()
        .filter(|&(_, count)| count >= 2)
        .map(|(id, count)| {
            stop_feature(
                &feed.stops()[id],
                [("intensity".to_string(), Value::from(count))],
            )
        })
        .collect();
    Ok(FeatureCollection::new(features))
}

pub fn export_route_intensity(
    feed: &Feed,
    selected: &[String],
    file: impl AsRef<Path>,
) -> Result<FeatureCollection> {
    let layer = route_intensity_layer(feed, selected)?;
    layer.write(file)?;
    Ok(layer)
}
