//! Feed snapshots: stops with coordinates and routes reduced to the set of
//! stops they serve.
//!
//! A [`Feed`] is validated on construction and immutable afterwards. Stop
//! order along a route is not kept; a route is its served-stop set.

mod canonical;
mod gtfs;

use std::collections::{BTreeMap, BTreeSet};

pub use canonical::{load_canonical, save_canonical, to_canonical_string};
pub use gtfs::{parse_gtfs, GtfsImport};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Stop {
    pub id: String,
    pub name: String,
    pub lat: f64,
    pub lon: f64,
}

impl Stop {
    pub fn new(id: impl Into<String>, name: impl Into<String>, lat: f64, lon: f64) -> Self {
        Stop {
            id: id.into(),
            name: name.into(),
            lat,
            lon,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Route {
    pub id: String,
    pub name: String,
    pub served_stops: BTreeSet<String>,
}

impl Route {
    pub fn new<I, S>(id: impl Into<String>, name: impl Into<String>, stops: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Route {
            id: id.into(),
            name: name.into(),
            served_stops: stops.into_iter().map(Into::into).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Feed {
    label: String,
    stops: BTreeMap<String, Stop>,
    routes: BTreeMap<String, Route>,
}

impl Feed {
    /// Build a feed, checking ids, coordinates and route references.
    pub fn new(
        label: impl Into<String>,
        stops: impl IntoIterator<Item = Stop>,
        routes: impl IntoIterator<Item = Route>,
    ) -> Result<Self> {
        let mut stop_table = BTreeMap::new();
        for stop in stops {
            check_stop(&stop)?;
            if stop_table.contains_key(&stop.id) {
                return Err(Error::SchemaViolation(format!(
                    "duplicate stop id {:?}",
                    stop.id
                )));
            }
            stop_table.insert(stop.id.clone(), stop);
        }

        let mut route_table = BTreeMap::new();
        for route in routes {
            if route.id.is_empty() {
                return Err(Error::SchemaViolation("route with empty id".into()));
            }
            if route.served_stops.is_empty() {
                return Err(Error::SchemaViolation(format!(
                    "route {:?} serves no stops",
                    route.id
                )));
            }
            if let Some(missing) = route
                .served_stops
                .iter()
                .find(|s| !stop_table.contains_key(*s))
            {
                return Err(Error::IntegrityViolation(format!(
                    "route {:?} references unknown stop {:?}",
                    route.id, missing
                )));
            }
            if route_table.contains_key(&route.id) {
                return Err(Error::SchemaViolation(format!(
                    "duplicate route id {:?}",
                    route.id
                )));
            }
            route_table.insert(route.id.clone(), route);
        }

        if stop_table.is_empty() {
            return Err(Error::SchemaViolation("feed has no stops".into()));
        }
        if route_table.is_empty() {
            return Err(Error::SchemaViolation("feed has no routes".into()));
        }

        Ok(Feed {
            label: label.into(),
            stops: stop_table,
            routes: route_table,
        })
    }

    /// Feed from bare route definitions. Stops are created on demand, named
    /// after their id and placed at the origin.
    pub fn from_route_lists<R, S>(label: impl Into<String>, routes: R) -> Result<Self>
    where
        R: IntoIterator<Item = (S, Vec<S>)>,
        S: Into<String>,
    {
        let mut stops = BTreeMap::new();
        let mut route_list = Vec::new();
        for (id, served) in routes {
            let id = id.into();
            let served: Vec<String> = served.into_iter().map(Into::into).collect();
            for s in &served {
                stops
                    .entry(s.clone())
                    .or_insert_with(|| Stop::new(s.clone(), s.clone(), 0.0, 0.0));
            }
            route_list.push(Route::new(id.clone(), id, served));
        }
        Feed::new(label, stops.into_values(), route_list)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Stops keyed by id, in id order.
    pub fn stops(&self) -> &BTreeMap<String, Stop> {
        &self.stops
    }

    /// Routes keyed by id, in id order.
    pub fn routes(&self) -> &BTreeMap<String, Route> {
        &self.routes
    }

    pub fn stop(&self, id: &str) -> Option<&Stop> {
        self.stops.get(id)
    }

    pub fn route(&self, id: &str) -> Option<&Route> {
        self.routes.get(id)
    }

    /// Ids of stops served by at least one route, sorted.
    pub fn served_stop_ids(&self) -> BTreeSet<&str> {
        self.routes
            .values()
            .flat_map(|r| r.served_stops.iter().map(String::as_str))
            .collect()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}

fn check_stop(stop: &Stop) -> Result<()> {
    if stop.id.is_empty() {
        return Err(Error::SchemaViolation("stop with empty id".into()));
    }
    if !(-90.0..=90.0).contains(&stop.lat) || !(-180.0..=180.0).contains(&stop.lon) {
        return Err(Error::SchemaViolation(format!(
            "stop {:?} has out-of-range coordinates ({}, {})",
            stop.id, stop.lat, stop.lon
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Default, PartialEq, Eq, serde::Serialize)]
pub struct FeedStats {
    pub route_count: usize,
    pub stop_count: usize,
    /// Stops present in the stop table but served by no route.
    pub orphan_stop_count: usize,
    pub dropped_route_count: usize,
    pub dangling_reference_count: usize,
    pub warnings: Vec<String>,
}

impl std::fmt::Display for FeedStats {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "routes={} stops={} orphans={} dropped_routes={} dangling_refs={}",
            self.route_count,
            self.stop_count,
            self.orphan_stop_count,
            self.dropped_route_count,
            self.dangling_reference_count
        )
    }
}

pub fn feed_stats(feed: &Feed) -> FeedStats {
    let served = feed.served_stop_ids();
    FeedStats {
        route_count: feed.routes.len(),
        stop_count: feed.stops.len(),
        orphan_stop_count: feed.stops.len() - served.len(),
        ..FeedStats::default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_line() -> Feed {
        Feed::from_route_lists(
            "three_line",
            vec![
                ("A", vec!["1", "2", "3", "4", "5"]),
                ("B", vec!["2", "3", "5", "6", "7", "8"]),
                ("C", vec!["3", "4", "5", "8", "9", "10"]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn stats_count_fixture() {
        let s = feed_stats(&three_line());
        assert_eq!(
            (s.route_count, s.stop_count, s.orphan_stop_count),
            (3, 10, 0)
        );
    }

    #[test]
    fn orphan_stop_is_counted() {
        let stops = vec![Stop::new("a", "a", 0.0, 0.0), Stop::new("b", "b", 1.0, 1.0)];
        let feed = Feed::new("x", stops, vec![Route::new("r", "r", ["a"])]).unwrap();
        let s = feed_stats(&feed);
        assert_eq!(s.orphan_stop_count, 1);
        assert_eq!(s.stop_count, 2);
    }

    #[test]
    fn rejects_dangling_and_bad_coordinates() {
        let err = Feed::new(
            "x",
            vec![Stop::new("a", "a", 0.0, 0.0)],
            vec![Route::new("r", "r", ["a", "Z"])],
        )
        .unwrap_err();
        assert!(matches!(err, Error::IntegrityViolation(_)));

        let err = Feed::new(
            "x",
            vec![Stop::new("a", "a", 91.0, 0.0)],
            vec![Route::new("r", "r", ["a"])],
        )
        .unwrap_err();
        assert!(matches!(err, Error::SchemaViolation(_)));

        let err = Feed::new("x", vec![Stop::new("a", "a", 0.0, 0.0)], vec![]).unwrap_err();
        assert!(matches!(err, Error::SchemaViolation(_)));
    }

    #[test]
    fn duplicate_served_stops_collapse() {
        let r = Route::new("r", "r", ["a", "b", "a"]);
        assert_eq!(r.served_stops.len(), 2);
    }
}
