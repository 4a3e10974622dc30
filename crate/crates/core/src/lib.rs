//! Topological analysis of bus networks.
//!
//! A [`Feed`](feed::Feed) snapshot (from GTFS or the canonical JSON format)
//! is turned into three graphs:
//!
//! * B-space: routes linked to the stops they serve,
//! * P-space: stops linked when one route serves both,
//! * C-space: routes linked when they share stops, weighted by the count.
//!
//! [`metrics`] computes degree, giant component, hop-distance distribution,
//! closeness and betweenness on any of them, [`compare`] diffs two
//! snapshots and [`geo_export`] writes GeoJSON layers for mapping.

pub mod cli;
pub mod compare;
pub mod error;
pub mod feed;
pub mod geo_export;
pub mod metrics;
pub mod spaces;
pub mod synthetic;

pub use error::{Error, Result};
