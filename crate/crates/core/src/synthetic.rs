//! Seeded synthetic feeds for benchmarking and scale tests.
//!
//! Stops are scattered around cluster centres (neighbourhoods) over a
//! square city. Each route runs between two cluster centres and serves
//! stops lying within a corridor around the segment joining them, so routes
//! overlap along shared corridors the way real bus lines do.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::feed::{Feed, Route, Stop};

#[derive(Debug, Clone)]
pub struct SyntheticConfig {
    pub routes: usize,
    pub stops: usize,
    pub clusters: usize,
    /// Mean number of stops per route; lengths are uniform in [mean/2, 3mean/2].
    pub mean_route_len: usize,
    /// Cluster radius as a fraction of the city side.
    pub cluster_radius: f64,
    /// Half-width of the corridor a route draws its stops from.
    pub corridor: f64,
    pub seed: u64,
}

impl SyntheticConfig {
    /// Roughly the size of a large city bus system: 500 routes of about 100
    /// stops over 7,000 stops.
    pub fn city() -> Self {
        SyntheticConfig {
            routes: 500,
            stops: 7000,
            clusters: 60,
            mean_route_len: 100,
            cluster_radius: 0.06,
            corridor: 0.035,
            seed: 2014,
        }
    }

    pub fn small(stops: usize, routes: usize, mean_route_len: usize, seed: u64) -> Self {
        SyntheticConfig {
            routes,
            stops,
            clusters: (stops / 100).max(4),
            mean_route_len,
            cluster_radius: 0.06,
            corridor: 0.05,
            seed,
        }
    }
}

fn segment_distance(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 {
        0.0
    } else {
        (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0)
    };
    let (cx, cy) = (a.0 + t * dx, a.1 + t * dy);
    ((p.0 - cx).powi(2) + (p.1 - cy).powi(2)).sqrt()
}

pub fn generate(config: &SyntheticConfig) -> Result<Feed> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let centres: Vec<(f64, f64)> = (0..config.clusters.max(1))
        .map(|_| (rng.gen_range(0.1..0.9), rng.gen_range(0.1..0.9)))
        .collect();

    let positions: Vec<(f64, f64)> = (0..config.stops)
        .map(|_| {
            let c = centres[rng.gen_range(0..centres.len())];
            let r = config.cluster_radius * rng.gen::<f64>().sqrt();
            let theta = rng.gen_range(0.0..std::f64::consts::TAU);
            (
                (c.0 + r * theta.cos()).clamp(0.0, 1.0),
                (c.1 + r * theta.sin()).clamp(0.0, 1.0),
            )
        })
        .collect();
    let width = (config.stops.max(1) as f64).log10().ceil() as usize;
    let stop_id = |i: usize| format!("s{i:0width$}");

    let mut routes = Vec::with_capacity(config.routes);
    let route_width = (config.routes.max(1) as f64).log10().ceil() as usize;
    for r in 0..config.routes {
        let a = centres[rng.gen_range(0..centres.len())];
        let b = centres[rng.gen_range(0..centres.len())];
        let mut candidates: Vec<usize> = (0..positions.len())
            .filter(|&i| segment_distance(positions[i], a, b) <= config.corridor)
            .collect();
        let lo = (config.mean_route_len / 2).max(1);
        let hi = (config.mean_route_len * 3 / 2).max(lo + 1);
        let len = rng.gen_range(lo..hi);
        candidates.shuffle(&mut rng);
        candidates.truncate(len);
        if candidates.is_empty() {
            candidates.push(rng.gen_range(0..positions.len()));
        }
        let id = format!("r{r:0route_width$}");
        routes.push(Route::new(
            id.clone(),
            id,
            candidates.into_iter().map(stop_id),
        ));
    }

    let stops = positions.iter().enumerate().map(|(i, &(x, y))| {
        let id = stop_id(i);
        Stop::new(id.clone(), id, -23.05 + 0.3 * y, -43.75 + 0.6 * x)
    });
    Feed::new(format!("synthetic-{}", config.seed), stops, routes)
}
