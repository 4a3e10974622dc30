//! Full P-space pipeline on a synthetic city-sized feed.
//!
//! cargo run --release --example scale_run -- [seed] [workers]

use std::time::Instant;

use bus_topology::metrics::{self, PathSweep};
use bus_topology::spaces;
use bus_topology::synthetic::{generate, SyntheticConfig};

fn main() {
    let mut args = std::env::args().skip(1);
    let mut config = SyntheticConfig::city();
    if let Some(seed) = args.next() {
        config.seed = seed.parse().expect("seed");
    }
    let workers: usize = args.next().map_or(0, |w| w.parse().expect("workers"));

    let start = Instant::now();
    let feed = generate(&config).expect("synthetic feed");
    let b = spaces::build_b_space(&feed);
    let p = spaces::build_p_space(&feed);
    println!(
        "feed: routes={} stops={} served={} ({:.2?})",
        b.route_count(),
        feed.stops().len(),
        b.stop_count(),
        start.elapsed()
    );
    let bdeg = metrics::bipartite_degree_report(&b, 50).unwrap();
    let parts = bdeg.partitions.unwrap();
    println!(
        "b-space: route_average={:.2} stop_average={:.2}",
        parts.route_average, parts.stop_average
    );
    let deg = metrics::degree_report(&p, 50).unwrap();
    println!(
        "p-space: nodes={} edges={} average_degree={:.1} max={}",
        p.node_count(),
        p.edge_count(),
        deg.average,
        deg.max
    );

    let t = Instant::now();
    let result = PathSweep::new().workers(workers).run(&p, true).unwrap();
    let d = &result.distance;
    println!(
        "paths: diameter={} average={:.4} unreachable={} ({:.2?})",
        d.diameter,
        d.average,
        d.unreachable_pair_count,
        t.elapsed()
    );
    for (dist, frac) in &d.cumulative_fraction {
        println!("  <= {dist}: {frac:.6}");
    }
    let top = metrics::top_k(&result.betweenness, 3, None);
    println!("betweenness top: {top:?}");
    println!("total {:.2?}", start.elapsed());
}
