//! Runs the multi-objective attack on the karate club and prints the archive.
//!
//! ```text
//! cargo run --release --example ucd_attack -- [lou|fn|lpa] [seed] [iterations]
//! ```

use std::time::Instant;

use ucd::datasets::karate;
use ucd::detection::Algorithm;
use ucd::moo::{run_ucd, AttackConfig};

fn main() -> ucd::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let detector: Algorithm = args.first().map_or(Ok(Algorithm::Louvain), |s| s.parse())?;
    let seed = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let g = karate();
    let mut config = AttackConfig::defaults_for(&g, detector, seed);
    if let Some(n) = args.get(2).and_then(|s| s.parse().ok()) {
        config.max_iterations = n;
    }

    let start = Instant::now();
    let out = run_ucd(&g, &config)?;
    println!(
        "{detector} seed={seed} T={} iterations={} evaluations={} cache_hits={} ({:.1?})",
        config.budget,
        config.max_iterations,
        out.evaluations,
        out.cache_hits,
        start.elapsed()
    );
    for e in out.archive.entries() {
        println!(
            "  dari={:.4} dat={:.4} Q={:.4} moves={} found@{}",
            e.fitness.dari,
            e.fitness.dat,
            e.modularity,
            e.individual.moves().len(),
            e.iteration
        );
    }
    println!("hypervolume {:.4}", out.archive.hypervolume());
    Ok(())
}
