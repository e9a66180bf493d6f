//! Compares uniform, min-degree and max-degree biased mutation.
//!
//! ```text
//! cargo run --release --example biased_variants -- [seeds] [iterations]
//! ```

use ucd::datasets::{dolphins_standin, karate};
use ucd::detection::Algorithm;
use ucd::moo::{run_ucd, AttackConfig};
use ucd::perturbation::BiasMode;

fn main() -> ucd::Result<()> {
    let mut args = std::env::args().skip(1);
    let seeds: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(5);
    let iterations = args.next().and_then(|s| s.parse().ok());
    for (name, g) in [("karate", karate()), ("dolphins-standin", dolphins_standin())] {
        for bias in [BiasMode::Uniform, BiasMode::MinDegree, BiasMode::MaxDegree] {
            let mut hvs = Vec::new();
            for seed in 1..=seeds {
                let mut config = AttackConfig::defaults_for(&g, Algorithm::Louvain, seed);
                config.bias = bias;
                if let Some(n) = iterations {
                    config.max_iterations = n;
                }
                hvs.push(run_ucd(&g, &config)?.archive.hypervolume());
            }
            let mean = hvs.iter().sum::<f64>() / hvs.len() as f64;
            let each: Vec<String> = hvs.iter().map(|h| format!("{h:.3}")).collect();
            println!("{name:<17} {bias:<8?} mean hv {mean:.4}  [{}]", each.join(" "));
        }
    }
    Ok(())
}
