//! Random rewirings of the karate club: does spending more budget (lower
//! DAT) mislead the detector more (higher DARI)?
//!
//! ```text
//! cargo run --release --example correlation_study -- [samples] [lou|fn|lpa]
//! ```

use ucd::datasets::karate;
use ucd::detection::Algorithm;
use ucd::experiment::{correlation_samples, spearman};
use ucd::metrics::default_budget;

fn main() -> ucd::Result<()> {
    let mut args = std::env::args().skip(1);
    let samples = args.next().and_then(|s| s.parse().ok()).unwrap_or(2000);
    let detector: Algorithm = args.next().map_or(Ok(Algorithm::Louvain), |s| s.parse())?;
    let g = karate();
    let t = default_budget(g.edge_count());
    let rows = correlation_samples(&g, detector, samples, t, 42)?;

    let mut by_moves = vec![(0.0, 0usize); t / 4 + 1];
    for r in &rows {
        by_moves[r.moves].0 += r.dari;
        by_moves[r.moves].1 += 1;
    }
    for (k, (sum, n)) in by_moves.iter().enumerate().filter(|(_, (_, n))| *n > 0) {
        println!("{k} moves: mean DARI {:.4} over {n} samples", sum / *n as f64);
    }
    let dat: Vec<f64> = rows.iter().map(|r| r.dat).collect();
    let dari: Vec<f64> = rows.iter().map(|r| r.dari).collect();
    let (rho, p) = spearman(&dat, &dari)?;
    println!("spearman(DAT, DARI) = {rho:.4}, p = {p:.2e}");
    Ok(())
}
