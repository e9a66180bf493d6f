//! Prints the clique-chain adjustment table for every detector.
//!
//! ```text
//! cargo run --release --example table_one
//! ```

use ucd::detection::{Algorithm, Detector};
use ucd::synthgen::adjustment_table;

fn main() -> ucd::Result<()> {
    for algorithm in Algorithm::ALL {
        println!("== {algorithm}");
        for row in adjustment_table(&Detector::new(algorithm, 0))? {
            let ari = row.ari.map_or("-".to_string(), |a| format!("{a:.4}"));
            println!(
                "{:<32} n={:<4} Q={:.4} ARI={}",
                row.operation_label(),
                row.node_count,
                row.modularity,
                ari
            );
        }
    }
    Ok(())
}
