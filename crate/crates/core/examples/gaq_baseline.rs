//! The modularity-decrease genetic baseline on the karate club, scored with
//! the same two objectives as the rewiring search.

use ucd::baselines::{gaq_representative_points, run_gaq, GaqConfig};
use ucd::datasets::karate;
use ucd::detection::Algorithm;
use ucd::metrics::default_budget;

fn main() -> ucd::Result<()> {
    let g = karate();
    let t = default_budget(g.edge_count());
    let config = GaqConfig {
        omega: 30,
        p_c: 0.5,
        p_m: 0.8,
        max_iterations: 100,
        detector: Algorithm::Louvain,
        seed: 1,
    };
    let out = run_gaq(&g, t, &config)?;
    println!(
        "budget {t}: Q {:.4} -> {:.4} ({} deletions, {} additions)",
        out.clean_modularity,
        out.clean_modularity - out.best_fitness,
        out.best.deletions.len(),
        out.best.additions.len()
    );
    let changed = g
        .degree_sequence()
        .iter()
        .zip(out.perturbed.degree_sequence())
        .filter(|(a, b)| **a != *b)
        .count();
    println!("{changed} nodes changed degree");
    for (b, p) in [1, t / 2, t].iter().zip(gaq_representative_points(&g, &[1, t / 2, t], t, &config)?) {
        println!("budget {b:>2}: dari {:.4}, dat {:.4}", p.dari, p.dat);
    }
    Ok(())
}
