//! Runs the three detectors on the karate club.

use ucd::datasets::karate;
use ucd::detection::{label_propagation_detailed, Algorithm, Detector};
use ucd::metrics::{adjusted_rand_index, modularity};

fn main() -> ucd::Result<()> {
    let g = karate();
    let reference = Detector::new(Algorithm::FastNewman, 0).detect(&g)?;
    for algorithm in Algorithm::ALL {
        for seed in 0..3 {
            let p = Detector::new(algorithm, seed).detect(&g)?;
            println!(
                "{algorithm} seed={seed}: {} communities, Q={:.4}, ARI vs fn={:.4}",
                p.community_count(),
                modularity(&g, &p)?,
                adjusted_rand_index(&reference, &p)?
            );
            if algorithm.is_deterministic() {
                break;
            }
        }
    }
    let lpa = label_propagation_detailed(&g, 7)?;
    println!("lpa seed=7 converged={} after {} sweeps", lpa.converged, lpa.sweeps);
    Ok(())
}
