use rand::seq::{IndexedRandom, SliceRandom};

use super::require_edges;
use crate::error::Result;
use crate::graph::{Graph, Partition};
use crate::rng::rng_from;

/// Sweep cap for label propagation; oscillating runs stop here.
pub const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone)]
pub struct LpaOutcome {
    pub partition: Partition,
    pub converged: bool,
    pub sweeps: usize,
}

/// Asynchronous label propagation. See [`label_propagation_detailed`].
pub fn label_propagation(g: &Graph, seed: u64) -> Result<Partition> {
    label_propagation_detailed(g, seed).map(|o| o.partition)
}

/// Asynchronous label propagation with the convergence status.
///
/// Every node starts with its own label. Each sweep visits the nodes in a
/// freshly shuffled order and moves each one to the most frequent label among
/// its neighbours. A node whose current label is already among the most
/// frequent keeps it; otherwise ties are broken uniformly at random. The run
/// stops after a sweep without changes or after [`MAX_SWEEPS`] sweeps.
pub fn label_propagation_detailed(g: &Graph, seed: u64) -> Result<LpaOutcome> {
    require_edges(g)?;
    let n = g.node_count();
    let mut rng = rng_from(seed);
    let mut labels: Vec<usize> = (0..n).collect();
    let mut order: Vec<usize> = (0..n).collect();
    let mut counts = vec![0usize; n];
    let mut seen: Vec<usize> = Vec::new();
    let mut top: Vec<usize> = Vec::new();

    let mut converged = false;
    let mut sweeps = 0;
    while sweeps < MAX_SWEEPS {
        sweeps += 1;
        order.shuffle(&mut rng);
        let mut changed = false;
        for &u in &order {
            let nbrs = g.neighbors(u);
            if nbrs.is_empty() {
                continue;
            }
            for &v in nbrs {
                let l = labels[v];
                if counts[l] == 0 {
                    seen.push(l);
                }
                counts[l] += 1;
            }
            let best = seen.iter().map(|&l| counts[l]).max().unwrap_or(0);
            top.extend(seen.iter().copied().filter(|&l| counts[l] == best));
            top.sort_unstable();
            let current = labels[u];
            if top.binary_search(&current).is_err() {
                labels[u] = *top.choose(&mut rng).expect("non-empty neighbourhood");
                changed = true;
            }
            for &l in &seen {
                counts[l] = 0;
            }
            seen.clear();
            top.clear();
        }
        if !changed {
            converged = true;
            break;
        }
    }
    Ok(LpaOutcome {
        partition: Partition::new(labels),
        converged,
        sweeps,
    })
}
