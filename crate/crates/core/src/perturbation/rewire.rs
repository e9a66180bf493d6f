use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::seq::IndexedRandom;

use super::{BiasMode, RewiringMove};
use crate::error::{Error, Result};
use crate::graph::{Graph, Partition};
use crate::rng::Rng;

/// Resampling attempts before a sampler gives up.
pub const MAX_ATTEMPTS: usize = 50;

/// Samples a valid move with `target` as node `c`: a random neighbour `a`
/// is dropped, a random non-neighbour `d` is connected, and `d` hands one of
/// its neighbours `e` (not adjacent to `a`) over to `a`.
///
/// Returns `Ok(None)` when no completion was found within [`MAX_ATTEMPTS`].
pub fn sample_rewiring(g: &Graph, target: usize, rng: &mut Rng) -> Result<Option<RewiringMove>> {
    sample_with(g, target, BiasMode::Uniform, None, rng)
}

/// Like [`sample_rewiring`], but endpoint choice follows `bias`.
///
/// Under a degree bias the dropped neighbour `a` is drawn from `target`'s own
/// community and the new neighbour `d` from other communities (falling back
/// to all candidates when the preferred pool is empty); `a`, `d` and `e` are
/// roulette-weighted with the inverse of the target weighting.
pub fn sample_biased_rewiring(
    g: &Graph,
    target: usize,
    bias: BiasMode,
    partition: &Partition,
    rng: &mut Rng,
) -> Result<Option<RewiringMove>> {
    if partition.node_count() != g.node_count() {
        return Err(Error::validation("partition does not cover the graph"));
    }
    sample_with(g, target, bias, Some(partition), rng)
}

fn sample_with(
    g: &Graph,
    c: usize,
    bias: BiasMode,
    partition: Option<&Partition>,
    rng: &mut Rng,
) -> Result<Option<RewiringMove>> {
    if c >= g.node_count() {
        return Err(Error::validation(format!("target {c} out of range")));
    }
    if g.degree(c) == 0 {
        return Err(Error::NoIncidentEdge(c));
    }
    let biased = bias != BiasMode::Uniform && partition.is_some();
    let max_deg = g.max_degree();

    let neighbours = g.neighbors(c);
    let mut drop_pool: Vec<usize> = neighbours.to_vec();
    let mut join_pool: Vec<usize> = (0..g.node_count())
        .filter(|&d| d != c && g.degree(d) > 0 && !g.has_edge(c, d))
        .collect();
    if join_pool.is_empty() {
        return Ok(None);
    }
    if biased {
        let p = partition.expect("biased implies a partition");
        prefer(&mut drop_pool, |&a| p.same_community(a, c));
        prefer(&mut join_pool, |&d| !p.same_community(d, c));
    }

    let weights = |pool: &[usize]| -> Option<WeightedIndex<f64>> {
        if !biased {
            return None;
        }
        WeightedIndex::new(pool.iter().map(|&x| bias.counterpart_weight(g.degree(x), max_deg))).ok()
    };
    let drop_w = weights(&drop_pool);
    let join_w = weights(&join_pool);
    let pick = |pool: &[usize], w: &Option<WeightedIndex<f64>>, rng: &mut Rng| -> usize {
        match w {
            Some(w) => pool[w.sample(rng)],
            None => *pool.choose(rng).expect("non-empty pool"),
        }
    };

    let mut handover: Vec<usize> = Vec::new();
    for _ in 0..MAX_ATTEMPTS {
        let a = pick(&drop_pool, &drop_w, rng);
        let d = pick(&join_pool, &join_w, rng);
        handover.clear();
        handover.extend(
            g.neighbors(d)
                .iter()
                .copied()
                .filter(|&e| e != a && e != c && !g.has_edge(a, e)),
        );
        if handover.is_empty() {
            continue;
        }
        let e_w = weights(&handover);
        let e = pick(&handover, &e_w, rng);
        return Ok(Some(RewiringMove::new(a, c, d, e)));
    }
    Ok(None)
}

/// Restricts `pool` to the preferred members unless none qualify.
fn prefer(pool: &mut Vec<usize>, keep: impl Fn(&usize) -> bool) {
    if pool.iter().any(&keep) {
        pool.retain(keep);
    }
}
