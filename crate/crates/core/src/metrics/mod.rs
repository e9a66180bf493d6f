//! Scalar quality measures: modularity, ARI and the two attack objectives.

mod pareto;

pub use pareto::{dominates, front_diversity, hypervolume_2d, FitnessPoint};

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{edge_set_difference_size, Graph, Partition};

/// Share of the original link count allowed as perturbation budget.
pub const BUDGET_FRACTION: f64 = 0.20;

/// Newman modularity `Q = sum_c [ L_c/m - (D_c/2m)^2 ]` with unit resolution.
pub fn modularity(g: &Graph, p: &Partition) -> Result<f64> {
    if p.node_count() != g.node_count() {
        return Err(Error::validation(format!(
            "partition covers {} nodes, graph has {}",
            p.node_count(),
            g.node_count()
        )));
    }
    let m = g.edge_count();
    if m == 0 {
        return Err(Error::DegenerateGraph("modularity needs at least one edge".into()));
    }
    let k = p.community_count();
    let mut internal = vec![0usize; k];
    let mut degree = vec![0usize; k];
    for u in 0..g.node_count() {
        degree[p.label(u)] += g.degree(u);
    }
    for e in g.edges() {
        if p.same_community(e.u(), e.v()) {
            internal[p.label(e.u())] += 1;
        }
    }
    let m = m as f64;
    let two_m = 2.0 * m;
    Ok(internal
        .iter()
        .zip(&degree)
        .map(|(&l, &d)| l as f64 / m - (d as f64 / two_m).powi(2))
        .sum())
}

fn pairs(x: u64) -> u64 {
    x * x.saturating_sub(1) / 2
}

/// Hubert-Arabie adjusted Rand index.
///
/// When the chance-corrected denominator vanishes (both partitions are all
/// singletons, or both a single cluster) the partitions are identical and the
/// result is 1.0.
pub fn adjusted_rand_index(p1: &Partition, p2: &Partition) -> Result<f64> {
    let n = p1.node_count();
    if n != p2.node_count() {
        return Err(Error::validation(format!(
            "partition sizes differ: {} vs {}",
            n,
            p2.node_count()
        )));
    }
    let total = pairs(n as u64);
    if total == 0 {
        return Ok(1.0);
    }
    let mut cells: HashMap<(usize, usize), u64> = HashMap::new();
    for u in 0..n {
        *cells.entry((p1.label(u), p2.label(u))).or_default() += 1;
    }
    let index: u64 = cells.values().map(|&c| pairs(c)).sum();
    let rows: u64 = p1.community_sizes().iter().map(|&c| pairs(c as u64)).sum();
    let cols: u64 = p2.community_sizes().iter().map(|&c| pairs(c as u64)).sum();

    let expected = rows as f64 * cols as f64 / total as f64;
    let max_index = (rows as f64 + cols as f64) / 2.0;
    let denom = max_index - expected;
    if denom == 0.0 {
        return Ok(1.0);
    }
    Ok((index as f64 - expected) / denom)
}

/// Decrease of ARI: `1 - ARI(ground_truth, predicted)`, in `[0, 2]`.
pub fn dari(ground_truth: &Partition, predicted: &Partition) -> Result<f64> {
    Ok(1.0 - adjusted_rand_index(ground_truth, predicted)?)
}

/// Number of modified links between two graphs (the symmetric difference).
pub fn attack_budget(g_orig: &Graph, g_pert: &Graph) -> Result<usize> {
    edge_set_difference_size(g_orig, g_pert)
}

/// Remaining-budget objective `1 - |A' - A| / 2T`.
///
/// `|A' - A|` counts both symmetric matrix entries of every changed link, so
/// this equals `1 - changed_links / T`.
pub fn dat(g_orig: &Graph, g_pert: &Graph, budget: usize) -> Result<f64> {
    let changed = attack_budget(g_orig, g_pert)?;
    dat_from_changes(changed, budget)
}

/// [`dat`] from an already known number of changed links.
pub fn dat_from_changes(changed: usize, budget: usize) -> Result<f64> {
    if budget == 0 {
        return Err(Error::validation("perturbation budget T must be positive"));
    }
    Ok(1.0 - (2 * changed) as f64 / (2 * budget) as f64)
}

/// Budget `T` as 20% of the original link count, rounded half to even.
pub fn default_budget(edge_count: usize) -> usize {
    (BUDGET_FRACTION * edge_count as f64).round_ties_even() as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_triangles() -> Graph {
        Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap()
    }

    #[test]
    fn modularity_of_one_community_is_zero() {
        let g = two_triangles();
        let q = modularity(&g, &Partition::single(6)).unwrap();
        assert!(q.abs() < 1e-15);
    }

    #[test]
    fn modularity_two_triangles() {
        let g = two_triangles();
        let q = modularity(&g, &Partition::new(vec![0, 0, 0, 1, 1, 1])).unwrap();
        // each triangle: 3/6 - (6/12)^2
        assert!((q - 0.5).abs() < 1e-15);
    }

    #[test]
    fn modularity_size_mismatch() {
        assert!(modularity(&two_triangles(), &Partition::single(5)).is_err());
        let empty = Graph::empty(3);
        assert!(modularity(&empty, &Partition::single(3)).is_err());
    }

    #[test]
    fn ari_identity_and_degenerate_cases() {
        let p = Partition::new(vec![0, 0, 1, 1, 2]);
        assert_eq!(adjusted_rand_index(&p, &p).unwrap(), 1.0);
        let relabeled = Partition::new(vec![4, 4, 9, 9, 0]);
        assert_eq!(adjusted_rand_index(&p, &relabeled).unwrap(), 1.0);
        let s = Partition::singletons(6);
        assert_eq!(adjusted_rand_index(&s, &s).unwrap(), 1.0);
        let one = Partition::single(6);
        assert_eq!(adjusted_rand_index(&one, &one).unwrap(), 1.0);
        assert!(adjusted_rand_index(&s, &one).unwrap().abs() < 1e-15);
        assert!(adjusted_rand_index(&s, &Partition::single(5)).is_err());
    }

    #[test]
    fn dari_is_one_minus_ari() {
        let p = Partition::new(vec![0, 0, 1, 1]);
        assert_eq!(dari(&p, &p).unwrap(), 0.0);
        let q = Partition::new(vec![0, 1, 0, 1]);
        let ari = adjusted_rand_index(&p, &q).unwrap();
        assert_eq!(dari(&p, &q).unwrap(), 1.0 - ari);
    }

    #[test]
    fn dat_values() {
        let g = two_triangles();
        assert_eq!(dat(&g, &g, 16).unwrap(), 1.0);
        assert_eq!(dat_from_changes(4, 16).unwrap(), 0.75);
        assert_eq!(dat_from_changes(16, 16).unwrap(), 0.0);
        assert!(dat(&g, &g, 0).is_err());
    }

    #[test]
    fn budget_rounds_half_even() {
        assert_eq!(default_budget(78), 16);
        assert_eq!(default_budget(159), 32);
        assert_eq!(default_budget(914), 183);
        assert_eq!(default_budget(6559), 1312);
        assert_eq!(default_budget(0), 0);
    }
}
