use std::collections::BTreeMap;

use rand::seq::SliceRandom;

use super::require_edges;
use crate::error::Result;
use crate::graph::{Graph, Partition};
use crate::rng::{rng_from, Rng};

const GAIN_EPS: f64 = 1e-12;

/// Weighted multigraph used between aggregation levels. `loops[i]` is the
/// weight of edges folded inside node `i`, counted once per edge.
struct Level {
    adj: Vec<Vec<(usize, f64)>>,
    loops: Vec<f64>,
    strength: Vec<f64>,
}

impl Level {
    fn from_graph(g: &Graph) -> Self {
        let adj: Vec<Vec<(usize, f64)>> = (0..g.node_count())
            .map(|u| g.neighbors(u).iter().map(|&v| (v, 1.0)).collect())
            .collect();
        let strength = adj.iter().map(|n| n.len() as f64).collect();
        Level {
            adj,
            loops: vec![0.0; g.node_count()],
            strength,
        }
    }

    fn len(&self) -> usize {
        self.adj.len()
    }

    /// Collapses each community into a single node.
    fn aggregate(&self, community: &[usize], count: usize) -> Level {
        let mut loops = vec![0.0; count];
        let mut links: Vec<BTreeMap<usize, f64>> = vec![BTreeMap::new(); count];
        for u in 0..self.len() {
            let cu = community[u];
            loops[cu] += self.loops[u];
            for &(v, w) in &self.adj[u] {
                let cv = community[v];
                if cu == cv {
                    // seen from both endpoints
                    loops[cu] += w / 2.0;
                } else {
                    *links[cu].entry(cv).or_default() += w;
                }
            }
        }
        let adj: Vec<Vec<(usize, f64)>> = links.into_iter().map(|m| m.into_iter().collect()).collect();
        let strength = adj
            .iter()
            .zip(&loops)
            .map(|(n, l)| n.iter().map(|&(_, w)| w).sum::<f64>() + 2.0 * l)
            .collect();
        Level { adj, loops, strength }
    }
}

/// Louvain modularity optimization.
///
/// Alternates greedy local moving (nodes visited in a seed-shuffled order)
/// with community aggregation until a level produces no move.
pub fn louvain(g: &Graph, seed: u64) -> Result<Partition> {
    require_edges(g)?;
    let mut rng = rng_from(seed);
    let mut level = Level::from_graph(g);
    let total: f64 = level.strength.iter().sum();
    let mut membership: Vec<usize> = (0..g.node_count()).collect();

    loop {
        let (community, moved) = local_moving(&level, total, &mut rng);
        if !moved {
            break;
        }
        let (dense, count) = renumber(&community);
        for m in membership.iter_mut() {
            *m = dense[*m];
        }
        if count == level.len() {
            break;
        }
        level = level.aggregate(&dense, count);
    }
    Ok(Partition::new(membership))
}

fn local_moving(level: &Level, total: f64, rng: &mut Rng) -> (Vec<usize>, bool) {
    let n = level.len();
    let mut community: Vec<usize> = (0..n).collect();
    let mut tot: Vec<f64> = level.strength.clone();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);

    let mut weight_to = vec![0.0; n];
    let mut touched: Vec<usize> = Vec::new();
    let mut moved_any = false;

    loop {
        let mut moved = false;
        for &u in &order {
            let k = level.strength[u];
            let own = community[u];
            for &(v, w) in &level.adj[u] {
                let c = community[v];
                if weight_to[c] == 0.0 {
                    touched.push(c);
                }
                weight_to[c] += w;
            }
            tot[own] -= k;
            let mut best = own;
            let mut best_gain = weight_to[own] - tot[own] * k / total;
            for &c in &touched {
                let gain = weight_to[c] - tot[c] * k / total;
                if gain > best_gain + GAIN_EPS {
                    best = c;
                    best_gain = gain;
                }
            }
            tot[best] += k;
            if best != own {
                community[u] = best;
                moved = true;
            }
            for &c in &touched {
                weight_to[c] = 0.0;
            }
            touched.clear();
        }
        if !moved {
            break;
        }
        moved_any = true;
    }
    (community, moved_any)
}

fn renumber(community: &[usize]) -> (Vec<usize>, usize) {
    let mut map = vec![usize::MAX; community.len()];
    let mut next = 0;
    for &c in community {
        if map[c] == usize::MAX {
            map[c] = next;
            next += 1;
        }
    }
    let dense = community.iter().map(|&c| map[c]).collect();
    (dense, next)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge_is_one_community() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(louvain(&g, 3).unwrap(), Partition::single(2));
    }

    #[test]
    fn two_triangles_split() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        for seed in 0..20 {
            let p = louvain(&g, seed).unwrap();
            assert_eq!(p, Partition::new(vec![0, 0, 0, 1, 1, 1]));
        }
    }

    #[test]
    fn same_seed_same_labels() {
        let g = Graph::from_edges(
            8,
            [(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5), (5, 6), (6, 7), (7, 4), (0, 2)],
        )
        .unwrap();
        assert_eq!(louvain(&g, 11).unwrap(), louvain(&g, 11).unwrap());
    }
}
