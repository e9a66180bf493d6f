use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng as _, RngCore};

use super::rewire::{sample_biased_rewiring, sample_rewiring, MAX_ATTEMPTS};
use super::{BiasMode, Individual, RewiringMove};
use crate::error::{Error, Result};
use crate::graph::{Graph, Partition};
use crate::rng::{rng_from, Rng};

/// Whether at least one valid rewiring exists anywhere in `g`.
pub fn has_any_move(g: &Graph) -> bool {
    let n = g.node_count();
    for c in 0..n {
        for &a in g.neighbors(c) {
            for d in 0..n {
                if d == c || d == a || g.has_edge(c, d) {
                    continue;
                }
                if g
                    .neighbors(d)
                    .iter()
                    .any(|&e| e != a && e != c && !g.has_edge(a, e))
                {
                    return true;
                }
            }
        }
    }
    false
}

/// Roulette-wheel choice of a mutation target among nodes with degree >= 1.
pub fn select_target(g: &Graph, bias: BiasMode, rng: &mut Rng) -> Option<usize> {
    let candidates: Vec<usize> = (0..g.node_count()).filter(|&v| g.degree(v) > 0).collect();
    if candidates.is_empty() {
        return None;
    }
    if bias == BiasMode::Uniform {
        return candidates.choose(rng).copied();
    }
    let max_deg = g.max_degree();
    let w = WeightedIndex::new(
        candidates
            .iter()
            .map(|&v| bias.target_weight(g.degree(v), max_deg)),
    )
    .ok()?;
    Some(candidates[w.sample(rng)])
}

/// `omega` individuals, each carrying between 1 and `budget / 4` random moves
/// with uniformly chosen targets. Four links flip per move, so every
/// individual stays within the budget.
pub fn initialize_population(
    g: &Graph,
    omega: usize,
    budget: usize,
    rng: &mut Rng,
) -> Result<Vec<Individual>> {
    if omega < 2 {
        return Err(Error::validation("population size must be at least 2"));
    }
    let max_moves = budget / 4;
    if max_moves == 0 {
        return Err(Error::Config(format!(
            "budget T = {budget} cannot hold a single rewiring (4 links)"
        )));
    }
    if !has_any_move(g) {
        return Err(Error::Unperturbable);
    }
    let seeds: Vec<u64> = (0..omega).map(|_| rng.next_u64()).collect();
    seeds
        .into_iter()
        .map(|seed| {
            let mut r = rng_from(seed);
            let wanted = r.random_range(1..=max_moves);
            let mut ind = Individual::unperturbed(g);
            let mut tries = 0;
            while ind.moves().len() < wanted && tries < wanted * MAX_ATTEMPTS {
                tries += 1;
                let Some(c) = select_target(ind.graph(), BiasMode::Uniform, &mut r) else {
                    break;
                };
                if let Some(m) = sample_rewiring(ind.graph(), c, &mut r)? {
                    ind.push_move(m)?;
                }
            }
            if ind.moves().is_empty() {
                return Err(Error::Unperturbable);
            }
            Ok(ind)
        })
        .collect()
}

/// Moves realizing a crossover between two individuals, one per side.
///
/// The shared target `t` is drawn among nodes whose neighbourhoods differ
/// between the parents. On side one, `t` drops a neighbour `x` it has only in
/// parent one and takes a neighbour `y` it has only in parent two; `y` drops
/// a neighbour `z` (not `t`, not adjacent to `x`) and `x` takes `z`, which
/// restores every degree. Side two is the mirror image. A side with no valid
/// `(x, y, z)` yields `None`.
pub fn crossover_moves(
    ind1: &Individual,
    ind2: &Individual,
    p_c: f64,
    rng: &mut Rng,
) -> Result<(Option<RewiringMove>, Option<RewiringMove>)> {
    check_same_base(ind1, ind2)?;
    if !rng.random_bool(p_c.clamp(0.0, 1.0)) {
        return Ok((None, None));
    }
    let (g1, g2) = (ind1.graph(), ind2.graph());
    let differing: Vec<usize> = (0..g1.node_count())
        .filter(|&t| g1.neighbors(t) != g2.neighbors(t))
        .collect();
    let Some(&t) = differing.choose(rng) else {
        return Ok((None, None));
    };
    Ok((exchange(g1, g2, t, rng), exchange(g2, g1, t, rng)))
}

fn exchange(own: &Graph, donor: &Graph, t: usize, rng: &mut Rng) -> Option<RewiringMove> {
    let mut xs: Vec<usize> = own
        .neighbors(t)
        .iter()
        .copied()
        .filter(|&x| !donor.has_edge(t, x))
        .collect();
    let mut ys: Vec<usize> = donor
        .neighbors(t)
        .iter()
        .copied()
        .filter(|&y| !own.has_edge(t, y))
        .collect();
    xs.shuffle(rng);
    ys.shuffle(rng);
    for &y in &ys {
        for &x in &xs {
            let zs: Vec<usize> = own
                .neighbors(y)
                .iter()
                .copied()
                .filter(|&z| z != t && z != x && !own.has_edge(x, z))
                .collect();
            if let Some(&z) = zs.choose(rng) {
                return Some(RewiringMove::new(x, t, y, z));
            }
        }
    }
    None
}

fn check_same_base(ind1: &Individual, ind2: &Individual) -> Result<()> {
    if ind1.base_id() != ind2.base_id() || ind1.graph().node_count() != ind2.graph().node_count() {
        return Err(Error::validation("crossover parents come from different base graphs"));
    }
    Ok(())
}

/// Crossover returning the two children. With probability `1 - p_c`, or
/// when no exchange is possible, children equal their parents.
pub fn crossover(
    ind1: &Individual,
    ind2: &Individual,
    p_c: f64,
    rng: &mut Rng,
) -> Result<(Individual, Individual)> {
    let (m1, m2) = crossover_moves(ind1, ind2, p_c, rng)?;
    let mut c1 = ind1.clone();
    let mut c2 = ind2.clone();
    if let Some(m) = m1 {
        c1.push_move(m)?;
    }
    if let Some(m) = m2 {
        c2.push_move(m)?;
    }
    Ok((c1, c2))
}

/// The move a mutation would append, if the mutation fires and a move exists.
///
/// `partition` is the clean-graph detection; it only steers biased modes.
pub fn mutation_move(
    ind: &Individual,
    p_m: f64,
    bias: BiasMode,
    partition: &Partition,
    rng: &mut Rng,
) -> Option<RewiringMove> {
    if !rng.random_bool(p_m.clamp(0.0, 1.0)) {
        return None;
    }
    let g = ind.graph();
    let target = select_target(g, bias, rng)?;
    let sampled = match bias {
        BiasMode::Uniform => sample_rewiring(g, target, rng),
        _ => sample_biased_rewiring(g, target, bias, partition, rng),
    };
    sampled.ok().flatten()
}

/// Mutation: with probability `p_m`, one rewiring on a target chosen by
/// `bias`. Returns the individual unchanged when no move is found.
pub fn mutate(
    ind: &Individual,
    p_m: f64,
    bias: BiasMode,
    partition: &Partition,
    rng: &mut Rng,
) -> Individual {
    let mut out = ind.clone();
    if let Some(m) = mutation_move(ind, p_m, bias, partition, rng) {
        out.push_move(m).expect("sampled moves are valid");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fig4_crossover() {
        // individual 1 has a-c and d-e, individual 2 has a-e and c-d
        // a=0 c=1 d=2 e=3
        let base = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let ind1 = Individual::unperturbed(&base);
        let ind2 = Individual::from_moves(&base, &[RewiringMove::new(0, 1, 2, 3)]).unwrap();
        let mut rng = rng_from(0);
        let (c1, c2) = crossover(&ind1, &ind2, 1.0, &mut rng).unwrap();
        let g = c1.graph();
        assert!(g.has_edge(0, 3) && g.has_edge(1, 2));
        assert!(!g.has_edge(0, 1) && !g.has_edge(2, 3));
        assert_eq!(c2.graph(), &base);
    }

    #[test]
    fn identical_parents_do_not_change() {
        let base = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let ind = Individual::unperturbed(&base);
        let (c1, c2) = crossover(&ind, &ind, 1.0, &mut rng_from(1)).unwrap();
        assert_eq!(c1.graph(), &base);
        assert_eq!(c2.graph(), &base);
    }

    #[test]
    fn crossover_rejects_foreign_parents() {
        let a = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let b = Graph::from_edges(4, [(0, 2), (1, 3)]).unwrap();
        let r = crossover(&Individual::unperturbed(&a), &Individual::unperturbed(&b), 1.0, &mut rng_from(0));
        assert!(r.is_err());
    }

    #[test]
    fn zero_mutation_probability_is_identity() {
        let base = Graph::from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5), (2, 3)]).unwrap();
        let ind = Individual::unperturbed(&base);
        let p = Partition::single(6);
        for bias in [BiasMode::Uniform, BiasMode::MinDegree, BiasMode::MaxDegree] {
            let out = mutate(&ind, 0.0, bias, &p, &mut rng_from(2));
            assert!(out.moves().is_empty());
        }
    }

    #[test]
    fn complete_graph_is_unperturbable() {
        let k6 = Graph::from_edges(6, (0..6).flat_map(|u| (u + 1..6).map(move |v| (u, v)))).unwrap();
        assert!(!has_any_move(&k6));
        assert!(matches!(
            initialize_population(&k6, 30, 16, &mut rng_from(0)),
            Err(Error::Unperturbable)
        ));
    }

    #[test]
    fn population_respects_budget() {
        let g = Graph::from_edges(7, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3), (5, 6)]).unwrap();
        let pop = initialize_population(&g, 2, 8, &mut rng_from(4)).unwrap();
        assert_eq!(pop.len(), 2);
        for ind in &pop {
            assert!(ind.changed_links() <= 8);
            assert_eq!(ind.graph().degree_sequence(), g.degree_sequence());
        }
        assert!(initialize_population(&g, 1, 8, &mut rng_from(4)).is_err());
        assert!(initialize_population(&g, 2, 3, &mut rng_from(4)).is_err());
    }
}
