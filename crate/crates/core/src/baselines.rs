//! Single-objective genetic baseline that lowers modularity with a fixed
//! number of link additions and deletions (degrees are not preserved).

use std::collections::{BTreeSet, HashMap};

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng as _;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::detection::{Algorithm, Detector};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::metrics::{dari, dat, modularity, FitnessPoint};
use crate::rng::{derive_seed, stream, Rng};

const GROUND_TRUTH_STREAM: u64 = 0x6774;

/// A fixed-size set of link edits on a base graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EditGenome {
    pub deletions: BTreeSet<Edge>,
    pub additions: BTreeSet<Edge>,
    pub budget: usize,
}

impl EditGenome {
    pub fn size(&self) -> usize {
        self.deletions.len() + self.additions.len()
    }

    /// Checks the genome against `g`: exact size, deletions are links,
    /// additions are non-links, no self-loops.
    pub fn check(&self, g: &Graph) -> Result<()> {
        if self.size() != self.budget {
            return Err(Error::validation(format!(
                "genome holds {} edits, budget is {}",
                self.size(),
                self.budget
            )));
        }
        for e in &self.deletions {
            if !g.has_edge(e.u(), e.v()) {
                return Err(Error::validation(format!("deletion {e} is not a link")));
            }
        }
        for e in &self.additions {
            if e.is_loop() || e.v() >= g.node_count() || g.has_edge(e.u(), e.v()) {
                return Err(Error::validation(format!("addition {e} is not a valid non-link")));
            }
        }
        Ok(())
    }

    /// The edited graph.
    pub fn apply(&self, g: &Graph) -> Result<Graph> {
        self.check(g)?;
        let mut h = g.clone();
        for e in &self.deletions {
            h.remove_edge(e.u(), e.v());
        }
        for e in &self.additions {
            h.add_edge(e.u(), e.v())?;
        }
        Ok(h)
    }

    fn contains(&self, e: &Edge) -> bool {
        self.deletions.contains(e) || self.additions.contains(e)
    }

    fn insert(&mut self, g: &Graph, e: Edge) {
        if g.has_edge(e.u(), e.v()) {
            self.deletions.insert(e);
        } else {
            self.additions.insert(e);
        }
    }

    fn remove(&mut self, e: &Edge) {
        self.deletions.remove(e);
        self.additions.remove(e);
    }

    fn edits(&self) -> Vec<Edge> {
        self.deletions.iter().chain(&self.additions).copied().collect()
    }
}

/// Uniformly random edit that is not in `genome` (a fresh link or non-link).
fn fresh_edit(g: &Graph, genome: &EditGenome, links: &[Edge], rng: &mut Rng) -> Option<Edge> {
    let n = g.node_count();
    let non_links = n * (n - 1) / 2 - links.len();
    let free_del = links.len() - genome.deletions.len();
    let free_add = non_links - genome.additions.len();
    if free_del + free_add == 0 {
        return None;
    }
    let take_deletion = rng.random_range(0..free_del + free_add) < free_del;
    loop {
        let e = if take_deletion {
            *links.choose(rng).expect("free deletion exists")
        } else {
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            if u == v || g.has_edge(u, v) {
                continue;
            }
            Edge::new(u, v)
        };
        if !genome.contains(&e) {
            return Some(e);
        }
    }
}

fn random_genome(g: &Graph, budget: usize, links: &[Edge], rng: &mut Rng) -> EditGenome {
    let mut genome = EditGenome {
        deletions: BTreeSet::new(),
        additions: BTreeSet::new(),
        budget,
    };
    while genome.size() < budget {
        let e = fresh_edit(g, &genome, links, rng).expect("budget is feasible");
        genome.insert(g, e);
    }
    genome
}

/// Uniform crossover on the edit sets, repaired back to the exact budget.
fn crossover(
    g: &Graph,
    a: &EditGenome,
    b: &EditGenome,
    links: &[Edge],
    rng: &mut Rng,
) -> (EditGenome, EditGenome) {
    let empty = EditGenome {
        deletions: BTreeSet::new(),
        additions: BTreeSet::new(),
        budget: a.budget,
    };
    let (mut c1, mut c2) = (empty.clone(), empty);
    let shared: BTreeSet<Edge> = a.edits().into_iter().filter(|e| b.contains(e)).collect();
    for &e in &shared {
        c1.insert(g, e);
        c2.insert(g, e);
    }
    let mut rest: Vec<Edge> = a
        .edits()
        .into_iter()
        .chain(b.edits())
        .filter(|e| !shared.contains(e))
        .collect();
    rest.shuffle(rng);
    for e in rest {
        if rng.random_bool(0.5) {
            c1.insert(g, e);
        } else {
            c2.insert(g, e);
        }
    }
    for c in [&mut c1, &mut c2] {
        repair(g, c, links, rng);
    }
    (c1, c2)
}

fn repair(g: &Graph, genome: &mut EditGenome, links: &[Edge], rng: &mut Rng) {
    while genome.size() > genome.budget {
        let edits = genome.edits();
        let e = *edits.choose(rng).expect("oversized genome is non-empty");
        genome.remove(&e);
    }
    while genome.size() < genome.budget {
        let e = fresh_edit(g, genome, links, rng).expect("budget is feasible");
        genome.insert(g, e);
    }
}

/// Replaces one edit with a fresh random edit.
fn mutate(g: &Graph, genome: &mut EditGenome, links: &[Edge], rng: &mut Rng) {
    let edits = genome.edits();
    let Some(&old) = edits.choose(rng) else {
        return;
    };
    let Some(fresh) = fresh_edit(g, genome, links, rng) else {
        return;
    };
    genome.remove(&old);
    genome.insert(g, fresh);
}

/// Genetic-algorithm parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaqConfig {
    pub omega: usize,
    pub p_c: f64,
    pub p_m: f64,
    pub max_iterations: usize,
    pub detector: Algorithm,
    pub seed: u64,
}

impl GaqConfig {
    fn ground_truth_detector(&self) -> Detector {
        Detector::new(self.detector, derive_seed(self.seed, &[GROUND_TRUTH_STREAM]))
    }
}

#[derive(Debug, Clone)]
pub struct GaqOutcome {
    pub best: EditGenome,
    pub perturbed: Graph,
    /// Modularity decrease achieved by `best`.
    pub best_fitness: f64,
    /// Best fitness after each generation.
    pub trace: Vec<f64>,
    pub clean_modularity: f64,
}

/// See [`run_gaq_observed`].
pub fn run_gaq(g: &Graph, budget: usize, config: &GaqConfig) -> Result<GaqOutcome> {
    run_gaq_observed(g, budget, config, |_| {})
}

/// Evolves edit genomes of exactly `budget` edits to maximize
/// `Q(g, detect(g)) - Q(g', detect(g'))`, with one pinned detector seed so
/// that equal graphs score equally. Survivors are the best `omega` of
/// parents and children. `observer` sees every genome produced by an
/// initialization, crossover or mutation step.
pub fn run_gaq_observed(
    g: &Graph,
    budget: usize,
    config: &GaqConfig,
    mut observer: impl FnMut(&EditGenome),
) -> Result<GaqOutcome> {
    if config.omega < 2 || config.omega % 2 != 0 {
        return Err(Error::Config("population size must be even and at least 2".into()));
    }
    let n = g.node_count();
    let non_links = n * n.saturating_sub(1) / 2 - g.edge_count();
    if budget > g.edge_count() || budget > non_links {
        return Err(Error::validation(format!(
            "budget {budget} exceeds the {} links or {non_links} non-links available",
            g.edge_count()
        )));
    }
    let detector = config.ground_truth_detector();
    let clean = detector.detect(g)?;
    let clean_modularity = modularity(g, &clean)?;
    let links: Vec<Edge> = g.edges().collect();
    let mut cache: HashMap<EditGenome, f64> = HashMap::new();

    let evaluate = |pop: &[EditGenome], cache: &mut HashMap<EditGenome, f64>| -> Result<Vec<f64>> {
        let mut missing: Vec<usize> = Vec::new();
        for (i, genome) in pop.iter().enumerate() {
            if !cache.contains_key(genome) && !missing.iter().any(|&j| pop[j] == *genome) {
                missing.push(i);
            }
        }
        let scores: Vec<Result<f64>> = missing
            .par_iter()
            .map(|&i| {
                let h = pop[i].apply(g)?;
                Ok(clean_modularity - modularity(&h, &detector.detect(&h)?)?)
            })
            .collect();
        for (i, s) in missing.into_iter().zip(scores) {
            cache.insert(pop[i].clone(), s?);
        }
        Ok(pop.iter().map(|genome| cache[genome]).collect())
    };

    let mut rng = stream(config.seed, &[1]);
    let mut pop: Vec<EditGenome> = (0..config.omega)
        .map(|_| random_genome(g, budget, &links, &mut rng))
        .collect();
    pop.iter().for_each(&mut observer);
    let mut fitness = evaluate(&pop, &mut cache)?;
    let mut trace = Vec::with_capacity(config.max_iterations);

    for iteration in 1..=config.max_iterations {
        let mut rng = stream(config.seed, &[2, iteration as u64]);
        let mut order: Vec<usize> = (0..config.omega).collect();
        order.shuffle(&mut rng);
        let mut children = Vec::with_capacity(config.omega);
        for pair in order.chunks_exact(2) {
            let (a, b) = (&pop[pair[0]], &pop[pair[1]]);
            if rng.random_bool(config.p_c) {
                let (c1, c2) = crossover(g, a, b, &links, &mut rng);
                observer(&c1);
                observer(&c2);
                children.push(c1);
                children.push(c2);
            } else {
                children.push(a.clone());
                children.push(b.clone());
            }
        }
        for child in &mut children {
            if rng.random_bool(config.p_m) {
                mutate(g, child, &links, &mut rng);
                observer(child);
            }
        }
        let child_fitness = evaluate(&children, &mut cache)?;

        pop.extend(children);
        fitness.extend(child_fitness);
        let mut rank: Vec<usize> = (0..pop.len()).collect();
        rank.sort_by(|&a, &b| fitness[b].total_cmp(&fitness[a]).then(a.cmp(&b)));
        rank.truncate(config.omega);
        pop = rank.iter().map(|&i| pop[i].clone()).collect();
        fitness = rank.iter().map(|&i| fitness[i]).collect();
        trace.push(fitness[0]);
    }

    let best = pop[0].clone();
    Ok(GaqOutcome {
        perturbed: best.apply(g)?,
        best,
        best_fitness: fitness[0],
        trace,
        clean_modularity,
    })
}

/// GAQ result at each budget, scored with the attack objectives against the
/// clean-graph partition and the budget cap `t`.
pub fn gaq_representative_points(
    g: &Graph,
    budgets: &[usize],
    t: usize,
    config: &GaqConfig,
) -> Result<Vec<FitnessPoint>> {
    let ground_truth = config.ground_truth_detector().detect(g)?;
    budgets
        .iter()
        .map(|&b| {
            let out = run_gaq(g, b, config)?;
            let detected = config.ground_truth_detector().detect(&out.perturbed)?;
            Ok(FitnessPoint::new(
                dari(&ground_truth, &detected)?,
                dat(g, &out.perturbed, t)?,
            ))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datasets::karate;

    fn config(iterations: usize, seed: u64) -> GaqConfig {
        GaqConfig {
            omega: 10,
            p_c: 0.5,
            p_m: 0.8,
            max_iterations: iterations,
            detector: Algorithm::Louvain,
            seed,
        }
    }

    #[test]
    fn zero_budget_changes_nothing() {
        let g = karate();
        let out = run_gaq(&g, 0, &config(3, 0)).unwrap();
        assert_eq!(out.perturbed, g);
        assert_eq!(out.best_fitness, 0.0);
    }

    #[test]
    fn genomes_keep_their_size() {
        let g = karate();
        let mut bad = 0;
        let out = run_gaq_observed(&g, 6, &config(20, 1), |genome| {
            if genome.check(&g).is_err() {
                bad += 1;
            }
        })
        .unwrap();
        assert_eq!(bad, 0);
        assert!(out.trace.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(crate::metrics::attack_budget(&g, &out.perturbed).unwrap(), 6);
    }

    #[test]
    fn oversized_budget_is_rejected() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!(run_gaq(&g, 2, &config(1, 0)).is_err());
    }

    #[test]
    fn genome_check_catches_bad_edits() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        let genome = EditGenome {
            deletions: [Edge::new(1, 2)].into(),
            additions: BTreeSet::new(),
            budget: 1,
        };
        assert!(genome.check(&g).is_err());
    }
}
