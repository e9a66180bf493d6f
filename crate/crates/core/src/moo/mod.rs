//! The multi-objective attack loop.
//!
//! A population of degree-preserving perturbations evolves under NSGA-II
//! selection, maximizing DARI (how far the detected communities drift) and
//! DAT (how much of the budget is left). An external archive keeps every
//! non-dominated point ever evaluated.

mod nsga;

pub use nsga::{crowding_distance, elite_indices, fast_nondominated_sort};

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::detection::{Algorithm, Detector};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Partition};
use crate::metrics::{
    dari, dat_from_changes, default_budget, dominates, hypervolume_2d, modularity, FitnessPoint,
};
use crate::perturbation::{
    crossover_moves, has_any_move, initialize_population, mutation_move, BiasMode, Individual,
};
use crate::rng::{derive_seed, stream};

const GROUND_TRUTH_STREAM: u64 = 0x6774;
const INIT_STREAM: u64 = 1;
const VARIATION_STREAM: u64 = 2;
const EVAL_STREAM: u64 = 3;

/// Parameters of one attack run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttackConfig {
    /// Population size; even, so that parents pair up.
    pub omega: usize,
    pub p_c: f64,
    pub p_m: f64,
    /// Budget `T`, in links.
    pub budget: usize,
    pub max_iterations: usize,
    pub bias: BiasMode,
    pub detector: Algorithm,
    pub seed: u64,
}

impl AttackConfig {
    /// Population 30, crossover 0.5, mutation 0.8, 500 iterations and a
    /// budget of 20% of `g`'s links.
    pub fn defaults_for(g: &Graph, detector: Algorithm, seed: u64) -> Self {
        AttackConfig {
            omega: 30,
            p_c: 0.5,
            p_m: 0.8,
            budget: default_budget(g.edge_count()),
            max_iterations: 500,
            bias: BiasMode::Uniform,
            detector,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.omega < 2 || self.omega % 2 != 0 {
            return Err(Error::Config(format!(
                "population size must be even and at least 2, got {}",
                self.omega
            )));
        }
        for (name, p) in [("crossover", self.p_c), ("mutation", self.p_m)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Config(format!("{name} probability {p} is outside [0, 1]")));
            }
        }
        if self.budget == 0 {
            return Err(Error::Config("budget T must be at least 1".into()));
        }
        if self.max_iterations == 0 {
            return Err(Error::Config("at least one iteration is required".into()));
        }
        Ok(())
    }

    /// Detector with the seed used for the clean-graph partition.
    pub fn ground_truth_detector(&self) -> Detector {
        Detector::new(self.detector, derive_seed(self.seed, &[GROUND_TRUTH_STREAM]))
    }

    fn eval_detector(&self, iteration: usize, index: usize) -> Detector {
        Detector::new(
            self.detector,
            derive_seed(self.seed, &[EVAL_STREAM, iteration as u64, index as u64]),
        )
    }
}

/// Objectives of `ind` against the clean-graph partition, plus the
/// modularity of the partition detected on the perturbed graph.
pub fn evaluate(
    ind: &Individual,
    ground_truth: &Partition,
    detector: &Detector,
    budget: usize,
) -> Result<(FitnessPoint, f64)> {
    let g = ind.graph();
    let detected = detector.detect(g)?;
    let point = FitnessPoint::new(
        dari(ground_truth, &detected)?,
        dat_from_changes(ind.changed_links(), budget)?,
    );
    Ok((point, modularity(g, &detected)?))
}

/// [`evaluate`] without the modularity.
pub fn evaluate_fitness(
    ind: &Individual,
    ground_truth: &Partition,
    detector: &Detector,
    budget: usize,
) -> Result<FitnessPoint> {
    evaluate(ind, ground_truth, detector, budget).map(|(p, _)| p)
}

/// Survivors of a `2 * omega` pool, all of which must carry a fitness.
pub fn elite_select(pool: Vec<Individual>, omega: usize) -> Result<Vec<Individual>> {
    let points = pool
        .iter()
        .map(|ind| {
            ind.fitness
                .ok_or_else(|| Error::validation("elite selection on an unevaluated individual"))
        })
        .collect::<Result<Vec<_>>>()?;
    let keep = elite_indices(&points, omega)?;
    let mut slots: Vec<Option<Individual>> = pool.into_iter().map(Some).collect();
    Ok(keep
        .into_iter()
        .map(|i| slots[i].take().expect("indices are distinct"))
        .collect())
}

/// An archived solution.
#[derive(Debug, Clone)]
pub struct ArchiveEntry {
    pub fitness: FitnessPoint,
    /// Modularity of the partition detected on the perturbed graph.
    pub modularity: f64,
    /// Iteration at which the solution was first evaluated (0 = initial population).
    pub iteration: usize,
    pub individual: Individual,
}

/// All-time non-dominated solutions and the per-iteration history of a run.
#[derive(Debug, Clone, Default)]
pub struct ParetoArchive {
    entries: Vec<ArchiveEntry>,
    pub hv_history: Vec<f64>,
    /// Fitness of the population's first front after each iteration.
    pub front_history: Vec<Vec<FitnessPoint>>,
}

impl ParetoArchive {
    pub fn entries(&self) -> &[ArchiveEntry] {
        &self.entries
    }

    pub fn points(&self) -> Vec<FitnessPoint> {
        self.entries.iter().map(|e| e.fitness).collect()
    }

    /// Offers a solution; returns whether it was archived. Infeasible,
    /// dominated and already present points are rejected, and entries the
    /// newcomer dominates are dropped.
    pub fn offer(&mut self, entry: ArchiveEntry) -> bool {
        let p = entry.fitness;
        if !p.is_feasible()
            || self
                .entries
                .iter()
                .any(|e| e.fitness == p || dominates(&e.fitness, &p))
        {
            return false;
        }
        self.entries.retain(|e| !dominates(&p, &e.fitness));
        let at = self
            .entries
            .partition_point(|e| e.fitness.dari < p.dari);
        self.entries.insert(at, entry);
        true
    }

    /// Hypervolume against the origin.
    pub fn hypervolume(&self) -> f64 {
        hypervolume_2d(&self.points(), FitnessPoint::ORIGIN).expect("archive points are feasible")
    }

    /// Leftmost (lowest DARI), center (index `len / 2`) and rightmost entries.
    pub fn representatives(&self) -> Option<[&ArchiveEntry; 3]> {
        let n = self.entries.len();
        (n > 0).then(|| [&self.entries[0], &self.entries[n / 2], &self.entries[n - 1]])
    }
}

/// Summary of one iteration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IterationStats {
    pub iteration: usize,
    pub hypervolume: f64,
    pub front_size: usize,
    pub best_dari: f64,
    pub best_dat: f64,
    /// Modularity of the left, center and right archive solutions.
    pub modularity: [f64; 3],
}

/// Everything a run produces.
#[derive(Debug, Clone)]
pub struct AttackOutcome {
    pub ground_truth: Partition,
    pub ground_truth_modularity: f64,
    pub archive: ParetoArchive,
    /// First front of the final population.
    pub final_front: Vec<Individual>,
    pub history: Vec<IterationStats>,
    pub evaluations: usize,
    pub cache_hits: usize,
}

/// Runs the attack. See [`run_ucd_observed`].
pub fn run_ucd(g: &Graph, config: &AttackConfig) -> Result<AttackOutcome> {
    run_ucd_observed(g, config, |_| {})
}

/// Runs the attack, calling `observer` on every individual that receives a
/// fitness, in a deterministic order.
///
/// Each generation pairs the parents at random, appends a crossover move to
/// each child with probability `p_c` and a mutation move with probability
/// `p_m`. A move that would take a child past the budget is discarded.
/// Children are evaluated (in parallel, with per-child detector seeds) and
/// the best `omega` of parents and children survive.
pub fn run_ucd_observed(
    g: &Graph,
    config: &AttackConfig,
    mut observer: impl FnMut(&Individual),
) -> Result<AttackOutcome> {
    config.validate()?;
    if config.budget < 4 {
        return Err(Error::Config(format!(
            "budget T = {} is below the 4 links one rewiring changes",
            config.budget
        )));
    }
    if !has_any_move(g) {
        return Err(Error::Unperturbable);
    }
    let ground_truth = config.ground_truth_detector().detect(g)?;
    let ground_truth_modularity = modularity(g, &ground_truth)?;

    let mut cache = FitnessCache::default();
    let mut archive = ParetoArchive::default();
    let mut history = Vec::with_capacity(config.max_iterations);

    let mut rng = stream(config.seed, &[INIT_STREAM]);
    let mut population = initialize_population(g, config.omega, config.budget, &mut rng)?;
    cache.evaluate_all(&mut population, config, &ground_truth, 0)?;
    for ind in &population {
        observer(ind);
        archive.offer(archive_entry(ind, 0));
    }

    for iteration in 1..=config.max_iterations {
        let mut rng = stream(config.seed, &[VARIATION_STREAM, iteration as u64]);
        let mut order: Vec<usize> = (0..config.omega).collect();
        order.shuffle(&mut rng);
        let mut children = Vec::with_capacity(config.omega);
        for pair in order.chunks_exact(2) {
            let (p1, p2) = (&population[pair[0]], &population[pair[1]]);
            let (m1, m2) = crossover_moves(p1, p2, config.p_c, &mut rng)?;
            for (parent, m) in [(p1, m1), (p2, m2)] {
                let mut child = parent.clone();
                if let Some(m) = m {
                    push_within_budget(&mut child, m, config.budget)?;
                }
                children.push(child);
            }
        }
        for child in &mut children {
            if let Some(m) =
                mutation_move(child, config.p_m, config.bias, &ground_truth, &mut rng)
            {
                push_within_budget(child, m, config.budget)?;
            }
        }

        cache.evaluate_all(&mut children, config, &ground_truth, iteration)?;
        for child in &children {
            observer(child);
            archive.offer(archive_entry(child, iteration));
        }

        population.extend(children);
        population = elite_select(population, config.omega)?;

        let points: Vec<FitnessPoint> = population
            .iter()
            .map(|ind| ind.fitness.expect("evaluated"))
            .collect();
        let front: Vec<FitnessPoint> = fast_nondominated_sort(&points)[0]
            .iter()
            .map(|&i| points[i])
            .collect();
        let hv = archive.hypervolume();
        let reps = archive.representatives().expect("initial population is archived");
        history.push(IterationStats {
            iteration,
            hypervolume: hv,
            front_size: front.len(),
            best_dari: front.iter().map(|p| p.dari).fold(f64::NEG_INFINITY, f64::max),
            best_dat: front.iter().map(|p| p.dat).fold(f64::NEG_INFINITY, f64::max),
            modularity: reps.map(|e| e.modularity),
        });
        archive.hv_history.push(hv);
        archive.front_history.push(front);
    }

    let points: Vec<FitnessPoint> = population
        .iter()
        .map(|ind| ind.fitness.expect("evaluated"))
        .collect();
    let first = fast_nondominated_sort(&points).swap_remove(0);
    let final_front = first.into_iter().map(|i| population[i].clone()).collect();

    Ok(AttackOutcome {
        ground_truth,
        ground_truth_modularity,
        archive,
        final_front,
        history,
        evaluations: cache.evaluations,
        cache_hits: cache.hits,
    })
}

/// Random-search reference: every iteration draws `omega` fresh random
/// individuals (1 to `T / 4` uniform moves each) and offers them to the
/// archive. Same evaluation protocol and history as [`run_ucd`].
pub fn run_random_search(g: &Graph, config: &AttackConfig) -> Result<AttackOutcome> {
    config.validate()?;
    if config.budget < 4 {
        return Err(Error::Config(format!(
            "budget T = {} is below the 4 links one rewiring changes",
            config.budget
        )));
    }
    let ground_truth = config.ground_truth_detector().detect(g)?;
    let ground_truth_modularity = modularity(g, &ground_truth)?;
    let mut cache = FitnessCache::default();
    let mut archive = ParetoArchive::default();
    let mut history = Vec::with_capacity(config.max_iterations);
    let mut last = Vec::new();
    for iteration in 0..=config.max_iterations {
        let mut rng = stream(config.seed, &[INIT_STREAM, iteration as u64]);
        let mut batch = initialize_population(g, config.omega, config.budget, &mut rng)?;
        cache.evaluate_all(&mut batch, config, &ground_truth, iteration)?;
        for ind in &batch {
            archive.offer(archive_entry(ind, iteration));
        }
        let points: Vec<FitnessPoint> = batch.iter().map(|i| i.fitness.expect("evaluated")).collect();
        let first = fast_nondominated_sort(&points).swap_remove(0);
        if iteration > 0 {
            let front: Vec<FitnessPoint> = first.iter().map(|&i| points[i]).collect();
            let hv = archive.hypervolume();
            let reps = archive.representatives().expect("non-empty archive");
            history.push(IterationStats {
                iteration,
                hypervolume: hv,
                front_size: front.len(),
                best_dari: front.iter().map(|p| p.dari).fold(f64::NEG_INFINITY, f64::max),
                best_dat: front.iter().map(|p| p.dat).fold(f64::NEG_INFINITY, f64::max),
                modularity: reps.map(|e| e.modularity),
            });
            archive.hv_history.push(hv);
            archive.front_history.push(front);
        }
        last = first.into_iter().map(|i| batch[i].clone()).collect();
    }
    Ok(AttackOutcome {
        ground_truth,
        ground_truth_modularity,
        archive,
        final_front: last,
        history,
        evaluations: cache.evaluations,
        cache_hits: cache.hits,
    })
}

fn push_within_budget(
    ind: &mut Individual,
    m: crate::perturbation::RewiringMove,
    budget: usize,
) -> Result<()> {
    if ind.changed_links_after(&m) <= budget {
        ind.push_move(m)?;
    }
    Ok(())
}

fn archive_entry(ind: &Individual, iteration: usize) -> ArchiveEntry {
    ArchiveEntry {
        fitness: ind.fitness.expect("evaluated"),
        modularity: ind.modularity.expect("evaluated"),
        iteration,
        individual: ind.clone(),
    }
}

/// Results keyed by the set of changed links, which determines the perturbed graph.
#[derive(Default)]
struct FitnessCache {
    known: HashMap<Vec<Edge>, (FitnessPoint, f64)>,
    evaluations: usize,
    hits: usize,
}

impl FitnessCache {
    /// Fills in every missing fitness. Unseen graphs are detected in
    /// parallel; the first occurrence of a graph fixes its detector seed.
    fn evaluate_all(
        &mut self,
        inds: &mut [Individual],
        config: &AttackConfig,
        ground_truth: &Partition,
        iteration: usize,
    ) -> Result<()> {
        let mut pending: Vec<(usize, Vec<Edge>)> = Vec::new();
        let mut queued: HashMap<Vec<Edge>, usize> = HashMap::new();
        for (i, ind) in inds.iter().enumerate() {
            if ind.fitness.is_some() {
                continue;
            }
            let key: Vec<Edge> = ind.changed_edges().collect();
            if self.known.contains_key(&key) || queued.contains_key(&key) {
                self.hits += 1;
                continue;
            }
            queued.insert(key.clone(), i);
            pending.push((i, key));
        }
        let results: Vec<Result<(FitnessPoint, f64)>> = pending
            .par_iter()
            .map(|(i, _)| {
                evaluate(
                    &inds[*i],
                    ground_truth,
                    &config.eval_detector(iteration, *i),
                    config.budget,
                )
            })
            .collect();
        for ((_, key), r) in pending.into_iter().zip(results) {
            self.known.insert(key, r?);
            self.evaluations += 1;
        }
        for ind in inds.iter_mut() {
            if ind.fitness.is_none() {
                let key: Vec<Edge> = ind.changed_edges().collect();
                let (p, q) = self.known[&key];
                ind.fitness = Some(p);
                ind.modularity = Some(q);
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synthgen::{generate_chain_of_cliques, CommunitySpec};

    fn small_graph() -> Graph {
        let spec = CommunitySpec::new(vec![6, 5, 5, 4]).unwrap();
        generate_chain_of_cliques(&spec).0
    }

    fn config(iterations: usize, seed: u64) -> AttackConfig {
        AttackConfig {
            omega: 10,
            p_c: 0.5,
            p_m: 0.8,
            budget: 8,
            max_iterations: iterations,
            bias: BiasMode::Uniform,
            detector: Algorithm::Louvain,
            seed,
        }
    }

    #[test]
    fn config_validation() {
        let mut c = config(1, 0);
        assert!(c.validate().is_ok());
        c.omega = 7;
        assert!(c.validate().is_err());
        c.omega = 8;
        c.p_m = 1.5;
        assert!(c.validate().is_err());
        c.p_m = 0.5;
        c.max_iterations = 0;
        assert!(c.validate().is_err());
        c.max_iterations = 1;
        c.budget = 3;
        assert!(matches!(run_ucd(&small_graph(), &c), Err(Error::Config(_))));
    }

    #[test]
    fn unperturbed_individual_scores() {
        let g = small_graph();
        let det = Detector::new(Algorithm::FastNewman, 0);
        let gt = det.detect(&g).unwrap();
        let p = evaluate_fitness(&Individual::unperturbed(&g), &gt, &det, 8).unwrap();
        assert_eq!(p, FitnessPoint::new(0.0, 1.0));
    }

    #[test]
    fn archive_stays_non_dominated() {
        let g = small_graph();
        let mut a = ParetoArchive::default();
        let ind = Individual::unperturbed(&g);
        let entry = |dari, dat| ArchiveEntry {
            fitness: FitnessPoint::new(dari, dat),
            modularity: 0.0,
            iteration: 0,
            individual: ind.clone(),
        };
        assert!(a.offer(entry(0.2, 0.5)));
        assert!(!a.offer(entry(0.2, 0.5)));
        assert!(!a.offer(entry(0.1, 0.4)));
        assert!(a.offer(entry(0.5, 0.0)));
        assert!(!a.offer(entry(0.9, -0.5)));
        assert!(a.offer(entry(0.3, 0.5)));
        assert_eq!(a.points(), vec![FitnessPoint::new(0.3, 0.5), FitnessPoint::new(0.5, 0.0)]);
        assert!((a.hypervolume() - 0.15).abs() < 1e-12);
    }

    #[test]
    fn run_is_deterministic_and_monotone() {
        let g = small_graph();
        let a = run_ucd(&g, &config(15, 3)).unwrap();
        let b = run_ucd(&g, &config(15, 3)).unwrap();
        assert_eq!(a.archive.hv_history, b.archive.hv_history);
        assert_eq!(a.archive.hv_history.len(), 15);
        assert!(a.archive.hv_history.windows(2).all(|w| w[0] <= w[1]));
        for e in a.archive.entries() {
            assert_eq!(e.individual.graph().degree_sequence(), g.degree_sequence());
            assert!(e.individual.changed_links() <= 8);
        }
    }

    #[test]
    fn observer_sees_initial_population_and_children() {
        let g = small_graph();
        let mut seen = 0;
        run_ucd_observed(&g, &config(3, 1), |_| seen += 1).unwrap();
        assert_eq!(seen, 10 + 3 * 10);
    }

    #[test]
    fn complete_graph_is_rejected() {
        let k5 = Graph::from_edges(5, (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v)))).unwrap();
        let mut c = config(1, 0);
        c.budget = 4;
        assert!(matches!(run_ucd(&k5, &c), Err(Error::Unperturbable)));
    }
}
