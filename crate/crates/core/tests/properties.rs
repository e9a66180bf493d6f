mod common;

use proptest::prelude::*;
use ucd::detection::{Algorithm, Detector};
use ucd::graph::{edge_set_difference_size, Graph, Partition};
use ucd::metrics::{adjusted_rand_index, modularity, FitnessPoint};
use ucd::moo::{crowding_distance, elite_indices, fast_nondominated_sort};
use ucd::perturbation::{
    apply_move, crossover, mutate, sample_biased_rewiring, sample_rewiring, select_target, BiasMode,
    Individual,
};
use ucd::rng::rng_from;
use ucd::synthgen::{generate_chain_of_cliques, CommunitySpec};

fn graph_strategy() -> impl Strategy<Value = Graph> {
    (4usize..14, any::<u64>(), 0.2f64..0.7).prop_map(|(n, seed, p)| {
        common::random_graph(n, p, &mut rng_from(seed))
    })
}

fn disjoint_cliques(sizes: &[usize]) -> (Graph, Partition) {
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    let mut start = 0;
    for (c, &s) in sizes.iter().enumerate() {
        for u in start..start + s {
            labels.push(c);
            for v in u + 1..start + s {
                edges.push((u, v));
            }
        }
        start += s;
    }
    (Graph::from_edges(start, edges).unwrap(), Partition::new(labels))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn moves_preserve_degrees(g in graph_strategy(), seed in any::<u64>()) {
        let mut rng = rng_from(seed);
        let mut ind = Individual::unperturbed(&g);
        for _ in 0..10 {
            let Some(c) = select_target(ind.graph(), BiasMode::Uniform, &mut rng) else { break };
            if let Some(m) = sample_rewiring(ind.graph(), c, &mut rng).unwrap() {
                let before = ind.graph().clone();
                let after = apply_move(&before, &m).unwrap();
                prop_assert_eq!(apply_move(&after, &m.inverse()).unwrap(), before);
                ind.push_move(m).unwrap();
            }
            prop_assert_eq!(ind.graph().degree_sequence(), g.degree_sequence());
            prop_assert_eq!(ind.graph().edge_count(), g.edge_count());
            prop_assert!(ind.graph().is_consistent());
        }
        prop_assert_eq!(edge_set_difference_size(&g, ind.graph()).unwrap(), ind.changed_links());
        let replayed = Individual::from_moves(&g, ind.moves()).unwrap();
        prop_assert_eq!(replayed.graph(), ind.graph());
    }

    #[test]
    fn operators_preserve_degrees(g in graph_strategy(), seed in any::<u64>()) {
        let mut rng = rng_from(seed);
        let p = Detector::new(Algorithm::FastNewman, 0).detect(&g).unwrap();
        let mut a = Individual::unperturbed(&g);
        let mut b = Individual::unperturbed(&g);
        for step in 0..12 {
            let bias = [BiasMode::Uniform, BiasMode::MinDegree, BiasMode::MaxDegree][step % 3];
            a = mutate(&a, 0.9, bias, &p, &mut rng);
            b = mutate(&b, 0.9, bias, &p, &mut rng);
            let (c1, c2) = crossover(&a, &b, 0.7, &mut rng).unwrap();
            for ind in [&a, &b, &c1, &c2] {
                prop_assert_eq!(ind.graph().degree_sequence(), g.degree_sequence());
            }
            a = c1;
            b = c2;
        }
    }

    #[test]
    fn biased_moves_are_valid(g in graph_strategy(), seed in any::<u64>()) {
        let mut rng = rng_from(seed);
        let p = Detector::new(Algorithm::Louvain, seed).detect(&g).unwrap();
        for bias in [BiasMode::MinDegree, BiasMode::MaxDegree] {
            if let Some(c) = select_target(&g, bias, &mut rng) {
                if let Some(m) = sample_biased_rewiring(&g, c, bias, &p, &mut rng).unwrap() {
                    prop_assert!(m.is_valid_on(&g));
                    prop_assert_eq!(m.c, c);
                }
            }
        }
    }

    #[test]
    fn detectors_are_sane(g in graph_strategy(), seed in any::<u64>()) {
        let singletons = modularity(&g, &Partition::singletons(g.node_count())).unwrap();
        for algorithm in Algorithm::ALL {
            let d = Detector::new(algorithm, seed);
            let p = d.detect(&g).unwrap();
            prop_assert_eq!(p.node_count(), g.node_count());
            let k = p.community_count();
            prop_assert!(p.labels().iter().all(|&l| l < k));
            prop_assert_eq!(&p, &d.detect(&g).unwrap());
            if algorithm != Algorithm::LabelPropagation {
                prop_assert!(modularity(&g, &p).unwrap() >= singletons - 1e-12);
            }
        }
    }

    #[test]
    fn disjoint_cliques_are_recovered(sizes in prop::collection::vec(3usize..9, 1..6), seed in any::<u64>()) {
        let (g, planted) = disjoint_cliques(&sizes);
        for algorithm in Algorithm::ALL {
            let p = Detector::new(algorithm, seed).detect(&g).unwrap();
            prop_assert_eq!(adjusted_rand_index(&planted, &p).unwrap(), 1.0);
        }
    }

    #[test]
    fn elite_selection_invariants(seed in any::<u64>(), omega in 1usize..40) {
        let pts = common::random_points(2 * omega, &mut rng_from(seed));
        let sel = elite_indices(&pts, omega).unwrap();
        prop_assert_eq!(sel.len(), omega);
        let mut sorted = sel.clone();
        sorted.sort_unstable();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), omega);
        prop_assert!(sel.iter().all(|&i| i < 2 * omega));
        let fronts = fast_nondominated_sort(&pts);
        let mut room = omega;
        for front in fronts {
            if front.len() <= room {
                prop_assert!(front.iter().all(|i| sel.contains(i)));
                room -= front.len();
                continue;
            }
            if room > 0 {
                let kept: Vec<FitnessPoint> = front.iter().filter(|i| sel.contains(i)).map(|&i| pts[i]).collect();
                let best = |f: fn(&FitnessPoint) -> f64, set: &[FitnessPoint]| set.iter().map(f).fold(f64::NEG_INFINITY, f64::max);
                let all: Vec<FitnessPoint> = front.iter().map(|&i| pts[i]).collect();
                if room >= 2 {
                    prop_assert_eq!(best(|p| p.dari, &kept), best(|p| p.dari, &all));
                    prop_assert_eq!(best(|p| p.dat, &kept), best(|p| p.dat, &all));
                }
            }
            break;
        }
    }

    #[test]
    fn crowding_is_symmetric_on_lines(k in 3usize..30) {
        let line: Vec<FitnessPoint> = (0..k)
            .map(|i| FitnessPoint::new(i as f64 / k as f64, 1.0 - i as f64 / k as f64))
            .collect();
        let d = crowding_distance(&line);
        prop_assert!(d[0].is_infinite() && d[k - 1].is_infinite());
        for w in d[1..k - 1].windows(2) {
            prop_assert!((w[0] - w[1]).abs() < 1e-9);
        }
    }
}

#[test]
fn planted_chain_is_recovered() {
    let spec = CommunitySpec::new(vec![100, 50, 25, 15, 10]).unwrap();
    let (g, planted) = generate_chain_of_cliques(&spec);
    for seed in 0..3 {
        for algorithm in [Algorithm::Louvain, Algorithm::LabelPropagation] {
            let p = Detector::new(algorithm, seed).detect(&g).unwrap();
            assert_eq!(adjusted_rand_index(&planted, &p).unwrap(), 1.0, "{algorithm} seed {seed}");
        }
    }
}

#[test]
fn two_triangles_match_exhaustive_optimum() {
    let g = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
    // every labelling with labels < 6 covers all set partitions of 6 nodes
    let mut best = f64::NEG_INFINITY;
    let mut labels = [0usize; 6];
    loop {
        best = best.max(common::modularity_by_pairs(&g, &labels));
        let mut i = 0;
        while i < 6 {
            labels[i] += 1;
            if labels[i] < 6 {
                break;
            }
            labels[i] = 0;
            i += 1;
        }
        if i == 6 {
            break;
        }
    }
    for algorithm in Algorithm::ALL {
        let p = Detector::new(algorithm, 4).detect(&g).unwrap();
        assert!((modularity(&g, &p).unwrap() - best).abs() < 1e-12);
    }
}

#[test]
fn karate_fast_newman_quality() {
    let g = ucd::datasets::karate();
    let p = Detector::new(Algorithm::FastNewman, 0).detect(&g).unwrap();
    assert!(modularity(&g, &p).unwrap() >= 0.35);
}
