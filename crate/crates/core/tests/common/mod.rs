//! Brute-force reference implementations shared by the integration tests.

#![allow(dead_code)]

use rand::Rng as _;
use ucd::graph::Graph;
use ucd::metrics::FitnessPoint;
use ucd::rng::Rng;

/// `Q = 1/2m * sum_ij (A_ij - k_i k_j / 2m) [c_i == c_j]` over all ordered pairs.
pub fn modularity_by_pairs(g: &Graph, labels: &[usize]) -> f64 {
    let n = g.node_count();
    let two_m = 2.0 * g.edge_count() as f64;
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            if labels[i] != labels[j] {
                continue;
            }
            let a = if g.has_edge(i, j) { 1.0 } else { 0.0 };
            q += a - (g.degree(i) * g.degree(j)) as f64 / two_m;
        }
    }
    q / two_m
}

/// ARI from the pair confusion counts of all unordered node pairs.
pub fn ari_by_pairs(x: &[usize], y: &[usize]) -> f64 {
    let n = x.len();
    let (mut n11, mut n10, mut n01, mut n00) = (0i64, 0i64, 0i64, 0i64);
    for i in 0..n {
        for j in i + 1..n {
            match (x[i] == x[j], y[i] == y[j]) {
                (true, true) => n11 += 1,
                (true, false) => n10 += 1,
                (false, true) => n01 += 1,
                (false, false) => n00 += 1,
            }
        }
    }
    let num = 2 * (n11 * n00 - n10 * n01);
    let den = (n11 + n01) * (n01 + n00) + (n11 + n10) * (n10 + n00);
    if den == 0 {
        1.0
    } else {
        num as f64 / den as f64
    }
}

/// Fronts by repeatedly removing every point no remaining point dominates.
pub fn peel_fronts(points: &[FitnessPoint]) -> Vec<Vec<usize>> {
    let dom = |a: &FitnessPoint, b: &FitnessPoint| {
        a.dari >= b.dari && a.dat >= b.dat && (a.dari > b.dari || a.dat > b.dat)
    };
    let mut left: Vec<usize> = (0..points.len()).collect();
    let mut fronts = Vec::new();
    while !left.is_empty() {
        let front: Vec<usize> = left
            .iter()
            .copied()
            .filter(|&i| !left.iter().any(|&j| dom(&points[j], &points[i])))
            .collect();
        left.retain(|i| !front.contains(i));
        fronts.push(front);
    }
    fronts
}

/// Area of the union of the boxes `[0, dari] x [0, dat]`, by coordinate
/// compression.
pub fn union_area(points: &[FitnessPoint]) -> f64 {
    let mut xs: Vec<f64> = points.iter().map(|p| p.dari).collect();
    xs.push(0.0);
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    let mut area = 0.0;
    for w in xs.windows(2) {
        let top = points
            .iter()
            .filter(|p| p.dari >= w[1])
            .map(|p| p.dat)
            .fold(0.0, f64::max);
        area += (w[1] - w[0]) * top;
    }
    area
}

/// Erdos-Renyi style graph with at least one edge.
pub fn random_graph(n: usize, p: f64, rng: &mut Rng) -> Graph {
    loop {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        if !edges.is_empty() {
            return Graph::from_edges(n, edges).unwrap();
        }
    }
}

pub fn random_labels(n: usize, k: usize, rng: &mut Rng) -> Vec<usize> {
    (0..n).map(|_| rng.random_range(0..k)).collect()
}

/// Points on a coarse grid so that ties and duplicates are frequent.
pub fn random_points(count: usize, rng: &mut Rng) -> Vec<FitnessPoint> {
    (0..count)
        .map(|_| {
            FitnessPoint::new(
                rng.random_range(0..=20) as f64 / 10.0,
                rng.random_range(0..=10) as f64 / 10.0,
            )
        })
        .collect()
}
