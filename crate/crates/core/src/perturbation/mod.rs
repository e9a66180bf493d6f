//! Degree-preserving perturbations and the genetic operators built on them.
//!
//! The atom is a [`RewiringMove`]: remove `a-c` and `d-e`, add `c-d` and
//! `a-e`. Every node keeps its degree. An [`Individual`] is an ordered list of
//! such moves replayed on the base graph; crossover and mutation only ever
//! append moves, so any individual can be serialized and replayed exactly.

mod operators;
mod rewire;

pub use operators::{
    crossover, crossover_moves, has_any_move, initialize_population, mutate, mutation_move,
    select_target,
};
pub use rewire::{sample_biased_rewiring, sample_rewiring, MAX_ATTEMPTS};

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::metrics::FitnessPoint;

/// One degree-preserving rewire on nodes `a`, `c`, `d`, `e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "MoveJson", try_from = "MoveJson")]
pub struct RewiringMove {
    pub a: usize,
    pub c: usize,
    pub d: usize,
    pub e: usize,
}

impl RewiringMove {
    pub fn new(a: usize, c: usize, d: usize, e: usize) -> Self {
        RewiringMove { a, c, d, e }
    }

    pub fn removed(&self) -> [Edge; 2] {
        [Edge::new(self.a, self.c), Edge::new(self.d, self.e)]
    }

    pub fn added(&self) -> [Edge; 2] {
        [Edge::new(self.c, self.d), Edge::new(self.a, self.e)]
    }

    /// The move that restores the graph this move was applied to.
    pub fn inverse(&self) -> RewiringMove {
        RewiringMove::new(self.d, self.c, self.a, self.e)
    }

    fn distinct(&self) -> bool {
        let n = [self.a, self.c, self.d, self.e];
        (0..4).all(|i| (i + 1..4).all(|j| n[i] != n[j]))
    }

    /// Checks all preconditions: four distinct nodes, both removed edges
    /// present and both added edges absent.
    pub fn check(&self, g: &Graph) -> Result<()> {
        let n = g.node_count();
        if [self.a, self.c, self.d, self.e].iter().any(|&x| x >= n) {
            return Err(Error::validation(format!("move {self} references a node >= {n}")));
        }
        if !self.distinct() {
            return Err(Error::validation(format!("move {self} repeats a node")));
        }
        for e in self.removed() {
            if !g.has_edge(e.u(), e.v()) {
                return Err(Error::validation(format!("move {self}: edge {e} is absent")));
            }
        }
        for e in self.added() {
            if g.has_edge(e.u(), e.v()) {
                return Err(Error::validation(format!("move {self}: edge {e} already present")));
            }
        }
        Ok(())
    }

    pub fn is_valid_on(&self, g: &Graph) -> bool {
        self.check(g).is_ok()
    }

    /// Applies the move in place after checking its preconditions.
    pub fn apply_to(&self, g: &mut Graph) -> Result<()> {
        self.check(g)?;
        for e in self.removed() {
            g.remove_edge(e.u(), e.v());
        }
        for e in self.added() {
            g.insert_unchecked(e.u(), e.v());
        }
        Ok(())
    }
}

impl fmt::Display for RewiringMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.a, self.c, self.d, self.e)
    }
}

/// Returns `g` with `m` applied. Invalid moves are an error, never skipped.
pub fn apply_move(g: &Graph, m: &RewiringMove) -> Result<Graph> {
    let mut out = g.clone();
    m.apply_to(&mut out)?;
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct MoveJson {
    remove: [[usize; 2]; 2],
    add: [[usize; 2]; 2],
}

impl From<RewiringMove> for MoveJson {
    fn from(m: RewiringMove) -> Self {
        MoveJson {
            remove: [[m.a, m.c], [m.d, m.e]],
            add: [[m.c, m.d], [m.a, m.e]],
        }
    }
}

impl TryFrom<MoveJson> for RewiringMove {
    type Error = String;

    fn try_from(j: MoveJson) -> std::result::Result<Self, String> {
        let [[a, c], [d, e]] = j.remove;
        if j.add != [[c, d], [a, e]] {
            return Err(format!(
                "add {:?} does not match remove {:?} as a rewiring",
                j.add, j.remove
            ));
        }
        Ok(RewiringMove { a, c, d, e })
    }
}

/// Target-node preference of the mutation operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum BiasMode {
    #[default]
    #[serde(rename = "uniform")]
    Uniform,
    /// Low-degree targets preferred, paired with high-degree counterparts.
    #[serde(rename = "min")]
    MinDegree,
    /// High-degree targets preferred, paired with low-degree counterparts.
    #[serde(rename = "max")]
    MaxDegree,
}

impl BiasMode {
    /// Roulette weight of a node with degree `deg` as a mutation target.
    pub fn target_weight(&self, deg: usize, max_degree: usize) -> f64 {
        match self {
            BiasMode::Uniform => 1.0,
            BiasMode::MaxDegree => deg as f64,
            BiasMode::MinDegree => (max_degree - deg + 1) as f64,
        }
    }

    /// Roulette weight of a counterpart node: the target weighting inverted.
    pub fn counterpart_weight(&self, deg: usize, max_degree: usize) -> f64 {
        match self {
            BiasMode::Uniform => 1.0,
            BiasMode::MaxDegree => BiasMode::MinDegree.target_weight(deg, max_degree),
            BiasMode::MinDegree => BiasMode::MaxDegree.target_weight(deg, max_degree),
        }
    }
}

impl FromStr for BiasMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "uniform" | "none" => Ok(BiasMode::Uniform),
            "min" => Ok(BiasMode::MinDegree),
            "max" => Ok(BiasMode::MaxDegree),
            other => Err(Error::Config(format!("unknown bias mode {other:?}"))),
        }
    }
}

/// A candidate attack: moves replayed on the base graph, plus cached results.
#[derive(Debug, Clone)]
pub struct Individual {
    base_id: u64,
    moves: Vec<RewiringMove>,
    perturbed: Graph,
    toggled: BTreeSet<Edge>,
    /// Objectives, once evaluated.
    pub fitness: Option<FitnessPoint>,
    /// Modularity of the detected partition on the perturbed graph, once evaluated.
    pub modularity: Option<f64>,
}

impl Individual {
    pub fn unperturbed(base: &Graph) -> Self {
        Individual {
            base_id: base.fingerprint(),
            moves: Vec::new(),
            perturbed: base.clone(),
            toggled: BTreeSet::new(),
            fitness: None,
            modularity: None,
        }
    }

    /// Replays `moves` on `base`; fails on the first invalid move.
    pub fn from_moves(base: &Graph, moves: &[RewiringMove]) -> Result<Self> {
        let mut ind = Individual::unperturbed(base);
        for m in moves {
            ind.push_move(*m)?;
        }
        Ok(ind)
    }

    pub fn moves(&self) -> &[RewiringMove] {
        &self.moves
    }

    pub fn graph(&self) -> &Graph {
        &self.perturbed
    }

    /// Fingerprint of the base graph this individual was built on.
    pub fn base_id(&self) -> u64 {
        self.base_id
    }

    /// Links differing from the base graph (the attack budget AT used).
    pub fn changed_links(&self) -> usize {
        self.toggled.len()
    }

    /// Every link whose presence differs from the base graph, in sorted order.
    pub fn changed_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.toggled.iter().copied()
    }

    /// The base-graph links removed and the non-links added, net of cancellations.
    pub fn net_changes(&self, base: &Graph) -> (Vec<Edge>, Vec<Edge>) {
        self.toggled
            .iter()
            .partition(|e| base.has_edge(e.u(), e.v()))
    }

    /// Links changed if `m` were appended.
    pub fn changed_links_after(&self, m: &RewiringMove) -> usize {
        let mut count = self.toggled.len() as isize;
        for e in m.removed().into_iter().chain(m.added()) {
            count += if self.toggled.contains(&e) { -1 } else { 1 };
        }
        count as usize
    }

    /// Appends and applies a move, clearing any cached evaluation.
    pub fn push_move(&mut self, m: RewiringMove) -> Result<()> {
        m.apply_to(&mut self.perturbed)?;
        for e in m.removed().into_iter().chain(m.added()) {
            if !self.toggled.remove(&e) {
                self.toggled.insert(e);
            }
        }
        self.moves.push(m);
        self.fitness = None;
        self.modularity = None;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::edge_set_difference_size;

    /// a=0 c=1 d=2 e=3 with a-c and d-e present.
    fn fig3() -> Graph {
        Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap()
    }

    #[test]
    fn apply_flips_four_edges() {
        let g = fig3();
        let m = RewiringMove::new(0, 1, 2, 3);
        let h = apply_move(&g, &m).unwrap();
        assert_eq!(h.edge_count(), g.edge_count());
        assert!(h.has_edge(1, 2) && h.has_edge(0, 3));
        assert!(!h.has_edge(0, 1) && !h.has_edge(2, 3));
        assert_eq!(h.degree_sequence(), g.degree_sequence());
        assert_eq!(edge_set_difference_size(&g, &h).unwrap(), 4);
    }

    #[test]
    fn invalid_moves_error() {
        let g = fig3();
        assert!(apply_move(&g, &RewiringMove::new(0, 2, 1, 3)).is_err());
        assert!(apply_move(&g, &RewiringMove::new(0, 1, 1, 3)).is_err());
        let mut dense = g.clone();
        dense.add_edge(1, 2).unwrap();
        assert!(apply_move(&dense, &RewiringMove::new(0, 1, 2, 3)).is_err());
    }

    #[test]
    fn inverse_restores() {
        let g = fig3();
        let m = RewiringMove::new(0, 1, 2, 3);
        let h = apply_move(&g, &m).unwrap();
        let back = apply_move(&h, &m.inverse()).unwrap();
        assert_eq!(back, g);
        let ind = Individual::from_moves(&g, &[m, m.inverse()]).unwrap();
        assert_eq!(ind.changed_links(), 0);
        assert_eq!(edge_set_difference_size(&g, ind.graph()).unwrap(), 0);
    }

    #[test]
    fn move_json_shape() {
        let m = RewiringMove::new(0, 1, 2, 3);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"remove":[[0,1],[2,3]],"add":[[1,2],[0,3]]}"#);
        let back: RewiringMove = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        let bad = r#"{"remove":[[0,1],[2,3]],"add":[[1,3],[0,2]]}"#;
        assert!(serde_json::from_str::<RewiringMove>(bad).is_err());
    }

    #[test]
    fn toggle_count_tracks_difference() {
        let g = Graph::from_edges(6, [(0, 1), (2, 3), (4, 5), (1, 4)]).unwrap();
        let mut ind = Individual::unperturbed(&g);
        let m = RewiringMove::new(0, 1, 2, 3);
        assert_eq!(ind.changed_links_after(&m), 4);
        ind.push_move(m).unwrap();
        assert_eq!(ind.changed_links_after(&m.inverse()), 0);
        assert_eq!(ind.changed_links(), edge_set_difference_size(&g, ind.graph()).unwrap());
        let (removed, added) = ind.net_changes(&g);
        assert_eq!(removed, vec![Edge::new(0, 1), Edge::new(2, 3)]);
        assert_eq!(added, vec![Edge::new(0, 3), Edge::new(1, 2)]);
    }

    #[test]
    fn bias_weights() {
        assert_eq!(BiasMode::MaxDegree.target_weight(9, 9), 9.0);
        assert_eq!(BiasMode::MinDegree.target_weight(9, 9), 1.0);
        assert_eq!(BiasMode::MinDegree.target_weight(1, 9), 9.0);
        assert_eq!(BiasMode::MaxDegree.counterpart_weight(1, 9), 9.0);
        assert_eq!(BiasMode::Uniform.counterpart_weight(3, 9), 1.0);
    }
}
