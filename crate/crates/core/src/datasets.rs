//! Small graphs bundled with the crate.

use crate::graph::{load_edge_list, Graph};

const KARATE: &str = include_str!("../data/karate.txt");
const DOLPHINS_STANDIN: &str = include_str!("../data/dolphins_standin.txt");

/// Zachary's karate club: 34 nodes, 78 links.
pub fn karate() -> Graph {
    load_edge_list(KARATE).expect("bundled edge list parses")
}

/// A seeded planted-partition graph with the size of the dolphin social
/// network (62 nodes, 159 links, four blocks). Used where the real network
/// is not available.
pub fn dolphins_standin() -> Graph {
    load_edge_list(DOLPHINS_STANDIN).expect("bundled edge list parses")
}
