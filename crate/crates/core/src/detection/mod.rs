//! The community detectors under attack: Louvain, fast Newman (CNM greedy
//! agglomeration) and asynchronous label propagation.

mod fast_newman;
mod label_propagation;
mod louvain;

pub use fast_newman::fast_newman;
pub use label_propagation::{label_propagation, label_propagation_detailed, LpaOutcome, MAX_SWEEPS};
pub use louvain::louvain;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Partition};

/// Which detection algorithm to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Algorithm {
    #[serde(rename = "lou")]
    Louvain,
    #[serde(rename = "fn")]
    FastNewman,
    #[serde(rename = "lpa")]
    LabelPropagation,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [
        Algorithm::Louvain,
        Algorithm::FastNewman,
        Algorithm::LabelPropagation,
    ];

    pub fn is_deterministic(&self) -> bool {
        matches!(self, Algorithm::FastNewman)
    }

    pub fn short_name(&self) -> &'static str {
        match self {
            Algorithm::Louvain => "lou",
            Algorithm::FastNewman => "fn",
            Algorithm::LabelPropagation => "lpa",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.short_name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "lou" | "louvain" => Ok(Algorithm::Louvain),
            "fn" | "fast-newman" | "fastnewman" | "greedy" => Ok(Algorithm::FastNewman),
            "lpa" | "label-propagation" => Ok(Algorithm::LabelPropagation),
            other => Err(Error::Config(format!("unknown detector {other:?}"))),
        }
    }
}

/// A detection algorithm together with the seed that fixes its randomness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Detector {
    pub algorithm: Algorithm,
    pub seed: u64,
}

impl Detector {
    pub fn new(algorithm: Algorithm, seed: u64) -> Self {
        Detector { algorithm, seed }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Detector { seed, ..self }
    }

    pub fn detect(&self, g: &Graph) -> Result<Partition> {
        match self.algorithm {
            Algorithm::Louvain => louvain(g, self.seed),
            Algorithm::FastNewman => fast_newman(g),
            Algorithm::LabelPropagation => label_propagation(g, self.seed),
        }
    }
}

pub(crate) fn require_edges(g: &Graph) -> Result<()> {
    if g.edge_count() == 0 {
        Err(Error::DegenerateGraph(
            "community detection needs at least one edge".into(),
        ))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_names() {
        assert_eq!("LOU".parse::<Algorithm>().unwrap(), Algorithm::Louvain);
        assert_eq!("fn".parse::<Algorithm>().unwrap(), Algorithm::FastNewman);
        assert_eq!("lpa".parse::<Algorithm>().unwrap(), Algorithm::LabelPropagation);
        assert!("spectral".parse::<Algorithm>().is_err());
    }

    #[test]
    fn empty_graph_is_degenerate() {
        let g = Graph::empty(4);
        for alg in Algorithm::ALL {
            assert!(matches!(
                Detector::new(alg, 1).detect(&g),
                Err(Error::DegenerateGraph(_))
            ));
        }
    }
}
