use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::baselines::GaqConfig;
use crate::datasets;
use crate::detection::Algorithm;
use crate::error::{Error, Result};
use crate::graph::{load_edge_list, load_labeled_edge_list, Graph};
use crate::metrics::default_budget;
use crate::moo::AttackConfig;
use crate::perturbation::BiasMode;
use crate::synthgen::{generate_chain_of_cliques, CommunitySpec};

/// Attack method run by the `attack` command.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum Method {
    #[default]
    #[serde(rename = "ucd")]
    Ucd,
    #[serde(rename = "ucd-min")]
    UcdMin,
    #[serde(rename = "ucd-max")]
    UcdMax,
    #[serde(rename = "gaq")]
    Gaq,
    #[serde(rename = "random")]
    Random,
}

impl Method {
    pub const ALL: [Method; 5] = [Method::Ucd, Method::UcdMin, Method::UcdMax, Method::Gaq, Method::Random];

    pub fn name(&self) -> &'static str {
        match self {
            Method::Ucd => "ucd",
            Method::UcdMin => "ucd-min",
            Method::UcdMax => "ucd-max",
            Method::Gaq => "gaq",
            Method::Random => "random",
        }
    }

    pub fn bias(&self) -> BiasMode {
        match self {
            Method::UcdMin => BiasMode::MinDegree,
            Method::UcdMax => BiasMode::MaxDegree,
            _ => BiasMode::Uniform,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::Config(format!("unknown method {s:?}")))
    }
}

/// Everything needed to reproduce one attack run.
///
/// Read from TOML; unspecified fields take the documented defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Edge-list path, or `builtin:karate` / `builtin:dolphins-standin`.
    pub dataset: Option<String>,
    /// Clique-chain sizes such as `{100,50,25,15,10}`, instead of a dataset.
    pub generator: Option<String>,
    pub detector: Algorithm,
    pub method: Method,
    pub omega: usize,
    pub p_c: f64,
    pub p_m: f64,
    /// Budget in links; 20% of the link count when absent.
    pub budget: Option<usize>,
    pub iterations: usize,
    pub seed: u64,
    /// Output directory. Not part of the configuration hash.
    pub output: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            dataset: None,
            generator: None,
            detector: Algorithm::Louvain,
            method: Method::Ucd,
            omega: 30,
            p_c: 0.5,
            p_m: 0.8,
            budget: None,
            iterations: 500,
            seed: 1,
            output: PathBuf::from("ucd-out"),
        }
    }
}

/// A loaded input graph.
#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub graph: Graph,
    /// Original node names, when the file used non-numeric labels.
    pub labels: Option<Vec<String>>,
}

/// Loads an edge list. Numeric ids are used as-is; any other tokens are
/// mapped to dense ids in order of first appearance.
pub fn load_graph(source: &str) -> Result<LoadedGraph> {
    match source {
        "builtin:karate" => {
            return Ok(LoadedGraph { graph: datasets::karate(), labels: None });
        }
        "builtin:dolphins-standin" => {
            return Ok(LoadedGraph { graph: datasets::dolphins_standin(), labels: None });
        }
        _ => {}
    }
    let text = std::fs::read_to_string(Path::new(source))
        .map_err(|e| std::io::Error::new(e.kind(), format!("{source}: {e}")))?;
    match load_edge_list(&text) {
        Ok(graph) => Ok(LoadedGraph { graph, labels: None }),
        Err(Error::Parse { .. }) => {
            let lg = load_labeled_edge_list(&text)?;
            Ok(LoadedGraph { graph: lg.graph, labels: Some(lg.labels) })
        }
        Err(e) => Err(e),
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path.as_ref()).map_err(|e| {
            Error::Config(format!("cannot read {}: {e}", path.as_ref().display()))
        })?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// SHA-256 over the canonical JSON form, with the output directory blanked.
    pub fn hash(&self) -> String {
        let mut canonical = self.clone();
        canonical.output = PathBuf::new();
        let json = serde_json::to_string(&canonical).expect("config serializes");
        Sha256::digest(json.as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        match (&self.dataset, &self.generator) {
            (Some(_), Some(_)) => {
                return Err(Error::Config("give either a dataset or a generator, not both".into()))
            }
            (None, None) => return Err(Error::Config("no dataset or generator given".into())),
            _ => {}
        }
        if self.iterations == 0 {
            return Err(Error::Config("at least one iteration is required".into()));
        }
        Ok(())
    }

    /// The input graph described by this configuration.
    pub fn graph(&self) -> Result<LoadedGraph> {
        self.validate()?;
        if let Some(spec) = &self.generator {
            let spec: CommunitySpec = spec.parse().map_err(config_error)?;
            return Ok(LoadedGraph { graph: generate_chain_of_cliques(&spec).0, labels: None });
        }
        load_graph(self.dataset.as_deref().expect("validated"))
    }

    pub fn budget_for(&self, g: &Graph) -> usize {
        self.budget.unwrap_or_else(|| default_budget(g.edge_count()))
    }

    pub fn attack_config(&self, g: &Graph) -> AttackConfig {
        AttackConfig {
            omega: self.omega,
            p_c: self.p_c,
            p_m: self.p_m,
            budget: self.budget_for(g),
            max_iterations: self.iterations,
            bias: self.method.bias(),
            detector: self.detector,
            seed: self.seed,
        }
    }

    pub fn gaq_config(&self) -> GaqConfig {
        GaqConfig {
            omega: self.omega,
            p_c: self.p_c,
            p_m: self.p_m,
            max_iterations: self.iterations,
            detector: self.detector,
            seed: self.seed,
        }
    }
}

/// Re-tags an error as a configuration error.
pub(crate) fn config_error(e: Error) -> Error {
    match e {
        Error::Config(_) => e,
        other => Error::Config(other.to_string()),
    }
}
