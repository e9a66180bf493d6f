use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::config::{Method, RunConfig};
use crate::error::Result;
use crate::graph::Partition;
use crate::metrics::FitnessPoint;
use crate::moo::{ArchiveEntry, IterationStats};
use crate::perturbation::{Individual, RewiringMove};

pub const MANIFEST_SCHEMA: &str = "ucd-run-manifest/v1";

/// Versioned column layouts of every CSV the tool writes.
pub mod schema {
    pub const FRONT: (&str, &[&str]) = (
        "ucd-front/v1",
        &["dari", "dat", "modularity", "changed_links", "moves", "iteration"],
    );
    pub const HYPERVOLUME: (&str, &[&str]) = (
        "ucd-hypervolume/v1",
        &["iteration", "hypervolume", "front_size", "best_dari", "best_dat"],
    );
    pub const MODULARITY: (&str, &[&str]) = (
        "ucd-modularity/v1",
        &["iteration", "left", "center", "right"],
    );
    pub const GAQ: (&str, &[&str]) = (
        "ucd-gaq/v1",
        &["budget", "dari", "dat", "modularity_decrease", "removed", "added"],
    );
    pub const GAQ_TRACE: (&str, &[&str]) = ("ucd-gaq-trace/v1", &["budget", "generation", "best_fitness"]);
    pub const CORRELATION: (&str, &[&str]) = (
        "ucd-correlation/v1",
        &["sample", "moves", "changed_links", "dat", "dari"],
    );
    pub const TABLE1: (&str, &[&str]) = ("ucd-table1/v1", &["operation", "n", "sizes", "modularity", "ari"]);
    pub const REPORT: (&str, &[&str]) = (
        "ucd-report/v1",
        &["manifest", "method", "detector", "seed", "hypervolume", "diversity", "archive_size"],
    );
    pub const PARTITION: (&str, &[&str]) = ("ucd-partition/v1", &["node", "label", "community"]);
}

/// Writes a CSV whose first line is a `#` comment carrying the
/// configuration hash, the seed and the schema tag.
pub fn write_csv(
    path: &Path,
    config_hash: &str,
    seed: u64,
    schema: (&str, &[&str]),
    rows: impl IntoIterator<Item = Vec<String>>,
) -> Result<()> {
    let mut file = BufWriter::new(File::create(path)?);
    writeln!(file, "# config_hash={config_hash},seed={seed},schema={}", schema.0)?;
    let mut w = csv::Writer::from_writer(file);
    w.write_record(schema.1)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// Full-precision float formatting shared by every output.
pub fn num(x: f64) -> String {
    format!("{x}")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Seeds {
    pub run: u64,
    pub ground_truth_detector: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphInfo {
    pub nodes: usize,
    pub links: usize,
    pub budget: usize,
    /// Original node names by dense id, for labeled inputs.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub node_labels: Option<Vec<String>>,
}

/// An archived or final-front solution with its replayable move list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub dari: f64,
    pub dat: f64,
    pub modularity: f64,
    pub changed_links: usize,
    pub iteration: Option<usize>,
    pub moves: Vec<RewiringMove>,
}

impl Solution {
    pub fn from_entry(e: &ArchiveEntry) -> Self {
        Solution {
            iteration: Some(e.iteration),
            ..Solution::from_individual(&e.individual)
        }
    }

    pub fn from_individual(ind: &Individual) -> Self {
        let f = ind.fitness.unwrap_or(FitnessPoint::ORIGIN);
        Solution {
            dari: f.dari,
            dat: f.dat,
            modularity: ind.modularity.unwrap_or(f64::NAN),
            changed_links: ind.changed_links(),
            iteration: None,
            moves: ind.moves().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaqPoint {
    pub budget: usize,
    pub dari: f64,
    pub dat: f64,
    pub modularity_decrease: f64,
    pub removed: Vec<[usize; 2]>,
    pub added: Vec<[usize; 2]>,
    pub trace: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub hypervolume: f64,
    pub diversity: usize,
    pub archive_size: usize,
    pub evaluations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub created_unix_secs: u64,
    pub tool_version: String,
}

/// Everything a run wrote, in one JSON document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub schema: String,
    pub method: Method,
    pub config: RunConfig,
    pub config_hash: String,
    pub seeds: Seeds,
    pub graph: GraphInfo,
    pub ground_truth: Partition,
    pub ground_truth_modularity: f64,
    pub iterations: Vec<IterationStats>,
    pub archive: Vec<Solution>,
    pub final_front: Vec<Solution>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub gaq: Vec<GaqPoint>,
    pub summary: Summary,
    pub metadata: Metadata,
}

impl Manifest {
    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        std::fs::write(path, text)?;
        Ok(())
    }

    /// The manifest as JSON without the metadata block, for reproducibility checks.
    pub fn reproducible_json(&self) -> Result<String> {
        let mut v = serde_json::to_value(self)?;
        v.as_object_mut().expect("object").remove("metadata");
        Ok(serde_json::to_string(&v)?)
    }
}

impl Metadata {
    pub fn now() -> Self {
        let secs = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map_or(0, |d| d.as_secs());
        Metadata {
            created_unix_secs: secs,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

pub(crate) fn iteration_rows(history: &[IterationStats]) -> (Vec<Vec<String>>, Vec<Vec<String>>) {
    let hv = history
        .iter()
        .map(|s| {
            vec![
                s.iteration.to_string(),
                num(s.hypervolume),
                s.front_size.to_string(),
                num(s.best_dari),
                num(s.best_dat),
            ]
        })
        .collect();
    let q = history
        .iter()
        .map(|s| {
            vec![
                s.iteration.to_string(),
                num(s.modularity[0]),
                num(s.modularity[1]),
                num(s.modularity[2]),
            ]
        })
        .collect();
    (hv, q)
}
