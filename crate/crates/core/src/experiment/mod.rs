//! Experiment orchestration behind the command-line tool: run
//! configuration, attack runs, correlation sampling and file output.

mod config;
mod output;
mod stats;

pub use config::{load_graph, LoadedGraph, Method, RunConfig};
pub use output::{
    schema, write_csv, GaqPoint, GraphInfo, Manifest, Metadata, Seeds, Solution, Summary,
    MANIFEST_SCHEMA,
};
pub use stats::{average_ranks, spearman};

use std::fs;
use std::path::{Path, PathBuf};

use rand::Rng as _;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::baselines::run_gaq;
use crate::detection::{Algorithm, Detector};
use crate::error::{Error, Result};
use crate::graph::{Graph, Partition};
use crate::metrics::{dari, dat, dat_from_changes, front_diversity, modularity};
use crate::moo::{run_random_search, run_ucd, AttackConfig, AttackOutcome};
use crate::perturbation::{has_any_move, sample_rewiring, select_target, BiasMode, Individual};
use crate::rng::{derive_seed, stream};
use crate::synthgen::{adjustment_table, generate_chain_of_cliques, CommunitySpec, StudyRow};
use output::{iteration_rows, num};

fn digest(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Writes `edges.txt` (one link per line) and `partition.txt` (`node community`
/// per line) for a clique chain.
pub fn generate(spec: &CommunitySpec, out_dir: &Path) -> Result<(PathBuf, PathBuf)> {
    fs::create_dir_all(out_dir)?;
    let (g, p) = generate_chain_of_cliques(spec);
    let edges = out_dir.join("edges.txt");
    let partition = out_dir.join("partition.txt");
    fs::write(&edges, g.to_edge_list())?;
    let lines: String = p
        .labels()
        .iter()
        .enumerate()
        .map(|(v, c)| format!("{v} {c}\n"))
        .collect();
    fs::write(&partition, lines)?;
    Ok((edges, partition))
}

/// Computes the clique-chain adjustment table and writes it as CSV.
pub fn table1(detector: Algorithm, out: &Path) -> Result<Vec<StudyRow>> {
    let rows = adjustment_table(&Detector::new(detector, 0))?;
    write_csv(
        out,
        &digest(&format!("table1:{detector}")),
        0,
        schema::TABLE1,
        rows.iter().map(|r| {
            vec![
                r.operation_label().to_string(),
                r.node_count.to_string(),
                r.sizes.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "),
                format!("{:.4}", r.modularity),
                r.ari.map_or(String::new(), |a| format!("{a:.4}")),
            ]
        }),
    )?;
    Ok(rows)
}

/// Detection result of the `detect` command.
#[derive(Debug, Clone)]
pub struct Detection {
    pub partition: Partition,
    pub modularity: f64,
}

/// Runs one detector and optionally writes the partition as CSV.
pub fn detect(
    loaded: &LoadedGraph,
    detector: Detector,
    out: Option<&Path>,
) -> Result<Detection> {
    let partition = detector.detect(&loaded.graph)?;
    let q = modularity(&loaded.graph, &partition)?;
    if let Some(path) = out {
        let name = |v: usize| {
            loaded
                .labels
                .as_ref()
                .map_or_else(|| v.to_string(), |l| l[v].clone())
        };
        write_csv(
            path,
            &digest(&format!("detect:{}:{}", detector.algorithm, detector.seed)),
            detector.seed,
            schema::PARTITION,
            partition
                .labels()
                .iter()
                .enumerate()
                .map(|(v, c)| vec![v.to_string(), name(v), c.to_string()]),
        )?;
    }
    Ok(Detection { partition, modularity: q })
}

/// One random perturbation scored against the clean-graph partition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrelationSample {
    pub sample: usize,
    pub moves: usize,
    pub changed_links: usize,
    pub dat: f64,
    pub dari: f64,
}

/// Draws `samples` independent random rewirings, each with a move count
/// uniform in `[0, T / 4]`, and scores them with one pinned detector seed.
pub fn correlation_samples(
    g: &Graph,
    detector: Algorithm,
    samples: usize,
    budget: usize,
    seed: u64,
) -> Result<Vec<CorrelationSample>> {
    if samples == 0 {
        return Err(Error::Config("at least one sample is required".into()));
    }
    if !has_any_move(g) {
        return Err(Error::Unperturbable);
    }
    let det = Detector::new(detector, derive_seed(seed, &[0x6774]));
    let ground_truth = det.detect(g)?;
    let max_moves = budget / 4;
    (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream(seed, &[1, i as u64]);
            let wanted = rng.random_range(0..=max_moves);
            let mut ind = Individual::unperturbed(g);
            let mut tries = 0;
            while ind.moves().len() < wanted && tries < 50 * wanted {
                tries += 1;
                let Some(c) = select_target(ind.graph(), BiasMode::Uniform, &mut rng) else {
                    break;
                };
                if let Some(m) = sample_rewiring(ind.graph(), c, &mut rng)? {
                    ind.push_move(m)?;
                }
            }
            Ok(CorrelationSample {
                sample: i,
                moves: ind.moves().len(),
                changed_links: ind.changed_links(),
                dat: dat_from_changes(ind.changed_links(), budget)?,
                dari: dari(&ground_truth, &det.detect(ind.graph())?)?,
            })
        })
        .collect()
}

/// Writes correlation samples as CSV.
pub fn write_correlation(path: &Path, samples: &[CorrelationSample], tag: &str, seed: u64) -> Result<()> {
    write_csv(
        path,
        &digest(tag),
        seed,
        schema::CORRELATION,
        samples.iter().map(|s| {
            vec![
                s.sample.to_string(),
                s.moves.to_string(),
                s.changed_links.to_string(),
                num(s.dat),
                num(s.dari),
            ]
        }),
    )
}

/// Runs the configured attack, writes its files into `config.output` and
/// returns the manifest.
///
/// UCD-family and random runs write `manifest.json`, `front.csv`,
/// `hypervolume.csv` and `modularity.csv`; GAQ runs write `manifest.json`,
/// `gaq.csv` and `gaq_trace.csv`.
pub fn attack(config: &RunConfig) -> Result<Manifest> {
    let loaded = config.graph()?;
    let g = &loaded.graph;
    let attack_config = config.attack_config(g);
    attack_config.validate()?;
    let hash = config.hash();
    fs::create_dir_all(&config.output)?;
    let graph_info = GraphInfo {
        nodes: g.node_count(),
        links: g.edge_count(),
        budget: attack_config.budget,
        node_labels: loaded.labels.clone(),
    };
    let seeds = Seeds {
        run: config.seed,
        ground_truth_detector: attack_config.ground_truth_detector().seed,
    };
    let manifest = match config.method {
        Method::Gaq => gaq_manifest(config, g, &attack_config, &hash, seeds, graph_info)?,
        method => {
            let outcome = if method == Method::Random {
                run_random_search(g, &attack_config)?
            } else {
                run_ucd(g, &attack_config)?
            };
            ucd_manifest(config, &outcome, &hash, seeds, graph_info)?
        }
    };
    manifest.write(config.output.join("manifest.json"))?;
    Ok(manifest)
}

fn ucd_manifest(
    config: &RunConfig,
    outcome: &AttackOutcome,
    hash: &str,
    seeds: Seeds,
    graph: GraphInfo,
) -> Result<Manifest> {
    let archive: Vec<Solution> = outcome.archive.entries().iter().map(Solution::from_entry).collect();
    write_csv(
        &config.output.join("front.csv"),
        hash,
        config.seed,
        schema::FRONT,
        archive.iter().map(|s| {
            vec![
                num(s.dari),
                num(s.dat),
                num(s.modularity),
                s.changed_links.to_string(),
                s.moves.len().to_string(),
                s.iteration.map_or(String::new(), |i| i.to_string()),
            ]
        }),
    )?;
    let (hv_rows, q_rows) = iteration_rows(&outcome.history);
    write_csv(&config.output.join("hypervolume.csv"), hash, config.seed, schema::HYPERVOLUME, hv_rows)?;
    write_csv(&config.output.join("modularity.csv"), hash, config.seed, schema::MODULARITY, q_rows)?;
    Ok(Manifest {
        schema: MANIFEST_SCHEMA.into(),
        method: config.method,
        config: config.clone(),
        config_hash: hash.into(),
        seeds,
        graph,
        ground_truth: outcome.ground_truth.clone(),
        ground_truth_modularity: outcome.ground_truth_modularity,
        iterations: outcome.history.clone(),
        summary: Summary {
            hypervolume: outcome.archive.hypervolume(),
            diversity: front_diversity(&outcome.archive.points()),
            archive_size: archive.len(),
            evaluations: outcome.evaluations,
        },
        archive,
        final_front: outcome.final_front.iter().map(Solution::from_individual).collect(),
        gaq: Vec::new(),
        metadata: Metadata::now(),
    })
}

/// Budgets of the three GAQ representatives: one link, half and all of `T`.
pub fn gaq_budgets(t: usize) -> Vec<usize> {
    let mut b = vec![1, t / 2, t];
    b.retain(|&x| x >= 1);
    b.dedup();
    b
}

fn gaq_manifest(
    config: &RunConfig,
    g: &Graph,
    attack_config: &AttackConfig,
    hash: &str,
    seeds: Seeds,
    graph: GraphInfo,
) -> Result<Manifest> {
    let t = attack_config.budget;
    let gaq_config = config.gaq_config();
    let scorer = attack_config.ground_truth_detector();
    let ground_truth = scorer.detect(g)?;
    let mut points = Vec::new();
    for budget in gaq_budgets(t) {
        let out = run_gaq(g, budget, &gaq_config)?;
        let detected = scorer.detect(&out.perturbed)?;
        let pair = |e: &crate::graph::Edge| [e.u(), e.v()];
        points.push(GaqPoint {
            budget,
            dari: dari(&ground_truth, &detected)?,
            dat: dat(g, &out.perturbed, t)?,
            modularity_decrease: out.best_fitness,
            removed: out.best.deletions.iter().map(pair).collect(),
            added: out.best.additions.iter().map(pair).collect(),
            trace: out.trace,
        });
    }
    write_csv(
        &config.output.join("gaq.csv"),
        hash,
        config.seed,
        schema::GAQ,
        points.iter().map(|p| {
            vec![
                p.budget.to_string(),
                num(p.dari),
                num(p.dat),
                num(p.modularity_decrease),
                p.removed.len().to_string(),
                p.added.len().to_string(),
            ]
        }),
    )?;
    write_csv(
        &config.output.join("gaq_trace.csv"),
        hash,
        config.seed,
        schema::GAQ_TRACE,
        points.iter().flat_map(|p| {
            p.trace
                .iter()
                .enumerate()
                .map(|(i, f)| vec![p.budget.to_string(), (i + 1).to_string(), num(*f)])
                .collect::<Vec<_>>()
        }),
    )?;
    let fitness: Vec<_> = points
        .iter()
        .filter(|p| p.dat >= 0.0)
        .map(|p| crate::metrics::FitnessPoint::new(p.dari, p.dat))
        .collect();
    Ok(Manifest {
        schema: MANIFEST_SCHEMA.into(),
        method: Method::Gaq,
        config: config.clone(),
        config_hash: hash.into(),
        seeds,
        graph,
        ground_truth_modularity: modularity(g, &ground_truth)?,
        ground_truth,
        iterations: Vec::new(),
        archive: Vec::new(),
        final_front: Vec::new(),
        summary: Summary {
            hypervolume: crate::metrics::hypervolume_2d(&fitness, crate::metrics::FitnessPoint::ORIGIN)?,
            diversity: front_diversity(&fitness),
            archive_size: 0,
            evaluations: 0,
        },
        gaq: points,
        metadata: Metadata::now(),
    })
}

/// One line of a multi-run report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub manifest: String,
    pub method: Method,
    pub detector: Algorithm,
    pub seed: u64,
    pub hypervolume: f64,
    pub diversity: usize,
    pub archive_size: usize,
}

/// Summarizes run manifests, optionally writing the summary as CSV.
pub fn report(manifests: &[PathBuf], out: Option<&Path>) -> Result<Vec<ReportRow>> {
    let mut rows = Vec::with_capacity(manifests.len());
    for path in manifests {
        let m = Manifest::read(path)?;
        rows.push(ReportRow {
            manifest: path.display().to_string(),
            method: m.method,
            detector: m.config.detector,
            seed: m.config.seed,
            hypervolume: m.summary.hypervolume,
            diversity: m.summary.diversity,
            archive_size: m.summary.archive_size,
        });
    }
    if let Some(out) = out {
        let joined: Vec<String> = rows.iter().map(|r| r.manifest.clone()).collect();
        write_csv(
            out,
            &digest(&joined.join("\n")),
            0,
            schema::REPORT,
            rows.iter().map(|r| {
                vec![
                    r.manifest.clone(),
                    r.method.to_string(),
                    r.detector.to_string(),
                    r.seed.to_string(),
                    num(r.hypervolume),
                    r.diversity.to_string(),
                    r.archive_size.to_string(),
                ]
            }),
        )?;
    }
    Ok(rows)
}
