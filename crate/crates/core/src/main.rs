use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ucd::detection::{Algorithm, Detector};
use ucd::experiment::{self, load_graph, Method, RunConfig};
use ucd::metrics::default_budget;
use ucd::synthgen::CommunitySpec;
use ucd::{Error, Result};

/// Degree-preserving community deception experiments.
#[derive(Parser)]
#[command(name = "ucd", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a clique-chain graph and its planted partition.
    Generate {
        /// Community sizes, e.g. "{100,50,25,15,10}".
        #[arg(long)]
        spec: String,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Recompute the clique-chain adjustment table.
    Table1 {
        #[arg(long, default_value = "table1.csv")]
        out: PathBuf,
        #[arg(long, default_value = "lou")]
        detector: Algorithm,
    },
    /// Run one community detector on a graph.
    Detect {
        /// Edge-list path or builtin:karate / builtin:dolphins-standin.
        #[arg(long)]
        dataset: String,
        #[arg(long, default_value = "lou")]
        detector: Algorithm,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Partition CSV to write.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample random rewirings and correlate remaining budget with ARI decrease.
    Correlate {
        #[arg(long)]
        dataset: String,
        #[arg(long, default_value = "lou")]
        detector: Algorithm,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Budget in links; 20% of the links by default.
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, default_value = "correlation.csv")]
        out: PathBuf,
    },
    /// Run an attack (ucd, ucd-min, ucd-max, gaq or random).
    Attack(AttackArgs),
    /// Summarize run manifests.
    Report {
        #[arg(required = true)]
        manifests: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Flags override values read from `--config`.
#[derive(Args)]
struct AttackArgs {
    /// TOML run configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    dataset: Option<String>,
    #[arg(long)]
    generator: Option<String>,
    #[arg(long)]
    detector: Option<Algorithm>,
    #[arg(long)]
    method: Option<Method>,
    #[arg(long)]
    omega: Option<usize>,
    #[arg(long)]
    p_c: Option<f64>,
    #[arg(long)]
    p_m: Option<f64>,
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long)]
    iterations: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl AttackArgs {
    fn resolve(self) -> Result<RunConfig> {
        let mut c = match &self.config {
            Some(path) => RunConfig::read(path)?,
            None => RunConfig::default(),
        };
        if self.dataset.is_some() {
            c.dataset = self.dataset;
            c.generator = None;
        }
        if self.generator.is_some() {
            c.generator = self.generator;
            c.dataset = None;
        }
        c.detector = self.detector.unwrap_or(c.detector);
        c.method = self.method.unwrap_or(c.method);
        c.omega = self.omega.unwrap_or(c.omega);
        c.p_c = self.p_c.unwrap_or(c.p_c);
        c.p_m = self.p_m.unwrap_or(c.p_m);
        c.budget = self.budget.or(c.budget);
        c.iterations = self.iterations.unwrap_or(c.iterations);
        c.seed = self.seed.unwrap_or(c.seed);
        c.output = self.out.unwrap_or(c.output);
        Ok(c)
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate { spec, out } => {
            let spec: CommunitySpec = spec.parse().map_err(|e: Error| Error::Config(e.to_string()))?;
            let (edges, partition) = experiment::generate(&spec, &out)?;
            println!("wrote {} and {}", edges.display(), partition.display());
        }
        Command::Table1 { out, detector } => {
            for r in experiment::table1(detector, &out)? {
                let ari = r.ari.map_or("-".into(), |a| format!("{a:.4}"));
                println!("{:<28} n={:<4} Q={:.4} ARI={ari}", r.operation_label(), r.node_count, r.modularity);
            }
            println!("wrote {}", out.display());
        }
        Command::Detect { dataset, detector, seed, out } => {
            let loaded = load_graph(&dataset)?;
            let d = experiment::detect(&loaded, Detector::new(detector, seed), out.as_deref())?;
            println!(
                "{detector}: {} communities, modularity {:.4}",
                d.partition.community_count(),
                d.modularity
            );
            for (i, c) in d.partition.communities().iter().enumerate() {
                println!("  {i}: {c:?}");
            }
        }
        Command::Correlate { dataset, detector, samples, seed, budget, out } => {
            let g = load_graph(&dataset)?.graph;
            let t = budget.unwrap_or_else(|| default_budget(g.edge_count()));
            let rows = experiment::correlation_samples(&g, detector, samples, t, seed)?;
            let tag = format!("correlate:{dataset}:{detector}:{samples}:{t}:{seed}");
            experiment::write_correlation(&out, &rows, &tag, seed)?;
            let dat: Vec<f64> = rows.iter().map(|r| r.dat).collect();
            let dari: Vec<f64> = rows.iter().map(|r| r.dari).collect();
            match experiment::spearman(&dat, &dari) {
                Ok((rho, p)) => println!("spearman rho={rho:.4} p={p:.3e} over {} samples", rows.len()),
                Err(_) => println!("{} samples (too few for a correlation)", rows.len()),
            }
            println!("wrote {}", out.display());
        }
        Command::Attack(args) => {
            let config = args.resolve()?;
            let m = experiment::attack(&config)?;
            println!(
                "{} on {} nodes / {} links, T={}: hypervolume {:.4}, {} non-dominated points",
                m.method, m.graph.nodes, m.graph.links, m.graph.budget, m.summary.hypervolume, m.summary.diversity
            );
            println!("wrote {}", config.output.join("manifest.json").display());
        }
        Command::Report { manifests, out } => {
            for r in experiment::report(&manifests, out.as_deref())? {
                println!(
                    "{:<8} {:<4} seed={:<6} hv={:.4} diversity={} {}",
                    r.method, r.detector, r.seed, r.hypervolume, r.diversity, r.manifest
                );
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
