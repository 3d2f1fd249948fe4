//! `nfvr` command-line front end.

use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nfvr::eval::{evaluate_features, run_on_graph, sweep, SweepParam};
use nfvr::featurize::{FeatureConfig, Layout};
use nfvr::graph::{load_graph_files, Binning};
use nfvr::models::{ModelKind, ModelSpec};
use nfvr::proclivity::{prone_matrix, ProneOptions};
use nfvr::synth::PlantedPartition;
use nfvr::{AttributedGraph, Error, ExperimentConfig, FeatureMatrix, FeatureMode, GenerativeFunction, Result, SchemaOptions};

#[derive(Parser, Debug)]
#[command(name = "nfvr", version, about = "Attribute prediction with proclivity-weighted neighborhood features")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "PROCLIVITY_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the PRONE matrix of every attribute pair.
    Prone(ProneArgs),
    /// Write the feature matrix and its layout.
    Featurize(FeaturizeArgs),
    /// Run a train/test experiment and report metrics.
    TrainEval(TrainEvalArgs),
    /// Repeat an experiment over values of k or h.
    Sweep(SweepArgs),
    /// Generate a planted-partition graph.
    Synth(SynthArgs),
}

#[derive(Args, Debug, Clone)]
struct GraphArgs {
    /// Edge list: one `u v` pair per line.
    #[arg(long)]
    edges: Option<PathBuf>,
    /// Attribute CSV with a `node` column.
    #[arg(long)]
    attrs: Option<PathBuf>,
    /// Columns forced nominal (comma separated).
    #[arg(long, value_delimiter = ',')]
    nominal: Vec<String>,
    /// Columns forced numeric-continuous (comma separated).
    #[arg(long, value_delimiter = ',')]
    numeric: Vec<String>,
    /// Bins for continuous attributes [default: 5].
    #[arg(long)]
    bins: Option<usize>,
    /// equal-width or equal-frequency [default: equal-width].
    #[arg(long)]
    binning: Option<Binning>,
}

#[derive(Args, Debug)]
struct ProneArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Generative function: square, cube or xlogx.
    #[arg(long = "f", default_value = "xlogx")]
    generative: GenerativeFunction,
    /// Drop the missing level from every mixing matrix.
    #[arg(long)]
    exclude_missing: bool,
    /// Heatmap CSV output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct FeaturizeArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Target attribute name.
    #[arg(long)]
    target: String,
    /// nns, nfvr or nnfvr.
    #[arg(long, default_value = "nfvr")]
    mode: FeatureMode,
    /// Neighborhood depth.
    #[arg(long, default_value_t = 1)]
    h: usize,
    /// Hop weights, one per hop (comma separated).
    #[arg(long, value_delimiter = ',')]
    w: Option<Vec<f64>>,
    /// Generative function: square, cube or xlogx.
    #[arg(long = "f", default_value = "xlogx")]
    generative: GenerativeFunction,
    #[arg(long)]
    exclude_missing: bool,
    /// Skip division by node degree.
    #[arg(long)]
    no_deg_norm: bool,
    /// Feature CSV output (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Layout JSON output [default: <out>.layout.json].
    #[arg(long)]
    layout: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct ExperimentArgs {
    /// ExperimentConfig JSON; flags given alongside override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long)]
    target: Option<String>,
    /// nns, nfvr or nnfvr [default: nfvr].
    #[arg(long)]
    mode: Option<FeatureMode>,
    /// Neighborhood depth [default: 1].
    #[arg(long)]
    h: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    w: Option<Vec<f64>>,
    /// square, cube or xlogx [default: xlogx].
    #[arg(long = "f")]
    generative: Option<GenerativeFunction>,
    /// knn, nb, dt, svm, lr, wvrn or majority [default: knn].
    #[arg(long)]
    model: Option<ModelKind>,
    /// Neighbors for knn [default: 10].
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    nb_smoothing: Option<f64>,
    #[arg(long)]
    svm_c: Option<f64>,
    #[arg(long)]
    svm_epochs: Option<usize>,
    #[arg(long)]
    dt_max_depth: Option<usize>,
    #[arg(long)]
    dt_min_size: Option<usize>,
    /// Fraction of labeled nodes used for training [default: 0.7].
    #[arg(long)]
    train_fraction: Option<f64>,
    /// Seed for splits and learners [default: 42].
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    repetitions: Option<usize>,
    #[arg(long)]
    exclude_missing: bool,
    #[arg(long)]
    no_deg_norm: bool,
}

#[derive(Args, Debug)]
struct TrainEvalArgs {
    #[command(flatten)]
    exp: ExperimentArgs,
    /// Evaluate a feature CSV from `featurize` instead of the graph.
    #[arg(long)]
    features: Option<PathBuf>,
    /// Layout JSON for --features [default: <features>.layout.json].
    #[arg(long)]
    layout: Option<PathBuf>,
    /// Metrics JSON output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    exp: ExperimentArgs,
    /// Parameter to sweep: k or h.
    #[arg(long)]
    param: SweepParam,
    /// Values to try (comma separated).
    #[arg(long, value_delimiter = ',', required = true)]
    values: Vec<usize>,
    /// CSV output (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SynthArgs {
    #[arg(long)]
    nodes: usize,
    #[arg(long, default_value_t = 2)]
    blocks: usize,
    #[arg(long)]
    p_in: f64,
    #[arg(long)]
    p_out: f64,
    #[arg(long, default_value_t = 0)]
    noise_attrs: usize,
    #[arg(long)]
    seed: Option<u64>,
    /// Writes <prefix>.edges and <prefix>.csv.
    #[arg(long)]
    out_prefix: PathBuf,
}

const DEFAULT_SEED: u64 = 42;

fn layout_path(csv: &Path) -> PathBuf {
    csv.with_extension("layout.json")
}

fn schema_options(g: &GraphArgs, base: &SchemaOptions) -> SchemaOptions {
    let mut opts = base.clone();
    opts.nominal.extend(g.nominal.iter().cloned());
    opts.numeric.extend(g.numeric.iter().cloned());
    opts
}

fn required(path: &Option<PathBuf>, flag: &str) -> Result<PathBuf> {
    path.clone().ok_or_else(|| Error::InvalidConfig(format!("--{flag} is required")))
}

fn load(g: &GraphArgs) -> Result<AttributedGraph> {
    let (graph, report) = load_graph_files(&required(&g.edges, "edges")?, &required(&g.attrs, "attrs")?, &schema_options(g, &SchemaOptions::default()))?;
    if report.self_loops > 0 || report.duplicate_edges > 0 {
        log::warn!("dropped {} self-loops and {} duplicate edges", report.self_loops, report.duplicate_edges);
    }
    graph.discretize_all(g.bins.unwrap_or(5), g.binning.unwrap_or_default())
}

fn create(path: &Path) -> Result<File> {
    Ok(File::create(path)?)
}

fn cmd_prone(a: &ProneArgs) -> Result<()> {
    let g = load(&a.graph)?;
    let p = prone_matrix(&g, a.generative, ProneOptions { exclude_missing: a.exclude_missing })?;
    print!("{p}");
    if let Some(out) = &a.out {
        p.write_csv(create(out)?)?;
    }
    Ok(())
}

fn cmd_featurize(a: &FeaturizeArgs) -> Result<()> {
    let g = load(&a.graph)?;
    let target = g.schema().index_of(&a.target)?;
    let mut cfg = FeatureConfig::new(target, a.h, a.mode);
    if let Some(w) = &a.w {
        cfg.hop_weights = w.clone();
    }
    cfg.generative = a.generative;
    cfg.degree_normalize = !a.no_deg_norm;
    cfg.validate(&g)?;
    let p = prone_matrix(&g, a.generative, ProneOptions { exclude_missing: a.exclude_missing })?;
    let fm = nfvr::featurize::featurize_all(&g, &cfg, &p)?;
    match &a.out {
        Some(out) => {
            fm.write_csv(create(out)?)?;
            let layout = a.layout.clone().unwrap_or_else(|| layout_path(out));
            fm.write_layout(create(&layout)?)?;
            eprintln!("wrote {} rows x {} features to {}", fm.len(), fm.dim, out.display());
        }
        None => {
            fm.write_csv(io::stdout().lock())?;
            if let Some(layout) = &a.layout {
                fm.write_layout(create(layout)?)?;
            }
        }
    }
    Ok(())
}

/// Builds the experiment config: JSON file first, then explicit flags.
fn experiment_config(a: &ExperimentArgs) -> Result<ExperimentConfig> {
    let mut cfg = match &a.config {
        Some(path) => serde_json::from_reader(BufReader::new(File::open(path)?))
            .map_err(|e| Error::InvalidConfig(format!("{}: {e}", path.display())))?,
        None => {
            let target = a.target.clone().ok_or_else(|| Error::InvalidConfig("--target is required".into()))?;
            ExperimentConfig::new(&target, FeatureMode::default(), ModelSpec::new(ModelKind::Knn))
        }
    };
    if a.config.is_none() && a.seed.is_none() {
        eprintln!("seed: {DEFAULT_SEED} (default)");
    }
    let g = &a.graph;
    if let Some(p) = &g.edges {
        cfg.edges = p.clone();
    }
    if let Some(p) = &g.attrs {
        cfg.attributes = p.clone();
    }
    cfg.schema = schema_options(g, &cfg.schema);
    if let Some(v) = g.bins {
        cfg.bins = v;
    }
    if let Some(v) = g.binning {
        cfg.binning = v;
    }
    if let Some(v) = &a.target {
        cfg.target = v.clone();
    }
    if let Some(v) = a.mode {
        cfg.mode = v;
    }
    if let Some(v) = a.h {
        cfg.h = v;
    }
    if let Some(v) = &a.w {
        cfg.hop_weights = Some(v.clone());
    }
    if let Some(v) = a.generative {
        cfg.generative = v;
    }
    if let Some(v) = a.model {
        cfg.model.kind = v;
    }
    if let Some(v) = a.k {
        cfg.model.knn_k = v;
    }
    if let Some(v) = a.nb_smoothing {
        cfg.model.nb_smoothing = v;
    }
    if let Some(v) = a.svm_c {
        cfg.model.svm_c = v;
    }
    if let Some(v) = a.svm_epochs {
        cfg.model.svm_epochs = v;
    }
    if let Some(v) = a.dt_max_depth {
        cfg.model.dt_max_depth = v;
    }
    if let Some(v) = a.dt_min_size {
        cfg.model.dt_min_size = v;
    }
    if let Some(v) = a.train_fraction {
        cfg.train_fraction = v;
    }
    if let Some(v) = a.seed {
        cfg.seed = v;
    }
    if let Some(v) = a.repetitions {
        cfg.repetitions = v;
    }
    if a.exclude_missing {
        cfg.exclude_missing = true;
    }
    if a.no_deg_norm {
        cfg.degree_normalize = false;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn load_config_graph(cfg: &ExperimentConfig) -> Result<AttributedGraph> {
    if cfg.edges.as_os_str().is_empty() || cfg.attributes.as_os_str().is_empty() {
        return Err(Error::InvalidConfig("graph paths missing: pass --edges and --attrs".into()));
    }
    Ok(load_graph_files(&cfg.edges, &cfg.attributes, &cfg.schema)?.0)
}

fn cmd_train_eval(a: &TrainEvalArgs) -> Result<()> {
    let cfg = experiment_config(&a.exp)?;
    let report = match &a.features {
        Some(features) => {
            let layout_file = a.layout.clone().unwrap_or_else(|| layout_path(features));
            let layout: Layout = serde_json::from_reader(BufReader::new(File::open(layout_file)?))?;
            let fm = FeatureMatrix::read_csv(BufReader::new(File::open(features)?), layout)?;
            evaluate_features(&fm, &cfg)?
        }
        None => run_on_graph(&load_config_graph(&cfg)?, &cfg)?,
    };
    print!("{}", report.summary());
    match &a.out {
        Some(out) => report.write_json(create(out)?)?,
        None => {
            report.write_json(io::stdout().lock())?;
            println!();
        }
    }
    Ok(())
}

fn cmd_sweep(a: &SweepArgs) -> Result<()> {
    let cfg = experiment_config(&a.exp)?;
    let table = sweep(&load_config_graph(&cfg)?, &cfg, a.param, &a.values)?;
    match &a.out {
        Some(out) => table.write_csv(create(out)?)?,
        None => table.write_csv(io::stdout().lock())?,
    }
    Ok(())
}

fn cmd_synth(a: &SynthArgs) -> Result<()> {
    let seed = a.seed.unwrap_or_else(|| {
        eprintln!("seed: {DEFAULT_SEED} (default)");
        DEFAULT_SEED
    });
    let pp = PlantedPartition {
        nodes: a.nodes,
        blocks: a.blocks,
        p_in: a.p_in,
        p_out: a.p_out,
        noise_attrs: a.noise_attrs,
        seed,
    };
    let g = pp.generate()?;
    let prefix = a.out_prefix.as_os_str().to_string_lossy();
    let edges = PathBuf::from(format!("{prefix}.edges"));
    let attrs = PathBuf::from(format!("{prefix}.csv"));
    g.save(&edges, &attrs)?;
    eprintln!("{} nodes, {} edges -> {}, {}", g.node_count(), g.edge_count(), edges.display(), attrs.display());
    Ok(())
}

fn init_threads(threads: Option<usize>) -> Result<()> {
    match threads {
        Some(0) => Err(Error::InvalidConfig("--threads must be >= 1".into())),
        #[cfg(feature = "parallel")]
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::InvalidConfig(e.to_string())),
        _ => Ok(()),
    }
}

fn run(cli: Cli) -> Result<()> {
    init_threads(cli.threads)?;
    match &cli.command {
        Command::Prone(a) => cmd_prone(a),
        Command::Featurize(a) => cmd_featurize(a),
        Command::TrainEval(a) => cmd_train_eval(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Synth(a) => cmd_synth(a),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = io::stdout().flush();
            eprintln!("error: {e}");
            ExitCode::from(if e.is_usage() {
                1
            } else if e.is_data() {
                2
            } else {
                3
            })
        }
    }
}
