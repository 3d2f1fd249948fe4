//! Splits, metrics and the experiment runner.
//!
//! One repetition: split the labeled nodes, hide the test nodes' target
//! values (they become the missing level), compute PRONE on the masked graph,
//! featurize every node, fit on the training rows and score the test rows.
//! Nothing downstream of the mask can see a test label, so features are
//! identical whether or not the input graph already had those labels hidden.

use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::featurize::{default_hop_weights, FeatureConfig, FeatureMatrix, FeatureMode, Featurizer};
use crate::graph::{load_graph_files, AttributedGraph, Binning, SchemaOptions};
use crate::models::{fit_classifier, LinearRegression, ModelKind, ModelSpec, RelationalBaseline, Samples};
use crate::par;
use crate::proclivity::{prone_matrix, GenerativeFunction, ProneOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Task {
    Classification,
    Regression,
}

fn default_h() -> usize {
    1
}
fn default_fraction() -> f64 {
    0.7
}
fn default_seed() -> u64 {
    42
}
fn default_reps() -> usize {
    1
}
fn default_bins() -> usize {
    5
}
fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub edges: PathBuf,
    #[serde(default)]
    pub attributes: PathBuf,
    pub target: String,
    #[serde(default)]
    pub mode: FeatureMode,
    #[serde(default = "default_h")]
    pub h: usize,
    /// Defaults to `1, 0.5, 0.25, ...` truncated to `h`.
    #[serde(default)]
    pub hop_weights: Option<Vec<f64>>,
    #[serde(default)]
    pub generative: GenerativeFunction,
    pub model: ModelSpec,
    #[serde(default = "default_fraction")]
    pub train_fraction: f64,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_reps")]
    pub repetitions: usize,
    #[serde(default = "default_bins")]
    pub bins: usize,
    #[serde(default)]
    pub binning: Binning,
    #[serde(default)]
    pub exclude_missing: bool,
    #[serde(default = "default_true")]
    pub degree_normalize: bool,
    #[serde(default)]
    pub schema: SchemaOptions,
}

impl ExperimentConfig {
    pub fn new(target: &str, mode: FeatureMode, model: ModelSpec) -> Self {
        ExperimentConfig {
            edges: PathBuf::new(),
            attributes: PathBuf::new(),
            target: target.to_string(),
            mode,
            h: default_h(),
            hop_weights: None,
            generative: GenerativeFunction::default(),
            model,
            train_fraction: default_fraction(),
            seed: default_seed(),
            repetitions: default_reps(),
            bins: default_bins(),
            binning: Binning::default(),
            exclude_missing: false,
            degree_normalize: true,
            schema: SchemaOptions::default(),
        }
    }

    pub fn task(&self) -> Task {
        if self.model.kind.is_regression() {
            Task::Regression
        } else {
            Task::Classification
        }
    }

    pub fn resolved_hop_weights(&self) -> Vec<f64> {
        self.hop_weights.clone().unwrap_or_else(|| default_hop_weights(self.h))
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.train_fraction > 0.0 && self.train_fraction < 1.0) {
            return Err(Error::InvalidConfig(format!("train_fraction {} outside (0, 1)", self.train_fraction)));
        }
        if self.repetitions == 0 {
            return Err(Error::InvalidConfig("repetitions must be >= 1".into()));
        }
        if self.h == 0 {
            return Err(Error::InvalidConfig("h must be >= 1".into()));
        }
        if self.resolved_hop_weights().len() != self.h {
            return Err(Error::InvalidConfig(format!(
                "{} hop weights given for h = {}",
                self.resolved_hop_weights().len(),
                self.h
            )));
        }
        self.model.validate()
    }

    fn feature_config(&self, target: usize) -> FeatureConfig {
        FeatureConfig {
            target,
            hops: self.h,
            hop_weights: self.resolved_hop_weights(),
            mode: self.mode,
            generative: self.generative,
            degree_normalize: self.degree_normalize,
        }
    }
}

/// Disjoint train/test node sets, each sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Split {
    pub train: Vec<usize>,
    pub test: Vec<usize>,
}

/// Uniform random split of the nodes whose `target` value is observed.
/// Nodes with a missing target are in neither set.
pub fn split(g: &AttributedGraph, target: usize, train_fraction: f64, seed: u64) -> Result<Split> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(Error::InvalidConfig(format!("train fraction {train_fraction} outside (0, 1)")));
    }
    let mut labeled: Vec<usize> = (0..g.node_count()).filter(|&v| g.is_observed(target, v)).collect();
    if labeled.len() < 2 {
        return Err(Error::TooFewLabeled(labeled.len()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    labeled.shuffle(&mut rng);
    let n_train = ((train_fraction * labeled.len() as f64).round() as usize).clamp(1, labeled.len() - 1);
    let mut train = labeled[..n_train].to_vec();
    let mut test = labeled[n_train..].to_vec();
    train.sort_unstable();
    test.sort_unstable();
    Ok(Split { train, test })
}

/// Task-appropriate metric values; absent fields serialize as `null`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub accuracy: Option<f64>,
    pub f1_macro: Option<f64>,
    pub mae: Option<f64>,
    pub rmse: Option<f64>,
    pub mse: Option<f64>,
    pub r2: Option<f64>,
}

impl Metrics {
    fn fields(&self) -> [Option<f64>; 6] {
        [self.accuracy, self.f1_macro, self.mae, self.rmse, self.mse, self.r2]
    }

    fn from_fields(f: [Option<f64>; 6]) -> Self {
        Metrics { accuracy: f[0], f1_macro: f[1], mae: f[2], rmse: f[3], mse: f[4], r2: f[5] }
    }
}

/// Accuracy and macro-averaged F1 over the classes seen in either sequence.
/// A class with zero precision and recall scores F1 = 0.
pub fn classification_metrics(pred: &[u32], actual: &[u32]) -> Result<Metrics> {
    if pred.len() != actual.len() {
        return Err(Error::LengthMismatch(pred.len(), actual.len()));
    }
    if pred.is_empty() {
        return Err(Error::InvalidConfig("no predictions to score".into()));
    }
    let n = pred.len() as f64;
    let correct = pred.iter().zip(actual).filter(|(p, a)| p == a).count();
    let mut classes: Vec<u32> = pred.iter().chain(actual).copied().collect();
    classes.sort_unstable();
    classes.dedup();
    let mut f1_sum = 0.0;
    for &c in &classes {
        let tp = pred.iter().zip(actual).filter(|(&p, &a)| p == c && a == c).count() as f64;
        let fp = pred.iter().zip(actual).filter(|(&p, &a)| p == c && a != c).count() as f64;
        let fn_ = pred.iter().zip(actual).filter(|(&p, &a)| p != c && a == c).count() as f64;
        let precision = if tp + fp > 0.0 { tp / (tp + fp) } else { 0.0 };
        let recall = if tp + fn_ > 0.0 { tp / (tp + fn_) } else { 0.0 };
        if precision + recall > 0.0 {
            f1_sum += 2.0 * precision * recall / (precision + recall);
        }
    }
    Ok(Metrics {
        accuracy: Some(correct as f64 / n),
        f1_macro: Some(f1_sum / classes.len() as f64),
        ..Metrics::default()
    })
}

/// MAE, MSE, RMSE and R². R² is 1 for a perfect fit of a constant target and
/// 0 for an imperfect one.
pub fn regression_metrics(pred: &[f64], actual: &[f64]) -> Result<Metrics> {
    if pred.len() != actual.len() {
        return Err(Error::LengthMismatch(pred.len(), actual.len()));
    }
    if pred.len() < 2 {
        return Err(Error::InvalidConfig("regression metrics need at least 2 values".into()));
    }
    let n = pred.len() as f64;
    let mae = pred.iter().zip(actual).map(|(p, a)| (p - a).abs()).sum::<f64>() / n;
    let ss_res: f64 = pred.iter().zip(actual).map(|(p, a)| (p - a) * (p - a)).sum();
    let mean = actual.iter().sum::<f64>() / n;
    let ss_tot: f64 = actual.iter().map(|a| (a - mean) * (a - mean)).sum();
    let mse = ss_res / n;
    let r2 = if ss_tot > 0.0 {
        1.0 - ss_res / ss_tot
    } else if ss_res == 0.0 {
        1.0
    } else {
        0.0
    };
    Ok(Metrics { mae: Some(mae), mse: Some(mse), rmse: Some(mse.sqrt()), r2: Some(r2), ..Metrics::default() })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub proclivity_ms: f64,
    pub featurize_ms: f64,
    pub fit_ms: f64,
    pub predict_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Repetition {
    pub seed: u64,
    pub train_size: usize,
    pub test_size: usize,
    pub metrics: Metrics,
    pub timings: Timings,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub config: ExperimentConfig,
    pub task: Task,
    pub mean: Metrics,
    pub std: Metrics,
    pub repetitions: Vec<Repetition>,
    pub total_ms: f64,
    /// Weight transform used by WVRN, recorded for reproducibility.
    pub wvrn_similarity: String,
}

impl MetricsReport {
    fn from_reps(config: ExperimentConfig, repetitions: Vec<Repetition>, total_ms: f64) -> Self {
        let n = repetitions.len() as f64;
        let mut mean = [None; 6];
        let mut std = [None; 6];
        for k in 0..6 {
            let vals: Vec<f64> = repetitions.iter().filter_map(|r| r.metrics.fields()[k]).collect();
            if vals.len() == repetitions.len() && !vals.is_empty() {
                let m = vals.iter().sum::<f64>() / n;
                let var = if vals.len() > 1 {
                    vals.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (n - 1.0)
                } else {
                    0.0
                };
                mean[k] = Some(m);
                std[k] = Some(var.sqrt());
            }
        }
        MetricsReport {
            task: config.task(),
            config,
            mean: Metrics::from_fields(mean),
            std: Metrics::from_fields(std),
            repetitions,
            total_ms,
            wvrn_similarity: "1/(1+euclidean(nns(v),nns(u)))".into(),
        }
    }

    /// Copy with every timing zeroed, for comparing runs.
    pub fn without_timings(&self) -> Self {
        let mut r = self.clone();
        r.total_ms = 0.0;
        for rep in &mut r.repetitions {
            rep.timings = Timings::default();
        }
        r
    }

    pub fn per_repetition(&self, pick: impl Fn(&Metrics) -> Option<f64>) -> Vec<f64> {
        self.repetitions.iter().filter_map(|r| pick(&r.metrics)).collect()
    }

    pub fn write_json<W: Write>(&self, w: W) -> Result<()> {
        serde_json::to_writer_pretty(w, self)?;
        Ok(())
    }

    /// Short human-readable summary.
    pub fn summary(&self) -> String {
        let mut s = format!(
            "target={} mode={} model={} h={} reps={}\n",
            self.config.target,
            self.config.mode,
            self.config.model.kind,
            self.config.h,
            self.repetitions.len()
        );
        let names = ["accuracy", "f1_macro", "mae", "rmse", "mse", "r2"];
        for (name, (m, sd)) in names.iter().zip(self.mean.fields().iter().zip(self.std.fields())) {
            if let (Some(m), Some(sd)) = (m, sd) {
                s.push_str(&format!("{name:>9}: {m:.4} (std {sd:.4})\n"));
            }
        }
        s
    }
}

fn ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

/// Builds features for one split: test targets masked, PRONE recomputed on
/// the masked graph. `g` must have only level-valued attributes.
pub fn featurize_split(g: &AttributedGraph, cfg: &ExperimentConfig, split: &Split) -> Result<FeatureMatrix> {
    Ok(prepare(g, cfg, split)?.0)
}

fn prepare(g: &AttributedGraph, cfg: &ExperimentConfig, split: &Split) -> Result<(FeatureMatrix, AttributedGraph, f64)> {
    let target = g.schema().index_of(&cfg.target)?;
    let masked = g.masked(target, &split.test)?;
    let start = Instant::now();
    let p = prone_matrix(&masked, cfg.generative, ProneOptions { exclude_missing: cfg.exclude_missing })?;
    let prone_ms = ms(start);
    let fm = Featurizer::new(&masked, cfg.feature_config(target), &p)?.featurize_all();
    Ok((fm, masked, prone_ms))
}

fn class_labels(g: &AttributedGraph, target: usize, nodes: &[usize]) -> Result<Vec<u32>> {
    let codes = g.codes(target)?;
    Ok(nodes.iter().map(|&v| codes[v]).collect())
}

fn numeric_labels(g: &AttributedGraph, target: usize, nodes: &[usize]) -> Result<Vec<f64>> {
    let values = g.values(target).ok_or_else(|| {
        Error::InvalidConfig(format!("regression needs a numeric target; `{}` is nominal", g.attribute(target).name))
    })?;
    Ok(nodes.iter().map(|&v| values[v].expect("split keeps observed nodes")).collect())
}

fn samples<T: Copy>(fm: &FeatureMatrix, nodes: &[usize], y: &[T]) -> Samples<T> {
    let mut s = Samples::new(fm.dim);
    for (&v, &t) in nodes.iter().zip(y) {
        s.push(v, fm.row(v), t);
    }
    s
}

fn run_repetition(g: &AttributedGraph, cfg: &ExperimentConfig, rep: usize) -> Result<Repetition> {
    let seed = cfg.seed.wrapping_add(rep as u64);
    let target = g.schema().index_of(&cfg.target)?;
    let sp = split(g, target, cfg.train_fraction, seed)?;
    let mut spec = cfg.model.clone();
    spec.seed = seed;

    let start = Instant::now();
    let (fm, masked, proclivity_ms) = prepare(g, cfg, &sp)?;
    let featurize_ms = ms(start) - proclivity_ms;

    let mut timings = Timings { proclivity_ms, featurize_ms, ..Timings::default() };
    let metrics = match cfg.task() {
        Task::Regression => {
            let ytr = numeric_labels(g, target, &sp.train)?;
            let yte = numeric_labels(g, target, &sp.test)?;
            let t0 = Instant::now();
            let model = LinearRegression::fit(&samples(&fm, &sp.train, &ytr))?;
            timings.fit_ms = ms(t0);
            let t1 = Instant::now();
            let pred = par::map_slice(&sp.test, |&v| model.predict(fm.row(v)));
            timings.predict_ms = ms(t1);
            regression_metrics(&pred, &yte)?
        }
        Task::Classification => {
            let ytr = class_labels(g, target, &sp.train)?;
            let yte = class_labels(g, target, &sp.test)?;
            let pred = if spec.kind.is_relational() {
                let t0 = Instant::now();
                let mut known = vec![None; g.node_count()];
                for (&v, &y) in sp.train.iter().zip(&ytr) {
                    known[v] = Some(y);
                }
                let levels = g.attribute(target).level_count();
                let rb = RelationalBaseline::new(&masked, known, levels)?;
                let nns = if spec.kind == ModelKind::Wvrn {
                    let mut nns_cfg = cfg.feature_config(target);
                    nns_cfg.mode = FeatureMode::Nns;
                    let rho = vec![1.0; g.attribute_count()];
                    Some(Featurizer::with_rho(&masked, nns_cfg, rho).featurize_all())
                } else {
                    None
                };
                timings.fit_ms = ms(t0);
                let t1 = Instant::now();
                let pred: Result<Vec<u32>> = par::map_slice(&sp.test, |&v| match &nns {
                    Some(nns) => rb.wvrn(v, |u| nns.row(u)),
                    None => rb.majority(v),
                })
                .into_iter()
                .collect();
                timings.predict_ms = ms(t1);
                pred?
            } else {
                let t0 = Instant::now();
                let model = fit_classifier(&spec, &samples(&fm, &sp.train, &ytr))?;
                timings.fit_ms = ms(t0);
                let t1 = Instant::now();
                let pred = par::map_slice(&sp.test, |&v| model.predict(fm.row(v)));
                timings.predict_ms = ms(t1);
                pred
            };
            classification_metrics(&pred, &yte)?
        }
    };
    Ok(Repetition { seed, train_size: sp.train.len(), test_size: sp.test.len(), metrics, timings })
}

/// Runs the configured experiment on an in-memory graph. Continuous
/// attributes are binned (raw values are kept for regression targets).
pub fn run_on_graph(g: &AttributedGraph, cfg: &ExperimentConfig) -> Result<MetricsReport> {
    cfg.validate()?;
    let start = Instant::now();
    let target = g.schema().index_of(&cfg.target)?;
    if cfg.task() == Task::Regression && g.values(target).is_none() {
        return Err(Error::InvalidConfig(format!("regression target `{}` is not numeric", cfg.target)));
    }
    let binned = g.discretize_all(cfg.bins, cfg.binning)?;
    let reps: Result<Vec<Repetition>> =
        par::map_range(cfg.repetitions, |r| run_repetition(&binned, cfg, r)).into_iter().collect();
    Ok(MetricsReport::from_reps(cfg.clone(), reps?, ms(start)))
}

/// Loads the graph named by `cfg` and runs it.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<MetricsReport> {
    cfg.validate()?;
    let (g, _) = load_graph_files(&cfg.edges, &cfg.attributes, &cfg.schema)?;
    run_on_graph(&g, cfg)
}

/// Fits and scores a model on precomputed features, without re-featurizing.
/// Labels come from the feature matrix; relational baselines are not
/// available on this path.
pub fn evaluate_features(fm: &FeatureMatrix, cfg: &ExperimentConfig) -> Result<MetricsReport> {
    cfg.validate()?;
    if cfg.model.kind.is_relational() {
        return Err(Error::InvalidConfig(format!("`{}` needs the graph, not a feature file", cfg.model.kind)));
    }
    let start = Instant::now();
    let observed: Vec<bool> = match cfg.task() {
        Task::Classification => fm.classes.iter().map(Option::is_some).collect(),
        Task::Regression => match &fm.values {
            Some(values) => values.iter().map(Option::is_some).collect(),
            None => return Err(Error::InvalidConfig("feature file has no numeric labels".into())),
        },
    };
    let reps: Result<Vec<Repetition>> = par::map_range(cfg.repetitions, |rep| {
        let seed = cfg.seed.wrapping_add(rep as u64);
        let mut labeled: Vec<usize> = (0..fm.len()).filter(|&v| observed[v]).collect();
        if labeled.len() < 2 {
            return Err(Error::TooFewLabeled(labeled.len()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        labeled.shuffle(&mut rng);
        let n_train = ((cfg.train_fraction * labeled.len() as f64).round() as usize).clamp(1, labeled.len() - 1);
        let mut train = labeled[..n_train].to_vec();
        let mut test = labeled[n_train..].to_vec();
        train.sort_unstable();
        test.sort_unstable();
        let mut spec = cfg.model.clone();
        spec.seed = seed;
        let metrics = match cfg.task() {
            Task::Regression => {
                let values = fm.values.as_ref().expect("checked above");
                let y = |nodes: &[usize]| nodes.iter().map(|&v| values[v].expect("observed")).collect::<Vec<_>>();
                let model = LinearRegression::fit(&samples(fm, &train, &y(&train)))?;
                let pred: Vec<f64> = test.iter().map(|&v| model.predict(fm.row(v))).collect();
                regression_metrics(&pred, &y(&test))?
            }
            Task::Classification => {
                let y = |nodes: &[usize]| nodes.iter().map(|&v| fm.classes[v].expect("observed")).collect::<Vec<_>>();
                let model = fit_classifier(&spec, &samples(fm, &train, &y(&train)))?;
                let pred: Vec<u32> = test.iter().map(|&v| model.predict(fm.row(v))).collect();
                classification_metrics(&pred, &y(&test))?
            }
        };
        Ok(Repetition { seed, train_size: train.len(), test_size: test.len(), metrics, timings: Timings::default() })
    })
    .into_iter()
    .collect();
    Ok(MetricsReport::from_reps(cfg.clone(), reps?, ms(start)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepParam {
    K,
    H,
}

impl FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "k" => Ok(SweepParam::K),
            "h" => Ok(SweepParam::H),
            other => Err(Error::InvalidConfig(format!("cannot sweep `{other}` (expected k or h)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub value: usize,
    pub report: MetricsReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub param: SweepParam,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    /// Plot-ready CSV: `param,accuracy_mean,accuracy_std`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(w);
        wtr.write_record(["param", "accuracy_mean", "accuracy_std"])?;
        for row in &self.rows {
            let f = |x: Option<f64>| x.map_or_else(String::new, |v| format!("{v}"));
            wtr.write_record([row.value.to_string(), f(row.report.mean.accuracy), f(row.report.std.accuracy)])?;
        }
        wtr.flush()?;
        Ok(())
    }
}

/// Configuration for one sweep point. Only the swept parameter changes; the
/// seed, and therefore every split, is shared.
pub fn sweep_point(cfg: &ExperimentConfig, param: SweepParam, value: usize) -> ExperimentConfig {
    let mut c = cfg.clone();
    match param {
        SweepParam::K => c.model.knn_k = value,
        SweepParam::H => {
            c.h = value;
            c.hop_weights = match &cfg.hop_weights {
                Some(w) if w.len() >= value => Some(w[..value].to_vec()),
                _ => None,
            };
        }
    }
    c
}

/// Runs one experiment per value, in value order.
pub fn sweep(g: &AttributedGraph, cfg: &ExperimentConfig, param: SweepParam, values: &[usize]) -> Result<SweepTable> {
    if values.is_empty() {
        return Err(Error::InvalidConfig("sweep needs at least one value".into()));
    }
    let rows: Result<Vec<SweepRow>> = par::map_slice(values, |&value| {
        let c = sweep_point(cfg, param, value);
        Ok(SweepRow { value, report: run_on_graph(g, &c)? })
    })
    .into_iter()
    .collect();
    Ok(SweepTable { param, rows: rows? })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_sizes_and_determinism() {
        let (g, _) = AttributedGraph::from_edges(12, &[]).unwrap();
        let toks = ["a", "b", "a", "b", "a", "b", "a", "b", "a", "b", "?", "?"];
        let g = g.with_nominal("t", &toks).unwrap();
        let s = split(&g, 0, 0.7, 5).unwrap();
        assert_eq!(s.train.len(), 7);
        assert_eq!(s.test.len(), 3);
        assert!(s.train.iter().chain(&s.test).all(|&v| v < 10));
        assert_eq!(s, split(&g, 0, 0.7, 5).unwrap());
        assert!(s.train.iter().all(|v| !s.test.contains(v)));
    }

    #[test]
    fn split_errors() {
        let (g, _) = AttributedGraph::from_edges(3, &[]).unwrap();
        let g = g.with_nominal("t", &["a", "?", "?"]).unwrap();
        assert!(matches!(split(&g, 0, 0.5, 1), Err(Error::TooFewLabeled(1))));
        assert!(split(&g, 0, 1.0, 1).is_err());
    }

    #[test]
    fn classification_examples() {
        let m = classification_metrics(&[0, 1, 2], &[0, 1, 2]).unwrap();
        assert_eq!(m.accuracy, Some(1.0));
        assert_eq!(m.f1_macro, Some(1.0));
        let m = classification_metrics(&[1, 1, 0, 0], &[1, 0, 1, 0]).unwrap();
        assert_eq!(m.accuracy, Some(0.5));
        assert!(classification_metrics(&[1], &[1, 2]).is_err());
    }

    #[test]
    fn regression_examples() {
        let y = [0.3, 1.2, -4.0, 2.5];
        let m = regression_metrics(&y, &y).unwrap();
        assert_eq!((m.mae, m.rmse, m.r2, m.mse), (Some(0.0), Some(0.0), Some(1.0), Some(0.0)));
        let shifted: Vec<f64> = y.iter().map(|v| v + 1.0).collect();
        let m = regression_metrics(&shifted, &y).unwrap();
        assert_eq!(m.mae, Some(1.0));
        assert_eq!(m.mse, Some(1.0));
        let m = regression_metrics(&[2.0, 2.0], &[2.0, 2.0]).unwrap();
        assert_eq!(m.r2, Some(1.0));
    }

    #[test]
    fn config_json_defaults() {
        let c: ExperimentConfig = serde_json::from_str(r#"{"target":"block","model":{"kind":"knn"}}"#).unwrap();
        assert_eq!(c, ExperimentConfig::new("block", FeatureMode::Nfvr, ModelSpec::new(ModelKind::Knn)));
    }

    #[test]
    fn config_validation() {
        let mut c = ExperimentConfig::new("t", FeatureMode::Nfvr, ModelSpec::new(ModelKind::Knn));
        c.train_fraction = 1.0;
        assert!(c.validate().is_err());
        c.train_fraction = 0.7;
        c.repetitions = 0;
        assert!(c.validate().is_err());
        c.repetitions = 1;
        c.h = 2;
        c.hop_weights = Some(vec![1.0]);
        assert!(c.validate().is_err());
    }
}
