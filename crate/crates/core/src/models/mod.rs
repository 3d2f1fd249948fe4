//! Learners used on top of the feature vectors, plus the two relational
//! baselines that read the graph directly.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub mod knn;
pub mod linreg;
pub mod naive_bayes;
pub mod relational;
pub mod svm;
pub mod tree;

pub use knn::Knn;
pub use linreg::LinearRegression;
pub use naive_bayes::GaussianNb;
pub use relational::RelationalBaseline;
pub use svm::LinearSvm;
pub use tree::DecisionTree;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Knn,
    Nb,
    Dt,
    Svm,
    Lr,
    Wvrn,
    Majority,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Knn => "knn",
            ModelKind::Nb => "nb",
            ModelKind::Dt => "dt",
            ModelKind::Svm => "svm",
            ModelKind::Lr => "lr",
            ModelKind::Wvrn => "wvrn",
            ModelKind::Majority => "majority",
        }
    }

    /// Baselines that vote over graph neighbors instead of using features.
    pub fn is_relational(self) -> bool {
        matches!(self, ModelKind::Wvrn | ModelKind::Majority)
    }

    pub fn is_regression(self) -> bool {
        matches!(self, ModelKind::Lr)
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "knn" => ModelKind::Knn,
            "nb" => ModelKind::Nb,
            "dt" => ModelKind::Dt,
            "svm" => ModelKind::Svm,
            "lr" => ModelKind::Lr,
            "wvrn" => ModelKind::Wvrn,
            "majority" => ModelKind::Majority,
            other => {
                return Err(Error::InvalidConfig(format!(
                    "unknown model `{other}` (expected knn, nb, dt, svm, lr, wvrn or majority)"
                )))
            }
        })
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn default_k() -> usize {
    10
}
fn default_c() -> f64 {
    1.0
}
fn default_criterion() -> String {
    "gini".into()
}
fn default_depth() -> usize {
    20
}
fn default_min_size() -> usize {
    2
}
fn default_epochs() -> usize {
    200
}
fn default_seed() -> u64 {
    42
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub kind: ModelKind,
    #[serde(default = "default_k")]
    pub knn_k: usize,
    /// Added to every Gaussian NB variance before the 1e-9 floor.
    #[serde(default)]
    pub nb_smoothing: f64,
    #[serde(default = "default_c")]
    pub svm_c: f64,
    #[serde(default = "default_epochs")]
    pub svm_epochs: usize,
    #[serde(default = "default_criterion")]
    pub dt_criterion: String,
    #[serde(default = "default_depth")]
    pub dt_max_depth: usize,
    #[serde(default = "default_min_size")]
    pub dt_min_size: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

impl ModelSpec {
    pub fn new(kind: ModelKind) -> Self {
        ModelSpec {
            kind,
            knn_k: default_k(),
            nb_smoothing: 0.0,
            svm_c: default_c(),
            svm_epochs: default_epochs(),
            dt_criterion: default_criterion(),
            dt_max_depth: default_depth(),
            dt_min_size: default_min_size(),
            seed: default_seed(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.knn_k == 0 {
            return Err(Error::InvalidConfig("knn_k must be >= 1".into()));
        }
        if !(self.svm_c > 0.0) {
            return Err(Error::InvalidConfig("svm_c must be > 0".into()));
        }
        if self.nb_smoothing < 0.0 {
            return Err(Error::InvalidConfig("nb_smoothing must be >= 0".into()));
        }
        if self.dt_criterion != "gini" {
            return Err(Error::InvalidConfig(format!(
                "unsupported tree criterion `{}` (only gini)",
                self.dt_criterion
            )));
        }
        Ok(())
    }
}

/// Training rows with one target per row. `ids` are node ids, used for
/// deterministic tie-breaking.
#[derive(Debug, Clone, PartialEq)]
pub struct Samples<T> {
    pub dim: usize,
    pub x: Vec<f64>,
    pub y: Vec<T>,
    pub ids: Vec<usize>,
}

impl<T: Copy> Samples<T> {
    pub fn new(dim: usize) -> Self {
        Samples { dim, x: Vec::new(), y: Vec::new(), ids: Vec::new() }
    }

    /// Rows numbered `0..rows.len()`.
    pub fn from_rows(rows: &[Vec<f64>], y: &[T]) -> Self {
        let dim = rows.first().map_or(0, Vec::len);
        let mut s = Samples::new(dim);
        for (i, (r, &t)) in rows.iter().zip(y).enumerate() {
            s.push(i, r, t);
        }
        s
    }

    pub fn push(&mut self, id: usize, row: &[f64], target: T) {
        debug_assert_eq!(row.len(), self.dim);
        self.x.extend_from_slice(row);
        self.y.push(target);
        self.ids.push(id);
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.x[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.x.chunks(self.dim.max(1)).take(self.len())
    }
}

/// Sorted distinct labels.
pub(crate) fn classes_of(y: &[u32]) -> Vec<u32> {
    let mut c = y.to_vec();
    c.sort_unstable();
    c.dedup();
    c
}

/// Most frequent label; ties go to the lower label.
pub(crate) fn majority_label(y: &[u32]) -> Option<u32> {
    let classes = classes_of(y);
    classes
        .iter()
        .map(|&c| (c, y.iter().filter(|&&l| l == c).count()))
        .fold(None, |best: Option<(u32, usize)>, (c, n)| match best {
            Some((_, bn)) if bn >= n => best,
            _ => Some((c, n)),
        })
        .map(|(c, _)| c)
}

pub trait Classifier: Send + Sync {
    fn predict(&self, x: &[f64]) -> u32;
}

impl Classifier for Knn {
    fn predict(&self, x: &[f64]) -> u32 {
        Knn::predict(self, x)
    }
}

impl Classifier for GaussianNb {
    fn predict(&self, x: &[f64]) -> u32 {
        GaussianNb::predict(self, x)
    }
}

impl Classifier for DecisionTree {
    fn predict(&self, x: &[f64]) -> u32 {
        DecisionTree::predict(self, x)
    }
}

impl Classifier for LinearSvm {
    fn predict(&self, x: &[f64]) -> u32 {
        LinearSvm::predict(self, x)
    }
}

/// Fits one of the feature-based classifiers.
pub fn fit_classifier(spec: &ModelSpec, train: &Samples<u32>) -> Result<Box<dyn Classifier>> {
    spec.validate()?;
    if train.is_empty() {
        return Err(Error::EmptyTrain);
    }
    Ok(match spec.kind {
        ModelKind::Knn => Box::new(Knn::fit(train.clone(), spec.knn_k)?),
        ModelKind::Nb => Box::new(GaussianNb::fit(train, spec.nb_smoothing)?),
        ModelKind::Dt => Box::new(DecisionTree::fit(train, spec.dt_max_depth, spec.dt_min_size)?),
        ModelKind::Svm => Box::new(LinearSvm::fit(train, spec.svm_c, spec.svm_epochs, spec.seed)?),
        other => {
            return Err(Error::InvalidConfig(format!("`{other}` is not a feature-based classifier")));
        }
    })
}
