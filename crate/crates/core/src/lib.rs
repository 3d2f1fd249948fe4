//! Node attribute prediction for attributed graphs.
//!
//! The pipeline measures how strongly each pair of attributes co-varies across
//! edges (the PRONE proclivity index computed from a mixing matrix), uses those
//! values to weight h-hop neighborhood attribute distributions into per-node
//! feature vectors, and then fits classical learners on the vectors.
//!
//! Modules follow the data flow:
//!
//! * [`graph`]: CSR storage, attribute schema, loading, BFS hop shells, binning.
//! * [`proclivity`]: mixing matrices, divergence and PRONE values.
//! * [`featurize`]: NNS, N-FVR and NN-FVR feature vectors.
//! * [`models`]: KNN, Gaussian NB, CART, linear SVM, QR least squares, WVRN, MAJORITY.
//! * [`eval`]: splits, metrics, experiment runner and parameter sweeps.
//! * [`synth`]: planted-partition generator used by the tests and the CLI.

pub mod error;
pub mod eval;
pub mod featurize;
pub mod graph;
pub mod models;
pub mod par;
pub mod proclivity;
pub mod synth;

pub use error::{Error, Result};
pub use eval::{ExperimentConfig, MetricsReport};
pub use featurize::{FeatureConfig, FeatureMatrix, FeatureMode};
pub use graph::{AttributeKind, AttributedGraph, SchemaOptions};
pub use models::{ModelKind, ModelSpec};
pub use proclivity::{GenerativeFunction, MixingMatrix, ProclivityMatrix};
