//! Node feature vectors.
//!
//! * NNS: one-hot encoding of the node's own attributes, target excluded.
//! * N-FVR: for each attribute `a_j`, the hop-weighted sum of the level
//!   distributions of `a_j` over the exact-distance shells `N^1(v)..N^h(v)`,
//!   scaled by `rho(target, a_j)`; the concatenation is divided by `deg(v)`.
//! * NN-FVR: NNS followed by N-FVR.
//!
//! An empty shell contributes the zero vector; an isolated node gets an
//! all-zero N-FVR part.

use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{AttributeKind, AttributedGraph, ShellWalker, MISSING_TOKEN};
use crate::par;
use crate::proclivity::{GenerativeFunction, ProclivityMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FeatureMode {
    Nns,
    #[default]
    Nfvr,
    Nnfvr,
}

impl FeatureMode {
    pub fn name(self) -> &'static str {
        match self {
            FeatureMode::Nns => "nns",
            FeatureMode::Nfvr => "nfvr",
            FeatureMode::Nnfvr => "nnfvr",
        }
    }

    fn has_nns(self) -> bool {
        matches!(self, FeatureMode::Nns | FeatureMode::Nnfvr)
    }

    fn has_nfvr(self) -> bool {
        matches!(self, FeatureMode::Nfvr | FeatureMode::Nnfvr)
    }
}

impl FromStr for FeatureMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "").as_str() {
            "nns" => Ok(FeatureMode::Nns),
            "nfvr" => Ok(FeatureMode::Nfvr),
            "nnfvr" => Ok(FeatureMode::Nnfvr),
            other => Err(Error::InvalidConfig(format!("unknown mode `{other}` (expected nns, nfvr or nnfvr)"))),
        }
    }
}

impl fmt::Display for FeatureMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Hop weights `1, 0.5, 0.25, ...` for `h` hops.
pub fn default_hop_weights(h: usize) -> Vec<f64> {
    (0..h).map(|i| 0.5f64.powi(i as i32)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureConfig {
    pub target: usize,
    pub hops: usize,
    pub hop_weights: Vec<f64>,
    pub mode: FeatureMode,
    pub generative: GenerativeFunction,
    /// Divide the N-FVR part by `deg(v)`.
    pub degree_normalize: bool,
}

impl FeatureConfig {
    pub fn new(target: usize, hops: usize, mode: FeatureMode) -> Self {
        FeatureConfig {
            target,
            hops,
            hop_weights: default_hop_weights(hops),
            mode,
            generative: GenerativeFunction::default(),
            degree_normalize: true,
        }
    }

    pub fn validate(&self, g: &AttributedGraph) -> Result<()> {
        if self.target >= g.attribute_count() {
            return Err(Error::InvalidConfig(format!(
                "target index {} but graph has {} attributes",
                self.target,
                g.attribute_count()
            )));
        }
        if self.hops == 0 {
            return Err(Error::InvalidConfig("hops must be >= 1".into()));
        }
        if self.hop_weights.len() != self.hops {
            return Err(Error::InvalidConfig(format!(
                "{} hop weights given for h = {}",
                self.hop_weights.len(),
                self.hops
            )));
        }
        if let Some(w) = self.hop_weights.iter().find(|w| !(**w > 0.0 && **w <= 1.0)) {
            return Err(Error::InvalidConfig(format!("hop weight {w} outside (0, 1]")));
        }
        for i in 0..g.attribute_count() {
            if g.attribute(i).kind == AttributeKind::NumericContinuous {
                return Err(Error::ContinuousAttribute(g.attribute(i).name.clone()));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockKind {
    Nns,
    Nfvr,
}

/// One contiguous run of coordinates belonging to a single attribute.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Block {
    pub kind: BlockKind,
    pub attribute: String,
    pub offset: usize,
    pub width: usize,
    pub levels: Vec<String>,
    /// `rho(target, attribute)` for N-FVR blocks, 1 for NNS blocks.
    pub weight: f64,
}

/// Sidecar description of a feature matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Layout {
    pub mode: FeatureMode,
    pub hops: usize,
    pub hop_weights: Vec<f64>,
    pub generative: GenerativeFunction,
    pub degree_normalize: bool,
    pub target: String,
    pub target_levels: Vec<String>,
    pub target_missing: usize,
    pub target_numeric: bool,
    pub rho_row: Vec<f64>,
    pub dim: usize,
    pub blocks: Vec<Block>,
}

impl Layout {
    pub fn column_names(&self) -> Vec<String> {
        let mut names = Vec::with_capacity(self.dim);
        for b in &self.blocks {
            let prefix = match b.kind {
                BlockKind::Nns => "nns",
                BlockKind::Nfvr => "nfvr",
            };
            names.extend(b.levels.iter().map(|l| format!("{prefix}.{}:{l}", b.attribute)));
        }
        names
    }
}

/// Per-node feature rows with the target column alongside.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    pub node_ids: Vec<String>,
    pub dim: usize,
    /// Row-major, `node_ids.len() * dim` values.
    pub data: Vec<f64>,
    pub layout: Layout,
    /// Target level per node, `None` when missing.
    pub classes: Vec<Option<u32>>,
    /// Raw numeric target per node, for numeric targets.
    pub values: Option<Vec<Option<f64>>>,
}

impl FeatureMatrix {
    pub fn len(&self) -> usize {
        self.node_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.node_ids.is_empty()
    }

    pub fn row(&self, v: usize) -> &[f64] {
        &self.data[v * self.dim..(v + 1) * self.dim]
    }

    /// Writes `node,<block:coord>...,label` (plus `label_value` for numeric
    /// targets). Values use shortest round-trip formatting.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(w);
        let mut header = vec!["node".to_string()];
        header.extend(self.layout.column_names());
        header.push("label".into());
        if self.values.is_some() {
            header.push("label_value".into());
        }
        wtr.write_record(&header)?;
        let mut rec: Vec<String> = Vec::with_capacity(header.len());
        for v in 0..self.len() {
            rec.clear();
            rec.push(self.node_ids[v].clone());
            rec.extend(self.row(v).iter().map(|x| format!("{x}")));
            rec.push(match self.classes[v] {
                Some(c) => self.layout.target_levels[c as usize].clone(),
                None => MISSING_TOKEN.to_string(),
            });
            if let Some(values) = &self.values {
                rec.push(values[v].map_or_else(|| MISSING_TOKEN.to_string(), |x| format!("{x}")));
            }
            wtr.write_record(&rec)?;
        }
        wtr.flush()?;
        Ok(())
    }

    pub fn write_layout<W: Write>(&self, w: W) -> Result<()> {
        serde_json::to_writer_pretty(w, &self.layout)?;
        Ok(())
    }

    /// Reads a feature CSV written by [`FeatureMatrix::write_csv`] together
    /// with its layout.
    pub fn read_csv<R: Read>(r: R, layout: Layout) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(r);
        let header = rdr.headers()?.clone();
        let has_value = header.iter().last() == Some("label_value");
        let dim = header.len() - 2 - usize::from(has_value);
        if dim != layout.dim {
            return Err(Error::Schema(format!("feature file has {dim} columns, layout says {}", layout.dim)));
        }
        let mut fm = FeatureMatrix {
            node_ids: Vec::new(),
            dim,
            data: Vec::new(),
            classes: Vec::new(),
            values: has_value.then(Vec::new),
            layout,
        };
        for (i, rec) in rdr.records().enumerate() {
            let rec = rec?;
            let bad = |msg: String| Error::Parse { source_name: "features".into(), line: i + 2, msg };
            fm.node_ids.push(rec[0].to_string());
            for cell in rec.iter().skip(1).take(dim) {
                fm.data.push(cell.parse::<f64>().map_err(|e| bad(e.to_string()))?);
            }
            let label = &rec[dim + 1];
            fm.classes.push(if label == MISSING_TOKEN {
                None
            } else {
                let c = fm
                    .layout
                    .target_levels
                    .iter()
                    .position(|l| l == label)
                    .ok_or_else(|| bad(format!("unknown label `{label}`")))?;
                Some(c as u32)
            });
            if let Some(values) = fm.values.as_mut() {
                let cell = &rec[dim + 2];
                values.push(if cell == MISSING_TOKEN {
                    None
                } else {
                    Some(cell.parse::<f64>().map_err(|e| bad(e.to_string()))?)
                });
            }
        }
        Ok(fm)
    }
}

/// Level distribution of attribute `j` over the node set `nodes`.
pub fn aggregate_set(g: &AttributedGraph, nodes: &[usize], j: usize) -> Result<Vec<f64>> {
    if nodes.is_empty() {
        return Err(Error::EmptySet);
    }
    let codes = g.codes(j)?;
    let mut out = vec![0.0; g.attribute(j).level_count()];
    for &y in nodes {
        if y >= g.node_count() {
            return Err(Error::NodeOutOfRange { node: y, count: g.node_count() });
        }
        out[codes[y] as usize] += 1.0;
    }
    let size = nodes.len() as f64;
    out.iter_mut().for_each(|x| *x /= size);
    Ok(out)
}

/// Scratch space reused across nodes by one worker.
struct Scratch {
    walker: ShellWalker,
    counts: Vec<u32>,
}

/// Builds feature vectors for one graph, target and proclivity row.
#[derive(Debug, Clone)]
pub struct Featurizer<'g> {
    graph: &'g AttributedGraph,
    cfg: FeatureConfig,
    rho: Vec<f64>,
    /// Offset of each attribute's level block inside the N-FVR part.
    level_offsets: Vec<usize>,
    /// Node-major N-FVR column of every (node, attribute) value.
    packed: Vec<u32>,
    nns_dim: usize,
    nfvr_dim: usize,
    layout: Layout,
}

impl<'g> Featurizer<'g> {
    /// `proclivity` must hold PRONE values of `g`'s attributes; only the
    /// target's row is used.
    pub fn new(graph: &'g AttributedGraph, cfg: FeatureConfig, proclivity: &ProclivityMatrix) -> Result<Self> {
        cfg.validate(graph)?;
        let t = graph.attribute_count();
        if proclivity.size() != t || proclivity.names.iter().ne(graph.schema().names()) {
            return Err(Error::Schema("proclivity matrix does not match the graph's attributes".into()));
        }
        if proclivity.generative != cfg.generative {
            return Err(Error::InvalidConfig(format!(
                "proclivity computed with {} but config asks for {}",
                proclivity.generative, cfg.generative
            )));
        }
        let rho = proclivity.row(cfg.target).to_vec();
        Ok(Self::with_rho(graph, cfg, rho))
    }

    /// Featurizer with an explicit `rho(target, j)` row. Panics if an attribute
    /// is still continuous; [`Featurizer::new`] checks this up front.
    pub fn with_rho(graph: &'g AttributedGraph, cfg: FeatureConfig, rho: Vec<f64>) -> Self {
        let schema = graph.schema();
        let mut level_offsets = Vec::with_capacity(schema.len());
        let mut acc = 0;
        for a in &schema.attributes {
            level_offsets.push(acc);
            acc += a.level_count();
        }
        let nfvr_dim = acc;
        let nns_dim = nfvr_dim - schema.attributes[cfg.target].level_count();

        let mut blocks = Vec::new();
        let mut offset = 0;
        if cfg.mode.has_nns() {
            for (j, a) in schema.attributes.iter().enumerate() {
                if j == cfg.target {
                    continue;
                }
                blocks.push(Block {
                    kind: BlockKind::Nns,
                    attribute: a.name.clone(),
                    offset,
                    width: a.level_count(),
                    levels: a.levels.clone(),
                    weight: 1.0,
                });
                offset += a.level_count();
            }
        }
        if cfg.mode.has_nfvr() {
            for (j, a) in schema.attributes.iter().enumerate() {
                blocks.push(Block {
                    kind: BlockKind::Nfvr,
                    attribute: a.name.clone(),
                    offset,
                    width: a.level_count(),
                    levels: a.levels.clone(),
                    weight: rho[j],
                });
                offset += a.level_count();
            }
        }
        let target = &schema.attributes[cfg.target];
        let layout = Layout {
            mode: cfg.mode,
            hops: cfg.hops,
            hop_weights: cfg.hop_weights.clone(),
            generative: cfg.generative,
            degree_normalize: cfg.degree_normalize,
            target: target.name.clone(),
            target_levels: target.levels.clone(),
            target_missing: target.missing.unwrap_or(target.level_count()),
            target_numeric: graph.values(cfg.target).is_some(),
            rho_row: rho.clone(),
            dim: offset,
            blocks,
        };
        let t = schema.len();
        let mut packed = vec![0u32; graph.node_count() * t];
        for (j, &base) in level_offsets.iter().enumerate() {
            let codes = graph.codes(j).expect("level-valued attributes");
            for (v, &c) in codes.iter().enumerate() {
                packed[v * t + j] = (base + c as usize) as u32;
            }
        }
        Featurizer { graph, cfg, rho, level_offsets, packed, nns_dim, nfvr_dim, layout }
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn dim(&self) -> usize {
        self.layout.dim
    }

    pub fn nns_dim(&self) -> usize {
        self.nns_dim
    }

    pub fn nfvr_dim(&self) -> usize {
        self.nfvr_dim
    }

    fn scratch(&self) -> Scratch {
        Scratch { walker: ShellWalker::new(self.graph.node_count()), counts: vec![0; self.nfvr_dim] }
    }

    fn check(&self, v: usize) -> Result<()> {
        if v >= self.graph.node_count() {
            Err(Error::NodeOutOfRange { node: v, count: self.graph.node_count() })
        } else {
            Ok(())
        }
    }

    /// `sum_i w_i * A_j(N^i(v))`, zero vector for empty shells.
    pub fn hop_aggregate(&self, v: usize, j: usize) -> Result<Vec<f64>> {
        self.check(v)?;
        let codes = self.graph.codes(j)?;
        let mut walker = ShellWalker::new(self.graph.node_count());
        let shells = walker.shells(self.graph, v, self.cfg.hops);
        let mut out = vec![0.0; self.graph.attribute(j).level_count()];
        let mut counts = vec![0u32; out.len()];
        for (shell, &w) in shells.iter().zip(&self.cfg.hop_weights) {
            if shell.is_empty() {
                continue;
            }
            counts.fill(0);
            for &y in shell {
                counts[codes[y] as usize] += 1;
            }
            let size = shell.len() as f64;
            for (o, &c) in out.iter_mut().zip(&counts) {
                *o += w * (c as f64 / size);
            }
        }
        Ok(out)
    }

    pub fn nns_vector(&self, v: usize) -> Result<Vec<f64>> {
        self.check(v)?;
        let mut out = vec![0.0; self.nns_dim];
        self.write_nns(v, &mut out);
        Ok(out)
    }

    pub fn nfvr_vector(&self, v: usize) -> Result<Vec<f64>> {
        self.check(v)?;
        let mut out = vec![0.0; self.nfvr_dim];
        let mut scratch = self.scratch();
        self.write_nfvr(&mut scratch, v, &mut out);
        Ok(out)
    }

    pub fn nnfvr_vector(&self, v: usize) -> Result<Vec<f64>> {
        let mut out = self.nns_vector(v)?;
        out.extend(self.nfvr_vector(v)?);
        Ok(out)
    }

    /// Feature vector of `v` under the configured mode.
    pub fn vector(&self, v: usize) -> Result<Vec<f64>> {
        match self.cfg.mode {
            FeatureMode::Nns => self.nns_vector(v),
            FeatureMode::Nfvr => self.nfvr_vector(v),
            FeatureMode::Nnfvr => self.nnfvr_vector(v),
        }
    }

    fn write_nns(&self, v: usize, out: &mut [f64]) {
        out.fill(0.0);
        let mut offset = 0;
        for j in 0..self.graph.attribute_count() {
            if j == self.cfg.target {
                continue;
            }
            let code = self.graph.codes(j).expect("validated")[v] as usize;
            out[offset + code] = 1.0;
            offset += self.graph.attribute(j).level_count();
        }
    }

    fn write_nfvr(&self, scratch: &mut Scratch, v: usize, out: &mut [f64]) {
        out.fill(0.0);
        let g = self.graph;
        let deg = g.adj(v).len();
        if deg == 0 {
            return;
        }
        let t = g.attribute_count();
        let shells = scratch.walker.shells(g, v, self.cfg.hops);
        for (shell, &w) in shells.iter().zip(&self.cfg.hop_weights) {
            if shell.is_empty() {
                continue;
            }
            scratch.counts.fill(0);
            for &y in shell {
                for &col in &self.packed[y * t..(y + 1) * t] {
                    scratch.counts[col as usize] += 1;
                }
            }
            let size = shell.len() as f64;
            for j in 0..t {
                let scale = w * self.rho[j];
                let base = self.level_offsets[j];
                let width = g.attribute(j).level_count();
                for k in base..base + width {
                    out[k] += scale * (scratch.counts[k] as f64 / size);
                }
            }
        }
        if self.cfg.degree_normalize {
            let d = deg as f64;
            out.iter_mut().for_each(|x| *x /= d);
        }
    }

    fn write_row(&self, scratch: &mut Scratch, v: usize, row: &mut [f64]) {
        match self.cfg.mode {
            FeatureMode::Nns => self.write_nns(v, row),
            FeatureMode::Nfvr => self.write_nfvr(scratch, v, row),
            FeatureMode::Nnfvr => {
                let (nns, nfvr) = row.split_at_mut(self.nns_dim);
                self.write_nns(v, nns);
                self.write_nfvr(scratch, v, nfvr);
            }
        }
    }

    fn empty_matrix(&self) -> FeatureMatrix {
        let g = self.graph;
        let target = self.cfg.target;
        let codes = g.codes(target).expect("validated");
        let missing = g.attribute(target).missing;
        FeatureMatrix {
            node_ids: g.node_ids().to_vec(),
            dim: self.dim(),
            data: vec![0.0; g.node_count() * self.dim()],
            layout: self.layout.clone(),
            classes: codes.iter().map(|&c| (Some(c as usize) != missing).then_some(c)).collect(),
            values: g.values(target).map(<[_]>::to_vec),
        }
    }

    /// Feature rows for every node, in node order, built on the worker pool.
    pub fn featurize_all(&self) -> FeatureMatrix {
        let mut fm = self.empty_matrix();
        par::fill_rows(&mut fm.data, self.dim(), || self.scratch(), |s, v, row| self.write_row(s, v, row));
        fm
    }

    /// Single-threaded [`Featurizer::featurize_all`]; same output.
    pub fn featurize_all_sequential(&self) -> FeatureMatrix {
        let mut fm = self.empty_matrix();
        let dim = self.dim();
        if dim > 0 {
            let mut scratch = self.scratch();
            for (v, row) in fm.data.chunks_mut(dim).enumerate() {
                self.write_row(&mut scratch, v, row);
            }
        }
        fm
    }
}

/// Convenience wrapper: validates, featurizes every node.
pub fn featurize_all(g: &AttributedGraph, cfg: &FeatureConfig, proclivity: &ProclivityMatrix) -> Result<FeatureMatrix> {
    Ok(Featurizer::new(g, cfg.clone(), proclivity)?.featurize_all())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gender_graph() -> AttributedGraph {
        // star: 0 is the hub
        let (g, _) = AttributedGraph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        g.with_nominal("gender", &["F", "M", "M", "M", "M"]).unwrap()
    }

    #[test]
    fn aggregate_set_distribution() {
        let (g, _) = AttributedGraph::from_edges(4, &[]).unwrap();
        let g = g.with_nominal("gender", &["M", "M", "F", "?"]).unwrap();
        assert_eq!(aggregate_set(&g, &[0, 1, 2, 3], 0).unwrap(), vec![0.5, 0.25, 0.25]);
        assert_eq!(aggregate_set(&g, &[0, 1], 0).unwrap(), vec![1.0, 0.0, 0.0]);
        assert!(matches!(aggregate_set(&g, &[], 0), Err(Error::EmptySet)));
    }

    #[test]
    fn star_center_block() {
        let g = gender_graph();
        let cfg = FeatureConfig::new(0, 1, FeatureMode::Nfvr);
        let f = Featurizer::with_rho(&g, cfg, vec![1.0]);
        // levels are (F, M, ?): every leaf is M
        assert_eq!(f.nfvr_vector(0).unwrap(), vec![0.0, 0.25, 0.0]);
    }

    #[test]
    fn zero_rho_zeroes_block() {
        let (g, _) = AttributedGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let g = g.with_nominal("a", &["x", "y", "x"]).unwrap().with_nominal("b", &["p", "q", "q"]).unwrap();
        let cfg = FeatureConfig::new(0, 1, FeatureMode::Nfvr);
        let f = Featurizer::with_rho(&g, cfg, vec![0.7, 0.0]);
        let v = f.nfvr_vector(1).unwrap();
        assert!(v[3..].iter().all(|&x| x == 0.0));
        assert!(v[..3].iter().any(|&x| x != 0.0));
    }

    #[test]
    fn isolated_node_is_zero() {
        let (g, _) = AttributedGraph::from_edges(3, &[(0, 1)]).unwrap();
        let g = g.with_nominal("a", &["x", "y", "x"]).unwrap().with_nominal("b", &["p", "q", "?"]).unwrap();
        let cfg = FeatureConfig::new(0, 2, FeatureMode::Nnfvr);
        let f = Featurizer::with_rho(&g, cfg, vec![1.0, 1.0]);
        assert_eq!(f.hop_aggregate(2, 1).unwrap(), vec![0.0; 3]);
        let v = f.nnfvr_vector(2).unwrap();
        assert_eq!(&v[..3], &[0.0, 0.0, 1.0]);
        assert!(v[3..].iter().all(|&x| x == 0.0));
    }

    #[test]
    fn path_two_hops_by_hand() {
        let (g, _) = AttributedGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let g = g.with_nominal("b", &["1", "0", "1"]).unwrap();
        let mut cfg = FeatureConfig::new(0, 2, FeatureMode::Nfvr);
        cfg.hop_weights = vec![1.0, 0.5];
        let f = Featurizer::with_rho(&g, cfg, vec![1.0]);
        // levels (1, 0, ?); from node 0: N^1 = {1} -> (0,1,0); N^2 = {2} -> (1,0,0)
        assert_eq!(f.hop_aggregate(0, 0).unwrap(), vec![0.5, 1.0, 0.0]);
        // deg(0) = 1
        assert_eq!(f.nfvr_vector(0).unwrap(), vec![0.5, 1.0, 0.0]);
        // from node 1: N^1 = {0, 2} -> (1,0,0); N^2 empty
        assert_eq!(f.hop_aggregate(1, 0).unwrap(), vec![1.0, 0.0, 0.0]);
        assert_eq!(f.nfvr_vector(1).unwrap(), vec![0.5, 0.0, 0.0]);
    }

    #[test]
    fn nns_one_hot_excludes_target() {
        let (g, _) = AttributedGraph::from_edges(2, &[(0, 1)]).unwrap();
        let g = g.with_nominal("target", &["a", "b"]).unwrap().with_nominal("c", &["x", "y"]).unwrap();
        let f = Featurizer::with_rho(&g, FeatureConfig::new(0, 1, FeatureMode::Nns), vec![1.0, 1.0]);
        // c levels (x, y, ?)
        assert_eq!(f.nns_vector(1).unwrap(), vec![0.0, 1.0, 0.0]);
        assert_eq!(f.dim(), 3);
    }

    #[test]
    fn config_validation() {
        let g = gender_graph();
        let mut cfg = FeatureConfig::new(0, 2, FeatureMode::Nfvr);
        cfg.hop_weights = vec![1.0];
        assert!(cfg.validate(&g).is_err());
        cfg.hop_weights = vec![1.0, 0.0];
        assert!(cfg.validate(&g).is_err());
        cfg.hop_weights = vec![1.0, 0.5];
        assert!(cfg.validate(&g).is_ok());
        cfg.target = 3;
        assert!(cfg.validate(&g).is_err());
    }

    #[test]
    fn default_weights() {
        assert_eq!(default_hop_weights(3), vec![1.0, 0.5, 0.25]);
        assert_eq!(default_hop_weights(1), vec![1.0]);
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let (g, _) = AttributedGraph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (1, 5)]).unwrap();
        let g = g.with_nominal("a", &["x", "y", "x", "?", "y", "x"]).unwrap();
        let f = Featurizer::with_rho(&g, FeatureConfig::new(0, 3, FeatureMode::Nnfvr), vec![0.3]);
        assert_eq!(f.featurize_all(), f.featurize_all_sequential());
    }
}
