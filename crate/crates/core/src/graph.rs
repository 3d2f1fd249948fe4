//! Attributed graph storage.
//!
//! The graph is undirected and simple, stored in compressed sparse row form
//! with sorted neighbor lists. Node tokens from input files are densified to
//! `0..n` in sorted token order, so serialization and reload give back the same
//! numbering. Every level-valued attribute carries exactly one missing level.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Token used for a missing attribute value in files.
pub const MISSING_TOKEN: &str = "?";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AttributeKind {
    Nominal,
    NumericDiscretized,
    NumericContinuous,
}

impl AttributeKind {
    pub fn has_levels(self) -> bool {
        !matches!(self, AttributeKind::NumericContinuous)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Attribute {
    pub name: String,
    pub kind: AttributeKind,
    /// Level tokens in level-index order. Empty for continuous attributes.
    pub levels: Vec<String>,
    /// Index of the missing level within `levels`.
    pub missing: Option<usize>,
}

impl Attribute {
    pub fn level_count(&self) -> usize {
        self.levels.len()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct AttributeSchema {
    pub attributes: Vec<Attribute>,
}

impl AttributeSchema {
    pub fn len(&self) -> usize {
        self.attributes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.attributes.is_empty()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.attributes.iter().map(|a| a.name.as_str())
    }

    /// Looks up an attribute by name. The error lists the known names.
    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.attributes
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| Error::UnknownAttribute {
                name: name.to_string(),
                known: self.names().collect::<Vec<_>>().join(", "),
            })
    }
}

/// One attribute column. Nominal columns hold only `codes`, continuous
/// columns only `values`; discretized columns keep both so they can be
/// re-binned or used as regression targets.
#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub codes: Option<Vec<u32>>,
    pub values: Option<Vec<Option<f64>>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Binning {
    #[default]
    EqualWidth,
    EqualFrequency,
}

impl std::str::FromStr for Binning {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "equal-width" => Ok(Binning::EqualWidth),
            "equal-frequency" => Ok(Binning::EqualFrequency),
            other => Err(Error::InvalidConfig(format!(
                "unknown binning `{other}` (expected equal-width or equal-frequency)"
            ))),
        }
    }
}

/// Column typing overrides for [`load_graph`].
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SchemaOptions {
    /// Columns always treated as nominal.
    #[serde(default)]
    pub nominal: Vec<String>,
    /// Columns always treated as numeric-continuous.
    #[serde(default)]
    pub numeric: Vec<String>,
}

/// What [`load_graph`] silently dropped.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoadReport {
    pub self_loops: usize,
    pub duplicate_edges: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AttributedGraph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
    edge_count: usize,
    node_ids: Vec<String>,
    schema: AttributeSchema,
    columns: Vec<Column>,
}

impl AttributedGraph {
    /// Builds a graph on `n` nodes named `"0".."n-1"` with no attributes.
    /// Self-loops and duplicate edges are dropped and counted.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<(Self, LoadReport)> {
        let ids = (0..n).map(|i| i.to_string()).collect();
        Self::with_node_ids(ids, edges)
    }

    pub fn with_node_ids(node_ids: Vec<String>, edges: &[(usize, usize)]) -> Result<(Self, LoadReport)> {
        let n = node_ids.len();
        let mut report = LoadReport::default();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::NodeOutOfRange { node: x, count: n });
                }
            }
            if u == v {
                report.self_loops += 1;
                continue;
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::with_capacity(2 * edges.len());
        offsets.push(0);
        let mut dup_endpoints = 0;
        for list in &mut adj {
            list.sort_unstable();
            let before = list.len();
            list.dedup();
            dup_endpoints += before - list.len();
            targets.extend_from_slice(list);
            offsets.push(targets.len());
        }
        report.duplicate_edges = dup_endpoints / 2;
        let edge_count = targets.len() / 2;
        Ok((
            AttributedGraph {
                offsets,
                targets,
                edge_count,
                node_ids,
                schema: AttributeSchema::default(),
                columns: Vec::new(),
            },
            report,
        ))
    }

    /// Appends a nominal attribute from per-node tokens. Levels are created in
    /// order of first appearance; `?` maps to the missing level, which is
    /// always present and always last.
    pub fn with_nominal<S: AsRef<str>>(mut self, name: &str, tokens: &[S]) -> Result<Self> {
        if tokens.len() != self.node_count() {
            return Err(Error::Schema(format!(
                "attribute `{name}` has {} values for {} nodes",
                tokens.len(),
                self.node_count()
            )));
        }
        let (attr, codes) = nominal_from_tokens(name, tokens.iter().map(|t| t.as_ref()));
        self.push_attribute(attr, Column { codes: Some(codes), values: None })?;
        Ok(self)
    }

    /// Appends a numeric-continuous attribute; `None` is missing.
    pub fn with_continuous(mut self, name: &str, values: Vec<Option<f64>>) -> Result<Self> {
        if values.len() != self.node_count() {
            return Err(Error::Schema(format!(
                "attribute `{name}` has {} values for {} nodes",
                values.len(),
                self.node_count()
            )));
        }
        let attr = Attribute {
            name: name.to_string(),
            kind: AttributeKind::NumericContinuous,
            levels: Vec::new(),
            missing: None,
        };
        self.push_attribute(attr, Column { codes: None, values: Some(values) })?;
        Ok(self)
    }

    fn push_attribute(&mut self, attr: Attribute, column: Column) -> Result<()> {
        if self.schema.attributes.iter().any(|a| a.name == attr.name) {
            return Err(Error::Schema(format!("duplicate attribute `{}`", attr.name)));
        }
        self.schema.attributes.push(attr);
        self.columns.push(column);
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.node_ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn node_ids(&self) -> &[String] {
        &self.node_ids
    }

    pub fn node_id(&self, v: usize) -> &str {
        &self.node_ids[v]
    }

    pub fn schema(&self) -> &AttributeSchema {
        &self.schema
    }

    pub fn attribute(&self, i: usize) -> &Attribute {
        &self.schema.attributes[i]
    }

    pub fn attribute_count(&self) -> usize {
        self.schema.len()
    }

    fn check_node(&self, v: usize) -> Result<()> {
        if v >= self.node_count() {
            Err(Error::NodeOutOfRange { node: v, count: self.node_count() })
        } else {
            Ok(())
        }
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> Result<&[usize]> {
        self.check_node(v)?;
        Ok(self.adj(v))
    }

    #[inline]
    pub(crate) fn adj(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_node(v)?;
        Ok(self.offsets[v + 1] - self.offsets[v])
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.node_count()).flat_map(move |u| {
            self.adj(u).iter().filter(move |&&v| u < v).map(move |&v| (u, v))
        })
    }

    /// Both orientations of every edge, in CSR order.
    pub(crate) fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.node_count()).flat_map(move |u| self.adj(u).iter().map(move |&v| (u, v)))
    }

    /// Level codes of a level-valued attribute.
    pub fn codes(&self, attr: usize) -> Result<&[u32]> {
        self.columns[attr]
            .codes
            .as_deref()
            .ok_or_else(|| Error::ContinuousAttribute(self.attribute(attr).name.clone()))
    }

    /// Raw numeric values, available for continuous and discretized attributes.
    pub fn values(&self, attr: usize) -> Option<&[Option<f64>]> {
        self.columns[attr].values.as_deref()
    }

    /// Level index of `v` under a level-valued attribute.
    pub fn level(&self, attr: usize, v: usize) -> Result<usize> {
        self.check_node(v)?;
        Ok(self.codes(attr)?[v] as usize)
    }

    /// Whether `v` carries an observed (non-missing) value for `attr`.
    pub fn is_observed(&self, attr: usize, v: usize) -> bool {
        let col = &self.columns[attr];
        match (&col.codes, &col.values) {
            (Some(codes), _) => Some(codes[v] as usize) != self.attribute(attr).missing,
            (None, Some(values)) => values[v].is_some(),
            (None, None) => false,
        }
    }

    /// Returns a copy in which `nodes` carry the missing value for `attr`.
    pub fn masked(&self, attr: usize, nodes: &[usize]) -> Result<Self> {
        let mut out = self.clone();
        let missing = out.attribute(attr).missing;
        let col = &mut out.columns[attr];
        for &v in nodes {
            if v >= self.node_count() {
                return Err(Error::NodeOutOfRange { node: v, count: self.node_count() });
            }
            if let (Some(codes), Some(m)) = (col.codes.as_mut(), missing) {
                codes[v] = m as u32;
            }
            if let Some(values) = col.values.as_mut() {
                values[v] = None;
            }
        }
        Ok(out)
    }

    /// Exact-distance shell `{u : d(u, v) = h}`, sorted ascending.
    pub fn hop_shell(&self, v: usize, h: usize) -> Result<Vec<usize>> {
        self.check_node(v)?;
        if h == 0 {
            return Ok(vec![v]);
        }
        let mut walker = ShellWalker::new(self.node_count());
        let mut shell = walker.shells(self, v, h)[h - 1].clone();
        shell.sort_unstable();
        Ok(shell)
    }

    /// Bins a continuous (or already discretized) attribute into `bins` levels
    /// plus the missing level. With equal-width binning a constant column lands
    /// entirely in bin 0 and the maximum always falls into the top bin.
    pub fn discretize(&self, attr: usize, bins: usize, binning: Binning) -> Result<Self> {
        let a = self.attribute(attr);
        if a.kind == AttributeKind::Nominal {
            return Err(Error::NotContinuous(a.name.clone()));
        }
        if bins < 2 {
            return Err(Error::InvalidConfig(format!("bins must be >= 2, got {bins}")));
        }
        let values = self.columns[attr].values.clone().expect("numeric column keeps raw values");
        let codes = bin_values(&values, bins, binning).ok_or_else(|| Error::AllMissing(a.name.clone()))?;
        let mut levels: Vec<String> = (0..bins).map(|b| format!("bin{b}")).collect();
        levels.push(MISSING_TOKEN.to_string());
        let mut out = self.clone();
        out.schema.attributes[attr] = Attribute {
            name: a.name.clone(),
            kind: AttributeKind::NumericDiscretized,
            levels,
            missing: Some(bins),
        };
        out.columns[attr] = Column { codes: Some(codes), values: Some(values) };
        Ok(out)
    }

    /// Discretizes every continuous attribute.
    pub fn discretize_all(&self, bins: usize, binning: Binning) -> Result<Self> {
        let mut g = self.clone();
        for i in 0..g.attribute_count() {
            if g.attribute(i).kind == AttributeKind::NumericContinuous {
                g = g.discretize(i, bins, binning)?;
            }
        }
        Ok(g)
    }

    /// Writes the edge list, one `u v` line per edge with `u < v`.
    pub fn write_edges<W: Write>(&self, w: W) -> Result<()> {
        let mut w = BufWriter::new(w);
        for (u, v) in self.edges() {
            writeln!(w, "{} {}", self.node_ids[u], self.node_ids[v])?;
        }
        w.flush()?;
        Ok(())
    }

    /// Writes the attribute CSV. Discretized columns are written as their raw
    /// numeric values.
    pub fn write_attributes<W: Write>(&self, w: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(w);
        let mut header = vec!["node".to_string()];
        header.extend(self.schema.names().map(str::to_string));
        wtr.write_record(&header)?;
        let mut row = Vec::with_capacity(header.len());
        for v in 0..self.node_count() {
            row.clear();
            row.push(self.node_ids[v].clone());
            for (a, col) in self.schema.attributes.iter().zip(&self.columns) {
                let cell = match (&col.values, &col.codes) {
                    (Some(values), _) => match values[v] {
                        Some(x) => format!("{x}"),
                        None => MISSING_TOKEN.to_string(),
                    },
                    (None, Some(codes)) => {
                        let code = codes[v] as usize;
                        if Some(code) == a.missing {
                            MISSING_TOKEN.to_string()
                        } else {
                            a.levels[code].clone()
                        }
                    }
                    (None, None) => MISSING_TOKEN.to_string(),
                };
                row.push(cell);
            }
            wtr.write_record(&row)?;
        }
        wtr.flush()?;
        Ok(())
    }

    pub fn save(&self, edges_path: &Path, attrs_path: &Path) -> Result<()> {
        self.write_edges(File::create(edges_path)?)?;
        self.write_attributes(File::create(attrs_path)?)?;
        Ok(())
    }

    /// Checks the structural invariants. Used by tests and after loading.
    pub fn validate(&self) -> Result<()> {
        let n = self.node_count();
        let mut degree_sum = 0;
        for v in 0..n {
            let list = self.adj(v);
            degree_sum += list.len();
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Schema(format!("neighbor list of {v} not strictly sorted")));
            }
            for &u in list {
                if u == v {
                    return Err(Error::Schema(format!("self-loop at {v}")));
                }
                if self.adj(u).binary_search(&v).is_err() {
                    return Err(Error::Schema(format!("edge {v}-{u} not symmetric")));
                }
            }
        }
        if degree_sum != 2 * self.edge_count {
            return Err(Error::Schema("degree sum differs from 2m".into()));
        }
        for (a, col) in self.schema.attributes.iter().zip(&self.columns) {
            if let Some(codes) = &col.codes {
                if codes.len() != n || codes.iter().any(|&c| c as usize >= a.levels.len()) {
                    return Err(Error::Schema(format!("bad codes in `{}`", a.name)));
                }
                if a.missing.is_none() || a.levels.len() < 2 {
                    return Err(Error::Schema(format!("`{}` needs a missing level", a.name)));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for AttributedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "graph(n={}, m={}, t={})", self.node_count(), self.edge_count, self.attribute_count())
    }
}

/// Reusable truncated BFS. Visit marks are epoch-stamped so repeated calls
/// cost only the edges inside the explored ball, not `O(n)`.
#[derive(Debug, Clone)]
pub struct ShellWalker {
    stamp: Vec<u32>,
    epoch: u32,
    shells: Vec<Vec<usize>>,
}

impl ShellWalker {
    pub fn new(n: usize) -> Self {
        ShellWalker { stamp: vec![0; n], epoch: 0, shells: Vec::new() }
    }

    /// Returns shells `N^1(v) ..= N^h(v)` in BFS discovery order. Shell `i`
    /// lives at index `i - 1`.
    pub fn shells(&mut self, g: &AttributedGraph, v: usize, h: usize) -> &[Vec<usize>] {
        if self.stamp.len() < g.node_count() {
            self.stamp.resize(g.node_count(), 0);
        }
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.fill(0);
            self.epoch = 1;
        }
        let epoch = self.epoch;
        self.shells.resize_with(h, Vec::new);
        for s in &mut self.shells {
            s.clear();
        }
        if h == 0 {
            return &self.shells[..0];
        }
        self.shells[0].extend_from_slice(g.adj(v));
        if h == 1 {
            return &self.shells[..1];
        }
        self.stamp[v] = epoch;
        for &u in g.adj(v) {
            self.stamp[u] = epoch;
        }
        for depth in 1..h {
            let (done, rest) = self.shells.split_at_mut(depth);
            let frontier = &done[depth - 1];
            let next = &mut rest[0];
            for &x in frontier {
                for &y in g.adj(x) {
                    if self.stamp[y] != epoch {
                        self.stamp[y] = epoch;
                        next.push(y);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
        }
        &self.shells[..h]
    }
}

fn nominal_from_tokens<'a>(name: &str, tokens: impl Iterator<Item = &'a str>) -> (Attribute, Vec<u32>) {
    let mut index: HashMap<&str, u32> = HashMap::new();
    let mut levels: Vec<String> = Vec::new();
    let mut raw: Vec<Option<u32>> = Vec::new();
    for tok in tokens {
        if tok == MISSING_TOKEN {
            raw.push(None);
            continue;
        }
        let next = levels.len() as u32;
        let code = *index.entry(tok).or_insert_with(|| {
            levels.push(tok.to_string());
            next
        });
        raw.push(Some(code));
    }
    let missing = levels.len();
    levels.push(MISSING_TOKEN.to_string());
    let codes = raw.into_iter().map(|c| c.unwrap_or(missing as u32)).collect();
    (
        Attribute { name: name.to_string(), kind: AttributeKind::Nominal, levels, missing: Some(missing) },
        codes,
    )
}

/// Returns `None` when every value is missing. Missing values get code `bins`.
fn bin_values(values: &[Option<f64>], bins: usize, binning: Binning) -> Option<Vec<u32>> {
    let observed: Vec<f64> = values.iter().flatten().copied().collect();
    if observed.is_empty() {
        return None;
    }
    let codes = match binning {
        Binning::EqualWidth => {
            let lo = observed.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = observed.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let width = (hi - lo) / bins as f64;
            values
                .iter()
                .map(|x| match x {
                    None => bins as u32,
                    Some(_) if width <= 0.0 => 0,
                    Some(x) => (((x - lo) / width).floor() as usize).min(bins - 1) as u32,
                })
                .collect()
        }
        Binning::EqualFrequency => {
            let mut sorted = observed.clone();
            sorted.sort_by(f64::total_cmp);
            let count = sorted.len();
            values
                .iter()
                .map(|x| match x {
                    None => bins as u32,
                    Some(x) => {
                        // first rank of this value, so ties share a bin
                        let rank = sorted.partition_point(|y| y < x);
                        ((rank * bins) / count).min(bins - 1) as u32
                    }
                })
                .collect()
        }
    };
    Some(codes)
}

/// Sort key for node tokens: numeric when every token is an integer.
fn sort_node_tokens(tokens: &mut [String]) {
    if tokens.iter().all(|t| t.parse::<i64>().is_ok()) {
        tokens.sort_by_key(|t| t.parse::<i64>().unwrap());
    } else {
        tokens.sort();
    }
}

fn is_integral(x: f64) -> bool {
    x.fract() == 0.0
}

/// Reads an edge list and an attribute CSV into a validated graph.
///
/// Edge list: one edge per line, two whitespace-separated node tokens, `#`
/// comments and blank lines skipped. Attribute CSV: header `node,<attr>...`,
/// missing token `?`. A column whose observed values all parse as numbers and
/// include at least one non-integer is numeric-continuous; integer-coded and
/// text columns are nominal. `opts` overrides either way.
///
/// Nodes that appear only in the attribute file become isolated nodes. A node
/// that appears in the edge list but not in the attribute file is an error.
pub fn load_graph<E: BufRead, A: Read>(
    edges: E,
    edges_name: &str,
    attrs: A,
    attrs_name: &str,
    opts: &SchemaOptions,
) -> Result<(AttributedGraph, LoadReport)> {
    let mut raw_edges: Vec<(String, String, usize)> = Vec::new();
    for (lineno, line) in edges.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut parts = trimmed.split_whitespace();
        match (parts.next(), parts.next(), parts.next()) {
            (Some(a), Some(b), None) => raw_edges.push((a.to_string(), b.to_string(), lineno + 1)),
            _ => {
                return Err(Error::Parse {
                    source_name: edges_name.to_string(),
                    line: lineno + 1,
                    msg: format!("expected two node tokens, got `{trimmed}`"),
                })
            }
        }
    }

    let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(attrs);
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    if header.first().map(String::as_str) != Some("node") {
        return Err(Error::Parse {
            source_name: attrs_name.to_string(),
            line: 1,
            msg: "header must start with `node`".into(),
        });
    }
    let names: Vec<String> = header[1..].to_vec();
    {
        let mut seen = HashSet::new();
        if let Some(dup) = names.iter().find(|n| !seen.insert(n.as_str())) {
            return Err(Error::Schema(format!("duplicate attribute column `{dup}`")));
        }
    }
    let mut rows: Vec<(String, Vec<String>)> = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let line = i + 2;
        let rec = rec.map_err(|e| Error::Parse {
            source_name: attrs_name.to_string(),
            line,
            msg: e.to_string(),
        })?;
        if rec.len() != header.len() {
            return Err(Error::Parse {
                source_name: attrs_name.to_string(),
                line,
                msg: format!("expected {} fields, found {}", header.len(), rec.len()),
            });
        }
        rows.push((rec[0].to_string(), rec.iter().skip(1).map(str::to_string).collect()));
    }

    let mut attr_nodes: HashMap<&str, usize> = HashMap::with_capacity(rows.len());
    for (i, (id, _)) in rows.iter().enumerate() {
        if attr_nodes.insert(id.as_str(), i).is_some() {
            return Err(Error::Schema(format!("node `{id}` listed twice in {attrs_name}")));
        }
    }
    for (a, b, line) in &raw_edges {
        for tok in [a, b] {
            if !attr_nodes.contains_key(tok.as_str()) {
                return Err(Error::Parse {
                    source_name: edges_name.to_string(),
                    line: *line,
                    msg: format!("node `{tok}` has no row in {attrs_name}"),
                });
            }
        }
    }

    let mut ids: Vec<String> = rows.iter().map(|(id, _)| id.clone()).collect();
    sort_node_tokens(&mut ids);
    let dense: HashMap<&str, usize> = ids.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let edge_pairs: Vec<(usize, usize)> =
        raw_edges.iter().map(|(a, b, _)| (dense[a.as_str()], dense[b.as_str()])).collect();
    let (mut g, report) = AttributedGraph::with_node_ids(ids.clone(), &edge_pairs)?;

    // row index of each dense node
    let order: Vec<usize> = ids.iter().map(|id| attr_nodes[id.as_str()]).collect();
    for (col, name) in names.iter().enumerate() {
        let cells: Vec<&str> = order.iter().map(|&r| rows[r].1[col].as_str()).collect();
        let forced_nominal = opts.nominal.iter().any(|n| n == name);
        let forced_numeric = opts.numeric.iter().any(|n| n == name);
        if forced_nominal && forced_numeric {
            return Err(Error::InvalidConfig(format!("`{name}` forced both nominal and numeric")));
        }
        let parsed: Vec<Option<Option<f64>>> = cells
            .iter()
            .map(|c| if *c == MISSING_TOKEN { Some(None) } else { c.parse::<f64>().ok().map(Some) })
            .collect();
        let all_numeric = parsed.iter().all(Option::is_some);
        let values: Vec<Option<f64>> = parsed.iter().map(|p| p.flatten()).collect();
        let any_fractional = values.iter().flatten().any(|&x| !is_integral(x));
        let numeric = if forced_numeric {
            if !all_numeric {
                let (i, bad) = cells
                    .iter()
                    .enumerate()
                    .find(|(i, _)| parsed[*i].is_none())
                    .expect("some cell failed to parse");
                return Err(Error::Parse {
                    source_name: attrs_name.to_string(),
                    line: order[i] + 2,
                    msg: format!("`{bad}` in numeric column `{name}` is not a number"),
                });
            }
            true
        } else {
            !forced_nominal && all_numeric && any_fractional
        };
        g = if numeric {
            g.with_continuous(name, values)?
        } else {
            g.with_nominal(name, &cells)?
        };
    }
    g.validate()?;
    if report.self_loops + report.duplicate_edges > 0 {
        log::info!(
            "dropped {} self-loops and {} duplicate edges while loading {edges_name}",
            report.self_loops,
            report.duplicate_edges
        );
    }
    Ok((g, report))
}

/// File-path convenience wrapper around [`load_graph`].
pub fn load_graph_files(edges: &Path, attrs: &Path, opts: &SchemaOptions) -> Result<(AttributedGraph, LoadReport)> {
    let e = BufReader::new(File::open(edges)?);
    let a = BufReader::new(File::open(attrs)?);
    load_graph(e, &edges.display().to_string(), a, &attrs.display().to_string(), opts)
}
