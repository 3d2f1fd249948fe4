//! Mixing matrices and the PRONE proclivity index.
//!
//! A mixing matrix counts, for a pair of attributes `(a_i, a_j)`, the edges
//! joining a node with level `s` of `a_i` to a node with level `r` of `a_j`.
//! Each undirected edge is counted in both orientations, so `M(a_i, a_i)` is
//! symmetric and `M(a_j, a_i)` is the transpose of `M(a_i, a_j)`.
//!
//! The divergence of a count matrix under a generative function `f` is
//!
//! ```text
//!        sum_i [f(e_i.) - sum_j f(e_ij)] + sum_j [f(e_.j) - sum_i f(e_ij)]
//! D_f = -------------------------------------------------------------------
//!         sum_i f(e_i.) + sum_j f(e_.j) - 2 sum_ij f(e_i. e_.j / e_..)
//! ```
//!
//! and PRONE is `rho = 1 - D_f`. A deterministic association (one nonzero per
//! row and column) has `D_f = 0`, so `rho = 1`; an independence table has
//! `D_f = 1`, so `rho = 0`.

use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::AttributedGraph;
use crate::par;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GenerativeFunction {
    Square,
    Cube,
    #[default]
    XLogX,
}

impl GenerativeFunction {
    /// `f(x)`, with `0 log 0 = 0`.
    #[inline]
    pub fn apply(self, x: f64) -> f64 {
        match self {
            GenerativeFunction::Square => x * x,
            GenerativeFunction::Cube => x * x * x,
            GenerativeFunction::XLogX => {
                if x == 0.0 {
                    0.0
                } else {
                    x * x.ln()
                }
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GenerativeFunction::Square => "square",
            GenerativeFunction::Cube => "cube",
            GenerativeFunction::XLogX => "xlogx",
        }
    }

    pub const ALL: [GenerativeFunction; 3] =
        [GenerativeFunction::Square, GenerativeFunction::Cube, GenerativeFunction::XLogX];
}

impl FromStr for GenerativeFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "square" => Ok(GenerativeFunction::Square),
            "cube" => Ok(GenerativeFunction::Cube),
            "xlogx" => Ok(GenerativeFunction::XLogX),
            other => Err(Error::InvalidConfig(format!(
                "unknown generative function `{other}` (expected square, cube or xlogx)"
            ))),
        }
    }
}

impl fmt::Display for GenerativeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Level-pair edge counts between two attributes, with cached margins.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixingMatrix {
    rows: usize,
    cols: usize,
    counts: Vec<u64>,
    row_sums: Vec<u64>,
    col_sums: Vec<u64>,
    total: u64,
    pair: (usize, usize),
}

impl MixingMatrix {
    /// Builds a matrix from row-major counts. `pair` is left as `(0, 0)`.
    pub fn from_counts(rows: usize, cols: usize, counts: Vec<u64>) -> Self {
        assert_eq!(counts.len(), rows * cols, "counts must be rows * cols long");
        let mut m = MixingMatrix {
            rows,
            cols,
            counts,
            row_sums: Vec::new(),
            col_sums: Vec::new(),
            total: 0,
            pair: (0, 0),
        };
        m.refresh_sums();
        m
    }

    fn refresh_sums(&mut self) {
        self.row_sums = self.counts.chunks(self.cols.max(1)).map(|r| r.iter().sum()).collect();
        self.row_sums.resize(self.rows, 0);
        self.col_sums = vec![0; self.cols];
        for row in self.counts.chunks(self.cols.max(1)) {
            for (c, &x) in self.col_sums.iter_mut().zip(row) {
                *c += x;
            }
        }
        self.total = self.row_sums.iter().sum();
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, s: usize, r: usize) -> u64 {
        self.counts[s * self.cols + r]
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn row_sums(&self) -> &[u64] {
        &self.row_sums
    }

    pub fn col_sums(&self) -> &[u64] {
        &self.col_sums
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn pair(&self) -> (usize, usize) {
        self.pair
    }

    /// Copy with the given row and column zeroed.
    pub fn without(&self, row: Option<usize>, col: Option<usize>) -> Self {
        let mut m = self.clone();
        for s in 0..m.rows {
            for r in 0..m.cols {
                if Some(s) == row || Some(r) == col {
                    m.counts[s * m.cols + r] = 0;
                }
            }
        }
        m.refresh_sums();
        m
    }

    pub fn transpose(&self) -> Self {
        let mut counts = vec![0; self.counts.len()];
        for s in 0..self.rows {
            for r in 0..self.cols {
                counts[r * self.rows + s] = self.get(s, r);
            }
        }
        let mut m = MixingMatrix::from_counts(self.cols, self.rows, counts);
        m.pair = (self.pair.1, self.pair.0);
        m
    }
}

/// Mixing matrix of attributes `i` (rows) and `j` (columns), from one scan
/// over the adjacency arrays.
pub fn mixing_matrix(g: &AttributedGraph, i: usize, j: usize) -> Result<MixingMatrix> {
    let ci = g.codes(i)?;
    let cj = g.codes(j)?;
    let rows = g.attribute(i).level_count();
    let cols = g.attribute(j).level_count();
    let mut counts = vec![0u64; rows * cols];
    // every undirected edge appears once per orientation in the CSR arrays
    for (u, v) in g.arcs() {
        counts[ci[u] as usize * cols + cj[v] as usize] += 1;
    }
    let mut m = MixingMatrix::from_counts(rows, cols, counts);
    m.pair = (i, j);
    Ok(m)
}

/// Divergence `D_f` of a count matrix. Fails with
/// [`Error::UndefinedDivergence`] when the matrix is empty or the
/// denominator vanishes (e.g. only one populated row and column).
pub fn divergence(m: &MixingMatrix, f: GenerativeFunction) -> Result<f64> {
    if m.total == 0 {
        return Err(Error::UndefinedDivergence);
    }
    let total = m.total as f64;
    let f_rows: f64 = m.row_sums.iter().map(|&x| f.apply(x as f64)).sum();
    let f_cols: f64 = m.col_sums.iter().map(|&x| f.apply(x as f64)).sum();
    let f_cells: f64 = m.counts.iter().map(|&x| f.apply(x as f64)).sum();

    let mut numerator = 0.0;
    for s in 0..m.rows {
        let row: f64 = (0..m.cols).map(|r| f.apply(m.get(s, r) as f64)).sum();
        numerator += f.apply(m.row_sums[s] as f64) - row;
    }
    for r in 0..m.cols {
        let col: f64 = (0..m.rows).map(|s| f.apply(m.get(s, r) as f64)).sum();
        numerator += f.apply(m.col_sums[r] as f64) - col;
    }

    let mut expected = 0.0;
    for &rs in &m.row_sums {
        for &cs in &m.col_sums {
            expected += f.apply(cs as f64 * rs as f64 / total);
        }
    }
    let denominator = f_rows + f_cols - 2.0 * expected;

    let scale = m.row_sums.iter().chain(&m.col_sums).map(|&x| f.apply(x as f64).abs()).sum::<f64>()
        + f_cells.abs();
    if denominator.abs() <= 1e-12 * scale || !denominator.is_finite() {
        return Err(Error::UndefinedDivergence);
    }
    let d = numerator / denominator;
    if d.is_finite() {
        Ok(d)
    } else {
        Err(Error::UndefinedDivergence)
    }
}

/// A PRONE value. `undefined` marks the zero substitution for an undefined
/// divergence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Prone {
    pub value: f64,
    pub undefined: bool,
}

/// `rho = 1 - D_f`, or `0` (flagged) when the divergence is undefined.
pub fn prone(m: &MixingMatrix, f: GenerativeFunction) -> Prone {
    match divergence(m, f) {
        Ok(d) => Prone { value: 1.0 - d, undefined: false },
        Err(_) => Prone { value: 0.0, undefined: true },
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProneOptions {
    /// Zero the missing level's row and column before computing divergence.
    #[serde(default)]
    pub exclude_missing: bool,
}

/// `t x t` PRONE values for every attribute pair. Row `i` holds
/// `rho(a_i, a_j)` for all `j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProclivityMatrix {
    pub names: Vec<String>,
    pub generative: GenerativeFunction,
    /// Row-major, `names.len()` squared entries.
    pub values: Vec<f64>,
    /// Pairs whose value is the undefined-divergence substitution.
    pub undefined: Vec<(usize, usize)>,
}

impl ProclivityMatrix {
    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.size() + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let t = self.size();
        &self.values[i * t..(i + 1) * t]
    }

    /// Writes the heatmap CSV: header `attribute,<names>`, six decimals.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(w);
        let mut header = vec!["attribute".to_string()];
        header.extend(self.names.iter().cloned());
        wtr.write_record(&header)?;
        for (i, name) in self.names.iter().enumerate() {
            let mut rec = vec![name.clone()];
            rec.extend(self.row(i).iter().map(|x| format!("{x:.6}")));
            wtr.write_record(&rec)?;
        }
        wtr.flush()?;
        Ok(())
    }

    /// Parses a heatmap CSV back into names and row-major values.
    pub fn read_csv<R: Read>(r: R) -> Result<(Vec<String>, Vec<f64>)> {
        let mut rdr = csv::Reader::from_reader(r);
        let names: Vec<String> = rdr.headers()?.iter().skip(1).map(str::to_string).collect();
        let mut values = Vec::with_capacity(names.len() * names.len());
        for (line, rec) in rdr.records().enumerate() {
            let rec = rec?;
            for cell in rec.iter().skip(1) {
                values.push(cell.parse::<f64>().map_err(|e| Error::Parse {
                    source_name: "heatmap".into(),
                    line: line + 2,
                    msg: e.to_string(),
                })?);
            }
        }
        if values.len() != names.len() * names.len() {
            return Err(Error::Schema("heatmap is not square".into()));
        }
        Ok((names, values))
    }
}

impl fmt::Display for ProclivityMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.names.iter().map(String::len).max().unwrap_or(0).max(10);
        write!(f, "{:width$}", "")?;
        for name in &self.names {
            write!(f, " {name:>width$}")?;
        }
        writeln!(f)?;
        for (i, name) in self.names.iter().enumerate() {
            write!(f, "{name:width$}")?;
            for x in self.row(i) {
                write!(f, " {x:>width$.6}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// PRONE values for all attribute pairs of `g`. Pairs are independent and
/// are computed in parallel.
pub fn prone_matrix(g: &AttributedGraph, f: GenerativeFunction, opts: ProneOptions) -> Result<ProclivityMatrix> {
    let t = g.attribute_count();
    for i in 0..t {
        g.codes(i)?;
    }
    let cells = par::map_range(t * t, |k| {
        let (i, j) = (k / t, k % t);
        let mut m = mixing_matrix(g, i, j).expect("level-valued attributes checked above");
        if opts.exclude_missing {
            m = m.without(g.attribute(i).missing, g.attribute(j).missing);
        }
        prone(&m, f)
    });
    let mut undefined = Vec::new();
    for (k, p) in cells.iter().enumerate() {
        if p.undefined {
            log::warn!(
                "PRONE undefined for ({}, {}); using 0",
                g.attribute(k / t).name,
                g.attribute(k % t).name
            );
            undefined.push((k / t, k % t));
        }
    }
    Ok(ProclivityMatrix {
        names: g.schema().names().map(str::to_string).collect(),
        generative: f,
        values: cells.iter().map(|p| p.value).collect(),
        undefined,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * (1.0 + b.abs())
    }

    #[test]
    fn single_edge_counts_both_orientations() {
        let (g, _) = AttributedGraph::from_edges(2, &[(0, 1)]).unwrap();
        let g = g.with_nominal("a", &["A", "B"]).unwrap();
        let m = mixing_matrix(&g, 0, 0).unwrap();
        assert_eq!(m.get(0, 1), 1);
        assert_eq!(m.get(1, 0), 1);
        assert_eq!(m.get(0, 0), 0);
        assert_eq!(m.get(1, 1), 0);
        assert_eq!(m.total(), 2);
    }

    #[test]
    fn triangle_same_value() {
        let (g, _) = AttributedGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let g = g.with_nominal("a", &["A", "A", "A"]).unwrap();
        let m = mixing_matrix(&g, 0, 0).unwrap();
        assert_eq!(m.get(0, 0), 6);
        assert_eq!(m.total(), 6);
    }

    #[test]
    fn continuous_attribute_rejected() {
        let (g, _) = AttributedGraph::from_edges(2, &[(0, 1)]).unwrap();
        let g = g.with_continuous("x", vec![Some(0.1), Some(0.2)]).unwrap();
        assert!(matches!(mixing_matrix(&g, 0, 0), Err(Error::ContinuousAttribute(_))));
    }

    #[test]
    fn diagonal_and_uniform_divergence() {
        let diag = MixingMatrix::from_counts(2, 2, vec![2, 0, 0, 3]);
        let uniform = MixingMatrix::from_counts(2, 2, vec![1, 1, 1, 1]);
        assert_eq!(divergence(&diag, GenerativeFunction::Square).unwrap(), 0.0);
        assert!(close(divergence(&uniform, GenerativeFunction::Square).unwrap(), 1.0));
        assert_eq!(prone(&diag, GenerativeFunction::Square).value, 1.0);
        assert!(prone(&uniform, GenerativeFunction::Square).value.abs() < 1e-12);
    }

    #[test]
    fn anti_diagonal_is_fully_proclive() {
        let m = MixingMatrix::from_counts(2, 2, vec![0, 5, 5, 0]);
        for f in GenerativeFunction::ALL {
            assert!(close(prone(&m, f).value, 1.0), "{f}");
        }
    }

    #[test]
    fn one_by_one_is_undefined() {
        let m = MixingMatrix::from_counts(1, 1, vec![7]);
        assert!(matches!(divergence(&m, GenerativeFunction::Square), Err(Error::UndefinedDivergence)));
        let p = prone(&m, GenerativeFunction::XLogX);
        assert_eq!(p, Prone { value: 0.0, undefined: true });
        let empty = MixingMatrix::from_counts(2, 2, vec![0; 4]);
        assert!(prone(&empty, GenerativeFunction::Cube).undefined);
    }

    #[test]
    fn xlogx_at_zero() {
        assert_eq!(GenerativeFunction::XLogX.apply(0.0), 0.0);
        for f in GenerativeFunction::ALL {
            assert_eq!(f.apply(0.0), 0.0);
        }
    }

    #[test]
    fn exclude_missing_zeroes_row_and_col() {
        let m = MixingMatrix::from_counts(2, 2, vec![1, 2, 3, 4]);
        let w = m.without(Some(1), Some(1));
        assert_eq!(w.counts(), &[1, 0, 0, 0]);
        assert_eq!(w.total(), 1);
    }

    #[test]
    fn single_attribute_matrix_is_prone_of_self_mixing() {
        let (g, _) = AttributedGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let g = g.with_nominal("a", &["x", "y", "y", "x"]).unwrap();
        let p = prone_matrix(&g, GenerativeFunction::XLogX, ProneOptions::default()).unwrap();
        assert_eq!(p.size(), 1);
        let direct = prone(&mixing_matrix(&g, 0, 0).unwrap(), GenerativeFunction::XLogX).value;
        assert_eq!(p.get(0, 0), direct);
    }

    #[test]
    fn heatmap_csv_layout() {
        let p = ProclivityMatrix {
            names: vec!["a".into(), "b".into()],
            generative: GenerativeFunction::XLogX,
            values: vec![1.0, 0.25, 0.25, -0.125],
            undefined: vec![],
        };
        let mut buf = Vec::new();
        p.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(text, "attribute,a,b\na,1.000000,0.250000\nb,0.250000,-0.125000\n");
        let (names, values) = ProclivityMatrix::read_csv(buf.as_slice()).unwrap();
        assert_eq!(names, p.names);
        for (a, b) in values.iter().zip(&p.values) {
            assert!((a - b).abs() < 1e-6);
        }
    }
}
