//! Independent reference implementations shared by the integration tests.
//! Nothing here calls into the library beyond reading a graph's structure.
#![allow(dead_code)]

use nfvr::graph::MISSING_TOKEN;
use nfvr::models::Samples;
use nfvr::{AttributedGraph, GenerativeFunction};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const INF: usize = usize::MAX;

/// G(n, p) with nominal attributes; `levels[a]` levels for attribute `a`,
/// each value missing with probability `p_missing`.
pub fn random_graph(n: usize, p: f64, levels: &[usize], p_missing: f64, seed: u64) -> AttributedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    let (mut g, _) = AttributedGraph::from_edges(n, &edges).unwrap();
    for (a, &l) in levels.iter().enumerate() {
        let toks: Vec<String> = (0..n)
            .map(|_| {
                if rng.gen::<f64>() < p_missing {
                    MISSING_TOKEN.to_string()
                } else {
                    format!("x{}", rng.gen_range(0..l))
                }
            })
            .collect();
        g = g.with_nominal(&format!("a{a}"), &toks).unwrap();
    }
    g
}

pub fn adjacency(g: &AttributedGraph) -> Vec<Vec<bool>> {
    let n = g.node_count();
    let mut adj = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    adj
}

/// All-pairs hop distances, `INF` when unreachable.
pub fn floyd_warshall(g: &AttributedGraph) -> Vec<Vec<usize>> {
    let n = g.node_count();
    let adj = adjacency(g);
    let mut d = vec![vec![INF; n]; n];
    for u in 0..n {
        d[u][u] = 0;
        for v in 0..n {
            if adj[u][v] {
                d[u][v] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            if d[i][k] == INF {
                continue;
            }
            for j in 0..n {
                if d[k][j] != INF && d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

pub fn shell_from_distances(dist: &[Vec<usize>], v: usize, h: usize) -> Vec<usize> {
    (0..dist.len()).filter(|&u| dist[v][u] == h).collect()
}

/// Mixing counts by testing every ordered node pair.
pub fn dense_mixing(g: &AttributedGraph, i: usize, j: usize) -> Vec<Vec<u64>> {
    let adj = adjacency(g);
    let ci = g.codes(i).unwrap();
    let cj = g.codes(j).unwrap();
    let mut m = vec![vec![0u64; g.attribute(j).level_count()]; g.attribute(i).level_count()];
    for u in 0..g.node_count() {
        for v in 0..g.node_count() {
            if adj[u][v] {
                m[ci[u] as usize][cj[v] as usize] += 1;
            }
        }
    }
    m
}

fn sums(m: &[Vec<u64>]) -> (Vec<u64>, Vec<u64>, u64) {
    let rows: Vec<u64> = m.iter().map(|r| r.iter().sum()).collect();
    let cols: Vec<u64> = (0..m[0].len()).map(|j| m.iter().map(|r| r[j]).sum()).collect();
    let total = rows.iter().sum();
    (rows, cols, total)
}

fn rat(x: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn power(x: &BigRational, k: u32) -> BigRational {
    (0..k).fold(BigRational::from_integer(BigInt::from(1)), |acc, _| acc * x)
}

/// Exact divergence for `f(x) = x^k` in rational arithmetic.
pub fn divergence_poly_exact(m: &[Vec<u64>], k: u32) -> Option<BigRational> {
    let (rows, cols, total) = sums(m);
    if total == 0 {
        return None;
    }
    let f = |x: &BigRational| power(x, k);
    let mut num = BigRational::zero();
    for (i, r) in rows.iter().enumerate() {
        num += f(&rat(*r));
        for c in &m[i] {
            num -= f(&rat(*c));
        }
    }
    for (j, c) in cols.iter().enumerate() {
        num += f(&rat(*c));
        for row in m {
            num -= f(&rat(row[j]));
        }
    }
    let mut den = BigRational::zero();
    for r in &rows {
        den += f(&rat(*r));
    }
    for c in &cols {
        den += f(&rat(*c));
    }
    let t = rat(total);
    for r in &rows {
        for c in &cols {
            let e = rat(*r) * rat(*c) / &t;
            den -= f(&e) * BigRational::from_integer(BigInt::from(2));
        }
    }
    if den.is_zero() {
        None
    } else {
        Some(num / den)
    }
}

/// Neumaier compensated sum.
pub fn exact_sum(xs: impl IntoIterator<Item = f64>) -> f64 {
    let (mut s, mut c) = (0.0f64, 0.0f64);
    for x in xs {
        let t = s + x;
        if s.abs() >= x.abs() {
            c += (s - t) + x;
        } else {
            c += (x - t) + s;
        }
        s = t;
    }
    s + c
}

/// `x ln x` divergence rewritten without cancellation:
/// numerator `sum e ln(r/e) + sum e ln(c/e)`, denominator
/// `sum r ln(T/r) + sum c ln(T/c)`.
pub fn divergence_xlogx_stable(m: &[Vec<u64>]) -> Option<f64> {
    let (rows, cols, total) = sums(m);
    if total == 0 {
        return None;
    }
    let t = total as f64;
    let mut terms = Vec::new();
    for (i, row) in m.iter().enumerate() {
        for (j, &e) in row.iter().enumerate() {
            if e > 0 {
                let e = e as f64;
                terms.push(e * (rows[i] as f64 / e).ln());
                terms.push(e * (cols[j] as f64 / e).ln());
            }
        }
    }
    let num = exact_sum(terms);
    let den = exact_sum(
        rows.iter().chain(&cols).filter(|&&x| x > 0).map(|&x| x as f64 * (t / x as f64).ln()),
    );
    if den.abs() < 1e-300 {
        None
    } else {
        Some(num / den)
    }
}

/// Reference divergence for any generative function.
pub fn divergence_oracle(m: &[Vec<u64>], f: GenerativeFunction) -> Option<f64> {
    match f {
        GenerativeFunction::Square => divergence_poly_exact(m, 2).map(|d| d.to_f64().unwrap()),
        GenerativeFunction::Cube => divergence_poly_exact(m, 3).map(|d| d.to_f64().unwrap()),
        GenerativeFunction::XLogX => divergence_xlogx_stable(m),
    }
}

/// N-FVR vector of `v` evaluated directly from hop distances.
pub fn nfvr_oracle(g: &AttributedGraph, dist: &[Vec<usize>], v: usize, rho: &[f64], weights: &[f64], normalize: bool) -> Vec<f64> {
    let deg = shell_from_distances(dist, v, 1).len();
    let mut out = Vec::new();
    for j in 0..g.attribute_count() {
        let levels = g.attribute(j).level_count();
        let codes = g.codes(j).unwrap();
        let mut block = vec![0.0; levels];
        for (i, &w) in weights.iter().enumerate() {
            let shell = shell_from_distances(dist, v, i + 1);
            if shell.is_empty() {
                continue;
            }
            for (k, b) in block.iter_mut().enumerate() {
                let count = shell.iter().filter(|&&u| codes[u] as usize == k).count();
                *b += w * count as f64 / shell.len() as f64;
            }
        }
        for b in &mut block {
            *b *= rho[j];
            if deg == 0 {
                *b = 0.0;
            } else if normalize {
                *b /= deg as f64;
            }
        }
        out.extend(block);
    }
    out
}

/// kNN by full sort on `(squared distance, id)`; vote ties to the label
/// seen first in that order.
pub fn knn_brute(train: &Samples<u32>, k: usize, q: &[f64]) -> u32 {
    let mut all: Vec<(f64, usize, u32)> = train
        .rows()
        .enumerate()
        .map(|(i, r)| (r.iter().zip(q).map(|(a, b)| (a - b).powi(2)).sum(), train.ids[i], train.y[i]))
        .collect();
    all.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
    let top: Vec<u32> = all.iter().take(k).map(|x| x.2).collect();
    let mut best = top[0];
    let mut best_count = 0;
    for &l in &top {
        let c = top.iter().filter(|&&x| x == l).count();
        if c > best_count {
            best = l;
            best_count = c;
        }
    }
    best
}

/// Least squares through the normal equations with Gauss-Jordan elimination.
pub fn normal_equations(rows: &[Vec<f64>], y: &[f64]) -> Vec<f64> {
    let d = rows[0].len();
    let mut m = vec![vec![0.0; d + 1]; d];
    for (r, &t) in rows.iter().zip(y) {
        for i in 0..d {
            for j in 0..d {
                m[i][j] += r[i] * r[j];
            }
            m[i][d] += r[i] * t;
        }
    }
    for c in 0..d {
        let p = (c..d).max_by(|&a, &b| m[a][c].abs().partial_cmp(&m[b][c].abs()).unwrap()).unwrap();
        m.swap(c, p);
        for r in 0..d {
            if r != c {
                let f = m[r][c] / m[c][c];
                for k in c..=d {
                    m[r][k] -= f * m[c][k];
                }
            }
        }
    }
    (0..d).map(|i| m[i][d] / m[i][i]).collect()
}

/// Minimizer of `lambda/2 |w|^2 + 1/n sum hinge(y_i <w, [x_i, 1]>)` by dual
/// coordinate descent, run for `epochs` sweeps in fixed order.
pub fn svm_dual_oracle(train: &Samples<u32>, signs: &[f64], lambda: f64, epochs: usize) -> Vec<f64> {
    let n = train.len();
    let d = train.dim + 1;
    let upper = 1.0 / (lambda * n as f64);
    let aug: Vec<Vec<f64>> = train.rows().map(|r| r.iter().copied().chain([1.0]).collect()).collect();
    let q: Vec<f64> = aug.iter().map(|x| x.iter().map(|v| v * v).sum()).collect();
    let mut alpha = vec![0.0; n];
    let mut w = vec![0.0; d];
    for _ in 0..epochs {
        for i in 0..n {
            if q[i] == 0.0 {
                continue;
            }
            let g = signs[i] * aug[i].iter().zip(&w).map(|(a, b)| a * b).sum::<f64>() - 1.0;
            let new = (alpha[i] - g / q[i]).clamp(0.0, upper);
            let delta = new - alpha[i];
            if delta != 0.0 {
                for (wk, xk) in w.iter_mut().zip(&aug[i]) {
                    *wk += delta * signs[i] * xk;
                }
                alpha[i] = new;
            }
        }
    }
    // the dual above is for 1/2|w|^2 + C sum hinge with C = 1/(lambda n)
    w
}

/// Gaussian density, for hand-written posteriors.
pub fn gauss(x: f64, mean: f64, var: f64) -> f64 {
    (-(x - mean).powi(2) / (2.0 * var)).exp() / (2.0 * std::f64::consts::PI * var).sqrt()
}
