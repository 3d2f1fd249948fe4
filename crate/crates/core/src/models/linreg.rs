//! Least-squares linear regression through Householder QR with column
//! pivoting. An intercept column is appended to the design matrix; columns
//! beyond the numerical rank get zero coefficients.

use crate::error::{Error, Result};
use crate::models::Samples;

#[derive(Debug, Clone, PartialEq)]
pub struct LinearRegression {
    pub weights: Vec<f64>,
    pub intercept: f64,
    pub rank: usize,
}

/// Solves `min |A z - b|` for a column-major `rows x cols` matrix `a`.
/// Returns the solution and the numerical rank.
pub fn lstsq_qr(mut a: Vec<f64>, rows: usize, cols: usize, mut b: Vec<f64>) -> (Vec<f64>, usize) {
    let at = |j: usize, i: usize| j * rows + i;
    let mut perm: Vec<usize> = (0..cols).collect();
    let mut norms: Vec<f64> = (0..cols).map(|j| (0..rows).map(|i| a[at(j, i)].powi(2)).sum()).collect();
    let steps = rows.min(cols);
    let mut diag = Vec::with_capacity(steps);

    for k in 0..steps {
        // pivot: largest remaining column norm
        let p = (k..cols).max_by(|&x, &y| norms[x].total_cmp(&norms[y]).then(y.cmp(&x))).expect("k < cols");
        if p != k {
            for i in 0..rows {
                a.swap(at(k, i), at(p, i));
            }
            norms.swap(k, p);
            perm.swap(k, p);
        }
        let alpha_norm = (k..rows).map(|i| a[at(k, i)].powi(2)).sum::<f64>().sqrt();
        if alpha_norm == 0.0 {
            diag.push(0.0);
            continue;
        }
        let alpha = if a[at(k, k)] > 0.0 { -alpha_norm } else { alpha_norm };
        // v = x - alpha e1, stored in place
        a[at(k, k)] -= alpha;
        let vnorm2: f64 = (k..rows).map(|i| a[at(k, i)].powi(2)).sum();
        if vnorm2 > 0.0 {
            for j in k + 1..cols {
                let dot: f64 = (k..rows).map(|i| a[at(k, i)] * a[at(j, i)]).sum();
                let s = 2.0 * dot / vnorm2;
                for i in k..rows {
                    a[at(j, i)] -= s * a[at(k, i)];
                }
            }
            let dot: f64 = (k..rows).map(|i| a[at(k, i)] * b[i]).sum();
            let s = 2.0 * dot / vnorm2;
            for i in k..rows {
                b[i] -= s * a[at(k, i)];
            }
        }
        diag.push(alpha);
        for j in k + 1..cols {
            norms[j] = (k + 1..rows).map(|i| a[at(j, i)].powi(2)).sum();
        }
    }

    let max_diag = diag.iter().map(|d| d.abs()).fold(0.0, f64::max);
    let tol = max_diag * f64::EPSILON * rows.max(cols) as f64;
    let rank = diag.iter().take_while(|d| d.abs() > tol).count();

    // back substitution on the leading rank x rank block
    let mut z = vec![0.0; rank];
    for k in (0..rank).rev() {
        let mut s = b[k];
        for j in k + 1..rank {
            s -= a[at(j, k)] * z[j];
        }
        z[k] = s / diag[k];
    }
    let mut out = vec![0.0; cols];
    for (k, &zk) in z.iter().enumerate() {
        out[perm[k]] = zk;
    }
    (out, rank)
}

impl LinearRegression {
    pub fn fit(train: &Samples<f64>) -> Result<Self> {
        if train.is_empty() {
            return Err(Error::EmptyTrain);
        }
        let rows = train.len();
        let cols = train.dim + 1;
        let mut a = vec![0.0; rows * cols];
        for (i, row) in train.rows().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                a[j * rows + i] = x;
            }
        }
        for i in 0..rows {
            a[train.dim * rows + i] = 1.0;
        }
        let (mut coef, rank) = lstsq_qr(a, rows, cols, train.y.clone());
        let intercept = coef.pop().expect("intercept column");
        Ok(LinearRegression { weights: coef, intercept, rank })
    }

    pub fn predict(&self, x: &[f64]) -> f64 {
        self.weights.iter().zip(x).map(|(w, v)| w * v).sum::<f64>() + self.intercept
    }
}
