//! Gaussian naive Bayes over real-valued feature coordinates.

use crate::error::{Error, Result};
use crate::models::{classes_of, Samples};

/// Lower bound on every per-class variance.
pub const VARIANCE_FLOOR: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct GaussianNb {
    classes: Vec<u32>,
    log_priors: Vec<f64>,
    means: Vec<Vec<f64>>,
    variances: Vec<Vec<f64>>,
}

impl GaussianNb {
    pub fn fit(train: &Samples<u32>, smoothing: f64) -> Result<Self> {
        if train.is_empty() {
            return Err(Error::EmptyTrain);
        }
        let classes = classes_of(&train.y);
        let n = train.len() as f64;
        let d = train.dim;
        let mut log_priors = Vec::with_capacity(classes.len());
        let mut means = Vec::with_capacity(classes.len());
        let mut variances = Vec::with_capacity(classes.len());
        for &c in &classes {
            let members: Vec<&[f64]> = train.rows().zip(&train.y).filter(|(_, &y)| y == c).map(|(r, _)| r).collect();
            let count = members.len() as f64;
            let mut mean = vec![0.0; d];
            for r in &members {
                for (m, x) in mean.iter_mut().zip(*r) {
                    *m += x;
                }
            }
            mean.iter_mut().for_each(|m| *m /= count);
            let mut var = vec![0.0; d];
            for r in &members {
                for ((v, x), m) in var.iter_mut().zip(*r).zip(&mean) {
                    *v += (x - m) * (x - m);
                }
            }
            var.iter_mut().for_each(|v| *v = (*v / count + smoothing).max(VARIANCE_FLOOR));
            log_priors.push((count / n).ln());
            means.push(mean);
            variances.push(var);
        }
        Ok(GaussianNb { classes, log_priors, means, variances })
    }

    pub fn classes(&self) -> &[u32] {
        &self.classes
    }

    /// Unnormalized log posterior per class, in class order.
    pub fn joint_log_likelihood(&self, x: &[f64]) -> Vec<f64> {
        let ln_2pi = (2.0 * std::f64::consts::PI).ln();
        (0..self.classes.len())
            .map(|k| {
                let mut s = self.log_priors[k];
                for ((xi, m), v) in x.iter().zip(&self.means[k]).zip(&self.variances[k]) {
                    s -= 0.5 * (ln_2pi + v.ln()) + (xi - m) * (xi - m) / (2.0 * v);
                }
                s
            })
            .collect()
    }

    /// Normalized posterior probabilities, in class order.
    pub fn posterior(&self, x: &[f64]) -> Vec<f64> {
        let jll = self.joint_log_likelihood(x);
        let max = jll.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let exp: Vec<f64> = jll.iter().map(|l| (l - max).exp()).collect();
        let z: f64 = exp.iter().sum();
        exp.into_iter().map(|e| e / z).collect()
    }

    pub fn predict(&self, x: &[f64]) -> u32 {
        let jll = self.joint_log_likelihood(x);
        let mut best = 0;
        for k in 1..jll.len() {
            if jll[k] > jll[best] {
                best = k;
            }
        }
        self.classes[best]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disjoint_supports_separate() {
        let rows: Vec<Vec<f64>> = [0.0, 0.1, 0.2, 5.0, 5.1, 5.2].iter().map(|&x| vec![x]).collect();
        let nb = GaussianNb::fit(&Samples::from_rows(&rows, &[0, 0, 0, 1, 1, 1]), 0.0).unwrap();
        for (r, y) in rows.iter().zip([0, 0, 0, 1, 1, 1]) {
            assert_eq!(nb.predict(r), y);
        }
    }

    #[test]
    fn equal_likelihoods_fall_to_prior() {
        // both classes have identical feature distributions; class 1 is more frequent
        let rows: Vec<Vec<f64>> = [1.0, 2.0, 1.0, 2.0, 1.0, 2.0].iter().map(|&x| vec![x]).collect();
        let y = [0, 0, 1, 1, 1, 1];
        let nb = GaussianNb::fit(&Samples::from_rows(&rows, &y), 0.0).unwrap();
        assert_eq!(nb.predict(&[1.5]), 1);
    }

    #[test]
    fn zero_variance_is_floored() {
        let rows = vec![vec![1.0], vec![1.0], vec![3.0], vec![3.0]];
        let nb = GaussianNb::fit(&Samples::from_rows(&rows, &[0, 0, 1, 1]), 0.0).unwrap();
        assert!(nb.posterior(&[1.0]).iter().all(|p| p.is_finite()));
        assert_eq!(nb.predict(&[1.1]), 0);
    }
}
