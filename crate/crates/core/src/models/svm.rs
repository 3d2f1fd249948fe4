//! Linear SVM trained by stochastic subgradient descent on the hinge loss
//! (Pegasos schedule).
//!
//! Each binary machine minimizes
//! `lambda/2 |w|^2 + 1/n sum_i max(0, 1 - y_i <w, [x_i, 1]>)` with
//! `lambda = 1 / (C n)`; the bias is the last weight and is regularized with
//! the rest. Two classes use one machine, more classes use one-vs-rest.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::models::{classes_of, Samples};

#[derive(Debug, Clone)]
pub struct LinearSvm {
    classes: Vec<u32>,
    /// One weight vector per machine, bias last.
    machines: Vec<Vec<f64>>,
}

#[inline]
fn decision(w: &[f64], x: &[f64]) -> f64 {
    let (bias, wx) = w.split_last().expect("weights include bias");
    wx.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() + bias
}

/// Regularized hinge objective of the augmented weight vector `w` on `signs`.
pub fn hinge_objective(train: &Samples<u32>, signs: &[f64], w: &[f64], lambda: f64) -> f64 {
    let reg = 0.5 * lambda * w.iter().map(|x| x * x).sum::<f64>();
    let loss: f64 = train.rows().zip(signs).map(|(x, y)| (1.0 - y * decision(w, x)).max(0.0)).sum();
    reg + loss / train.len() as f64
}

fn train_machine(train: &Samples<u32>, signs: &[f64], lambda: f64, epochs: usize, seed: u64) -> Vec<f64> {
    let n = train.len();
    let d = train.dim + 1;
    let mut w = vec![0.0; d];
    let mut order: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let radius = 1.0 / lambda.sqrt();
    let mut t = 0u64;
    // tail average over the final epoch
    let mut avg = vec![0.0; d];
    for epoch in 0..epochs {
        order.shuffle(&mut rng);
        let last = epoch + 1 == epochs;
        for &i in &order {
            t += 1;
            let eta = 1.0 / (lambda * t as f64);
            let x = train.row(i);
            let y = signs[i];
            let margin = y * decision(&w, x);
            let shrink = 1.0 - eta * lambda;
            w.iter_mut().for_each(|wi| *wi *= shrink);
            if margin < 1.0 {
                for (wi, xi) in w.iter_mut().zip(x) {
                    *wi += eta * y * xi;
                }
                w[d - 1] += eta * y;
            }
            let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > radius {
                let s = radius / norm;
                w.iter_mut().for_each(|wi| *wi *= s);
            }
            if last {
                for (a, wi) in avg.iter_mut().zip(&w) {
                    *a += wi;
                }
            }
        }
    }
    if epochs > 0 && n > 0 {
        avg.iter_mut().for_each(|a| *a /= n as f64);
        avg
    } else {
        w
    }
}

impl LinearSvm {
    pub fn fit(train: &Samples<u32>, c: f64, epochs: usize, seed: u64) -> Result<Self> {
        if train.is_empty() {
            return Err(Error::EmptyTrain);
        }
        if !(c > 0.0) {
            return Err(Error::InvalidConfig("C must be > 0".into()));
        }
        let classes = classes_of(&train.y);
        let lambda = 1.0 / (c * train.len() as f64);
        let positives: Vec<u32> = match classes.len() {
            1 => Vec::new(),
            2 => vec![classes[1]],
            _ => classes.clone(),
        };
        let machines = positives
            .iter()
            .map(|&pos| {
                let signs: Vec<f64> = train.y.iter().map(|&y| if y == pos { 1.0 } else { -1.0 }).collect();
                train_machine(train, &signs, lambda, epochs, seed)
            })
            .collect();
        Ok(LinearSvm { classes, machines })
    }

    pub fn classes(&self) -> &[u32] {
        &self.classes
    }

    /// Augmented weight vectors (bias last), one per machine.
    pub fn machines(&self) -> &[Vec<f64>] {
        &self.machines
    }

    /// Per-class decision values in class order. For two classes the first
    /// value is the negation of the second.
    pub fn decision_values(&self, x: &[f64]) -> Vec<f64> {
        match self.classes.len() {
            1 => vec![0.0],
            2 => {
                let d = decision(&self.machines[0], x);
                vec![-d, d]
            }
            _ => self.machines.iter().map(|w| decision(w, x)).collect(),
        }
    }

    pub fn predict(&self, x: &[f64]) -> u32 {
        let d = self.decision_values(x);
        let mut best = 0;
        for k in 1..d.len() {
            if d[k] > d[best] {
                best = k;
            }
        }
        self.classes[best]
    }
}
