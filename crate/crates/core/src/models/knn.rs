//! Brute-force k-nearest-neighbor classifier.
//!
//! Euclidean distance. Neighbors at equal distance are ordered by node id;
//! a tied vote goes to the label whose closest representative ranks first.

use crate::error::{Error, Result};
use crate::models::Samples;

#[derive(Debug, Clone)]
pub struct Knn {
    k: usize,
    train: Samples<u32>,
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

impl Knn {
    /// `k` larger than the training set is clamped.
    pub fn fit(train: Samples<u32>, k: usize) -> Result<Self> {
        if train.is_empty() {
            return Err(Error::EmptyTrain);
        }
        if k == 0 {
            return Err(Error::InvalidConfig("k must be >= 1".into()));
        }
        Ok(Knn { k: k.min(train.len()), train })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Training row indices of the `k` nearest neighbors, nearest first.
    pub fn neighbors(&self, query: &[f64]) -> Vec<usize> {
        let mut cand: Vec<(f64, usize, usize)> = self
            .train
            .rows()
            .enumerate()
            .map(|(i, row)| (sq_dist(query, row), self.train.ids[i], i))
            .collect();
        let by_key = |a: &(f64, usize, usize), b: &(f64, usize, usize)| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1));
        if self.k < cand.len() {
            cand.select_nth_unstable_by(self.k - 1, by_key);
            cand.truncate(self.k);
        }
        cand.sort_unstable_by(by_key);
        cand.into_iter().map(|(_, _, i)| i).collect()
    }

    pub fn predict(&self, query: &[f64]) -> u32 {
        let nn = self.neighbors(query);
        let labels: Vec<u32> = nn.iter().map(|&i| self.train.y[i]).collect();
        let count = |l: u32| labels.iter().filter(|&&x| x == l).count();
        let best = labels.iter().map(|&l| count(l)).max().unwrap_or(0);
        // first label in distance order that reaches the top count
        *labels.iter().find(|&&l| count(l) == best).expect("k >= 1")
    }
}
