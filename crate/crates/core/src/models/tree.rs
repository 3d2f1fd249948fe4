//! CART classification tree with Gini impurity.
//!
//! Splits are axis-aligned at midpoints between consecutive distinct values.
//! A node becomes a leaf when it is pure, at the depth cap, or smaller than
//! the minimum split size. Zero-gain splits are accepted so that any
//! consistent training set can be fit exactly within the depth cap.

use crate::error::{Error, Result};
use crate::models::{classes_of, majority_label, Samples};

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Leaf(u32),
    Split { feature: usize, threshold: f64, left: usize, right: usize },
}

#[derive(Debug, Clone)]
pub struct DecisionTree {
    nodes: Vec<Node>,
}

/// Gini impurity `1 - sum p_k^2` of a class-count vector.
pub fn gini(counts: &[usize]) -> f64 {
    let n: usize = counts.iter().sum();
    if n == 0 {
        return 0.0;
    }
    let n = n as f64;
    1.0 - counts.iter().map(|&c| (c as f64 / n).powi(2)).sum::<f64>()
}

/// Size-weighted Gini impurity of a two-way split.
pub fn split_impurity(left: &[usize], right: &[usize]) -> f64 {
    let nl: usize = left.iter().sum();
    let nr: usize = right.iter().sum();
    let n = (nl + nr) as f64;
    (nl as f64 / n) * gini(left) + (nr as f64 / n) * gini(right)
}

struct Builder<'a> {
    train: &'a Samples<u32>,
    /// Class index of every training row.
    class_of: Vec<usize>,
    n_classes: usize,
    classes: Vec<u32>,
    max_depth: usize,
    min_size: usize,
    nodes: Vec<Node>,
}

impl Builder<'_> {
    fn leaf(&mut self, idx: &[usize]) -> usize {
        let labels: Vec<u32> = idx.iter().map(|&i| self.train.y[i]).collect();
        let label = majority_label(&labels).unwrap_or(self.classes[0]);
        self.nodes.push(Node::Leaf(label));
        self.nodes.len() - 1
    }

    /// Best `(feature, threshold, impurity)` over all midpoints.
    fn best_split(&self, idx: &[usize]) -> Option<(usize, f64, f64)> {
        let mut total = vec![0usize; self.n_classes];
        for &i in idx {
            total[self.class_of[i]] += 1;
        }
        let mut best: Option<(usize, f64, f64)> = None;
        let mut order = idx.to_vec();
        for f in 0..self.train.dim {
            let value = |i: usize| self.train.x[i * self.train.dim + f];
            order.sort_by(|&a, &b| value(a).total_cmp(&value(b)));
            let mut left = vec![0usize; self.n_classes];
            for pos in 0..order.len() - 1 {
                left[self.class_of[order[pos]]] += 1;
                let (lo, hi) = (value(order[pos]), value(order[pos + 1]));
                if lo == hi {
                    continue;
                }
                let right: Vec<usize> = total.iter().zip(&left).map(|(t, l)| t - l).collect();
                let imp = split_impurity(&left, &right);
                if best.is_none_or(|(_, _, b)| imp < b) {
                    best = Some((f, lo + (hi - lo) / 2.0, imp));
                }
            }
        }
        best
    }

    fn build(&mut self, idx: Vec<usize>, depth: usize) -> usize {
        let first = self.class_of[idx[0]];
        let pure = idx.iter().all(|&i| self.class_of[i] == first);
        if pure || depth >= self.max_depth || idx.len() < self.min_size {
            return self.leaf(&idx);
        }
        let Some((feature, threshold, _)) = self.best_split(&idx) else {
            return self.leaf(&idx);
        };
        let (l, r): (Vec<usize>, Vec<usize>) =
            idx.iter().partition(|&&i| self.train.x[i * self.train.dim + feature] <= threshold);
        let slot = self.nodes.len();
        self.nodes.push(Node::Leaf(0));
        let left = self.build(l, depth + 1);
        let right = self.build(r, depth + 1);
        self.nodes[slot] = Node::Split { feature, threshold, left, right };
        slot
    }
}

impl DecisionTree {
    pub fn fit(train: &Samples<u32>, max_depth: usize, min_size: usize) -> Result<Self> {
        if train.is_empty() {
            return Err(Error::EmptyTrain);
        }
        let classes = classes_of(&train.y);
        let class_of = train.y.iter().map(|y| classes.binary_search(y).expect("own label")).collect();
        let mut b = Builder {
            train,
            class_of,
            n_classes: classes.len(),
            classes,
            max_depth,
            min_size,
            nodes: Vec::new(),
        };
        b.build((0..train.len()).collect(), 0);
        Ok(DecisionTree { nodes: b.nodes })
    }

    pub fn predict(&self, x: &[f64]) -> u32 {
        let mut at = 0;
        loop {
            match self.nodes[at] {
                Node::Leaf(label) => return label,
                Node::Split { feature, threshold, left, right } => {
                    at = if x[feature] <= threshold { left } else { right };
                }
            }
        }
    }

    pub fn depth(&self) -> usize {
        fn walk(nodes: &[Node], at: usize) -> usize {
            match nodes[at] {
                Node::Leaf(_) => 0,
                Node::Split { left, right, .. } => 1 + walk(nodes, left).max(walk(nodes, right)),
            }
        }
        walk(&self.nodes, 0)
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes.iter().filter(|n| matches!(n, Node::Leaf(_))).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_computed_split_impurity() {
        assert!((split_impurity(&[2, 2], &[0, 4]) - 0.25).abs() < 1e-15);
        assert_eq!(gini(&[3, 0]), 0.0);
        assert!((gini(&[1, 1]) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn separable_1d_needs_one_split() {
        let rows: Vec<Vec<f64>> = [0.0, 1.0, 2.0, 7.0, 8.0, 9.0].iter().map(|&x| vec![x]).collect();
        let y = [0, 0, 0, 1, 1, 1];
        let t = DecisionTree::fit(&Samples::from_rows(&rows, &y), 20, 2).unwrap();
        assert_eq!(t.depth(), 1);
        for (r, &l) in rows.iter().zip(&y) {
            assert_eq!(t.predict(r), l);
        }
        assert_eq!(t.predict(&[4.4]), 0);
        assert_eq!(t.predict(&[4.6]), 1);
    }

    #[test]
    fn pure_train_is_single_leaf() {
        let rows = vec![vec![0.0], vec![3.0], vec![1.0]];
        let t = DecisionTree::fit(&Samples::from_rows(&rows, &[4, 4, 4]), 20, 2).unwrap();
        assert_eq!(t.leaf_count(), 1);
        assert_eq!(t.predict(&[100.0]), 4);
    }

    #[test]
    fn xor_fits_through_zero_gain_split() {
        let rows = vec![vec![0.0, 0.0], vec![0.0, 1.0], vec![1.0, 0.0], vec![1.0, 1.0]];
        let y = [0, 1, 1, 0];
        let t = DecisionTree::fit(&Samples::from_rows(&rows, &y), 20, 2).unwrap();
        for (r, &l) in rows.iter().zip(&y) {
            assert_eq!(t.predict(r), l);
        }
    }
}
