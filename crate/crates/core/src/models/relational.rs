//! Neighbor-voting baselines: weighted-vote relational neighbor (WVRN) and
//! unweighted MAJORITY. Both only look at neighbors whose target label is
//! known and fall back to the global training majority otherwise.

use crate::error::{Error, Result};
use crate::graph::AttributedGraph;
use crate::models::majority_label;

#[derive(Debug, Clone)]
pub struct RelationalBaseline<'g> {
    graph: &'g AttributedGraph,
    /// Known labels, `None` for unlabeled or test nodes.
    labels: Vec<Option<u32>>,
    levels: usize,
    global_majority: u32,
}

/// WVRN weight of a neighbor at Euclidean distance `d`.
pub fn similarity(d: f64) -> f64 {
    1.0 / (1.0 + d)
}

fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

fn argmax_low(scores: &[f64]) -> Option<u32> {
    let mut best: Option<usize> = None;
    for (k, &s) in scores.iter().enumerate() {
        if s > 0.0 && best.is_none_or(|b| s > scores[b]) {
            best = Some(k);
        }
    }
    best.map(|k| k as u32)
}

impl<'g> RelationalBaseline<'g> {
    /// `labels[v]` is the known level of `v`; `levels` is the level count of
    /// the target attribute.
    pub fn new(graph: &'g AttributedGraph, labels: Vec<Option<u32>>, levels: usize) -> Result<Self> {
        if labels.len() != graph.node_count() {
            return Err(Error::LengthMismatch(labels.len(), graph.node_count()));
        }
        let known: Vec<u32> = labels.iter().flatten().copied().collect();
        let global_majority = majority_label(&known).ok_or(Error::EmptyTrain)?;
        Ok(RelationalBaseline { graph, labels, levels, global_majority })
    }

    pub fn global_majority(&self) -> u32 {
        self.global_majority
    }

    /// Most common known level among neighbors; ties to the lower level.
    pub fn majority(&self, v: usize) -> Result<u32> {
        self.weighted_vote(v, |_| 1.0)
    }

    /// Similarity-weighted vote, `sim = 1 / (1 + |nns(v) - nns(u)|)`.
    /// `nns` returns a node's own-attribute feature vector.
    pub fn wvrn<'a, F>(&self, v: usize, nns: F) -> Result<u32>
    where
        F: Fn(usize) -> &'a [f64],
    {
        let own = nns(v);
        self.weighted_vote(v, |u| similarity(euclidean(own, nns(u))))
    }

    fn weighted_vote(&self, v: usize, weight: impl Fn(usize) -> f64) -> Result<u32> {
        let neighbors = self.graph.neighbors(v)?;
        let mut scores = vec![0.0; self.levels];
        for &u in neighbors {
            if let Some(l) = self.labels[u] {
                scores[l as usize] += weight(u);
            }
        }
        Ok(argmax_low(&scores).unwrap_or(self.global_majority))
    }
}
