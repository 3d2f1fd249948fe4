//! Planted-partition graph generator.
//!
//! Nodes are assigned to blocks round-robin. Each pair inside a block is an
//! edge with probability `p_in`, each pair across blocks with `p_out`. The
//! block id is written as attribute `block` (levels `b0`, `b1`, ...), followed
//! by `noise_attrs` attributes `noise1..` drawn uniformly from three levels.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::AttributedGraph;

/// Levels per noise attribute.
pub const NOISE_LEVELS: usize = 3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlantedPartition {
    pub nodes: usize,
    pub blocks: usize,
    pub p_in: f64,
    pub p_out: f64,
    pub noise_attrs: usize,
    pub seed: u64,
}

impl PlantedPartition {
    pub fn validate(&self) -> Result<()> {
        for (name, p) in [("p-in", self.p_in), ("p-out", self.p_out)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidConfig(format!("{name} = {p} is not a probability")));
            }
        }
        if self.blocks == 0 {
            return Err(Error::InvalidConfig("blocks must be >= 1".into()));
        }
        Ok(())
    }

    pub fn block_of(&self, v: usize) -> usize {
        v % self.blocks
    }

    pub fn generate(&self) -> Result<AttributedGraph> {
        self.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let n = self.nodes;
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                let p = if self.block_of(u) == self.block_of(v) { self.p_in } else { self.p_out };
                if rng.gen::<f64>() < p {
                    edges.push((u, v));
                }
            }
        }
        let (mut g, _) = AttributedGraph::from_edges(n, &edges)?;
        let blocks: Vec<String> = (0..n).map(|v| format!("b{}", self.block_of(v))).collect();
        g = g.with_nominal("block", &blocks)?;
        for k in 1..=self.noise_attrs {
            let vals: Vec<String> = (0..n).map(|_| format!("n{}", rng.gen_range(0..NOISE_LEVELS))).collect();
            g = g.with_nominal(&format!("noise{k}"), &vals)?;
        }
        Ok(g)
    }
}
