//! Synthetic instances: planted-partition graphs and controlled perturbations
//! of a base partition.
//!
//! All randomness comes from ChaCha8 seeded explicitly, so identical inputs
//! reproduce identical outputs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::Partition;

/// Parameters of an equal-block planted-partition graph on `q * s` vertices.
#[derive(Debug, Clone)]
pub struct PlantedPartitionSpec {
    /// Number of communities.
    pub communities: usize,
    /// Vertices per community; vertex `v` belongs to block `v / s`.
    pub community_size: usize,
    /// Edge probability inside a community.
    pub p_in: f64,
    /// Edge probability across communities; must not exceed `p_in`.
    pub p_out: f64,
    pub seed: u64,
}

impl PlantedPartitionSpec {
    pub fn vertex_count(&self) -> usize {
        self.communities * self.community_size
    }

    fn validate(&self) -> Result<()> {
        if self.communities == 0 || self.community_size == 0 {
            return Err(Error::EmptyPlantedSpec);
        }
        let ok = (0.0..=1.0).contains(&self.p_out)
            && (0.0..=1.0).contains(&self.p_in)
            && self.p_out <= self.p_in;
        if !ok {
            return Err(Error::InvalidProbability { p_in: self.p_in, p_out: self.p_out });
        }
        Ok(())
    }
}

/// Appends edges (u, v) with v drawn from `lo..hi` each with probability `p`,
/// skipping over non-edges geometrically so sparse regimes cost O(edges).
fn sample_row_segment(
    rng: &mut ChaCha8Rng,
    u: u32,
    lo: usize,
    hi: usize,
    p: f64,
    edges: &mut Vec<(u32, u32)>,
) {
    if lo >= hi || p <= 0.0 {
        return;
    }
    if p >= 1.0 {
        for v in lo..hi {
            edges.push((u, v as u32));
        }
        return;
    }
    let log_skip = (1.0 - p).ln();
    let mut v = lo;
    loop {
        let draw: f64 = rng.gen();
        let gap = ((1.0 - draw).ln() / log_skip).floor();
        v += gap as usize;
        if v >= hi {
            return;
        }
        edges.push((u, v as u32));
        v += 1;
    }
}

/// Draws the graph and returns it with its ground-truth block partition.
pub fn generate_planted(spec: &PlantedPartitionSpec) -> Result<(Graph, Partition)> {
    spec.validate()?;
    let s = spec.community_size;
    let n = spec.vertex_count();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut edges = Vec::new();
    for u in 0..n {
        let block_end = (u / s + 1) * s;
        sample_row_segment(&mut rng, u as u32, u + 1, block_end, spec.p_in, &mut edges);
        sample_row_segment(&mut rng, u as u32, block_end, n, spec.p_out, &mut edges);
    }
    let graph = Graph::from_edges(n, &edges)?;
    let truth = Partition::from_labels((0..n).map(|v| (v / s) as u32));
    Ok((graph, truth))
}

fn perturbed_labels(p: &Partition, epsilon: f64, seed: u64) -> Vec<u32> {
    let clusters = p.cluster_count() as u32;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    p.labels()
        .iter()
        .map(|&label| {
            if clusters >= 2 && rng.gen::<f64>() < epsilon {
                // uniform over the other existing clusters
                let mut pick = rng.gen_range(0..clusters - 1);
                if pick >= label {
                    pick += 1;
                }
                pick
            } else {
                label
            }
        })
        .collect()
}

/// Reassigns each vertex with probability `epsilon` to a uniformly random
/// other cluster of `p`. With a single-cluster input there is nowhere to go
/// and the partition is returned unchanged.
pub fn perturb_partition(p: &Partition, epsilon: f64, seed: u64) -> Result<Partition> {
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::EpsilonOutOfRange(epsilon));
    }
    Ok(Partition::from_labels(perturbed_labels(p, epsilon, seed)))
}
