//! Graph-agnostic baselines: best-one-element-move greedy descent and an
//! exhaustive exact-consensus search for tiny instances.
//!
//! Both exist for comparison and testing. The agreement matrix deliberately
//! materializes all vertex pairs, the quadratic cost the main optimizer is
//! built to avoid, so it is capped to small instances.

use crate::error::{Error, Result};
use crate::partition::{MembershipMatrix, Partition};

/// Largest `n` accepted by the exhaustive enumeration (Bell numbers explode).
pub const EXACT_ENUMERATION_LIMIT: usize = 12;

/// Default cap for the dense pairwise agreement matrix.
pub const DEFAULT_AGREEMENT_CAP: usize = 2000;

/// Dense `n x n` matrix of `k - 2 delta_uv` values.
#[derive(Debug, Clone)]
pub struct AgreementMatrix {
    n: usize,
    values: Vec<i32>,
}

impl AgreementMatrix {
    pub fn build(mm: &MembershipMatrix, cap: usize) -> Result<Self> {
        let n = mm.vertex_count();
        if n > cap {
            return Err(Error::TooLarge { n, cap });
        }
        let k = mm.partition_count() as i32;
        let mut values = vec![0i32; n * n];
        for u in 0..n {
            for v in u + 1..n {
                let agreement = k - 2 * mm.coclustering_distance(u, v) as i32;
                values[u * n + v] = agreement;
                values[v * n + u] = agreement;
            }
        }
        Ok(AgreementMatrix { n, values })
    }

    /// `k - 2 delta_uv`, in `[-k, k]`. The diagonal is unused and zero.
    pub fn agreement(&self, u: usize, v: usize) -> i32 {
        self.values[u * self.n + v]
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }
}

#[derive(Debug, Clone)]
pub struct BoemConfig {
    pub size_cap: usize,
}

impl Default for BoemConfig {
    fn default() -> Self {
        BoemConfig { size_cap: DEFAULT_AGREEMENT_CAP }
    }
}

/// Greedy descent applying the single best (vertex, cluster) move per step.
///
/// Unlike the graph-aware optimizer this probes every non-empty cluster for
/// every vertex and applies one move at a time, so each step strictly lowers
/// the objective until no move with negative gain remains. Moves into brand
/// new (empty) clusters are not considered. Ties pick the smallest vertex,
/// then the smallest cluster id.
pub fn boem_run(ensemble: &[Partition], config: &BoemConfig) -> Result<Partition> {
    let mm = MembershipMatrix::from_partitions(ensemble)?;
    let agreements = AgreementMatrix::build(&mm, config.size_cap)?;
    let n = mm.vertex_count();

    let mut assignment: Vec<u32> = (0..n as u32).collect();
    let mut members: Vec<Vec<u32>> = (0..n as u32).map(|v| vec![v]).collect();

    loop {
        let mut best: Option<(i64, usize, u32)> = None;
        for v in 0..n {
            let current = assignment[v];
            let source: i64 = members[current as usize]
                .iter()
                .filter(|&&u| u as usize != v)
                .map(|&u| agreements.agreement(v, u as usize) as i64)
                .sum();
            for (c, cluster) in members.iter().enumerate() {
                if c as u32 == current || cluster.is_empty() {
                    continue;
                }
                let target: i64 =
                    cluster.iter().map(|&u| agreements.agreement(v, u as usize) as i64).sum();
                // gains are in the distance convention: negative improves
                let delta = source - target;
                let candidate = (delta, v, c as u32);
                if delta < 0 && best.map_or(true, |b| candidate < b) {
                    best = Some(candidate);
                }
            }
        }
        match best {
            None => break,
            Some((_, v, target)) => {
                let source = assignment[v] as usize;
                members[source].retain(|&u| u as usize != v);
                members[target as usize].push(v as u32);
                assignment[v] = target;
            }
        }
    }
    Ok(Partition::from_labels(assignment))
}

/// Iterator over every partition of `0..n`, one per restricted growth string,
/// in lexicographic order. Yielded partitions are already canonical.
pub struct SetPartitions {
    labels: Vec<u32>,
    highest: Vec<u32>,
    started: bool,
    done: bool,
}

/// All `Bell(n)` set partitions of `n` elements; `n` is capped because the
/// count grows super-exponentially.
pub fn enumerate_set_partitions(n: usize) -> Result<SetPartitions> {
    if n > EXACT_ENUMERATION_LIMIT {
        return Err(Error::TooLarge { n, cap: EXACT_ENUMERATION_LIMIT });
    }
    Ok(SetPartitions {
        labels: vec![0; n],
        highest: vec![0; n],
        started: false,
        done: false,
    })
}

impl Iterator for SetPartitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(Partition::from_labels(self.labels.iter().copied()));
        }
        let n = self.labels.len();
        // find the rightmost position that can still grow by one
        let mut i = n;
        loop {
            if i <= 1 {
                self.done = true;
                return None;
            }
            i -= 1;
            if self.labels[i] <= self.highest[i - 1] {
                break;
            }
        }
        self.labels[i] += 1;
        self.highest[i] = self.highest[i - 1].max(self.labels[i]);
        for j in i + 1..n {
            self.labels[j] = 0;
            self.highest[j] = self.highest[j - 1];
        }
        Some(Partition::from_labels(self.labels.iter().copied()))
    }
}

/// Exhaustive argmin of the summed Mirkin distance over all set partitions.
///
/// Ties resolve to the first partition in enumeration order. Returns the
/// optimal partition and its objective value.
pub fn exact_consensus(ensemble: &[Partition]) -> Result<(Partition, u64)> {
    let mm = MembershipMatrix::from_partitions(ensemble)?;
    let n = mm.vertex_count();
    if n > EXACT_ENUMERATION_LIMIT {
        return Err(Error::TooLarge { n, cap: EXACT_ENUMERATION_LIMIT });
    }
    let k = mm.partition_count() as i64;

    // pairwise deltas once; each candidate is then scored in O(n^2)
    let mut delta = vec![0i64; n * n];
    let mut pair_total = 0i64;
    for u in 0..n {
        for v in u + 1..n {
            let d = mm.coclustering_distance(u, v) as i64;
            delta[u * n + v] = d;
            pair_total += d;
        }
    }

    let mut best: Option<(Partition, u64)> = None;
    for candidate in enumerate_set_partitions(n)? {
        let labels = candidate.labels();
        let mut separated = 0i64;
        for u in 0..n {
            for v in u + 1..n {
                if labels[u] != labels[v] {
                    separated += k - 2 * delta[u * n + v];
                }
            }
        }
        let objective = (pair_total + separated) as u64;
        if best.as_ref().map_or(true, |(_, b)| objective < *b) {
            best = Some((candidate, objective));
        }
    }
    best.ok_or(Error::EmptyEnsemble)
}
