//! Pairwise partition-comparison distances.
//!
//! The Mirkin count is the optimization objective; rand, split-join and
//! variation of information serve as evaluation measures. Mirkin values here
//! count unordered vertex pairs clustered together in exactly one of the two
//! partitions, which makes `mirkin / C(n, 2)` an exact rand distance.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::partition::Partition;

/// Sparse cluster-overlap table of two partitions on the same vertex set.
///
/// Cell `(a, b)` counts the vertices in cluster `a` of the first partition and
/// cluster `b` of the second. At most `n` cells are ever populated, so the
/// table stays linear even for partitions with many clusters.
#[derive(Debug, Clone)]
pub struct ContingencyTable {
    cells: HashMap<(u32, u32), u64>,
    row_sums: Vec<u64>,
    col_sums: Vec<u64>,
    total: u64,
}

impl ContingencyTable {
    pub fn build(p: &Partition, q: &Partition) -> Result<Self> {
        check_dims(p, q)?;
        let mut cells: HashMap<(u32, u32), u64> = HashMap::new();
        for (&a, &b) in p.labels().iter().zip(q.labels()) {
            *cells.entry((a, b)).or_insert(0) += 1;
        }
        Ok(ContingencyTable {
            cells,
            row_sums: p.cluster_sizes(),
            col_sums: q.cluster_sizes(),
            total: p.vertex_count() as u64,
        })
    }

    pub fn count(&self, a: u32, b: u32) -> u64 {
        self.cells.get(&(a, b)).copied().unwrap_or(0)
    }

    pub fn cells(&self) -> impl Iterator<Item = ((u32, u32), u64)> + '_ {
        self.cells.iter().map(|(&k, &v)| (k, v))
    }

    pub fn row_sums(&self) -> &[u64] {
        &self.row_sums
    }

    pub fn col_sums(&self) -> &[u64] {
        &self.col_sums
    }

    pub fn total(&self) -> u64 {
        self.total
    }
}

fn check_dims(p: &Partition, q: &Partition) -> Result<()> {
    if p.vertex_count() != q.vertex_count() {
        return Err(Error::DimensionMismatch {
            left: p.vertex_count(),
            right: q.vertex_count(),
        });
    }
    Ok(())
}

#[inline]
fn choose2(x: u64) -> u64 {
    x * x.saturating_sub(1) / 2
}

/// Mirkin count by direct enumeration of all unordered vertex pairs.
///
/// Quadratic in `n`; kept as the reference oracle for the fast route below.
pub fn mirkin_pairwise(p: &Partition, q: &Partition) -> Result<u64> {
    check_dims(p, q)?;
    let pl = p.labels();
    let ql = q.labels();
    let mut disagreements = 0u64;
    for u in 0..pl.len() {
        for v in u + 1..pl.len() {
            let together_p = pl[u] == pl[v];
            let together_q = ql[u] == ql[v];
            if together_p != together_q {
                disagreements += 1;
            }
        }
    }
    Ok(disagreements)
}

/// Mirkin count from the contingency table in O(n + table) time.
///
/// Pairs together in `p` plus pairs together in `q` minus twice the pairs
/// together in both is exactly the symmetric difference of the two
/// co-clustering relations.
pub fn mirkin_contingency(p: &Partition, q: &Partition) -> Result<u64> {
    let table = ContingencyTable::build(p, q)?;
    let same_p: u64 = table.row_sums().iter().map(|&a| choose2(a)).sum();
    let same_q: u64 = table.col_sums().iter().map(|&b| choose2(b)).sum();
    let same_both: u64 = table.cells().map(|(_, c)| choose2(c)).sum();
    Ok(same_p + same_q - 2 * same_both)
}

/// Mirkin count normalized by the number of vertex pairs; lies in [0, 1].
pub fn rand_distance(p: &Partition, q: &Partition) -> Result<f64> {
    check_dims(p, q)?;
    let n = p.vertex_count() as u64;
    if n < 2 {
        return Err(Error::UndefinedRandDistance);
    }
    Ok(mirkin_contingency(p, q)? as f64 / choose2(n) as f64)
}

/// Minimum number of element splits and joins transforming `p` into `q`.
pub fn split_join_raw(p: &Partition, q: &Partition) -> Result<u64> {
    let table = ContingencyTable::build(p, q)?;
    let mut row_max = vec![0u64; p.cluster_count()];
    let mut col_max = vec![0u64; q.cluster_count()];
    for ((a, b), c) in table.cells() {
        if c > row_max[a as usize] {
            row_max[a as usize] = c;
        }
        if c > col_max[b as usize] {
            col_max[b as usize] = c;
        }
    }
    let covered: u64 = row_max.iter().sum::<u64>() + col_max.iter().sum::<u64>();
    Ok(2 * table.total() - covered)
}

/// Split-join distance scaled by `2n`, lying in [0, 1].
pub fn split_join_normalized(p: &Partition, q: &Partition) -> Result<f64> {
    if p.vertex_count() == 0 {
        return Err(Error::EmptyPartition);
    }
    Ok(split_join_raw(p, q)? as f64 / (2 * p.vertex_count()) as f64)
}

/// Variation of information in nats: H(p) + H(q) - 2 I(p, q).
pub fn variation_of_information(p: &Partition, q: &Partition) -> Result<f64> {
    let table = ContingencyTable::build(p, q)?;
    let n = table.total() as f64;
    if table.total() == 0 {
        return Ok(0.0);
    }
    let entropy = |sizes: &[u64]| -> f64 {
        sizes
            .iter()
            .filter(|&&s| s > 0)
            .map(|&s| {
                let f = s as f64 / n;
                -f * f.ln()
            })
            .sum()
    };
    let h_p = entropy(table.row_sums());
    let h_q = entropy(table.col_sums());
    let mut mutual = 0.0;
    for ((a, b), c) in table.cells() {
        let joint = c as f64 / n;
        let pa = table.row_sums()[a as usize] as f64 / n;
        let qb = table.col_sums()[b as usize] as f64 / n;
        mutual += joint * (joint / (pa * qb)).ln();
    }
    // clamp tiny negative round-off when the partitions are identical
    Ok((h_p + h_q - 2.0 * mutual).max(0.0))
}

/// Summed Mirkin distance from a candidate consensus to every input partition.
pub fn total_mirkin(consensus: &Partition, ensemble: &[Partition]) -> Result<u64> {
    if ensemble.is_empty() {
        return Err(Error::EmptyEnsemble);
    }
    let mut total = 0u64;
    for p in ensemble {
        total += mirkin_contingency(consensus, p)?;
    }
    Ok(total)
}
