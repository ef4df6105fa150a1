//! Grouping of homogeneous partitions before consensus.
//!
//! Every input partition becomes a vertex of a complete graph weighted by a
//! normalized inter-partition distance. Removing edges heavier than a
//! threshold `lambda` and taking connected components yields groups whose
//! members are mutually close; consensus then runs per group.

use crate::error::{Error, Result};
use crate::metrics;
use crate::partition::Partition;

/// Distance used for the partition-distance graph. Normalized split-join is
/// the default; the alternatives are provided so the threshold stays in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupingMetric {
    SplitJoinNormalized,
    RandDistance,
    /// Variation of information divided by ln(n) (its maximum on n vertices).
    VariationOfInformationNormalized,
}

impl GroupingMetric {
    fn eval(self, p: &Partition, q: &Partition) -> Result<f64> {
        match self {
            GroupingMetric::SplitJoinNormalized => metrics::split_join_normalized(p, q),
            GroupingMetric::RandDistance => metrics::rand_distance(p, q),
            GroupingMetric::VariationOfInformationNormalized => {
                let n = p.vertex_count();
                if n < 2 {
                    return Ok(0.0);
                }
                Ok(metrics::variation_of_information(p, q)? / (n as f64).ln())
            }
        }
    }
}

/// Complete weighted graph over the ensemble: one vertex per input partition,
/// edge weights in [0, 1], zero diagonal.
#[derive(Debug, Clone)]
pub struct PartitionDistanceGraph {
    k: usize,
    weights: Vec<f64>,
}

impl PartitionDistanceGraph {
    pub fn partition_count(&self) -> usize {
        self.k
    }

    pub fn weight(&self, i: usize, j: usize) -> f64 {
        assert!(i < self.k && j < self.k, "partition index out of range");
        self.weights[i * self.k + j]
    }
}

/// Pairwise normalized split-join distances over the whole ensemble.
pub fn build_distance_graph(ensemble: &[Partition]) -> Result<PartitionDistanceGraph> {
    build_distance_graph_with(ensemble, GroupingMetric::SplitJoinNormalized)
}

pub fn build_distance_graph_with(
    ensemble: &[Partition],
    metric: GroupingMetric,
) -> Result<PartitionDistanceGraph> {
    if ensemble.is_empty() {
        return Err(Error::EmptyEnsemble);
    }
    let k = ensemble.len();
    let mut weights = vec![0.0; k * k];
    for i in 0..k {
        for j in i + 1..k {
            let d = metric.eval(&ensemble[i], &ensemble[j])?;
            weights[i * k + j] = d;
            weights[j * k + i] = d;
        }
    }
    Ok(PartitionDistanceGraph { k, weights })
}

/// Disjoint groups of ensemble indices produced by a threshold `lambda`.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleGrouping {
    pub lambda: f64,
    /// Disjoint, covering index sets, ordered by smallest member.
    pub groups: Vec<Vec<usize>>,
    /// Index into `groups` of the largest group (ties go to the lowest index).
    pub largest_group: usize,
}

/// Connected components of the distance graph keeping edges with weight <= lambda.
///
/// Keeping (rather than dropping) weights equal to the threshold means
/// `lambda = 1` always produces a single group.
pub fn threshold_components(
    pdg: &PartitionDistanceGraph,
    lambda: f64,
) -> Result<EnsembleGrouping> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::LambdaOutOfRange(lambda));
    }
    let k = pdg.partition_count();
    let mut component = vec![usize::MAX; k];
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for start in 0..k {
        if component[start] != usize::MAX {
            continue;
        }
        let id = groups.len();
        let mut members = vec![start];
        component[start] = id;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..k {
                if component[j] == usize::MAX && pdg.weight(i, j) <= lambda {
                    component[j] = id;
                    members.push(j);
                    stack.push(j);
                }
            }
        }
        members.sort_unstable();
        groups.push(members);
    }
    let largest_group = groups
        .iter()
        .enumerate()
        .max_by(|(ia, a), (ib, b)| a.len().cmp(&b.len()).then(ib.cmp(ia)))
        .map(|(i, _)| i)
        .unwrap_or(0);
    Ok(EnsembleGrouping { lambda, groups, largest_group })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub lambda: f64,
    pub n_groups: usize,
    pub largest_size: usize,
}

/// The grid used when no explicit one is given: 1.00, 0.95, ..., 0.05.
pub fn default_lambda_grid() -> Vec<f64> {
    (1..=20).rev().map(|i| i as f64 * 0.05).collect()
}

/// Component statistics at every grid value.
pub fn lambda_sweep(pdg: &PartitionDistanceGraph, grid: &[f64]) -> Result<Vec<SweepRecord>> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    grid.iter()
        .map(|&lambda| {
            let grouping = threshold_components(pdg, lambda)?;
            let largest_size = grouping.groups[grouping.largest_group].len();
            Ok(SweepRecord { lambda, n_groups: grouping.groups.len(), largest_size })
        })
        .collect()
}

/// The largest grid value at which more than one group appears, or 1.0 when
/// the ensemble never separates.
pub fn select_lambda(sweep: &[SweepRecord]) -> f64 {
    sweep
        .iter()
        .filter(|r| r.n_groups > 1)
        .map(|r| r.lambda)
        .fold(None, |best: Option<f64>, l| Some(best.map_or(l, |b| b.max(l))))
        .unwrap_or(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(labels: &[u32]) -> Partition {
        Partition::from_labels(labels.iter().copied())
    }

    #[test]
    fn identical_pair_has_zero_weight() {
        let ens = vec![p(&[0, 0, 1, 1]), p(&[0, 0, 1, 1])];
        let pdg = build_distance_graph(&ens).unwrap();
        assert_eq!(pdg.weight(0, 1), 0.0);
        assert_eq!(pdg.weight(0, 0), 0.0);
    }

    #[test]
    fn worked_pair_weight() {
        let ens = vec![p(&[0, 0, 1, 1]), p(&[0, 0, 0, 1])];
        let pdg = build_distance_graph(&ens).unwrap();
        assert_eq!(pdg.weight(0, 1), 0.25);
    }

    #[test]
    fn singleton_ensemble() {
        let pdg = build_distance_graph(&[p(&[0, 1, 0])]).unwrap();
        assert_eq!(pdg.partition_count(), 1);
        assert_eq!(pdg.weight(0, 0), 0.0);
        assert!(matches!(build_distance_graph(&[]), Err(Error::EmptyEnsemble)));
    }

    /// Two families of six-vertex partitions: rows vs. columns of a 2x3 grid.
    /// Their split-join distance is 7/12, between the 0.55 and 0.60 grid points.
    fn two_families() -> Vec<Partition> {
        let rows = p(&[0, 0, 0, 1, 1, 1]);
        let cols = p(&[0, 1, 2, 0, 1, 2]);
        vec![rows.clone(), rows, cols.clone(), cols]
    }

    #[test]
    fn lambda_one_is_one_group_and_zero_splits_everything() {
        let pdg = build_distance_graph(&two_families()).unwrap();
        let all = threshold_components(&pdg, 1.0).unwrap();
        assert_eq!(all.groups.len(), 1);
        assert_eq!(all.groups[0], vec![0, 1, 2, 3]);

        let ens = vec![p(&[0, 0, 1, 1]), p(&[0, 0, 0, 1]), p(&[0, 1, 1, 1])];
        let pdg = build_distance_graph(&ens).unwrap();
        let split = threshold_components(&pdg, 0.0).unwrap();
        assert_eq!(split.groups.len(), 3);
    }

    #[test]
    fn two_families_split_at_half() {
        let pdg = build_distance_graph(&two_families()).unwrap();
        let grouping = threshold_components(&pdg, 0.5).unwrap();
        assert_eq!(grouping.groups, vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(grouping.largest_group, 0);
    }

    #[test]
    fn lambda_out_of_range_rejected() {
        let pdg = build_distance_graph(&two_families()).unwrap();
        assert!(matches!(threshold_components(&pdg, 1.5), Err(Error::LambdaOutOfRange(_))));
        assert!(matches!(threshold_components(&pdg, -0.1), Err(Error::LambdaOutOfRange(_))));
    }

    #[test]
    fn sweep_shape_and_selection() {
        let pdg = build_distance_graph(&two_families()).unwrap();
        let grid = default_lambda_grid();
        assert_eq!(grid.len(), 20);
        let sweep = lambda_sweep(&pdg, &grid).unwrap();
        assert_eq!(sweep.len(), 20);
        // cross distance is 7/12 ~ 0.583: one group at 0.60 and above, two below
        assert!((select_lambda(&sweep) - 0.55).abs() < 1e-12);
        assert!(matches!(lambda_sweep(&pdg, &[]), Err(Error::EmptyGrid)));
    }

    #[test]
    fn identical_ensemble_selects_one() {
        let ens = vec![p(&[0, 0, 1, 1]); 4];
        let pdg = build_distance_graph(&ens).unwrap();
        let sweep = lambda_sweep(&pdg, &default_lambda_grid()).unwrap();
        assert!(sweep.iter().all(|r| r.n_groups == 1));
        assert_eq!(select_lambda(&sweep), 1.0);
    }

    #[test]
    fn mutually_distant_ensemble_selects_095() {
        // rows, columns and diagonals of a 21x21 grid are pairwise at
        // split-join distance 1 - 1/21 ~ 0.952, above the 0.95 grid point
        let side = 21u32;
        let n = (side * side) as usize;
        let rows = Partition::from_labels((0..n as u32).map(|v| v / side));
        let cols = Partition::from_labels((0..n as u32).map(|v| v % side));
        let diag = Partition::from_labels((0..n as u32).map(|v| (v / side + v % side) % side));
        let ens = vec![rows, cols, diag];
        let pdg = build_distance_graph(&ens).unwrap();
        for i in 0..3 {
            for j in i + 1..3 {
                assert!(pdg.weight(i, j) > 0.95, "weight {} not above threshold", pdg.weight(i, j));
            }
        }
        let sweep = lambda_sweep(&pdg, &default_lambda_grid()).unwrap();
        assert!((select_lambda(&sweep) - 0.95).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn groups_cover_and_count_is_monotone(
            columns in (2usize..12, 2usize..7).prop_flat_map(|(n, k)| {
                prop::collection::vec(prop::collection::vec(0u32..4, n), k)
            }),
        ) {
            let ens: Vec<Partition> = columns.into_iter().map(Partition::from_labels).collect();
            let pdg = build_distance_graph(&ens).unwrap();
            let sweep = lambda_sweep(&pdg, &default_lambda_grid()).unwrap();
            for w in sweep.windows(2) {
                // grid is descending, so counts must be non-decreasing along it
                prop_assert!(w[1].n_groups >= w[0].n_groups);
            }
            for record in &sweep {
                let grouping = threshold_components(&pdg, record.lambda).unwrap();
                let mut seen: Vec<usize> = grouping.groups.concat();
                seen.sort_unstable();
                prop_assert_eq!(seen, (0..ens.len()).collect::<Vec<_>>());
                // retained edges stay within groups
                let mut owner = vec![0usize; ens.len()];
                for (gi, group) in grouping.groups.iter().enumerate() {
                    for &m in group {
                        owner[m] = gi;
                    }
                }
                for i in 0..ens.len() {
                    for j in i + 1..ens.len() {
                        if pdg.weight(i, j) <= record.lambda {
                            prop_assert_eq!(owner[i], owner[j]);
                        }
                    }
                }
            }
        }

        #[test]
        fn grouping_invariant_under_reordering(
            columns in (2usize..10, 2usize..6).prop_flat_map(|(n, k)| {
                prop::collection::vec(prop::collection::vec(0u32..3, n), k)
            }),
            lambda in 0.0f64..=1.0,
        ) {
            let ens: Vec<Partition> = columns.into_iter().map(Partition::from_labels).collect();
            let pdg = build_distance_graph(&ens).unwrap();
            let grouping = threshold_components(&pdg, lambda).unwrap();

            let mut reversed = ens.clone();
            reversed.reverse();
            let pdg_rev = build_distance_graph(&reversed).unwrap();
            let grouping_rev = threshold_components(&pdg_rev, lambda).unwrap();

            // same family of groups up to index relabeling
            let last = ens.len() - 1;
            let mut mapped: Vec<Vec<usize>> = grouping_rev
                .groups
                .iter()
                .map(|g| {
                    let mut h: Vec<usize> = g.iter().map(|&i| last - i).collect();
                    h.sort_unstable();
                    h
                })
                .collect();
            mapped.sort();
            let mut original = grouping.groups.clone();
            original.sort();
            prop_assert_eq!(mapped, original);
        }
    }
}
