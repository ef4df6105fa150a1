//! Greedy median-consensus optimization restricted to graph-neighbor moves.
//!
//! The optimizer starts from singleton clusters and repeatedly batches one
//! best move per vertex, where a vertex may only move into clusters that
//! contain at least one of its graph neighbors. Move gains are evaluated
//! against a frozen snapshot (that phase is a pure parallel map), then
//! replayed in ascending vertex order against the live state and applied only
//! if still strictly improving. The replay keeps the objective strictly
//! decreasing, which both rules out batch-swap oscillation and bounds the
//! iteration count, and makes the result independent of the worker count.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::{hamming, MembershipMatrix, Partition};

/// Mutable cluster assignment during optimization.
///
/// Cluster ids live in `0..n` (the initial singleton ids); clusters may become
/// empty mid-run and are stripped only when the state is turned back into a
/// [`Partition`]. The tracked objective is the surrogate
/// `sum over co-clustered pairs {u,v} of (2 delta_uv - k)`, which differs from
/// the summed Mirkin distance by a constant independent of the assignment, so
/// both rank all candidate moves identically.
#[derive(Debug, Clone)]
pub struct ConsensusState {
    assignment: Vec<u32>,
    members: Vec<Vec<u32>>,
    slot: Vec<u32>,
    sizes: Vec<u32>,
    live_objective: i64,
}

/// An improving move found during the snapshot phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MoveProposal {
    pub vertex: u32,
    pub from_cluster: u32,
    pub to_cluster: u32,
    /// Objective change at proposal time; always negative.
    pub delta: i64,
}

impl ConsensusState {
    /// One cluster per vertex, cluster id = vertex id, objective zero.
    pub fn init_singletons(n: usize) -> Self {
        ConsensusState {
            assignment: (0..n as u32).collect(),
            members: (0..n as u32).map(|v| vec![v]).collect(),
            slot: vec![0; n],
            sizes: vec![1; n],
            live_objective: 0,
        }
    }

    /// State matching an arbitrary assignment, with the objective recomputed
    /// from scratch. Labels are taken as cluster ids.
    pub fn from_assignment(labels: &[u32], mm: &MembershipMatrix) -> Self {
        assert_eq!(labels.len(), mm.vertex_count(), "assignment length must match matrix");
        let clusters = labels.iter().map(|&l| l as usize + 1).max().unwrap_or(0);
        let mut members: Vec<Vec<u32>> = vec![Vec::new(); clusters];
        let mut slot = vec![0u32; labels.len()];
        for (v, &l) in labels.iter().enumerate() {
            slot[v] = members[l as usize].len() as u32;
            members[l as usize].push(v as u32);
        }
        let sizes = members.iter().map(|m| m.len() as u32).collect();
        let mut state = ConsensusState {
            assignment: labels.to_vec(),
            members,
            slot,
            sizes,
            live_objective: 0,
        };
        state.live_objective = state.surrogate_objective(mm);
        state
    }

    pub fn vertex_count(&self) -> usize {
        self.assignment.len()
    }

    pub fn assignment(&self) -> &[u32] {
        &self.assignment
    }

    pub fn cluster_members(&self, cluster: u32) -> &[u32] {
        &self.members[cluster as usize]
    }

    pub fn cluster_size(&self, cluster: u32) -> u32 {
        self.sizes[cluster as usize]
    }

    /// Objective value maintained incrementally across applied moves.
    pub fn live_objective(&self) -> i64 {
        self.live_objective
    }

    /// Canonicalized partition; empty clusters disappear here.
    pub fn to_partition(&self) -> Partition {
        Partition::from_labels(self.assignment.iter().copied())
    }

    /// Surrogate objective recomputed from scratch over intra-cluster pairs.
    ///
    /// Costs `sum over clusters of size^2 * k`; meant for initialization and
    /// consistency checks, not for the per-move hot path.
    pub fn surrogate_objective(&self, mm: &MembershipMatrix) -> i64 {
        let k = mm.partition_count() as i64;
        let mut total = 0i64;
        for members in &self.members {
            for (i, &u) in members.iter().enumerate() {
                let row_u = mm.row(u as usize);
                for &v in &members[i + 1..] {
                    total += 2 * hamming(row_u, mm.row(v as usize)) as i64 - k;
                }
            }
        }
        total
    }

    /// Sum of `2 delta_uv - k` between `v` and the members of `cluster`,
    /// skipping `v` itself.
    #[inline]
    fn term(&self, mm: &MembershipMatrix, v: usize, cluster: u32) -> i64 {
        let k = mm.partition_count() as i64;
        let row_v = mm.row(v);
        let mut sum = 0i64;
        for &u in &self.members[cluster as usize] {
            if u as usize == v {
                continue;
            }
            sum += 2 * hamming(row_v, mm.row(u as usize)) as i64 - k;
        }
        sum
    }

    /// Exact objective change if `v` moved from its cluster to `target`.
    ///
    /// Panics when `target` is the current cluster of `v` or out of range.
    /// An empty target contributes zero, so stale proposals whose target
    /// drained mid-iteration are still evaluated meaningfully.
    pub fn delta_d(&self, mm: &MembershipMatrix, v: usize, target: u32) -> i64 {
        let current = self.assignment[v];
        assert_ne!(current, target, "delta_d requires a move to a different cluster");
        self.term(mm, v, target) - self.term(mm, v, current)
    }

    /// Applies the move unconditionally and folds `delta_d` into the tracked
    /// objective; returns the applied delta.
    pub fn move_vertex(&mut self, mm: &MembershipMatrix, v: usize, target: u32) -> i64 {
        let delta = self.delta_d(mm, v, target);
        self.apply_move(v, target, delta);
        delta
    }

    fn apply_move(&mut self, v: usize, target: u32, delta: i64) {
        let source = self.assignment[v] as usize;
        let slot = self.slot[v] as usize;
        let moved = self.members[source].swap_remove(slot);
        debug_assert_eq!(moved as usize, v);
        if let Some(&swapped) = self.members[source].get(slot) {
            self.slot[swapped as usize] = slot as u32;
        }
        self.sizes[source] -= 1;
        let t = target as usize;
        self.slot[v] = self.members[t].len() as u32;
        self.members[t].push(v as u32);
        self.sizes[t] += 1;
        self.assignment[v] = target;
        self.live_objective += delta;
    }
}

/// Best strictly improving move for `v` among clusters holding a neighbor.
///
/// Candidate clusters are the distinct clusters of `v`'s neighbors minus its
/// own; ties in the gain go to the smallest cluster id. Isolated vertices and
/// vertices whose neighbors all share their cluster yield no move.
pub fn best_move(
    state: &ConsensusState,
    mm: &MembershipMatrix,
    graph: &Graph,
    v: usize,
) -> Option<MoveProposal> {
    let mut scratch = Vec::new();
    best_move_with(&mut scratch, state, mm, graph, v)
}

fn best_move_with(
    candidates: &mut Vec<u32>,
    state: &ConsensusState,
    mm: &MembershipMatrix,
    graph: &Graph,
    v: usize,
) -> Option<MoveProposal> {
    let current = state.assignment[v];
    candidates.clear();
    for &u in graph.neighbors(v) {
        let c = state.assignment[u as usize];
        if c != current {
            candidates.push(c);
        }
    }
    if candidates.is_empty() {
        return None;
    }
    candidates.sort_unstable();
    candidates.dedup();

    let source_term = state.term(mm, v, current);
    let mut best: Option<(i64, u32)> = None;
    for &c in candidates.iter() {
        let delta = state.term(mm, v, c) - source_term;
        // strict < keeps the smallest cluster id on ties (candidates ascend)
        if best.map_or(true, |(d, _)| delta < d) {
            best = Some((delta, c));
        }
    }
    match best {
        Some((delta, to_cluster)) if delta < 0 => Some(MoveProposal {
            vertex: v as u32,
            from_cluster: current,
            to_cluster,
            delta,
        }),
        _ => None,
    }
}

/// One best improving move per vertex, all judged against the state at the
/// start of the iteration. The result is ordered by vertex id and identical
/// for any worker count; pass a pool to spread the evaluation over threads.
pub fn compute_iteration_moves(
    state: &ConsensusState,
    mm: &MembershipMatrix,
    graph: &Graph,
    pool: Option<&rayon::ThreadPool>,
) -> Vec<MoveProposal> {
    let n = state.vertex_count();
    let proposals: Vec<Option<MoveProposal>> = match pool {
        None => {
            let mut scratch = Vec::new();
            (0..n).map(|v| best_move_with(&mut scratch, state, mm, graph, v)).collect()
        }
        Some(pool) => pool.install(|| {
            (0..n)
                .into_par_iter()
                .map_init(Vec::new, |scratch, v| best_move_with(scratch, state, mm, graph, v))
                .collect()
        }),
    };
    proposals.into_iter().flatten().collect()
}

/// Replays proposals in ascending vertex order against the live state,
/// applying each only if its recomputed gain is still strictly negative.
/// Returns the number of applied moves; zero means the state is a fixed point.
pub fn validate_and_apply(
    state: &mut ConsensusState,
    mm: &MembershipMatrix,
    proposals: &[MoveProposal],
) -> usize {
    debug_assert!(proposals.windows(2).all(|w| w[0].vertex < w[1].vertex));
    let mut applied = 0;
    for proposal in proposals {
        let v = proposal.vertex as usize;
        debug_assert_eq!(state.assignment[v], proposal.from_cluster);
        let delta = state.delta_d(mm, v, proposal.to_cluster);
        if delta < 0 {
            state.apply_move(v, proposal.to_cluster, delta);
            applied += 1;
        }
    }
    #[cfg(debug_assertions)]
    if state.vertex_count() <= 512 {
        assert_eq!(state.live_objective, state.surrogate_objective(mm));
    }
    applied
}

#[derive(Debug, Clone)]
pub struct ConsensusConfig {
    /// Safety cap on iterations; convergence normally arrives much earlier.
    pub max_iterations: usize,
    /// Worker threads for the proposal phase; 0 means all available cores.
    pub workers: usize,
}

impl Default for ConsensusConfig {
    fn default() -> Self {
        ConsensusConfig { max_iterations: 1000, workers: 0 }
    }
}

#[derive(Debug, Clone)]
pub struct ConsensusOutcome {
    pub partition: Partition,
    /// Applied move count per iteration; ends with 0 when converged.
    pub applied_per_iteration: Vec<usize>,
    pub converged: bool,
}

impl ConsensusOutcome {
    pub fn iterations(&self) -> usize {
        self.applied_per_iteration.len()
    }
}

/// Runs the full optimization: singleton start, batched improve/validate
/// iterations, stop at the first iteration that applies no move.
pub fn run(
    graph: &Graph,
    ensemble: &[Partition],
    config: &ConsensusConfig,
) -> Result<ConsensusOutcome> {
    let mm = MembershipMatrix::from_partitions(ensemble)?;
    if mm.vertex_count() != graph.vertex_count() {
        return Err(Error::GraphPartitionMismatch {
            graph: graph.vertex_count(),
            partitions: mm.vertex_count(),
        });
    }
    let workers = if config.workers == 0 {
        std::thread::available_parallelism().map(|p| p.get()).unwrap_or(1)
    } else {
        config.workers
    };
    let pool = if workers > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .map_err(|e| Error::WorkerPool(e.to_string()))?,
        )
    } else {
        None
    };

    let mut state = ConsensusState::init_singletons(graph.vertex_count());
    let mut applied_per_iteration = Vec::new();
    let mut converged = false;
    while applied_per_iteration.len() < config.max_iterations {
        let proposals = compute_iteration_moves(&state, &mm, graph, pool.as_ref());
        let applied = validate_and_apply(&mut state, &mm, &proposals);
        applied_per_iteration.push(applied);
        if applied == 0 {
            converged = true;
            break;
        }
    }
    Ok(ConsensusOutcome { partition: state.to_partition(), applied_per_iteration, converged })
}
