//! Median consensus partitions of graphs.
//!
//! Given a graph and an ensemble of partitions of its vertices, this crate
//! finds a consensus partition that greedily minimizes the summed Mirkin
//! distance to the ensemble, moving vertices only into clusters where they
//! have graph neighbors. Memory stays linear in the graph plus the ensemble
//! (`O(m + nk)`); no all-pairs structure is ever built outside the explicitly
//! capped baselines.
//!
//! Modules:
//! - [`graph`]: compressed undirected graphs and edge-list IO.
//! - [`partition`]: partitions, ensembles, the membership matrix.
//! - [`metrics`]: Mirkin / rand / split-join / variation-of-information.
//! - [`grouping`]: homogeneous-group detection by thresholded components.
//! - [`consensus`]: the batched greedy optimizer.
//! - [`baselines`]: best-one-element-move descent and an exhaustive oracle.
//! - [`synth`]: planted-partition generation and partition perturbation.

pub mod baselines;
pub mod consensus;
pub mod error;
pub mod graph;
pub mod grouping;
pub mod metrics;
pub mod partition;
pub mod synth;

pub use error::{Error, Result};
pub use graph::Graph;
pub use partition::{MembershipMatrix, Partition};
