//! Minimum chain partition of the index poset.
//!
//! A maximum matching in the bipartite graph of strictly comparable pairs
//! joins the `2^n` indices into `2^n - |matching|` chains, which by
//! Dilworth's theorem is the size of the largest antichain. The partition
//! depends only on `n`, so it is computed once and cached to disk.

mod format;
mod graph;
mod matching;
mod partition;

pub use format::{
    load_partition, load_partition_unverified, parse_partition, parse_partition_unverified, save_partition, to_text,
};
pub use graph::{BipartiteComparabilityGraph, DEFAULT_GRAPH_CAP};
pub use matching::{maximum_matching, Matching};
pub use partition::{chains_to_matching, matching_to_chains, ChainPartition, PartitionDefect};

use crate::error::Result;
use crate::exec::Execution;

/// Graph, matching, and chain conversion in one call.
pub fn minimum_chain_partition(n: u32, cap: u32, exec: Execution) -> Result<ChainPartition> {
    let graph = BipartiteComparabilityGraph::build(n, cap, exec)?;
    matching_to_chains(&maximum_matching(&graph))
}
