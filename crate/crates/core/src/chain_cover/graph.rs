use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::index_poset::{check_levels, precedes};

/// Default cap on `n` for materializing the comparability graph.
pub const DEFAULT_GRAPH_CAP: u32 = 12;

/// Bipartite graph with both sides equal to `[0, 2^n)` and an edge `(u, v)`
/// for every strictly comparable pair `u ≺ v`.
///
/// Stored as compressed adjacency rows; each row is sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteComparabilityGraph {
    n: u32,
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl BipartiteComparabilityGraph {
    /// Build the full strict comparability relation for `n <= cap`.
    pub fn build(n: u32, cap: u32, exec: Execution) -> Result<Self> {
        check_levels(n)?;
        if n > cap {
            return Err(Error::Resource {
                what: "comparability graph",
                n,
                cap,
            });
        }
        let size = 1u32 << n;
        // Both operators increase the numeric value, so every successor of
        // `u` is larger than `u`.
        let rows = exec::map_range(exec, size as usize, |u| {
            let u = u as u32;
            ((u + 1)..size).filter(|&v| precedes(u, v)).collect::<Vec<u32>>()
        });
        let mut offsets = Vec::with_capacity(rows.len() + 1);
        offsets.push(0);
        let total: usize = rows.iter().map(Vec::len).sum();
        let mut targets = Vec::with_capacity(total);
        for row in rows {
            targets.extend_from_slice(&row);
            offsets.push(targets.len());
        }
        Ok(BipartiteComparabilityGraph {
            n,
            offsets,
            targets,
        })
    }

    pub fn levels(&self) -> u32 {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len()
    }

    pub fn neighbors(&self, u: u32) -> &[u32] {
        let u = u as usize;
        &self.targets[self.offsets[u]..self.offsets[u + 1]]
    }

    pub fn contains(&self, u: u32, v: u32) -> bool {
        (u as usize) < self.vertex_count() && self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Edges in ascending `(u, v)` order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.vertex_count() as u32).flat_map(move |u| self.neighbors(u).iter().map(move |&v| (u, v)))
    }
}
