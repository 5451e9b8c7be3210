use super::graph::BipartiteComparabilityGraph;
use crate::error::{Error, Result};
use crate::index_poset::check_levels;

const NONE: u32 = u32::MAX;
const INF: u32 = u32::MAX;

/// Vertex-disjoint set of edges `(left, right)` of the comparability graph,
/// sorted by left endpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    n: u32,
    pairs: Vec<(u32, u32)>,
}

impl Matching {
    /// Validates that no left or right vertex is used twice.
    pub fn new(n: u32, mut pairs: Vec<(u32, u32)>) -> Result<Self> {
        check_levels(n)?;
        let size = 1usize << n;
        let mut left = vec![false; size];
        let mut right = vec![false; size];
        for &(u, v) in &pairs {
            if u as usize >= size || v as usize >= size {
                return Err(Error::invariant(format!("edge ({u}, {v}) out of range for n = {n}")));
            }
            if std::mem::replace(&mut left[u as usize], true) {
                return Err(Error::invariant(format!("left vertex {u} matched twice")));
            }
            if std::mem::replace(&mut right[v as usize], true) {
                return Err(Error::invariant(format!("right vertex {v} matched twice")));
            }
        }
        pairs.sort_unstable();
        Ok(Matching { n, pairs })
    }

    pub fn levels(&self) -> u32 {
        self.n
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Maximum-cardinality matching by Hopcroft–Karp.
///
/// Free left vertices are tried in ascending order and adjacency rows are
/// scanned ascending, so the result is a deterministic function of the graph.
pub fn maximum_matching(g: &BipartiteComparabilityGraph) -> Matching {
    let size = g.vertex_count();
    let mut match_left = vec![NONE; size];
    let mut match_right = vec![NONE; size];
    let mut dist = vec![INF; size];
    let mut cursor = vec![0usize; size];
    let mut queue: Vec<u32> = Vec::with_capacity(size);
    let mut stack: Vec<u32> = Vec::new();

    loop {
        // Layer the free left vertices and everything reachable by
        // alternating paths.
        queue.clear();
        for u in 0..size {
            if match_left[u] == NONE {
                dist[u] = 0;
                queue.push(u as u32);
            } else {
                dist[u] = INF;
            }
        }
        let mut found = false;
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            for &v in g.neighbors(u) {
                let w = match_right[v as usize];
                if w == NONE {
                    found = true;
                } else if dist[w as usize] == INF {
                    dist[w as usize] = dist[u as usize] + 1;
                    queue.push(w);
                }
            }
        }
        if !found {
            break;
        }

        cursor.iter_mut().for_each(|c| *c = 0);
        for root in 0..size as u32 {
            if match_left[root as usize] != NONE {
                continue;
            }
            stack.clear();
            stack.push(root);
            while let Some(&u) = stack.last() {
                let row = g.neighbors(u);
                let c = cursor[u as usize];
                if c == row.len() {
                    dist[u as usize] = INF;
                    stack.pop();
                    continue;
                }
                let v = row[c];
                let w = match_right[v as usize];
                if w == NONE {
                    // Flip the alternating path recorded on the stack.
                    for &x in stack.iter() {
                        let y = g.neighbors(x)[cursor[x as usize]];
                        match_left[x as usize] = y;
                        match_right[y as usize] = x;
                    }
                    break;
                }
                if dist[w as usize] != INF && dist[w as usize] == dist[u as usize] + 1 {
                    stack.push(w);
                } else {
                    cursor[u as usize] += 1;
                }
            }
        }
    }

    let pairs = match_left
        .iter()
        .enumerate()
        .filter(|&(_, &v)| v != NONE)
        .map(|(u, &v)| (u as u32, v))
        .collect();
    Matching { n: g.levels(), pairs }
}
