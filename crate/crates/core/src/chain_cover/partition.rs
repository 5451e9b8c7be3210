use std::fmt;

use super::matching::Matching;
use crate::error::{Error, Result};
use crate::index_poset::{check_levels, precedes};

/// A list of pairwise-disjoint chains covering `[0, 2^n)`, each stored from
/// most degraded to most upgraded.
///
/// Construction does not validate; call [`ChainPartition::verify`] (every
/// consumer in this crate does).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainPartition {
    n: u32,
    chains: Vec<Vec<u32>>,
}

/// First condition a candidate partition violates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartitionDefect {
    BadLevels(u32),
    EmptyChain { chain: usize },
    OutOfRange { index: u32 },
    Duplicate { index: u32 },
    Missing { index: u32 },
    NotOrdered { chain: usize, lower: u32, upper: u32 },
}

impl fmt::Display for PartitionDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartitionDefect::BadLevels(n) => write!(f, "unsupported number of levels {n}"),
            PartitionDefect::EmptyChain { chain } => write!(f, "chain {chain} is empty"),
            PartitionDefect::OutOfRange { index } => write!(f, "index {index} out of range"),
            PartitionDefect::Duplicate { index } => write!(f, "index {index} appears more than once"),
            PartitionDefect::Missing { index } => write!(f, "index {index} is not covered"),
            PartitionDefect::NotOrdered { chain, lower, upper } => write!(
                f,
                "chain {chain}: {lower} is not strictly below {upper}"
            ),
        }
    }
}

impl ChainPartition {
    pub fn from_chains(n: u32, chains: Vec<Vec<u32>>) -> Self {
        ChainPartition { n, chains }
    }

    /// Like [`from_chains`](Self::from_chains) but rejects invalid input.
    pub fn new(n: u32, chains: Vec<Vec<u32>>) -> Result<Self> {
        let p = ChainPartition { n, chains };
        p.verify().map_err(|d| Error::invariant(d.to_string()))?;
        Ok(p)
    }

    /// `2^n` one-element chains.
    pub fn singletons(n: u32) -> Result<Self> {
        check_levels(n)?;
        Ok(ChainPartition {
            n,
            chains: (0..1u32 << n).map(|i| vec![i]).collect(),
        })
    }

    pub fn levels(&self) -> u32 {
        self.n
    }

    pub fn chains(&self) -> &[Vec<u32>] {
        &self.chains
    }

    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    /// Check disjointness, coverage, and that every chain strictly ascends in
    /// the order. Consecutive comparability suffices by transitivity.
    pub fn verify(&self) -> std::result::Result<(), PartitionDefect> {
        if check_levels(self.n).is_err() {
            return Err(PartitionDefect::BadLevels(self.n));
        }
        let size = 1u32 << self.n;
        let mut seen = vec![false; size as usize];
        for (c, chain) in self.chains.iter().enumerate() {
            if chain.is_empty() {
                return Err(PartitionDefect::EmptyChain { chain: c });
            }
            for &i in chain {
                if i >= size {
                    return Err(PartitionDefect::OutOfRange { index: i });
                }
                if std::mem::replace(&mut seen[i as usize], true) {
                    return Err(PartitionDefect::Duplicate { index: i });
                }
            }
            for w in chain.windows(2) {
                if !precedes(w[0], w[1]) {
                    return Err(PartitionDefect::NotOrdered {
                        chain: c,
                        lower: w[0],
                        upper: w[1],
                    });
                }
            }
        }
        if let Some(i) = seen.iter().position(|&s| !s) {
            return Err(PartitionDefect::Missing { index: i as u32 });
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.verify().is_ok()
    }

    pub(crate) fn ensure_valid_for(&self, n: u32) -> Result<()> {
        if self.n != n {
            return Err(Error::invariant(format!(
                "partition is for n = {}, expected n = {n}",
                self.n
            )));
        }
        self.verify().map_err(|d| Error::invariant(d.to_string()))
    }
}

/// Join matched pairs into maximal paths. Chains come out in ascending
/// order of their first element.
pub fn matching_to_chains(m: &Matching) -> Result<ChainPartition> {
    let n = m.levels();
    let size = 1usize << n;
    let mut next = vec![u32::MAX; size];
    let mut has_pred = vec![false; size];
    for &(u, v) in m.pairs() {
        if !(u != v && precedes(u, v)) {
            return Err(Error::invariant(format!(
                "matched pair ({u}, {v}) is not a comparability edge"
            )));
        }
        if next[u as usize] != u32::MAX || has_pred[v as usize] {
            return Err(Error::invariant(format!("pair ({u}, {v}) shares a vertex")));
        }
        next[u as usize] = v;
        has_pred[v as usize] = true;
    }
    let mut chains = Vec::with_capacity(size - m.len());
    for (start, _) in has_pred.iter().enumerate().filter(|(_, &p)| !p) {
        let mut chain = vec![start as u32];
        let mut cur = start;
        while next[cur] != u32::MAX {
            cur = next[cur] as usize;
            chain.push(cur as u32);
        }
        chains.push(chain);
    }
    Ok(ChainPartition { n, chains })
}

/// Consecutive elements of every chain become matched pairs.
pub fn chains_to_matching(p: &ChainPartition) -> Result<Matching> {
    p.verify().map_err(|d| Error::invariant(d.to_string()))?;
    let pairs = p
        .chains()
        .iter()
        .flat_map(|c| c.windows(2).map(|w| (w[0], w[1])))
        .collect();
    Matching::new(p.levels(), pairs)
}
