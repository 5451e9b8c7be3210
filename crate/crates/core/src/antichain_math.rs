//! Counting on the subset lattice: the rank-level profile, the maximum
//! antichain size `M(n)`, and the evaluation bounds that follow from it.
//!
//! Level `r` of the poset holds the subsets of `{1, …, n}` summing to `r`, so
//! the profile is the coefficient list of `∏ (1 + x^i)`. Counts are exact
//! `u128` (the total is `2^n <= 2^64`).

use crate::error::{Error, Result};

/// Largest `n` accepted by the exact counting routines.
pub const MAX_COUNT_LEVELS: u32 = 64;

/// Number of subsets of `{1, …, n}` at every rank `0..=n(n+1)/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelProfile {
    n: u32,
    counts: Vec<u128>,
}

impl LevelProfile {
    pub fn levels(&self) -> u32 {
        self.n
    }

    pub fn counts(&self) -> &[u128] {
        &self.counts
    }

    /// `n(n+1)/2`, the rank of the full set.
    pub fn max_rank(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn total(&self) -> u128 {
        self.counts.iter().sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.counts.iter().eq(self.counts.iter().rev())
    }

    pub fn is_unimodal(&self) -> bool {
        let peak = self
            .counts
            .windows(2)
            .position(|w| w[1] < w[0])
            .unwrap_or(self.counts.len() - 1);
        self.counts[peak..].windows(2).all(|w| w[1] <= w[0])
    }

    pub fn max_count(&self) -> u128 {
        self.counts.iter().copied().max().unwrap_or(0)
    }
}

fn check_count_levels(n: u32) -> Result<()> {
    if n == 0 || n > MAX_COUNT_LEVELS {
        return Err(Error::parameter(format!(
            "n must lie in [1, {MAX_COUNT_LEVELS}], got {n}"
        )));
    }
    Ok(())
}

/// Coefficients of `∏_{i=1}^{n} (1 + x^i)`.
pub fn level_profile(n: u32) -> Result<LevelProfile> {
    check_count_levels(n)?;
    let max_rank = (n * (n + 1) / 2) as usize;
    let mut counts = vec![0u128; max_rank + 1];
    counts[0] = 1;
    let mut reach = 0usize;
    for i in 1..=n as usize {
        reach += i;
        for r in (i..=reach).rev() {
            counts[r] += counts[r - i];
        }
    }
    Ok(LevelProfile { n, counts })
}

/// `M(n)`: the largest number of subsets of `{1, …, n}` with a common sum.
pub fn max_antichain_size(n: u32) -> Result<u128> {
    Ok(level_profile(n)?.max_count())
}

/// Number of sign choices with `±1 ± 2 … ± n = 0`.
pub fn signed_sum_zero_count(n: u32) -> Result<u128> {
    check_count_levels(n)?;
    let offset = (n * (n + 1) / 2) as usize;
    let mut ways = vec![0u128; 2 * offset + 1];
    ways[offset] = 1;
    for i in 1..=n as usize {
        let mut next = vec![0u128; ways.len()];
        for (s, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            next[s + i] += w;
            next[s - i] += w;
        }
        ways = next;
    }
    Ok(ways[offset])
}

/// `√(6/π) · 2^n / n^{3/2}`, the leading-order value of `M(n)`.
pub fn asymptotic_estimate(n: u32) -> f64 {
    let n = f64::from(n);
    (6.0 / std::f64::consts::PI).sqrt() * n.exp2() / n.powf(1.5)
}

/// Lower and upper bounds on the number of Bhattacharyya evaluations needed
/// to solve the fixed-performance problem at block length `2^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexityBounds {
    pub n: u32,
    /// `M(n)`.
    pub m: u128,
    /// Evaluations some threshold forces: `M(n)`.
    pub lower: u128,
    /// `M(n) · log₂(2^{n+1} / M(n))`.
    pub upper_real: f64,
    /// `⌈upper_real⌉`.
    pub upper_budget: u128,
}

impl ComplexityBounds {
    pub fn block_length(&self) -> u128 {
        1u128 << self.n
    }
}

pub fn complexity_bounds(n: u32) -> Result<ComplexityBounds> {
    let m = max_antichain_size(n)?;
    let upper_real = budget_for_chains(n, m);
    Ok(ComplexityBounds {
        n,
        m,
        lower: m,
        upper_real,
        upper_budget: upper_real.ceil() as u128,
    })
}

/// `K · log₂(2^{n+1} / K)` for a partition into `K` chains.
pub fn budget_for_chains(n: u32, chains: u128) -> f64 {
    let k = chains as f64;
    k * (f64::from(n + 1) - k.log2())
}

/// `⌊log₂ len⌋ + 1`, the worst-case binary-search cost on a chain of
/// `len >= 1` elements.
pub fn chain_search_cost(len: usize) -> u64 {
    debug_assert!(len > 0);
    u64::from(usize::BITS - len.leading_zeros())
}

/// One row of the bounds table.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundsRow {
    pub n: u32,
    pub m: u128,
    /// `M(n) / 2^n`.
    pub lower_fraction: f64,
    /// `min(1, upper_real / 2^n)`.
    pub upper_fraction: f64,
    /// Unclamped `M(n) · log₂(2^{n+1} / M(n))`.
    pub upper_raw: f64,
}

pub fn bounds_row(n: u32) -> Result<BoundsRow> {
    let b = complexity_bounds(n)?;
    let size = f64::from(n).exp2();
    Ok(BoundsRow {
        n,
        m: b.m,
        lower_fraction: b.m as f64 / size,
        upper_fraction: (b.upper_real / size).min(1.0),
        upper_raw: b.upper_real,
    })
}

pub const BOUNDS_CSV_HEADER: &str = "n,M,lower_fraction,upper_fraction,upper_raw";

/// CSV of [`bounds_row`] for every `n` in `levels`. Reals are written in
/// shortest round-trip form, so parsing gives back the same `f64`.
pub fn bounds_csv(levels: impl IntoIterator<Item = u32>) -> Result<String> {
    let mut out = String::from(BOUNDS_CSV_HEADER);
    out.push('\n');
    for n in levels {
        let r = bounds_row(n)?;
        out.push_str(&format!(
            "{},{},{:?},{:?},{:?}\n",
            r.n, r.m, r.lower_fraction, r.upper_fraction, r.upper_raw
        ));
    }
    Ok(out)
}
