//! Fixed-performance and fixed-rate construction by binary search along the
//! chains of a partition.
//!
//! Along a chain (most degraded first) the Bhattacharyya parameter is
//! non-increasing, so the channels with `Z < γ` form a suffix whose start is
//! found with at most `⌊log₂ |chain|⌋ + 1` evaluations.

use crate::antichain_math::{chain_search_cost, complexity_bounds};
use crate::chain_cover::ChainPartition;
use crate::channels::{counted_bhattacharyya, BmsChannel, EvaluationCounter, ReliabilityModel};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::index_poset::{check_levels, ChannelIndex};

/// Number of threshold halvings in the fixed-rate bisection.
pub const RATE_BISECTION_STEPS: u32 = 64;

/// Evaluation accounting of one construction run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluationReport {
    /// Distinct synthetic channels whose parameter was computed.
    pub evaluations: u64,
    /// `⌈M(n) · log₂(2^{n+1} / M(n))⌉`.
    pub budget_upper: u128,
    /// `Σ_c ⌊log₂ |c|⌋ + 1` over the chains of the partition used.
    pub chain_bound: u64,
    /// Distinct evaluations per chain, in partition order.
    pub per_chain_costs: Vec<u64>,
    /// Threshold probes issued (1 for a fixed-performance run).
    pub probes: u64,
}

impl EvaluationReport {
    fn new(n: u32, partition: &ChainPartition, per_chain_costs: Vec<u64>, probes: u64) -> Result<Self> {
        Ok(EvaluationReport {
            evaluations: per_chain_costs.iter().sum(),
            budget_upper: complexity_bounds(n)?.upper_budget,
            chain_bound: partition.chains().iter().map(|c| chain_search_cost(c.len())).sum(),
            per_chain_costs,
            probes,
        })
    }

    /// `1 - evaluations / 2^n`.
    pub fn savings(&self, n: u32) -> f64 {
        1.0 - self.evaluations as f64 / f64::from(1u32 << n)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FpResult {
    pub n: u32,
    pub gamma: f64,
    /// Indices with `Z < γ`, ascending.
    pub selected: Vec<u32>,
    pub report: EvaluationReport,
}

impl FpResult {
    pub fn to_text(&self) -> String {
        index_list(format!("# n={} gamma={}", self.n, self.gamma), &self.selected)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrResult {
    pub n: u32,
    pub rate: f64,
    /// The `⌊2^n R⌋` indices of smallest `Z`, ascending.
    pub selected: Vec<u32>,
    pub report: EvaluationReport,
}

impl FrResult {
    pub fn to_text(&self) -> String {
        index_list(
            format!("# n={} rate={} size={}", self.n, self.rate, self.selected.len()),
            &self.selected,
        )
    }
}

fn index_list(header: String, indices: &[u32]) -> String {
    let mut out = header;
    out.push('\n');
    for i in indices {
        out.push_str(&i.to_string());
        out.push('\n');
    }
    out
}

fn check_gamma(gamma: f64) -> Result<()> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(Error::parameter(format!("threshold must lie in (0, 1), got {gamma}")));
    }
    Ok(())
}

/// `⌊2^n R⌋`, rejecting rates outside `(0, 1)` and empty codes.
pub fn code_dimension(n: u32, rate: f64) -> Result<usize> {
    check_levels(n)?;
    if !(rate > 0.0 && rate < 1.0) {
        return Err(Error::parameter(format!("rate must lie in (0, 1), got {rate}")));
    }
    let k = (f64::from(1u32 << n) * rate).floor() as usize;
    if k == 0 {
        return Err(Error::parameter(format!("rate {rate} selects no channel at n = {n}")));
    }
    Ok(k)
}

/// Smallest `t` in `[0, len]` with `Z(chain[t]) < gamma`, or `len`.
fn first_below<F: FnMut(usize) -> f64>(len: usize, gamma: f64, mut z_at: F) -> usize {
    let (mut lo, mut hi) = (0, len);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if z_at(mid) < gamma {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

/// Fixed-performance construction: all indices with `Z < gamma`.
pub fn fp_construct<M: ReliabilityModel>(
    model: &M,
    n: u32,
    gamma: f64,
    partition: &ChainPartition,
) -> Result<FpResult> {
    fp_construct_with(model, n, gamma, partition, Execution::default())
}

pub fn fp_construct_with<M: ReliabilityModel>(
    model: &M,
    n: u32,
    gamma: f64,
    partition: &ChainPartition,
    exec: Execution,
) -> Result<FpResult> {
    check_gamma(gamma)?;
    partition.ensure_valid_for(n)?;
    let counter = EvaluationCounter::new();
    let searched = exec::map_slice(exec, partition.chains(), |chain| {
        let mut cost = 0u64;
        let start = first_below(chain.len(), gamma, |t| {
            cost += 1;
            counted_bhattacharyya(model, ChannelIndex::from_parts(n, chain[t]), &counter)
        });
        (start, cost)
    });
    let mut selected: Vec<u32> = partition
        .chains()
        .iter()
        .zip(&searched)
        .flat_map(|(chain, &(start, _))| chain[start..].iter().copied())
        .collect();
    selected.sort_unstable();
    let costs: Vec<u64> = searched.iter().map(|&(_, c)| c).collect();
    let report = EvaluationReport::new(n, partition, costs, 1)?;
    debug_assert_eq!(report.evaluations, counter.count());
    Ok(FpResult {
        n,
        gamma,
        selected,
        report,
    })
}

/// Evaluate everything and keep `Z < gamma`.
pub fn fp_naive(channel: &BmsChannel, n: u32, gamma: f64) -> Result<Vec<u32>> {
    check_gamma(gamma)?;
    let z = channel.all_bhattacharyya(n)?;
    Ok((0..z.len() as u32).filter(|&i| z[i as usize] < gamma).collect())
}

/// The `⌊2^n R⌋` smallest `Z` by full evaluation, ties to the smaller
/// index. Ascending.
pub fn fr_naive(channel: &BmsChannel, n: u32, rate: f64) -> Result<Vec<u32>> {
    let k = code_dimension(n, rate)?;
    let z = channel.all_bhattacharyya(n)?;
    let mut order: Vec<u32> = (0..z.len() as u32).collect();
    order.sort_by(|&a, &b| z[a as usize].total_cmp(&z[b as usize]).then(a.cmp(&b)));
    order.truncate(k);
    order.sort_unstable();
    Ok(order)
}

/// Per-chain memo of evaluated parameters for the fixed-rate bisection.
struct ChainMemo<'a> {
    chain: &'a [u32],
    z: Vec<Option<f64>>,
    evaluated: u64,
}

impl ChainMemo<'_> {
    fn z_at<M: ReliabilityModel>(&mut self, model: &M, n: u32, t: usize) -> f64 {
        if let Some(z) = self.z[t] {
            return z;
        }
        let z = model.bhattacharyya(ChannelIndex::from_parts(n, self.chain[t]));
        self.z[t] = Some(z);
        self.evaluated += 1;
        z
    }
}

/// Fixed-rate construction: bisect the threshold with fixed-performance
/// probes, then settle the boundary exactly. Ties in `Z` go to the smaller
/// index.
pub fn fr_construct<M: ReliabilityModel>(
    model: &M,
    n: u32,
    rate: f64,
    partition: &ChainPartition,
) -> Result<FrResult> {
    fr_construct_with(model, n, rate, partition, Execution::default())
}

pub fn fr_construct_with<M: ReliabilityModel>(
    model: &M,
    n: u32,
    rate: f64,
    partition: &ChainPartition,
    exec: Execution,
) -> Result<FrResult> {
    let k = code_dimension(n, rate)?;
    partition.ensure_valid_for(n)?;
    let mut memos: Vec<ChainMemo> = partition
        .chains()
        .iter()
        .map(|c| ChainMemo {
            chain: c,
            z: vec![None; c.len()],
            evaluated: 0,
        })
        .collect();

    // Probe starts: FP(lo) is chain[start_lo..], FP(hi) is chain[start_hi..].
    // Z >= 0 everywhere so FP(0) is empty; Z <= 1 so FP(2) is everything.
    let mut start_lo: Vec<usize> = memos.iter().map(|m| m.chain.len()).collect();
    let mut start_hi: Vec<usize> = vec![0; memos.len()];
    let (mut lo, mut hi) = (0.0f64, 2.0f64);
    let mut count_lo = 0usize;
    let mut probes = 0u64;
    let mut exact: Option<Vec<usize>> = None;

    for _ in 0..RATE_BISECTION_STEPS {
        let mid = lo + (hi - lo) / 2.0;
        if mid <= lo || mid >= hi {
            break;
        }
        probes += 1;
        let mut starts = vec![0usize; memos.len()];
        {
            let mut paired: Vec<(&mut ChainMemo, &mut usize)> =
                memos.iter_mut().zip(starts.iter_mut()).collect();
            exec::for_each_mut(exec, &mut paired, |(memo, start)| {
                let len = memo.chain.len();
                **start = first_below(len, mid, |t| memo.z_at(model, n, t));
            });
        }
        let count: usize = memos.iter().zip(&starts).map(|(m, &s)| m.chain.len() - s).sum();
        match count.cmp(&k) {
            std::cmp::Ordering::Equal => {
                exact = Some(starts);
                break;
            }
            std::cmp::Ordering::Less => {
                lo = mid;
                count_lo = count;
                start_lo = starts;
            }
            std::cmp::Ordering::Greater => {
                hi = mid;
                start_hi = starts;
            }
        }
    }

    let mut selected: Vec<u32> = Vec::with_capacity(k);
    match exact {
        Some(starts) => {
            for (memo, &s) in memos.iter().zip(&starts) {
                selected.extend_from_slice(&memo.chain[s..]);
            }
        }
        None => {
            let mut marginal: Vec<(f64, u32)> = Vec::new();
            for ((memo, &slo), &shi) in memos.iter_mut().zip(&start_lo).zip(&start_hi) {
                selected.extend_from_slice(&memo.chain[slo..]);
                for t in shi..slo {
                    let z = memo.z_at(model, n, t);
                    marginal.push((z, memo.chain[t]));
                }
            }
            marginal.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            let missing = k - count_lo;
            if marginal.len() < missing {
                return Err(Error::invariant(
                    "threshold bisection lost track of the boundary; is Z monotone along the chains?",
                ));
            }
            selected.extend(marginal.iter().take(missing).map(|&(_, i)| i));
        }
    }
    selected.sort_unstable();

    let costs = memos.iter().map(|m| m.evaluated).collect();
    let report = EvaluationReport::new(n, partition, costs, probes)?;
    Ok(FrResult {
        n,
        rate,
        selected,
        report,
    })
}
