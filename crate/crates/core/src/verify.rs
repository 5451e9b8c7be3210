//! Cross-module consistency suites, run by `polarorder verify`.

use std::fmt;

use crate::antichain_math::{chain_search_cost, max_antichain_size};
use crate::chain_cover::{
    maximum_matching, matching_to_chains, BipartiteComparabilityGraph, ChainPartition, DEFAULT_GRAPH_CAP,
};
use crate::channels::{BmsChannel, ReliabilityModel};
use crate::constructor::{fp_construct_with, fp_naive, fr_construct_with, fr_naive};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::index_poset::{precedes, ChannelIndex, Reachability, CLOSURE_CAP};

/// Default largest `n` exercised by [`run_suites`].
pub const DEFAULT_VERIFY_LEVELS: u32 = 10;

/// `{0.001, 0.05, 0.10, …, 0.95, 0.999}`.
pub fn threshold_grid() -> Vec<f64> {
    let mut g = vec![0.001];
    g.extend((1..=19).map(|k| f64::from(k) * 0.05));
    g.push(0.999);
    g
}

/// `{0.1, 0.2, …, 0.9}`, used for both erasure probabilities and rates.
pub fn decile_grid() -> Vec<f64> {
    (1..=9).map(|k| f64::from(k) / 10.0).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl SuiteOutcome {
    fn new(name: &'static str, failure: Option<String>, ok_detail: String) -> Self {
        match failure {
            None => SuiteOutcome {
                name,
                passed: true,
                detail: ok_detail,
            },
            Some(detail) => SuiteOutcome {
                name,
                passed: false,
                detail,
            },
        }
    }
}

impl fmt::Display for SuiteOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

/// `is_degraded` agrees with the breadth-first closure on every pair.
pub fn oracle_equivalence(n_max: u32) -> SuiteOutcome {
    let mut failure = None;
    'outer: for n in 1..=n_max.min(CLOSURE_CAP) {
        let oracle = match Reachability::compute(n) {
            Ok(o) => o,
            Err(e) => {
                failure = Some(e.to_string());
                break;
            }
        };
        for a in 0..1u32 << n {
            for b in 0..1u32 << n {
                if oracle.contains(a, b) != precedes(a, b) {
                    failure = Some(format!("n = {n}: pair ({a}, {b}) disagrees"));
                    break 'outer;
                }
            }
        }
    }
    SuiteOutcome::new("oracle_equivalence", failure, format!("all pairs agree for n <= {n_max}"))
}

/// Minimum chain partitions for every `n <= n_max`, built by matching.
pub fn partitions_up_to(n_max: u32, exec: Execution) -> Result<Vec<ChainPartition>> {
    (1..=n_max)
        .map(|n| {
            let g = BipartiteComparabilityGraph::build(n, DEFAULT_GRAPH_CAP.max(n_max), exec)?;
            matching_to_chains(&maximum_matching(&g))
        })
        .collect()
}

/// `2^n - |maximum matching| = M(n)` and every produced partition is valid.
pub fn dilworth_identity(partitions: &[ChainPartition]) -> SuiteOutcome {
    let mut failure = None;
    for p in partitions {
        let n = p.levels();
        if let Err(d) = p.verify() {
            failure = Some(format!("n = {n}: {d}"));
            break;
        }
        let m = max_antichain_size(n).unwrap_or(0);
        if p.len() as u128 != m {
            failure = Some(format!("n = {n}: {} chains but M(n) = {m}", p.len()));
            break;
        }
    }
    SuiteOutcome::new(
        "dilworth_identity",
        failure,
        format!("chain count equals M(n) for {} values of n", partitions.len()),
    )
}

/// `Z(i) >= Z(j)` whenever `i ⪯ j`, on the erasure-probability grid.
pub fn degradation_monotonicity(n_max: u32, exec: Execution) -> SuiteOutcome {
    let eps_grid = [0.1, 0.25, 0.5, 0.75, 0.9];
    let n_max = n_max.min(8);
    let jobs: Vec<(u32, f64)> = (1..=n_max)
        .flat_map(|n| eps_grid.iter().map(move |&e| (n, e)))
        .collect();
    let failures = exec::map_slice(exec, &jobs, |&(n, eps)| {
        let z = BmsChannel::Bec { erasure: eps }.all_bhattacharyya(n).ok()?;
        for a in 0..1u32 << n {
            for b in 0..1u32 << n {
                if precedes(a, b) && z[a as usize] + 1e-12 < z[b as usize] {
                    return Some(format!("n = {n}, eps = {eps}: Z({a}) < Z({b})"));
                }
            }
        }
        None
    });
    SuiteOutcome::new(
        "degradation_monotonicity",
        failures.into_iter().flatten().next(),
        format!("no violations for n <= {n_max}"),
    )
}

/// Chain-search construction against full evaluation, plus the evaluation
/// budget of every run. Returns `(equivalence, budget)`.
pub fn construction_suites(partitions: &[ChainPartition], exec: Execution) -> (SuiteOutcome, SuiteOutcome) {
    let mut eq_failure = None;
    let mut budget_failure = None;
    let mut runs = 0usize;
    for p in partitions.iter().filter(|p| p.levels() >= 2) {
        let n = p.levels();
        for eps in decile_grid() {
            let ch = BmsChannel::Bec { erasure: eps };
            for gamma in threshold_grid() {
                runs += 1;
                let (fast, slow) = match (fp_construct_with(&ch, n, gamma, p, exec), fp_naive(&ch, n, gamma)) {
                    (Ok(f), Ok(s)) => (f, s),
                    (Err(e), _) | (_, Err(e)) => {
                        eq_failure.get_or_insert(format!("n = {n}: {e}"));
                        continue;
                    }
                };
                if fast.selected != slow {
                    eq_failure.get_or_insert(format!("n = {n}, eps = {eps}, gamma = {gamma}: FP sets differ"));
                }
                let r = &fast.report;
                let per_chain_ok = p
                    .chains()
                    .iter()
                    .zip(&r.per_chain_costs)
                    .all(|(c, &cost)| cost <= chain_search_cost(c.len()));
                if u128::from(r.evaluations) > r.budget_upper || r.evaluations > r.chain_bound || !per_chain_ok {
                    budget_failure.get_or_insert(format!(
                        "n = {n}, eps = {eps}, gamma = {gamma}: {} evaluations, budget {}",
                        r.evaluations, r.budget_upper
                    ));
                }
            }
            for rate in decile_grid() {
                let Ok(slow) = fr_naive(&ch, n, rate) else { continue };
                match fr_construct_with(&ch, n, rate, p, exec) {
                    Ok(fast) if fast.selected == slow => {}
                    Ok(_) => {
                        eq_failure.get_or_insert(format!("n = {n}, eps = {eps}, rate = {rate}: FR sets differ"));
                    }
                    Err(e) => {
                        eq_failure.get_or_insert(format!("n = {n}, rate = {rate}: {e}"));
                    }
                }
            }
        }
    }
    (
        SuiteOutcome::new("fp_equivalence", eq_failure, format!("{runs} FP runs and all FR runs match")),
        SuiteOutcome::new("budget", budget_failure, format!("{runs} runs within budget")),
    )
}

/// Check a supplied partition (for example a cached file).
pub fn partition_suite(p: &ChainPartition) -> SuiteOutcome {
    let failure = p.verify().err().map(|d| d.to_string()).or_else(|| {
        // Pairwise check inside each chain, independent of the consecutive test.
        p.chains().iter().find_map(|c| {
            for (a, &x) in c.iter().enumerate() {
                for &y in &c[a + 1..] {
                    let (xi, yi) = (ChannelIndex::new(p.levels(), x).ok()?, ChannelIndex::new(p.levels(), y).ok()?);
                    if !xi.is_degraded(yi).unwrap_or(false) {
                        return Some(format!("{x} and {y} share a chain but are not ordered"));
                    }
                }
            }
            None
        })
    });
    SuiteOutcome::new(
        "verify_partition",
        failure,
        format!("{} chains cover n = {}", p.len(), p.levels()),
    )
}

/// Every suite at scale `n_max`.
pub fn run_suites(n_max: u32, exec: Execution) -> Result<Vec<SuiteOutcome>> {
    if n_max == 0 {
        return Err(Error::parameter("n_max must be at least 1"));
    }
    let partitions = partitions_up_to(n_max, exec)?;
    let mut out = vec![
        oracle_equivalence(n_max),
        dilworth_identity(&partitions),
        degradation_monotonicity(n_max, exec),
    ];
    let (eq, budget) = construction_suites(&partitions, exec);
    out.push(eq);
    out.push(budget);
    Ok(out)
}

/// `Z` is non-increasing along every chain of `p`, up to `tol` of rounding
/// slack (the 0-bit map rounds values just below 1 up and down).
pub fn chain_monotone<M: ReliabilityModel>(model: &M, p: &ChainPartition, tol: f64) -> bool {
    p.chains().iter().all(|c| {
        let z: Vec<f64> = c
            .iter()
            .map(|&i| model.bhattacharyya(ChannelIndex::new(p.levels(), i).expect("valid partition")))
            .collect();
        z.windows(2).all(|w| w[0] + tol >= w[1])
    })
}
