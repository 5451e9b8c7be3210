//! Synthetic-channel indices and the universal partial order on them.
//!
//! An index `i` in `[0, 2^n)` is read MSB-first as `(i_1, …, i_n)`. Two
//! operators map an index to one whose synthetic channel is upgraded:
//!
//! * addition `A^(k)` sets bit `k` to 1,
//! * left-swap `L^(k)` moves a 1 at bit `k` into bit `k - 1` when that bit is 0.
//!
//! The order `i ⪯ j` ("`j` reachable from `i` by operators") is decided
//! without search through the subset picture: the set of right-to-left
//! positions holding a 1 ([`OnesSet`]) of `i` must be dominated by that of
//! `j` when both lists are aligned from their largest element.
//!
//! The dominance is sometimes stated with both lists aligned
//! from their *smallest* element. That reading disagrees with the operators
//! (`0100 → 0101 → 1001`, yet `{3}` vs `{1, 4}` fails smallest-first), so the
//! largest-first form is used and checked against [`Reachability`], the
//! breadth-first closure of the operators.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported number of polarization levels.
pub const MAX_LEVELS: u32 = 30;

/// Largest `n` for which [`Reachability`] will materialize the closure.
pub const CLOSURE_CAP: u32 = 12;

/// The index of one of the `2^n` synthetic channels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChannelIndex {
    n: u32,
    value: u32,
}

impl ChannelIndex {
    pub fn new(n: u32, value: u32) -> Result<Self> {
        check_levels(n)?;
        if u64::from(value) >= 1u64 << n {
            return Err(Error::parameter(format!(
                "index {value} out of range for n = {n}"
            )));
        }
        Ok(ChannelIndex { n, value })
    }

    /// Reconstruct an index from its MSB-first bits.
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        let n = u32::try_from(bits.len()).map_err(|_| Error::parameter("too many bits"))?;
        check_levels(n)?;
        let mut value = 0u32;
        for &b in bits {
            if b > 1 {
                return Err(Error::parameter(format!("bit value {b} is not 0 or 1")));
            }
            value = (value << 1) | u32::from(b);
        }
        Ok(ChannelIndex { n, value })
    }

    /// Index without range checks; callers guarantee `value < 2^n`.
    pub(crate) fn from_parts(n: u32, value: u32) -> Self {
        debug_assert!((1..=MAX_LEVELS).contains(&n) && u64::from(value) < 1u64 << n);
        ChannelIndex { n, value }
    }

    pub fn levels(self) -> u32 {
        self.n
    }

    pub fn value(self) -> u32 {
        self.value
    }

    /// Bit `k` of the MSB-first expansion, `1 <= k <= n`.
    pub fn bit(self, k: u32) -> Result<u8> {
        self.check_position(k, 1)?;
        Ok(((self.value >> (self.n - k)) & 1) as u8)
    }

    /// The MSB-first binary expansion `(i_1, …, i_n)`.
    pub fn binary_expansion(self) -> Vec<u8> {
        (1..=self.n)
            .map(|k| ((self.value >> (self.n - k)) & 1) as u8)
            .collect()
    }

    /// Addition operator `A^(k)`: force bit `k` (MSB-first) to 1.
    pub fn apply_addition(self, k: u32) -> Result<Self> {
        self.check_position(k, 1)?;
        Ok(ChannelIndex {
            value: self.value | (1 << (self.n - k)),
            ..self
        })
    }

    /// Left-swap operator `L^(k)`: if bit `k` is 1 and bit `k - 1` is 0,
    /// exchange them. Identity otherwise.
    pub fn apply_left_swap(self, k: u32) -> Result<Self> {
        self.check_position(k, 2)?;
        let here = 1u32 << (self.n - k);
        let left = here << 1;
        let value = if self.value & here != 0 && self.value & left == 0 {
            (self.value & !here) | left
        } else {
            self.value
        };
        Ok(ChannelIndex { value, ..self })
    }

    /// Every index reachable by a single operator application, excluding
    /// `self`, in ascending order.
    pub fn one_step_successors(self) -> Vec<ChannelIndex> {
        let mut out: Vec<u32> = Vec::with_capacity(2 * self.n as usize);
        for k in 1..=self.n {
            let a = self.value | (1 << (self.n - k));
            if a != self.value {
                out.push(a);
            }
        }
        for k in 2..=self.n {
            let here = 1u32 << (self.n - k);
            let left = here << 1;
            if self.value & here != 0 && self.value & left == 0 {
                out.push((self.value & !here) | left);
            }
        }
        out.sort_unstable();
        out.dedup();
        out.into_iter()
            .map(|value| ChannelIndex { n: self.n, value })
            .collect()
    }

    pub fn to_ones_set(self) -> OnesSet {
        let positions = (1..=self.n)
            .filter(|&p| (self.value >> (p - 1)) & 1 == 1)
            .collect();
        OnesSet {
            n: self.n,
            positions,
        }
    }

    /// Sum of the right-to-left positions that hold a 1.
    pub fn rank(self) -> u32 {
        rank_of(self.value)
    }

    /// `self ⪯ other`: `other` is reachable from `self` by addition and
    /// left-swap operators (reflexive).
    pub fn is_degraded(self, other: ChannelIndex) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::parameter(format!(
                "indices over different lengths: n = {} and n = {}",
                self.n, other.n
            )));
        }
        Ok(precedes(self.value, other.value))
    }

    fn check_position(self, k: u32, lo: u32) -> Result<()> {
        if k < lo || k > self.n {
            return Err(Error::parameter(format!(
                "operator position {k} outside [{lo}, {}]",
                self.n
            )));
        }
        Ok(())
    }
}

impl fmt::Display for ChannelIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

pub(crate) fn check_levels(n: u32) -> Result<()> {
    if n == 0 || n > MAX_LEVELS {
        return Err(Error::parameter(format!(
            "number of levels must lie in [1, {MAX_LEVELS}], got {n}"
        )));
    }
    Ok(())
}

/// Rank of a raw index value.
pub fn rank_of(value: u32) -> u32 {
    let mut v = value;
    let mut sum = 0;
    while v != 0 {
        sum += v.trailing_zeros() + 1;
        v &= v - 1;
    }
    sum
}

/// Raw form of [`ChannelIndex::is_degraded`] on index values of equal
/// length: top-aligned dominance of the ones sets.
#[inline]
pub fn precedes(lower: u32, upper: u32) -> bool {
    if lower.count_ones() > upper.count_ones() {
        return false;
    }
    let (mut x, mut y) = (lower, upper);
    while x != 0 {
        let px = 31 - x.leading_zeros();
        let py = 31 - y.leading_zeros();
        if px > py {
            return false;
        }
        x ^= 1 << px;
        y ^= 1 << py;
    }
    true
}

/// Positions (counted right to left from 1) of the bits equal to 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OnesSet {
    n: u32,
    positions: Vec<u32>,
}

impl OnesSet {
    pub fn new(n: u32, positions: Vec<u32>) -> Result<Self> {
        check_levels(n)?;
        if positions.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::parameter("positions must be strictly increasing"));
        }
        if positions.iter().any(|&p| p == 0 || p > n) {
            return Err(Error::parameter(format!("positions must lie in [1, {n}]")));
        }
        Ok(OnesSet { n, positions })
    }

    pub fn levels(&self) -> u32 {
        self.n
    }

    pub fn positions(&self) -> &[u32] {
        &self.positions
    }

    pub fn to_index(&self) -> ChannelIndex {
        let value = self.positions.iter().fold(0u32, |v, &p| v | 1 << (p - 1));
        ChannelIndex::from_parts(self.n, value)
    }

    pub fn rank(&self) -> u32 {
        self.positions.iter().sum()
    }

    /// Largest-first dominance: `|self| <= |other|` and the `l`-th largest
    /// element of `self` is at most the `l`-th largest of `other`.
    pub fn is_dominated_by(&self, other: &OnesSet) -> bool {
        self.positions.len() <= other.positions.len()
            && self
                .positions
                .iter()
                .rev()
                .zip(other.positions.iter().rev())
                .all(|(x, y)| x <= y)
    }
}

/// Reflexive-transitive closure of [`ChannelIndex::one_step_successors`],
/// materialized by breadth-first search from every index.
///
/// Independent of [`precedes`]; used to validate it.
pub struct Reachability {
    n: u32,
    words: usize,
    rows: Vec<u64>,
}

impl Reachability {
    pub fn compute(n: u32) -> Result<Self> {
        check_levels(n)?;
        if n > CLOSURE_CAP {
            return Err(Error::Resource {
                what: "transitive closure oracle",
                n,
                cap: CLOSURE_CAP,
            });
        }
        let size = 1usize << n;
        let words = size.div_ceil(64);
        let mut rows = vec![0u64; size * words];
        let mut queue = VecDeque::new();
        for src in 0..size {
            let row = &mut rows[src * words..(src + 1) * words];
            row[src / 64] |= 1 << (src % 64);
            queue.push_back(src as u32);
            while let Some(u) = queue.pop_front() {
                for v in ChannelIndex::from_parts(n, u).one_step_successors() {
                    let v = v.value() as usize;
                    if row[v / 64] & (1 << (v % 64)) == 0 {
                        row[v / 64] |= 1 << (v % 64);
                        queue.push_back(v as u32);
                    }
                }
            }
        }
        Ok(Reachability { n, words, rows })
    }

    pub fn levels(&self) -> u32 {
        self.n
    }

    /// Whether `to` is reachable from `from`.
    pub fn contains(&self, from: u32, to: u32) -> bool {
        let (from, to) = (from as usize, to as usize);
        self.rows[from * self.words + to / 64] & (1 << (to % 64)) != 0
    }

    /// All reachable ordered pairs, including the reflexive ones.
    pub fn pairs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        let size = 1u32 << self.n;
        (0..size).flat_map(move |a| (0..size).filter(move |&b| self.contains(a, b)).map(move |b| (a, b)))
    }

    pub fn pair_count(&self) -> u64 {
        self.rows.iter().map(|w| u64::from(w.count_ones())).sum()
    }
}

/// Largest `n` for [`cover_relation`].
pub const HASSE_CAP: u32 = 10;

/// Edges of the Hasse diagram: pairs `(i, j)` with `i ≺ j` and nothing
/// strictly between, ascending. The poset is graded by [`rank_of`], so `j`
/// covers `i` exactly when `i ≺ j` and the rank goes up by one.
pub fn cover_relation(n: u32) -> Result<Vec<(u32, u32)>> {
    check_levels(n)?;
    if n > HASSE_CAP {
        return Err(Error::Resource {
            what: "Hasse diagram",
            n,
            cap: HASSE_CAP,
        });
    }
    let size = 1u32 << n;
    let max_rank = (n * (n + 1) / 2) as usize;
    let mut by_rank: Vec<Vec<u32>> = vec![Vec::new(); max_rank + 1];
    for v in 0..size {
        by_rank[rank_of(v) as usize].push(v);
    }
    let mut edges = Vec::new();
    for u in 0..size {
        let r = rank_of(u) as usize;
        if r == max_rank {
            continue;
        }
        edges.extend(by_rank[r + 1].iter().filter(|&&v| precedes(u, v)).map(|&v| (u, v)));
    }
    Ok(edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(n: u32, v: u32) -> ChannelIndex {
        ChannelIndex::new(n, v).unwrap()
    }

    #[test]
    fn expansion_examples() {
        assert_eq!(idx(4, 10).binary_expansion(), vec![1, 0, 1, 0]);
        assert_eq!(idx(4, 0).binary_expansion(), vec![0, 0, 0, 0]);
        assert_eq!(idx(5, 12).binary_expansion(), vec![0, 1, 1, 0, 0]);
        assert_eq!(ChannelIndex::from_bits(&[0, 1, 1, 0, 0]).unwrap(), idx(5, 12));
    }

    #[test]
    fn rejects_bad_indices() {
        assert!(ChannelIndex::new(4, 16).is_err());
        assert!(ChannelIndex::new(0, 0).is_err());
        assert!(ChannelIndex::new(31, 0).is_err());
        assert!(ChannelIndex::from_bits(&[1, 2]).is_err());
        assert!(idx(4, 3).is_degraded(idx(5, 3)).is_err());
    }

    #[test]
    fn operator_examples() {
        let i = idx(4, 10);
        assert_eq!(i.apply_addition(2).unwrap().value(), 14);
        assert_eq!(i.apply_addition(3).unwrap().value(), 10);
        assert_eq!(i.apply_addition(4).unwrap().value(), 11);
        assert_eq!(i.apply_left_swap(2).unwrap().value(), 10);
        assert_eq!(i.apply_left_swap(3).unwrap().value(), 12);
        assert_eq!(i.apply_left_swap(4).unwrap().value(), 10);
    }

    #[test]
    fn operator_positions_are_checked() {
        let i = idx(4, 10);
        assert!(matches!(i.apply_addition(0), Err(Error::Parameter(_))));
        assert!(matches!(i.apply_addition(5), Err(Error::Parameter(_))));
        assert!(matches!(i.apply_left_swap(1), Err(Error::Parameter(_))));
        assert!(matches!(i.apply_left_swap(5), Err(Error::Parameter(_))));
    }

    #[test]
    fn successor_examples() {
        let vals = |v: u32| -> Vec<u32> {
            idx(4, v).one_step_successors().iter().map(|c| c.value()).collect()
        };
        assert_eq!(vals(10), vec![11, 12, 14]);
        assert!(vals(15).is_empty());
        assert_eq!(vals(0), vec![1, 2, 4, 8]);
    }

    #[test]
    fn ones_set_examples() {
        assert_eq!(idx(4, 10).to_ones_set().positions(), &[2, 4]);
        assert!(idx(4, 0).to_ones_set().positions().is_empty());
        assert_eq!(idx(4, 15).to_ones_set().positions(), &[1, 2, 3, 4]);
        assert!(OnesSet::new(4, vec![2, 2]).is_err());
        assert!(OnesSet::new(4, vec![0]).is_err());
        assert!(OnesSet::new(4, vec![5]).is_err());
    }

    #[test]
    fn order_examples() {
        assert!(idx(4, 10).is_degraded(idx(4, 12)).unwrap());
        assert!(idx(4, 10).is_degraded(idx(4, 14)).unwrap());
        assert!(!idx(4, 8).is_degraded(idx(4, 7)).unwrap());
        assert!(!idx(4, 7).is_degraded(idx(4, 8)).unwrap());
        assert!(idx(4, 4).is_degraded(idx(4, 9)).unwrap());
        for v in 0..16 {
            assert!(idx(4, v).is_degraded(idx(4, v)).unwrap());
        }
    }

    #[test]
    fn smallest_first_alignment_would_be_wrong() {
        // 0100 -> 0101 -> 1001 but {3} vs {1, 4} fails when aligned from the bottom.
        let oracle = Reachability::compute(4).unwrap();
        assert!(oracle.contains(4, 9));
        let (x, y) = (idx(4, 4).to_ones_set(), idx(4, 9).to_ones_set());
        assert!(x.positions()[0] > y.positions()[0]);
        assert!(x.is_dominated_by(&y));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(idx(4, 0).rank(), 0);
        assert_eq!(idx(4, 15).rank(), 10);
        assert_eq!(idx(4, 10).rank(), 6);
        assert_eq!(idx(4, 10).to_ones_set().rank(), 6);
    }

    #[test]
    fn hasse_small_cases() {
        assert_eq!(cover_relation(1).unwrap(), vec![(0, 1)]);
        assert_eq!(cover_relation(2).unwrap(), vec![(0, 1), (1, 2), (2, 3)]);
        let four = cover_relation(4).unwrap();
        assert!(four.contains(&(1, 2)));
        assert!(!four.contains(&(0, 2)));
        assert!(cover_relation(11).is_err());
    }

    #[test]
    fn hasse_matches_closure_covers() {
        for n in 1..=6 {
            let oracle = Reachability::compute(n).unwrap();
            let size = 1u32 << n;
            let mut brute = Vec::new();
            for a in 0..size {
                for b in 0..size {
                    if a == b || !oracle.contains(a, b) {
                        continue;
                    }
                    if !(0..size).any(|z| z != a && z != b && oracle.contains(a, z) && oracle.contains(z, b)) {
                        brute.push((a, b));
                    }
                }
            }
            assert_eq!(cover_relation(n).unwrap(), brute, "n = {n}");
        }
    }

    #[test]
    fn closure_small_cases() {
        let one = Reachability::compute(1).unwrap();
        let pairs: Vec<_> = one.pairs().collect();
        assert_eq!(pairs, vec![(0, 0), (0, 1), (1, 1)]);

        let two = Reachability::compute(2).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(two.contains(a, b), a <= b, "({a},{b})");
            }
        }
        assert!(matches!(
            Reachability::compute(13),
            Err(Error::Resource { cap: 12, .. })
        ));
    }

    #[test]
    fn closure_agrees_with_dominance_n4() {
        let oracle = Reachability::compute(4).unwrap();
        for a in 0..16 {
            for b in 0..16 {
                assert_eq!(oracle.contains(a, b), precedes(a, b), "({a},{b})");
            }
        }
    }

    #[test]
    fn rank_increases_by_one_on_covers() {
        for n in 1..=6 {
            let oracle = Reachability::compute(n).unwrap();
            let size = 1u32 << n;
            for a in 0..size {
                for b in 0..size {
                    if a == b || !oracle.contains(a, b) {
                        continue;
                    }
                    let between = (0..size)
                        .any(|z| z != a && z != b && oracle.contains(a, z) && oracle.contains(z, b));
                    if !between {
                        assert_eq!(rank_of(b), rank_of(a) + 1, "cover {a} -> {b}");
                    }
                }
            }
        }
    }
}
