//! Channel models and Bhattacharyya parameters of synthetic channels.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::index_poset::{check_levels, ChannelIndex};

/// Largest `n` for the evaluate-everything baseline.
pub const BASELINE_CAP: u32 = 20;

/// Anything that can report the Bhattacharyya parameter of a synthetic
/// channel. The constructors only ever go through this.
pub trait ReliabilityModel: Sync {
    fn bhattacharyya(&self, index: ChannelIndex) -> f64;
}

/// Binary memoryless symmetric channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BmsChannel {
    /// Binary erasure channel with the given erasure probability.
    Bec { erasure: f64 },
}

impl BmsChannel {
    pub fn bec(erasure: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&erasure) {
            return Err(Error::parameter(format!(
                "erasure probability must lie in [0, 1], got {erasure}"
            )));
        }
        Ok(BmsChannel::Bec { erasure })
    }

    /// `Z` of the underlying channel.
    pub fn base_parameter(&self) -> f64 {
        match *self {
            BmsChannel::Bec { erasure } => erasure,
        }
    }

    /// `Z` for all `2^n` synthetic channels, sharing prefixes of the
    /// expansion so each tree node is computed once (`2^{n+1} - 2` steps).
    /// Bit-identical to per-index evaluation.
    pub fn all_bhattacharyya(&self, n: u32) -> Result<Vec<f64>> {
        check_levels(n)?;
        if n > BASELINE_CAP {
            return Err(Error::Resource {
                what: "full reliability vector",
                n,
                cap: BASELINE_CAP,
            });
        }
        let mut level = vec![Erasure::new(self.base_parameter())];
        for _ in 0..n {
            let mut next = Vec::with_capacity(level.len() * 2);
            for &e in &level {
                next.push(e.degrade());
                next.push(e.upgrade());
            }
            level = next;
        }
        Ok(level.into_iter().map(Erasure::value).collect())
    }
}

impl ReliabilityModel for BmsChannel {
    fn bhattacharyya(&self, index: ChannelIndex) -> f64 {
        match *self {
            BmsChannel::Bec { erasure } => {
                let (n, value) = (index.levels(), index.value());
                (1..=n)
                    .fold(Erasure::new(erasure), |e, k| {
                        if (value >> (n - k)) & 1 == 1 {
                            e.upgrade()
                        } else {
                            e.degrade()
                        }
                    })
                    .value()
            }
        }
    }
}

/// Erasure probability carried together with its complement.
///
/// The two polarization maps are dual: a 0 bit sends `z ↦ z(2 - z)` and
/// `1 - z ↦ (1 - z)²`, a 1 bit the other way round. Tracking both keeps each
/// with small relative error, so values close to 1 are read off the
/// complement and comparable channels never swap order through rounding.
#[derive(Debug, Clone, Copy)]
struct Erasure {
    z: f64,
    complement: f64,
}

impl Erasure {
    fn new(z: f64) -> Self {
        Erasure { z, complement: 1.0 - z }
    }

    #[inline]
    fn degrade(self) -> Self {
        Erasure {
            z: self.z * (2.0 - self.z),
            complement: self.complement * self.complement,
        }
    }

    #[inline]
    fn upgrade(self) -> Self {
        Erasure {
            z: self.z * self.z,
            complement: self.complement * (2.0 - self.complement),
        }
    }

    #[inline]
    fn value(self) -> f64 {
        if self.z < 0.5 {
            self.z
        } else {
            1.0 - self.complement
        }
    }
}

impl FromStr for BmsChannel {
    type Err = Error;

    /// Parses `bec:<epsilon>`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, param) = s
            .split_once(':')
            .ok_or_else(|| Error::parameter(format!("channel spec {s:?} is not of the form kind:parameter")))?;
        match kind {
            "bec" => {
                let eps: f64 = param
                    .parse()
                    .map_err(|_| Error::parameter(format!("bad erasure probability {param:?}")))?;
                BmsChannel::bec(eps)
            }
            other => Err(Error::parameter(format!("unknown channel kind {other:?}"))),
        }
    }
}

impl fmt::Display for BmsChannel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BmsChannel::Bec { erasure } => write!(f, "bec:{erasure}"),
        }
    }
}

/// Number of synthetic-channel evaluations performed. Safe to share
/// between workers; the final count is exact under any interleaving.
#[derive(Debug, Default)]
pub struct EvaluationCounter {
    count: AtomicU64,
}

impl EvaluationCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn count(&self) -> u64 {
        self.count.load(Ordering::Relaxed)
    }

    pub(crate) fn bump(&self) {
        self.count.fetch_add(1, Ordering::Relaxed);
    }
}

/// [`ReliabilityModel::bhattacharyya`] that also counts the call.
pub fn counted_bhattacharyya<M: ReliabilityModel + ?Sized>(
    model: &M,
    index: ChannelIndex,
    counter: &EvaluationCounter,
) -> f64 {
    counter.bump();
    model.bhattacharyya(index)
}
