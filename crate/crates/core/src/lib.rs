//! Polar code construction that evaluates only a sublinear number of
//! synthetic channels.
//!
//! The synthetic channels of a length-`2^n` polar code are partially ordered
//! by stochastic degradation independently of the transmission channel
//! ([`index_poset`]). A minimum partition of that poset into chains
//! ([`chain_cover`]) has `M(n)` chains ([`antichain_math`]), and a binary
//! search along every chain ([`constructor`]) finds all channels below a
//! reliability threshold with at most `M(n) · log₂(2^{n+1} / M(n))`
//! evaluations ([`channels`]).
//!
//! ```
//! use polarorder::{chain_cover, constructor, BmsChannel, Execution};
//!
//! let partition = chain_cover::minimum_chain_partition(6, 12, Execution::default())?;
//! assert_eq!(partition.len(), 5);
//!
//! let channel: BmsChannel = "bec:0.5".parse()?;
//! let fp = constructor::fp_construct(&channel, 6, 0.1, &partition)?;
//! assert_eq!(fp.selected, constructor::fp_naive(&channel, 6, 0.1)?);
//! assert!(u128::from(fp.report.evaluations) <= fp.report.budget_upper);
//! # Ok::<(), polarorder::Error>(())
//! ```

pub mod antichain_math;
pub mod chain_cover;
pub mod channels;
pub mod constructor;
mod error;
pub mod exec;
pub mod index_poset;
pub mod verify;

pub use chain_cover::ChainPartition;
pub use channels::{BmsChannel, ReliabilityModel};
pub use error::{Error, Result};
pub use exec::Execution;
pub use index_poset::ChannelIndex;
