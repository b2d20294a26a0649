//! Exact sumset and difference-set combinatorics over small finite abelian
//! groups.
//!
//! The crate computes `A+A`, `A-A` and `nA-mA` with bitmask kernels, keeps
//! the doubling constant `|A+A|/|A|` and difference constant `|A-A|/|A|` as
//! exact rationals, builds the Ruzsa injection and Petridis induction traces
//! as auditable witnesses, verifies the classical inequalities between the
//! two constants together with their equality cases, and runs exhaustive
//! campaigns over small groups and integer ranges.
//!
//! Ratio-valued functions are generic over the integer scalar ([`Count`]);
//! [`Ratio64`] covers every size that fits in memory, [`BigRatio`] is there
//! for unbounded powers.

pub mod arith;
pub mod error;
pub mod explorer;
pub mod group;
pub mod limits;
pub mod literal;
pub mod petridis;
pub mod ruzsa;
pub mod scalar;
pub mod set;
mod subsets;
pub mod theorems;

pub use arith::{delta, diffset, embed_integer_set, independent, iterated, sigma, sumset, Embedding};
pub use error::{Error, Result};
pub use group::{Element, GroupSpec};
pub use limits::Limits;
pub use literal::{parse_group, parse_set, SetLiteral};
pub use scalar::Count;
pub use set::GSet;

pub use num_bigint::BigUint;
pub use num_rational::Ratio as ExactRatio;

/// Exact ratio over `u64`, the default for doubling and difference constants.
pub type Ratio64 = num_rational::Ratio<u64>;
/// Exact ratio over `u128`.
pub type Ratio128 = num_rational::Ratio<u128>;
/// Arbitrary-precision exact ratio.
pub type BigRatio = num_rational::Ratio<BigUint>;

/// Tool version echoed in every output header.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
