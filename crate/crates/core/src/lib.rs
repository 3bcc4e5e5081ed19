//! Quasi-normed Calderón–Lozanovskiĭ spaces `E_φ` on step-function carriers.
//!
//! The crate is `no_std` with `alloc`; the default `std` feature only adds
//! `std::error::Error` impls. Floating point math goes through `libm` so
//! results are identical with and without `std`.

#![cfg_attr(not(feature = "std"), no_std)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod cl;
pub mod error;
pub mod extreal;
pub mod indices;
pub mod num;
pub mod orlicz;
pub mod spaces;
pub mod witness;
pub mod zoo;

/// Library version, embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub use cl::{CLSpace, NormResult};
pub use error::Error;
pub use extreal::ExtReal;
pub use indices::{ConditionVerdict, GridSpec, IndexEstimate, Regime};
pub use orlicz::{NodeRule, OrliczFunction, Piece, PieceKind};
pub use spaces::{Carrier, NormFlavor, Part, Region, SimpleVector, SpaceDescriptor, SpaceKind, WeightRule};
pub use witness::{SequenceVariant, WitnessBundle, WitnessKind};
