//! Exact q-series arithmetic for mock theta functions and partition identities.
//!
//! Everything here works over arbitrary-precision integers: truncated Laurent
//! series ([`series::Series`]), q-products and theta functions
//! ([`qproducts`]), the q-hypergeometric sums of the mock theta functions
//! ([`mocktheta`]), restricted partition counters ([`partitions`]), a small
//! expression language over all of these ([`expr`]), and a registry of
//! verifiable claims ([`claims`]).
//!
//! The crate is `no_std` and needs only `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod claims;
pub mod error;
pub mod expr;
pub mod mocktheta;
pub mod ntheory;
pub mod partitions;
pub mod qproducts;
pub mod series;

pub use error::{Error, Result};
pub use num_bigint::BigInt;
pub use series::Series;
