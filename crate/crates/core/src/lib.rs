//! Exact size statistics of simultaneous `(s,t)`-core partitions.
//!
//! The crate counts `(s,t)`-cores through a weighted lattice-path dynamic
//! program, extracts exact moments of the size statistic, rediscovers the
//! moment polynomials by fitting exact data, and compares their leading
//! behaviour with the moments of the limiting law whose moment generating
//! function is `sqrt(t/2) / sin(sqrt(t/2))`.
//!
//! Everything is exact: rationals, sparse Laurent polynomials and radicals.
//! Floating point is only ever used to render display approximations.

pub mod ansatzfit;
pub mod cli;
pub mod error;
pub mod exactmath;
pub mod limitdist;
pub mod moments;
pub mod partitions;
pub mod pathdp;

pub use error::{Error, Result};
