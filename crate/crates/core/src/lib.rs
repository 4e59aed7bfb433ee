//! Exact-arithmetic workbench for spectra and tilings of finite unions of
//! rational intervals.
//!
//! Everything that can be decided exactly is decided exactly: domains are
//! unions of half-open intervals with `BigRational` endpoints, vanishing of
//! the boundary exponential polynomial at rational points reduces to
//! divisibility by a cyclotomic polynomial, and tiling/spectrum verdicts are
//! produced with finite certificates. Floating point appears only in the
//! explicitly-numeric scanning and plotting paths.

pub mod cli;
pub mod cyclotomic;
pub mod domain;
pub mod embedding;
pub mod error;
pub mod expoly;
pub mod json;
pub mod newton;
pub mod rational;
pub mod search;
pub mod structure;

pub use domain::{AffineMap, DiscreteSampleSet, IntervalUnion, MultiplicityFunction, PeriodicSet};
pub use error::{Error, Result};
pub use rational::Rational;
