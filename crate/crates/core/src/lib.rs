//! Simulation of ghost imaging and ghost diffraction with entangled photon
//! pairs from a Gaussian-pumped down-conversion source.

// `!(x > 0.0)` is used on purpose: it rejects NaN with the out-of-range case.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod biphoton;
pub mod detection;
pub mod error;
pub mod geometry;
pub mod numerics;
pub mod oracle;
pub mod validation;

pub use error::{Error, Result};
