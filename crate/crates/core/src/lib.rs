//! Exact computer algebra for critical points of the C_n^(1) master
//! function, their Miura opers and the mKdV and KdV flows on them.

pub mod arith;
pub mod error;
pub mod generation;
pub mod json;
pub mod lie;
pub mod miura;
pub mod pseudo_diff;
pub mod scalar_ops;
pub mod verify;

pub use error::{Error, Result};
