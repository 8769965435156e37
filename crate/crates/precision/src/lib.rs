//! Arbitrary-precision companion to the `abramowitz` crate: reference
//! oracles, the least-squares table fitter and the verification experiments.

pub mod big;
mod error;
pub mod fitter;
pub mod linalg;
pub mod oracle;
pub mod verify;

pub use big::BigComplex;
pub use error::{Error, Result};
