//! Exact plethystic generating series for stable braid-group and hyperelliptic
//! homology, together with brute-force hyperelliptic point counting over small
//! finite fields used to check the resulting trace and moment predictions.

pub mod arithstat;
pub mod error;
pub mod exec;
pub mod ffcurves;
pub mod partition;
pub mod qsqrt;
pub mod rational;
pub mod repchar;
pub mod scalar;
pub mod series;
pub mod symfunc;

pub use error::{Error, Result};
pub use partition::Partition;
pub use qsqrt::QAdjSqrt;
pub use rational::Q;
