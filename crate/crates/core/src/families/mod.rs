//! The two graph families behind the hitting-number bounds.

pub mod hamming;
pub mod shift;

pub use hamming::{HammingBall, HammingSpec, ImplicitHammingGraph};
pub use shift::ShiftSpec;
