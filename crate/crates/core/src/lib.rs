//! Exact tools for studying how hard it is to hit every maximum independent
//! set of a graph: independence numbers and MIS enumeration, shift and
//! Hamming graph families, minimum hitting sets, binary covering codes,
//! kernel/corona structure and the random vertex-deletion process.

pub mod alpha_prime;
pub mod covering;
pub mod error;
pub mod families;
pub mod graph;
pub mod hajnal;
pub mod hitting;
pub mod mis;
pub mod vertex_set;

pub use alpha_prime::{AlphaPrimeEstimate, ProcessParams, ProcessStep, ProcessTrace, SubsetLaw};
pub use covering::CoveringCode;
pub use error::{Error, Result};
pub use families::{HammingSpec, ImplicitHammingGraph, ShiftSpec};
pub use graph::Graph;
pub use hajnal::KernelReport;
pub use hitting::HittingResult;
pub use mis::{alpha, enumerate_mis, MisFamily, MisSolver, DEFAULT_CAP};
pub use vertex_set::VertexSet;
