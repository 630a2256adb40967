//! First-order coherence of noisy consensus networks.
//!
//! `H_FO = tr(L†) / (2N) = R / (2N^2)`, where `L†` is the Laplacian
//! pseudoinverse and `R` the Kirchhoff index. The crate provides graph
//! handling, spectral and resistance computations, coherence bounds, network
//! generators, exact closed forms for two deterministic families, and a
//! stochastic simulator that estimates `H_FO` from the dynamics directly.

pub mod closed_forms;
pub mod coherence;
mod dense;
pub mod error;
pub mod format;
pub mod generators;
pub mod graph;
mod par;
pub mod rng;
pub mod sim;
pub mod spectral;
pub mod sweep;

pub use coherence::{analyze, first_order_coherence, first_order_coherence_with, CoherenceReport};
pub use error::{Error, Result};
pub use generators::{GenSpec, ReferenceFamily};
pub use graph::Graph;
pub use sim::{simulate_coherence, Scheme, SimConfig, SimEstimate};
pub use spectral::{ResistanceMatrix, TraceMethod};
