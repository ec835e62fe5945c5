//! Bi-modal constrained encoders.
//!
//! A bi-modal encoder splits the channel alphabet into an even and an odd
//! class and requires every encoder state to offer `n0` even-labeled and `n1`
//! odd-labeled outgoing edges. This crate decides when such encoders exist
//! (joint approximate eigenvectors), builds them (deterministic extraction,
//! one-round state splitting, stethering) and checks the result (losslessness,
//! anticipation, definiteness, containment, stream round trips).

pub mod error;
pub mod format;
pub mod graph;
pub mod matrix;
pub mod presets;
pub mod spectra;
pub mod synth;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{
    AdjacencyPair, Determinized, Edge, GraphBuilder, LabeledGraph, Memory, Merged, ParityPartition, Symbol,
};
pub use matrix::Matrix;
pub use spectra::{ApproxEigenvector, RatePoint};
pub use synth::{SplitGraph, Tag, TaggedEncoder};
pub use verify::{Anticipation, VerifyReport};

/// Default cap on approximate eigenvector entries.
pub const DEFAULT_XI_CAP: u64 = 64;
/// Default tolerance for Perron eigenvalue iteration.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Default cap for the anticipation search.
pub const DEFAULT_ANTICIPATION_CAP: usize = 32;
