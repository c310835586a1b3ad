//! Surface invariants: planarity, genus and crosscap formulas, Euler
//! bounds, rotation-system embeddings and the composition over blocks.

mod compose;
mod embedding;
mod estimate;
mod exact;
mod formulas;
mod invariants;
mod planarity;
mod search;

use thiserror::Error;

pub use compose::{crosscap_via_blocks, genus_via_blocks, CrosscapComposition};
pub use embedding::{
    trace_faces, verify_certificate, Certificate, CertificateGraph, Claim, EmbeddingScheme, FaceTrace, Surface,
};
pub use estimate::{GenusEstimate, Provenance};
pub use exact::{exact_genus_small, DEFAULT_EXACT_BUDGET};
pub use formulas::{
    crosscap_kmn, crosscap_kn, cycle_rank, euler_genus_lower_bound, euler_lower_bound_nonorientable,
    euler_lower_bound_orientable, genus_kmn, genus_kn,
};
pub use invariants::{shipped_certificates, surface_invariants, SurfaceCache, SurfaceInvariants, SurfaceOptions};
pub use planarity::is_planar;
pub use search::{search_embedding, SearchOptions, DEFAULT_SEARCH_BUDGET};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TopologyError {
    #[error("K_n formulas need n >= 3, got {0}")]
    CompleteTooSmall(usize),
    #[error("K_m,n formulas need m, n >= 2, got ({0}, {1})")]
    BipartiteTooSmall(usize, usize),
    #[error("rotation at vertex {0} is not a permutation of its incident edges")]
    MalformedRotation(usize),
    #[error("expected {expected} rotations, got {got}")]
    RotationCount { expected: usize, got: usize },
    #[error("expected {expected} edge signs, got {got}")]
    SignCount { expected: usize, got: usize },
    #[error("edge sign {0} is not +1 or -1")]
    BadSign(i64),
    #[error("face tracing needs a connected graph")]
    Disconnected,
    #[error("certificate graph does not match the given graph")]
    GraphMismatch,
    #[error("certificate graph is invalid: {0}")]
    BadGraph(String),
    #[error("malformed certificate: {0}")]
    Json(String),
}
