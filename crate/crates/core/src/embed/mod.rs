//! Clique immersions and subdivisions: certificates, constructive
//! embedders for dense graphs, verifiers, and exhaustive searches.

mod certificate;
mod dense;
mod search;
mod verify;

pub use certificate::{Certificate, CertificateKind, PathEntry};
pub use dense::{immerse_dense, subdivide_dense, EmbedError};
pub use search::{
    find_immersion_with_ends, has_strong_immersion_with_ends, sigma_exhaustive,
    sigma_exhaustive_with, ImmersionMode, SigmaResult, IMMERSION_GUARD, SIGMA_GUARD,
};
pub use verify::{verify_immersion, verify_subdivision, VerificationReport, Violation};
