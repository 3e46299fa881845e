//! Ultra-parallel complex hyperbolic `[m1, m2, 0]`-triangle groups.
//!
//! Builds the representations in SU(2,1), classifies elements by trace,
//! evaluates the closed-form discreteness and non-discreteness criteria and
//! cross-checks them against brute-force computations.

pub mod criteria;
pub mod crosscheck;
pub mod error;
pub mod heisenberg;
pub mod hermitian;
pub mod tolerance;
pub mod triangle;
pub mod words;

pub use error::{Error, Result};
pub use hermitian::{
    bergman_distance, classify_isometry, classify_trace, classify_vector, deltoid_discriminant, herm,
    HVector, Isometry, IsometryClass, IsometryTag, VectorClass,
};
pub use num_complex::Complex64;
pub use tolerance::Tolerances;
pub use criteria::{
    classify_region, conditions_star, decide, wb_ellipticity, DecideOptions, Decision, RegionVerdict, StarCheck,
    Verdict,
};
pub use heisenberg::{shimizu_test, ShimizuReport};
pub use words::{evaluate, search_elliptic_infinite_order, EllipticWitness, Word};
pub use triangle::{build_rep, existence_check, reflection_matrix, verify_rep, TriangleParams, TriangleRep};
