//! Exact Fox calculus over free groups and Z^n.
//!
//! The crate provides, with no floating point anywhere:
//!
//! - reduced words and canonical (shortlex) ordering ([`words`]);
//! - sparse group-ring arithmetic over Q, Z, and Z/2 ([`ring`]);
//! - left/right Fox derivatives and derivations ([`calculus`]);
//! - Fox pairings stored by generator matrix, with evaluation by double
//!   Fox-derivative expansion, transposes, inner pairings, and the
//!   identity checkers ([`pairing`]);
//! - a bounded-support exact solver for the fundamental pairing of a
//!   one-boundary surface group, with a kernel uniqueness certificate
//!   ([`solver`]);
//! - bar-complex coboundaries, the kappa 2-cocycle, quasi-derivations, and
//!   the cross-product / mu / rho pipeline ([`cohomology`]);
//! - the Z^n higher pairing in the Laurent ring ([`higher`]).

pub mod calculus;
pub mod cohomology;
pub mod error;
pub mod higher;
pub mod linalg;
pub mod linsys;
pub mod pairing;
pub mod report;
pub mod ring;
pub mod sampling;
pub mod scalar;
pub mod solver;
pub mod words;

pub use calculus::{
    coboundary_derivation, is_derivation, left_fox_derivative, right_fox_derivative, Derivation,
    Side,
};
pub use error::{Error, Result};
pub use pairing::{
    check_aug_intersection, check_axioms, check_boundary_condition, check_skew_identity,
    deserialize_pairing, serialize_pairing, BoundaryMode, FoxPairing,
};
pub use report::CheckReport;
pub use ring::{parse_elem, RingElem};
pub use scalar::{CoeffRing, Scalar};
pub use solver::{solve_fundamental, surface_preset, verify_uniqueness, SurfacePresentation};
pub use words::{parse_word, Alphabet, Word};
