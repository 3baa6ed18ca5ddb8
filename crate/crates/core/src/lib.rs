//! Exact computation with Artin presentations: framed pure braids, the group
//! law on presentations, the symmetric form `A(r)`, the presented group
//! `π(r)`, knot invariants of `k_i(r)`, and form analysis.
//!
//! Integer kernels are generic over [`IntScalar`]; the aliases below fix the
//! scalar used by the public entry points.

pub mod acceptance;
pub mod artin;
pub mod braid;
pub mod corpus;
pub mod form;
pub mod grammar;
pub mod group;
pub mod knot;
pub mod matrix;
pub mod oracle;
pub mod scalar;
pub mod word;

pub use artin::{ArtinError, ArtinPresentation, ProductOrder, ValidationError};
pub use braid::{BraidWord, FramedAutomorphism};
pub use group::{FiniteGroup, FpGroup};
pub use scalar::IntScalar;
pub use word::{FreeEndo, Word};

/// Laurent polynomials with arbitrary-precision coefficients.
pub type Laurent = knot::LaurentPoly<num_bigint::BigInt>;
/// Exponent and relation matrices.
pub type IntMat = matrix::IntMatrix<i64>;
/// Linking forms `A(r)`.
pub type SymMat = matrix::IntSymMatrix<i64>;
/// Smith forms over arbitrary precision, used where entries can grow.
pub type BigSmith = matrix::SmithForm<num_bigint::BigInt>;
