//! Knot groups and Alexander polynomials.

pub mod alexander;
pub mod fox;
pub mod laurent;

pub use alexander::{alexander_polynomial, knot_group, KnotError, NotComputable, PRESENTATION_RULE};
pub use fox::{fox_abelianized, fox_derivative, GroupRingElement};
pub use laurent::LaurentPoly;
