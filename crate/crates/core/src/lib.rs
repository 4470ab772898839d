//! Exact-arithmetic homological algebra for Koszul-type complexes.
//!
//! The crate builds a family of cochain complexes over the rationals —
//! two-cells-per-degree sphere complexes, Koszul complexes and their
//! localized and doubly-infinite ("Janus") variants, and conformal-weight
//! truncations of their chiral analogues on a supercommutative polynomial
//! ring — and mechanically verifies their structural properties: `d^2 = 0`,
//! cohomology dimensions and representatives, chain isomorphisms, the
//! contracting-homotopy identity and local-cohomology concentration.
//!
//! All arithmetic is exact; there is no floating point anywhere.

pub mod chiral;
pub mod classical;
pub mod complex;
pub mod io;
pub mod linalg;
pub mod multivar;
pub mod superpoly;
pub mod verify;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("window mismatch: {0}")]
    Window(String),
    #[error("d^2 != 0 at degree {degree}")]
    DSquared { degree: i64 },
    #[error("gluing rejected: {0}")]
    Gluing(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
