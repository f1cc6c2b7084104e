//! Exact symbolic tensor calculus for linear elasticity on R^3.
//!
//! All scalars are polynomials in `x1, x2, x3` with rational coefficients, so
//! every identity below is checked by exact equality:
//!
//! * [`calculus`]: grad, curl, div, the symmetric gradient, the Saint-Venant
//!   operator `curl curl` and the divergence of symmetric tensors.
//! * [`connection`]: the flat connection on `W = R^3 + R^3` coupling a
//!   displacement with an infinitesimal rotation, its Poincare lemma and the
//!   reconstruction of a displacement from a compatible strain.
//! * [`riemannian`]: Christoffel, Ricci and Einstein tensors, both to first
//!   order around the flat metric and pointwise for polynomial metrics.
//! * [`complex`]: matrices of all operators on degree-truncated spaces,
//!   exactness of the complexes they form and block cancellation that turns
//!   the W-valued complex into the elasticity complex.
//! * [`verify`]: the identity suites run by the command-line tool.

#![allow(clippy::needless_range_loop)]

pub mod calculus;
pub mod complex;
pub mod connection;
pub mod error;
pub mod field;
pub mod poly;
pub mod random;
pub mod riemannian;
pub mod tensor;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Field, FieldKind};
pub use poly::{Monomial, Poly3, Rational};
pub use tensor::{Mat3Field, SymField, VecField};
