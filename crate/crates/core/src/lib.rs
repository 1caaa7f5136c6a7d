//! Exact computer algebra for quotient singularities `C^n/G`.
//!
//! Given a finite matrix group over a cyclotomic field this crate computes
//! the extended Molien series, the local equivariant Hirzebruch class
//! `H(y,T)`, the crepant-resolution class and the equivariant CSM polynomial,
//! and verifies their functional equations, divisibility and positivity
//! properties.  All arithmetic is exact: rationals are arbitrary precision
//! and eigenvalues live in `Q(zeta_N)`.

pub mod catalog;
pub mod classes;
pub mod cyclotomic;
pub mod matgroup;
pub mod polyrat;

pub use cyclotomic::CycNum;
pub use matgroup::{GroupSpec, MatGroup, Matrix};
pub use polyrat::{Poly, RatFunc};
