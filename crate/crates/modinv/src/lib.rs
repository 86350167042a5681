//! Invariant rings of three-dimensional modular representations of the
//! elementary abelian group (Z/p)^4.
//!
//! The crate is organised bottom-up: finite fields, trivariate polynomials,
//! the group action, Frobenius minors and strata, the f_J invariants and
//! stratum recipes, the SAGBI engine, a brute-force invariant oracle, and
//! JSON reporting used by the command-line front end.

pub mod action;
pub mod error;
pub mod field;
pub mod fj;
pub mod minors;
pub mod oracle;
pub mod poly;
pub mod recipes;
pub mod report;
pub mod sagbi;

pub use error::{Error, Result};
pub use field::{Fe, FieldContext, FieldElement};
pub use poly::{Monomial, Polynomial};
