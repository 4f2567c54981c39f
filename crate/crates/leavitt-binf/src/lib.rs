//! Exact-arithmetic calculus for Leavitt path algebras of quivers
//! without sinks: normal forms and level raising, the graded
//! derivation with values in the diagonal bimodule, two models of the
//! singular cochain complex with cup products and braces, the strict
//! isomorphism between them, a deformation retract onto normalized
//! cochains, the transferred higher products, and machine checks for
//! every identity the constructions satisfy.
//!
//! All coefficients are exact: arbitrary-precision rationals or a
//! prime field. Equality of algebra elements is decided through level
//! raising, never through floating point or hashing.

#![no_std]

extern crate alloc;

mod combinat;

pub mod binfverify;
pub mod error;
pub mod field;
pub mod hatcomplex;
pub mod leavitt;
pub mod quiver;
pub mod report;
pub mod sgcomplex;
pub mod transfer;

pub use error::CalcError;
pub use field::{Field, Scalar};
pub use quiver::{parse_quiver, Quiver};
