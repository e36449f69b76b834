//! Power residue codes over prime fields and the combinatorial designs
//! carried by the unions of their conjugate shells.
//!
//! The crate builds `PR_q^m(p)`, enumerates its codewords, checks `t`-design
//! properties by direct counting, and computes Jacobi polynomials and
//! harmonic weight enumerators as independent certificates.

pub mod arith;
pub mod designs;
pub mod error;
pub mod groups;
pub mod harmonics;
pub mod jacobi;
pub mod prcode;
pub mod reference;
pub mod subset;

pub use error::{Error, Result};
