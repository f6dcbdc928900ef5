//! Braid-group obfuscation of reversible circuits.
//!
//! Toffoli circuits are compiled into braid words over the quantum-double
//! gate `R(a, b) = (b, b⁻¹ab)` on `A₅`, canonicalized by the Garside
//! left-greedy normal form, and then attacked.
//!
//! - [`braid`]: permutations, braid words, normal forms, left gcd.
//! - [`qdouble`]: finite groups, the `R` gate, R-circuit simulation,
//!   Yang–Baxter checks, orbits.
//! - [`compiler`]: Toffoli circuits to braid words, plus randomization.
//! - [`obfuscator`]: normal-form obfuscation and salting.
//! - [`attacks`]: last-gate peeling, length scores, dictionary and gcd attacks.
//! - [`formats`]: the plain-text file formats.

pub mod acceptance;
pub mod attacks;
pub mod braid;
pub mod compiler;
pub mod error;
pub mod formats;
pub mod obfuscator;
pub mod qdouble;
pub mod rewrite;

pub use error::{Error, Result};
