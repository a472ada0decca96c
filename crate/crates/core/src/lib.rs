//! Tools for locating odd-degree points on the modular curves X1(N): exact
//! polynomial arithmetic, division polynomials, modular-curve bookkeeping,
//! GL2(Z/N) orbits and fingerprints, a cubic-field resolvent, and CM
//! Cartan orbits.

pub mod arith;
pub mod cm;
pub mod elliptic;
pub mod entangle;
pub mod gl2;
pub mod modcurve;
pub mod oracles;
mod error;

pub use error::{Error, Result};
