//! Complete multiplicative Jordan decomposition of complex matrices and
//! Kostant's partial order on hyperbolic elements of `SL(n, C)`.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`]: dense complex matrices, eigenvalue clusters, spectral
//!   projectors and `exp`.
//! * [`cmjd`]: the factorisation `g = e·h·u` and the logarithms of its
//!   hyperbolic and unipotent factors.
//! * [`symchar`]: characters and eigenvalue moduli of symmetric, exterior
//!   and Schur powers and their combinations.
//! * [`order`]: majorization, permutohedron certificates, the order
//!   decision and separating characters.

pub mod cmjd;
pub mod error;
pub mod io;
pub mod linalg;
pub mod order;
pub mod sample;
pub mod selfcheck;
pub mod symchar;

pub use error::{Error, Result};
