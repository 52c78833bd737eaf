//! Laguerre-based plane harmonics on the half-plane `y >= 0`, `-pi <= phi <= pi`,
//! the ladder operators realizing su(2) on them, and transforms between plane
//! functions and `(j, m)` coefficient blocks.

pub mod algebra;
pub mod basis;
mod compensated;
pub mod error;
pub mod laguerre;
pub mod quadrature;
pub mod transform;
pub mod verify;

pub use error::{Error, Result};
