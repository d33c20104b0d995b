//! Weights on duals of SU(n), their restriction to maximal tori, and the
//! multiplier matrices that decide when weighted Fourier algebras are
//! operator algebras.

pub mod error;
pub mod lie_repr;
pub mod multipliers;
pub mod numfmt;
pub mod restriction;
pub mod weights;

pub use error::{Error, Result};
