//! Thick–thin tiling of moduli space, Fenchel–Nielsen holonomy, the thin-part metric model and
//! the Euclidean cone over the quotient curve complex.

pub mod assets;
pub mod asymptotic;
pub mod complex;
pub mod error;
pub mod hyperbolic;
pub mod matrix;
pub mod metric;
pub mod sampling;
pub mod tiling;
pub mod topology;
pub mod words;

pub use error::{Error, Result};
