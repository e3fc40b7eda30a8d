//! The coefficient field and the Laurent-polynomial module everything acts
//! on.

pub mod laurent;
pub mod scalar;
pub mod weights;

pub use laurent::{qpow, Exp, LaurentPoly, RingError};
pub use scalar::{Scalar, ZPoly};
