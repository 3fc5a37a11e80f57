//! Quadrature engines and scalar special functions.

mod hyperbolic;
mod quadrature;
mod special;

pub use hyperbolic::Scaled;
pub use quadrature::{integrate_finite, integrate_semi_infinite, QuadConfig, QuadError, QuadResult};
pub use special::{cos_integral, erf, erfc};
