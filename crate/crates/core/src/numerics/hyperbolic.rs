//! Overflow-free products and quotients of hyperbolic functions.
//!
//! The angle-coefficient and wedge integrands are ratios such as
//! `sinh(aθ) / (sinh(πθ) cosh(γθ))` whose factors overflow long before the
//! ratio becomes negligible. [`Scaled`] carries `mantissa · e^{exponent}` so
//! the exponents cancel before anything is exponentiated.

use std::ops::{Div, Mul};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    mantissa: f64,
    exponent: f64,
}

impl Scaled {
    pub fn new(value: f64) -> Self {
        Self {
            mantissa: value,
            exponent: 0.0,
        }
    }

    pub fn sinh(x: f64) -> Self {
        if x.abs() < 1.0 {
            Self::new(x.sinh())
        } else {
            let ax = x.abs();
            Self {
                mantissa: x.signum() * 0.5 * (-(-2.0 * ax).exp_m1()),
                exponent: ax,
            }
        }
    }

    pub fn cosh(x: f64) -> Self {
        if x.abs() < 1.0 {
            return Self::new(x.cosh());
        }
        let ax = x.abs();
        Self {
            mantissa: 0.5 * (1.0 + (-2.0 * ax).exp()),
            exponent: ax,
        }
    }

    pub fn exp(x: f64) -> Self {
        Self {
            mantissa: 1.0,
            exponent: x,
        }
    }

    pub fn square(self) -> Self {
        self * self
    }

    pub fn value(self) -> f64 {
        if self.mantissa == 0.0 {
            0.0
        } else {
            self.mantissa * self.exponent.exp()
        }
    }
}

impl Mul for Scaled {
    type Output = Scaled;
    fn mul(self, rhs: Scaled) -> Scaled {
        Scaled {
            mantissa: self.mantissa * rhs.mantissa,
            exponent: self.exponent + rhs.exponent,
        }
    }
}

impl Mul<f64> for Scaled {
    type Output = Scaled;
    fn mul(self, rhs: f64) -> Scaled {
        Scaled {
            mantissa: self.mantissa * rhs,
            exponent: self.exponent,
        }
    }
}

impl Div for Scaled {
    type Output = Scaled;
    fn div(self, rhs: Scaled) -> Scaled {
        Scaled {
            mantissa: self.mantissa / rhs.mantissa,
            exponent: self.exponent - rhs.exponent,
        }
    }
}
