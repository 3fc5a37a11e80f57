//! Vertex contributions to the `t` coefficient of the heat content.
//!
//! Each polygon vertex contributes according to the boundary conditions of
//! its two edges:
//!
//! * Dirichlet–Dirichlet: `c(γ) = ∫_0^∞ 4 sinh((π-γ)θ) / (sinh(πθ) cosh(γθ)) dθ`
//! * open–open: `b(β) = 1/π + (1 - β/π) cot β`, with `b(π) = 0`
//! * Dirichlet–open: `a(α) = -3/4 + ¼ ∫_0^∞ [4 sinh²((π-α/2)θ) - sinh²((π-α)θ)]
//!   / [sinh²(πθ/2) cosh(πθ)] dθ`
//!
//! `a` also has an elementary closed form on `π < α < 3π/2`, exposed as
//! [`coeff_a_closed`] and used only as a cross-check of the integral.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{integrate_semi_infinite, QuadConfig, QuadResult, Scaled};

/// An angle in radians.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Angle(f64);

impl Angle {
    pub const fn radians(r: f64) -> Self {
        Angle(r)
    }

    pub fn degrees(d: f64) -> Self {
        Angle(d.to_radians())
    }

    pub const fn get(self) -> f64 {
        self.0
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} rad", self.0)
    }
}

/// Boundary-condition pairing at a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AngleClass {
    /// One Dirichlet edge and one open edge.
    #[serde(rename = "A")]
    DirichletOpen,
    /// Two open edges.
    #[serde(rename = "B")]
    OpenOpen,
    /// Two Dirichlet edges.
    #[serde(rename = "C")]
    DirichletDirichlet,
}

impl AngleClass {
    pub fn letter(self) -> char {
        match self {
            AngleClass::DirichletOpen => 'A',
            AngleClass::OpenOpen => 'B',
            AngleClass::DirichletDirichlet => 'C',
        }
    }
}

fn check_open_range(name: &'static str, angle: Angle) -> Result<f64> {
    let r = angle.get();
    if r > 0.0 && r < TAU {
        Ok(r)
    } else {
        Err(Error::domain(name, r, "(0, 2π)"))
    }
}

fn c_integrand(gamma: f64, theta: f64) -> f64 {
    if theta == 0.0 {
        return 4.0 * (PI - gamma) / PI;
    }
    (Scaled::sinh((PI - gamma) * theta) / (Scaled::sinh(PI * theta) * Scaled::cosh(gamma * theta))).value() * 4.0
}

/// Dirichlet–Dirichlet vertex coefficient with its quadrature error.
pub fn coeff_c_quad(gamma: Angle, cfg: &QuadConfig) -> Result<QuadResult> {
    let g = gamma.get();
    if !(g > 0.0 && g <= TAU) {
        return Err(Error::domain("gamma", g, "(0, 2π]"));
    }
    // Exponent of the integrand is |π-γ| - π - γ.
    let rate = (2.0 * g).min(TAU);
    Ok(integrate_semi_infinite(|th| c_integrand(g, th), rate, cfg)?)
}

pub fn coeff_c(gamma: Angle) -> Result<f64> {
    Ok(coeff_c_quad(gamma, &QuadConfig::default())?.value)
}

/// Open–open vertex coefficient.
pub fn coeff_b(beta: Angle) -> Result<f64> {
    let b = check_open_range("beta", beta)?;
    if b == PI {
        return Ok(0.0);
    }
    // With δ = π − β the value is (1 − δ/tan δ)/π, which avoids the
    // cancellation of 1 − β/π near π.
    let delta = (PI - b) + PI_LO;
    if delta.abs() < 1e-3 {
        let d2 = delta * delta;
        return Ok(d2 * (1.0 / 3.0 + d2 * (1.0 / 45.0 + d2 * 2.0 / 945.0)) / PI);
    }
    Ok((1.0 - delta / delta.tan()) / PI)
}

/// `π − PI`, the rounding error of the `f64` constant.
const PI_LO: f64 = 1.224_646_799_147_353_2e-16;

fn a_term(x: f64, theta: f64) -> Scaled {
    Scaled::sinh(x * theta).square() / (Scaled::sinh(0.5 * PI * theta).square() * Scaled::cosh(PI * theta))
}

fn a_integrand(alpha: f64, theta: f64) -> f64 {
    let p = PI - 0.5 * alpha;
    let q = PI - alpha;
    if theta == 0.0 {
        return (4.0 * p * p - q * q) * 4.0 / (PI * PI);
    }
    4.0 * a_term(p, theta).value() - a_term(q, theta).value()
}

/// Tail decay rate of the `a(α)` integrand.
fn a_decay_rate(alpha: f64) -> f64 {
    // Numerator exponents 2(π-α/2)θ and 2|π-α|θ against a 2πθ denominator.
    alpha.min(2.0 * (TAU - alpha))
}

/// Dirichlet–open vertex coefficient from its integral representation.
///
/// Accuracy at the default tolerance degrades outside `[0.01, 2π - 0.01]`,
/// where the tail decay rate of the integrand goes to zero; the returned
/// error bound reflects this.
pub fn coeff_a_integral_quad(alpha: Angle, cfg: &QuadConfig) -> Result<QuadResult> {
    let a = check_open_range("alpha", alpha)?;
    // The integral carries a factor ¼, so tighten its tolerance to match.
    let inner = QuadConfig {
        abs_tol: 4.0 * cfg.abs_tol,
        ..*cfg
    };
    let r = integrate_semi_infinite(|th| a_integrand(a, th), a_decay_rate(a), &inner)?;
    Ok(QuadResult {
        value: -0.75 + 0.25 * r.value,
        error_bound: 0.25 * r.error_bound,
        evaluations: r.evaluations,
    })
}

pub fn coeff_a_integral(alpha: Angle) -> Result<f64> {
    Ok(coeff_a_integral_quad(alpha, &QuadConfig::default())?.value)
}

/// Elementary closed form of `a(α)`, valid only for `π < α < 3π/2`.
pub fn coeff_a_closed(alpha: Angle) -> Result<f64> {
    let a = alpha.get();
    if !(a > PI && a < 3.0 * FRAC_PI_2) {
        return Err(Error::domain("alpha", a, "(π, 3π/2)"));
    }
    let (sin, cos) = a.sin_cos();
    let tan = sin / cos;
    Ok(-3.0 / 8.0 + 3.0 / (4.0 * PI) - 1.0 / (8.0 * cos)
        + 1.0 / (2.0 * (0.5 * a).cos())
        + (7.0 / 4.0 - 3.0 * a / (4.0 * PI)) / tan
        + (0.25 - a / (4.0 * PI)) * tan)
}

/// Coefficient for a vertex of the given class.
pub fn coeff_for(class: AngleClass, angle: Angle) -> Result<f64> {
    match class {
        AngleClass::DirichletDirichlet => coeff_c(angle),
        AngleClass::OpenOpen => coeff_b(angle),
        AngleClass::DirichletOpen => coeff_a_integral(angle),
    }
}
