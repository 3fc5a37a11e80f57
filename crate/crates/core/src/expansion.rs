//! Small-time heat content expansions: the polygon formula, the
//! Dirichlet–open sector formula and the model terms (half-space solution,
//! boundary strip, cusp) from which they are assembled.

use std::cell::RefCell;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::coefficients::{coeff_a_integral, coeff_for, Angle};
use crate::error::{Error, Result};
use crate::geometry::{BoundaryCondition, Polygon, VertexAngle};
use crate::numerics::{erf, erfc, integrate_finite, integrate_semi_infinite, QuadConfig};

/// Contribution of one vertex to the `t` coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VertexContribution {
    #[serde(flatten)]
    pub vertex: VertexAngle,
    pub coefficient: f64,
}

/// `G(t) ≈ area + sqrt_t_coeff·√t + t_coeff·t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansionCoefficients {
    pub area: f64,
    pub sqrt_t_coeff: f64,
    pub t_coeff: f64,
    /// Rate in the remainder indicator `e^{-decay_rate / t}`.
    pub decay_rate: f64,
    pub dirichlet_length: f64,
    pub open_length: f64,
    pub per_vertex: Vec<VertexContribution>,
}

impl ExpansionCoefficients {
    /// Bare coefficients without geometric metadata.
    pub fn new(area: f64, sqrt_t_coeff: f64, t_coeff: f64, decay_rate: f64) -> Self {
        Self {
            area,
            sqrt_t_coeff,
            t_coeff,
            decay_rate,
            dirichlet_length: f64::NAN,
            open_length: f64::NAN,
            per_vertex: Vec::new(),
        }
    }
}

/// An expansion value with its remainder-scale indicator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpansionValue {
    pub value: f64,
    pub remainder_scale: f64,
}

pub fn heat_content_coeffs(polygon: &Polygon) -> Result<ExpansionCoefficients> {
    let (l_dir, l_open) = polygon.lengths_by_type();
    let params = polygon.partition_params()?;
    let per_vertex = polygon
        .classify_vertices()
        .into_iter()
        .map(|v| {
            Ok(VertexContribution {
                vertex: v,
                coefficient: coeff_for(v.class, v.radians)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExpansionCoefficients {
        area: polygon.area(),
        sqrt_t_coeff: -(2.0 * l_dir + l_open) / PI.sqrt(),
        t_coeff: per_vertex.iter().map(|v| v.coefficient).sum(),
        decay_rate: params.decay_rate,
        dirichlet_length: l_dir,
        open_length: l_open,
        per_vertex,
    })
}

fn check_time(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::domain("t", t, "(0, ∞)"))
    }
}

pub fn eval_expansion(coeffs: &ExpansionCoefficients, t: f64) -> Result<ExpansionValue> {
    check_time(t)?;
    Ok(ExpansionValue {
        value: coeffs.area + coeffs.sqrt_t_coeff * t.sqrt() + coeffs.t_coeff * t,
        remainder_scale: (-coeffs.decay_rate / t).exp(),
    })
}

/// `g(c) = ∫₁^∞ w⁻² e^{-c w²} dw`.
fn tail_weight(c: f64, cfg: &QuadConfig) -> Result<f64> {
    if c < 1.0 {
        return Ok((-c).exp() - (PI * c).sqrt() * erfc(c.sqrt()));
    }
    // w = 1 + u keeps the integrand O(1) where the closed form cancels.
    let inner = QuadConfig {
        abs_tol: cfg.abs_tol,
        tail_envelope: Some(1.0),
        ..*cfg
    };
    let r = integrate_semi_infinite(|u| (-c * u * (2.0 + u)).exp() / ((1.0 + u) * (1.0 + u)), 2.0 * c, &inner)?;
    Ok((-c).exp() * r.value)
}

/// `∫₀^{φ_max} sin φ · g(k sin²φ) dφ`, the `v = sin φ` form of the cusp
/// double integral truncated at `v = sin φ_max`.
fn cusp_integral_upto(k: f64, phi_max: f64, cfg: &QuadConfig) -> Result<f64> {
    let failure = RefCell::new(None);
    let r = integrate_finite(
        |phi| {
            let s = phi.sin();
            match tail_weight(k * s * s, cfg) {
                Ok(g) => s * g,
                Err(e) => {
                    failure.borrow_mut().get_or_insert(e);
                    0.0
                }
            }
        },
        0.0,
        phi_max,
        cfg,
    )?;
    match failure.into_inner() {
        Some(e) => Err(e),
        None => Ok(r.value),
    }
}

/// `I(R, t) = ∫₁^∞ dw/w² ∫₀¹ v (1−v²)^{-1/2} e^{-R²v²w²/(4t)} dv`.
pub fn cusp_double_integral(radius: f64, t: f64, cfg: &QuadConfig) -> Result<f64> {
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(Error::domain("R", radius, "(0, ∞)"));
    }
    check_time(t)?;
    cusp_integral_upto(radius * radius / (4.0 * t), PI / 2.0, cfg)
}

/// The truncated inner integral `I_δ(R, t)`, with `v` running over `[0, δ/R]`.
pub fn cusp_double_integral_truncated(delta: f64, radius: f64, t: f64, cfg: &QuadConfig) -> Result<f64> {
    check_cusp(delta, radius)?;
    check_time(t)?;
    cusp_integral_upto(radius * radius / (4.0 * t), (delta / radius).asin(), cfg)
}

fn check_cusp(delta: f64, radius: f64) -> Result<()> {
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(Error::domain("R", radius, "(0, ∞)"));
    }
    if !(delta > 0.0 && delta < radius) {
        return Err(Error::domain("delta", delta, "(0, R)"));
    }
    Ok(())
}

fn bc_weight(bc: BoundaryCondition) -> f64 {
    match bc {
        BoundaryCondition::Dirichlet => 2.0,
        BoundaryCondition::Open => 1.0,
    }
}

/// Area of the cusp `E(δ, R)` between the strip `0 < x₂ < δ` and the disk of
/// radius `R` tangent to the edge.
pub fn cusp_area(delta: f64, radius: f64) -> f64 {
    radius * delta - 0.5 * (delta * (radius * radius - delta * delta).sqrt() + radius * radius * (delta / radius).asin())
}

/// `∫_E u_H` over the cusp region, up to terms of order `√t e^{-δ²/(4t)}`.
pub fn cusp_correction(delta: f64, radius: f64, t: f64, bc: BoundaryCondition) -> Result<f64> {
    let cfg = QuadConfig::default();
    let i_delta = cusp_double_integral_truncated(delta, radius, t, &cfg)?;
    Ok(cusp_area(delta, radius) - bc_weight(bc) * radius * t.sqrt() / PI.sqrt() * i_delta)
}

/// `∫_S u_H` over a strip of length `L` and width `δ` along one edge, up to
/// exponentially small terms.
pub fn rectangle_correction(length: f64, delta: f64, t: f64, bc: BoundaryCondition) -> Result<f64> {
    if !(length > 0.0) || !length.is_finite() {
        return Err(Error::domain("L", length, "(0, ∞)"));
    }
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::domain("delta", delta, "(0, ∞)"));
    }
    check_time(t)?;
    Ok(length * delta - bc_weight(bc) * length * t.sqrt() / PI.sqrt())
}

/// Solution in the half-plane `x₂ > 0` at height `x2`, for a Dirichlet or an
/// open boundary line.
pub fn half_space_solution(x2: f64, t: f64, bc: BoundaryCondition) -> Result<f64> {
    if !(x2 >= 0.0) {
        return Err(Error::domain("x2", x2, "[0, ∞)"));
    }
    check_time(t)?;
    let z = x2 / (4.0 * t).sqrt();
    Ok(match bc {
        BoundaryCondition::Dirichlet => erf(z),
        BoundaryCondition::Open => 1.0 - 0.5 * erfc(z),
    })
}

/// Circular sector of radius `R` and opening `α`: Dirichlet on the side
/// `φ = 0`, open on the side `φ = α`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SectorSpec {
    pub radius: f64,
    pub alpha: Angle,
}

impl SectorSpec {
    pub fn new(radius: f64, alpha: Angle) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::domain("R", radius, "(0, ∞)"));
        }
        let a = alpha.get();
        if !(a > 0.0 && a < 2.0 * PI) {
            return Err(Error::domain("alpha", a, "(0, 2π)"));
        }
        Ok(Self { radius, alpha })
    }

    pub fn area(&self) -> f64 {
        0.5 * self.alpha.get() * self.radius * self.radius
    }
}

/// Terms of the sector expansion; `total` is their sum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SectorBreakdown {
    pub area_term: f64,
    pub edge_term: f64,
    pub angle_term: f64,
    pub cusp_term: f64,
    pub total: f64,
    /// `e^{-R²/(4t)}`.
    pub remainder_scale: f64,
}

/// Heat content of the Dirichlet–open sector `{0 < r < R, 0 < φ < α}` inside
/// the infinite wedge.
pub fn sector_heat_content_do(spec: SectorSpec, t: f64) -> Result<SectorBreakdown> {
    let spec = SectorSpec::new(spec.radius, spec.alpha)?;
    check_time(t)?;
    let r = spec.radius;
    let edge_scale = 3.0 * r * t.sqrt() / PI.sqrt();
    let area_term = spec.area();
    let edge_term = -edge_scale;
    let angle_term = coeff_a_integral(spec.alpha)? * t;
    let cusp_term = edge_scale * cusp_double_integral(r, t, &QuadConfig::default())?;
    Ok(SectorBreakdown {
        area_term,
        edge_term,
        angle_term,
        cusp_term,
        total: area_term + edge_term + angle_term + cusp_term,
        remainder_scale: (-r * r / (4.0 * t)).exp(),
    })
}
