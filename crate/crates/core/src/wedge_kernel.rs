//! Imaginary-order Bessel functions, the resolvent kernel of a Dirichlet
//! wedge, and a suite of integral identities that exercise both.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{cos_integral, integrate_finite, integrate_semi_infinite, QuadConfig, Scaled};

/// Largest order accepted by [`bessel_k_imag`].
pub const MAX_ORDER: f64 = 30.0;

/// `-ln` of the integrand level at which the contour integral is cut.
const CUTOFF_LOG: f64 = 40.0;

/// `K_{iθ}(x)` as `mantissa · e^{exponent}`, accurate relative to its own size
/// rather than to `K₀(x)`.
///
/// The path `w = u + iv` turns the oscillatory integral into
/// `e^{-θv} ∫₀^∞ e^{-x cos v cosh u} cos(θu − x sin v sinh u) du`; choosing
/// `sin v = θ/x` removes the stationary phase at the origin.
fn k_imag_scaled(theta: f64, x: f64) -> Result<Scaled> {
    let theta = theta.abs();
    let v_cap = if theta > 8.0 / PI { FRAC_PI_2 - 4.0 / theta } else { 0.0 };
    let v = (theta / x).min(1.0).asin().min(v_cap);
    let (sv, cv) = v.sin_cos();
    let c = x * cv;
    let b = x * sv;
    let upper = (1.0 + CUTOFF_LOG / c).acosh();
    let scale = upper.min((2.0 / c).sqrt());
    let cfg = QuadConfig {
        abs_tol: 1e-13 * scale,
        rel_tol: 1e-13,
        ..QuadConfig::default()
    };
    let r = integrate_finite(
        |u| {
            let h = (0.5 * u).sinh();
            (-2.0 * c * h * h).exp() * (theta * u - b * u.sinh()).cos()
        },
        0.0,
        upper,
        &cfg,
    )?;
    Ok(Scaled::new(r.value) * Scaled::exp(-theta * v - c))
}

/// Modified Bessel function of the second kind with imaginary order,
/// `K_{iθ}(x) = ∫₀^∞ cos(θw) e^{-x cosh w} dw`, for `0 ≤ θ ≤ 30`, `x > 0`.
pub fn bessel_k_imag(theta: f64, x: f64) -> Result<f64> {
    if !(0.0..=MAX_ORDER).contains(&theta) {
        return Err(Error::domain("theta", theta, "[0, 30]"));
    }
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("x", x, "(0, ∞)"));
    }
    Ok(k_imag_scaled(theta, x)?.value())
}

/// A point of the wedge in polar coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarPoint {
    pub a: f64,
    pub phi: f64,
}

impl PolarPoint {
    pub fn new(a: f64, phi: f64) -> Self {
        Self { a, phi }
    }

    fn distance(self, o: PolarPoint) -> f64 {
        let d2 = self.a * self.a + o.a * o.a - 2.0 * self.a * o.a * (self.phi - o.phi).cos();
        d2.max(0.0).sqrt()
    }
}

/// Opening angle `α ∈ (0, 2π]` and Laplace parameter `s > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WedgeSpec {
    pub alpha: f64,
    pub s: f64,
}

impl WedgeSpec {
    pub fn new(alpha: f64, s: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= TAU) {
            return Err(Error::domain("alpha", alpha, "(0, 2π]"));
        }
        if !(s > 0.0) || !s.is_finite() {
            return Err(Error::domain("s", s, "(0, ∞)"));
        }
        Ok(Self { alpha, s })
    }
}

/// Free-space resolvent kernel `K₀(√s |A₁ − A₂|) / 2π`.
pub fn free_space_green(a1: PolarPoint, a2: PolarPoint, s: f64) -> Result<f64> {
    let d = a1.distance(a2);
    if !(d > 0.0) {
        return Err(Error::domain("|A1 - A2|", d, "(0, ∞)"));
    }
    Ok(k_imag_scaled(0.0, s.sqrt() * d)?.value() / TAU)
}

/// Resolvent (Laplace-transformed heat kernel) of the wedge
/// `{0 < φ < α}` with Dirichlet conditions on both faces.
///
/// The `cosh((π − |φ₁ − φ₂|)θ)` part of the Kontorovich–Lebedev bracket
/// integrates to the free-space kernel, so only the two image terms are
/// integrated numerically.
pub fn green_hat_wedge(a1: PolarPoint, a2: PolarPoint, spec: WedgeSpec) -> Result<f64> {
    let spec = WedgeSpec::new(spec.alpha, spec.s)?;
    let alpha = spec.alpha;
    for p in [a1, a2] {
        if !(p.a > 0.0) || !p.a.is_finite() {
            return Err(Error::domain("a", p.a, "(0, ∞)"));
        }
        if !(p.phi > 0.0 && p.phi < alpha) {
            return Err(Error::domain("phi", p.phi, "(0, alpha)"));
        }
    }
    let free = free_space_green(a1, a2, spec.s)?;

    let x1 = spec.s.sqrt() * a1.a;
    let x2 = spec.s.sqrt() * a2.a;
    let sum = a1.phi + a2.phi;
    let diff = (a1.phi - a2.phi).abs();
    let full_turn = alpha == TAU;
    let image_rate = if alpha <= PI { 2.0 * alpha - diff } else { TAU - diff };
    let rate = sum.min(2.0 * alpha - sum).min(image_rate);

    let failure = std::cell::RefCell::new(None);
    let image = |theta: f64| -> f64 {
        let kk = match (k_imag_scaled(theta, x1), k_imag_scaled(theta, x2)) {
            (Ok(k1), Ok(k2)) => k1 * k2,
            (Err(e), _) | (_, Err(e)) => {
                failure.borrow_mut().get_or_insert(e);
                return 0.0;
            }
        };
        if full_turn {
            let w = kk / Scaled::cosh(PI * theta) * 0.5;
            -((w * Scaled::cosh((TAU - sum) * theta)).value() + (w * Scaled::cosh(diff * theta)).value())
        } else {
            let sa = Scaled::sinh(alpha * theta);
            let direct = kk * Scaled::sinh(PI * theta) * Scaled::cosh((alpha - sum) * theta) / sa;
            let reflected = kk * Scaled::sinh((PI - alpha) * theta) * Scaled::cosh(diff * theta) / sa;
            reflected.value() - direct.value()
        }
    };
    let cfg = QuadConfig::with_abs_tol(1e-12);
    let r = integrate_semi_infinite(image, rate, &cfg)?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok((free + r.value / (PI * PI)).max(0.0))
}

/// Both sides of a closed-form integral identity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub abs_err: f64,
}

impl IdentityCheck {
    fn new(lhs: f64, rhs: f64) -> Self {
        Self {
            lhs,
            rhs,
            abs_err: (lhs - rhs).abs(),
        }
    }
}

fn positive(name: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(name, v, "(0, ∞)"))
    }
}

/// `∫₀^∞ a K_{iθ}(√s a) da = πθ / (2s sinh(πθ/2))`, for `0.1 ≤ θ ≤ 10`.
pub fn check_radial_moment(theta: f64, s: f64) -> Result<IdentityCheck> {
    if !(0.1..=10.0).contains(&theta) {
        return Err(Error::domain("theta", theta, "[0.1, 10]"));
    }
    positive("s", s)?;
    let rs = s.sqrt();
    let failure = std::cell::RefCell::new(None);
    let r = integrate_semi_infinite(
        |a| match k_imag_scaled(theta, rs * a) {
            Ok(k) => a * k.value(),
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        },
        // K decays like e^{-x}; back off slightly for the algebraic prefactor.
        0.9 * rs,
        &QuadConfig::with_abs_tol(1e-11),
    )?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let rhs = PI * theta / (2.0 * s * (0.5 * PI * theta).sinh());
    Ok(IdentityCheck::new(r.value, rhs))
}

/// `∫₀^∞ cos(bθ) K_{iθ}(a) dθ = (π/2) e^{-a cosh b}` for real `b`.
pub fn check_cosine_transform(a: f64, b: f64) -> Result<IdentityCheck> {
    positive("a", a)?;
    if !b.is_finite() {
        return Err(Error::domain("b", b, "finite"));
    }
    let failure = std::cell::RefCell::new(None);
    let r = integrate_semi_infinite(
        |theta| match k_imag_scaled(theta, a) {
            Ok(k) => (b * theta).cos() * k.value(),
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        },
        0.9 * FRAC_PI_2,
        &QuadConfig::with_abs_tol(1e-11),
    )?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(IdentityCheck::new(r.value, FRAC_PI_2 * (-a * b.cosh()).exp()))
}

/// `∫₀^∞ cos(aθ) sinh(βθ) / (θ cosh(γθ)) dθ`
/// `= ½ log[(cosh(aπ/2γ) + sin(βπ/2γ)) / (cosh(aπ/2γ) − sin(βπ/2γ))]`, `|β| < γ`.
pub fn check_sinh_cosh_transform(a: f64, beta: f64, gamma: f64) -> Result<IdentityCheck> {
    positive("gamma", gamma)?;
    if !(a >= 0.0) || !a.is_finite() {
        return Err(Error::domain("a", a, "[0, ∞)"));
    }
    if !(beta.abs() < gamma) {
        return Err(Error::domain("beta", beta, "(-gamma, gamma)"));
    }
    let f = |theta: f64| {
        let ratio = if beta * theta == 0.0 {
            beta
        } else {
            (Scaled::sinh(beta * theta) / Scaled::cosh(gamma * theta)).value() / theta
        };
        (a * theta).cos() * ratio
    };
    let r = integrate_semi_infinite(f, gamma - beta.abs(), &QuadConfig::default())?;
    let ch = (a * PI / (2.0 * gamma)).cosh();
    let sn = (beta * PI / (2.0 * gamma)).sin();
    Ok(IdentityCheck::new(r.value, 0.5 * ((ch + sn) / (ch - sn)).ln()))
}

/// `∫₀^∞ cos(aθ) tanh(βθ) / θ dθ = log coth(aπ / 4β)` for `a, β > 0`.
///
/// Beyond `T = 1/β` the integrand is split into `cos(aθ)(tanh(βθ) − 1)/θ`,
/// which decays exponentially, and `cos(aθ)/θ`, whose tail is `−Ci(aT)`.
pub fn check_tanh_transform(a: f64, beta: f64) -> Result<IdentityCheck> {
    positive("a", a)?;
    positive("beta", beta)?;
    let cfg = QuadConfig::default();
    let split = 1.0 / beta;
    let head = integrate_finite(
        |theta| {
            let ratio = if theta == 0.0 { beta } else { (beta * theta).tanh() / theta };
            (a * theta).cos() * ratio
        },
        0.0,
        split,
        &cfg,
    )?;
    let tail = integrate_semi_infinite(
        |u| {
            let theta = split + u;
            // tanh(y) − 1 = −2 / (e^{2y} + 1)
            let excess = -2.0 / ((2.0 * beta * theta).exp() + 1.0);
            (a * theta).cos() * excess / theta
        },
        2.0 * beta,
        &cfg,
    )?;
    let lhs = head.value + tail.value - cos_integral(a * split);
    let rhs = (1.0 / (a * PI / (4.0 * beta)).tanh()).ln();
    Ok(IdentityCheck::new(lhs, rhs))
}

/// One row of the identity suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityRow {
    pub identity: &'static str,
    pub params: String,
    #[serde(flatten)]
    pub check: IdentityCheck,
}

/// The default parameter grid for all four identities.
pub fn identity_suite() -> Result<Vec<IdentityRow>> {
    let mut rows = Vec::new();
    for theta in [0.5, 1.0, 2.0] {
        for s in [1.0, 4.0] {
            rows.push(IdentityRow {
                identity: "radial_moment",
                params: format!("theta={theta} s={s}"),
                check: check_radial_moment(theta, s)?,
            });
        }
    }
    for b in [0.0, 0.5, 1.0] {
        rows.push(IdentityRow {
            identity: "cosine_transform",
            params: format!("a=1 b={b}"),
            check: check_cosine_transform(1.0, b)?,
        });
    }
    for a in [0.0, 1.0] {
        rows.push(IdentityRow {
            identity: "sinh_cosh_transform",
            params: format!("a={a} beta=pi/2 gamma=pi"),
            check: check_sinh_cosh_transform(a, FRAC_PI_2, PI)?,
        });
    }
    rows.push(IdentityRow {
        identity: "tanh_transform",
        params: "a=1 beta=pi".to_string(),
        check: check_tanh_transform(1.0, PI)?,
    });
    Ok(rows)
}
