//! Scalar special functions.

use num_complex::Complex64;

/// Euler–Mascheroni constant.
const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082_402_4;

/// Error function.
pub fn erf(x: f64) -> f64 {
    libm::erf(x)
}

/// Complementary error function `(2/√π) ∫_x^∞ e^{-r²} dr`, accurate in the
/// far tail where `1 - erf(x)` would cancel.
pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}

/// Cosine integral `Ci(x) = -∫_x^∞ cos(t)/t dt` for `x > 0`.
pub fn cos_integral(x: f64) -> f64 {
    assert!(x > 0.0, "cos_integral requires x > 0, got {x}");
    if x <= 2.0 {
        // Ci(x) = γ + ln x + Σ_{k≥1} (-x²)^k / (2k (2k)!)
        let x2 = x * x;
        let mut sum = 0.0;
        let mut fact_term = 1.0; // (-x²)^k / (2k)!
        for k in 1..60 {
            let kf = k as f64;
            fact_term *= -x2 / ((2.0 * kf - 1.0) * (2.0 * kf));
            let term = fact_term / (2.0 * kf);
            sum += term;
            if term.abs() < 1e-17 * sum.abs().max(1e-300) {
                break;
            }
        }
        EULER_GAMMA + x.ln() + sum
    } else {
        // E1(ix) by modified Lentz continued fraction; Ci(x) = -Re E1(ix).
        let tiny = 1e-300;
        let mut b = Complex64::new(1.0, x);
        let mut c = Complex64::new(1.0 / tiny, 0.0);
        let mut d = Complex64::new(1.0, 0.0) / b;
        let mut h = d;
        for i in 2..200 {
            let a = -((i - 1) as f64).powi(2);
            b += 2.0;
            d = Complex64::new(1.0, 0.0) / (a * d + b);
            c = b + a / c;
            let del = c * d;
            h *= del;
            if (del.re - 1.0).abs() + del.im.abs() < 1e-16 {
                break;
            }
        }
        let e1 = h * Complex64::new(x.cos(), -x.sin());
        -e1.re
    }
}
