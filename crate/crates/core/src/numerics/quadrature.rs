//! Globally adaptive Gauss–Kronrod (G7/K15) quadrature.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Kronrod abscissae on [-1, 1], positive half, descending. The odd-indexed
/// entries are the 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Evaluations consumed by one panel.
const PANEL_EVALS: usize = 15;

/// Outcome of a quadrature call.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadResult {
    pub value: f64,
    /// Absolute error estimate.
    pub error_bound: f64,
    pub evaluations: usize,
}

/// Accuracy and budget settings shared by every integrator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_evaluations: usize,
    /// Constant `C` in the tail envelope `|f(θ)| ≤ C e^{-rate θ}` used to pick
    /// the truncation point of semi-infinite integrals. `None` estimates it by
    /// probing the integrand.
    pub tail_envelope: Option<f64>,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-12,
            max_evaluations: 2_000_000,
            tail_envelope: None,
        }
    }
}

impl QuadConfig {
    pub fn with_abs_tol(abs_tol: f64) -> Self {
        Self {
            abs_tol,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), QuadError> {
        let ok = self.abs_tol > 0.0
            && self.rel_tol > 0.0
            && self.abs_tol.is_finite()
            && self.rel_tol.is_finite()
            && self.max_evaluations >= 16;
        if ok {
            Ok(())
        } else {
            Err(QuadError::InvalidConfig)
        }
    }

    fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum QuadError {
    #[error("evaluation budget exhausted: best estimate {} ± {}", .best.value, .best.error_bound)]
    BudgetExhausted { best: QuadResult },
    #[error("integrand is not finite at x = {x}")]
    NonFinite { x: f64 },
    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },
    #[error("decay rate must be positive and finite, got {0}")]
    InvalidDecayRate(f64),
    #[error("quadrature tolerances must be positive and max_evaluations at least 16")]
    InvalidConfig,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn finite_at<F: Fn(f64) -> f64>(f: &F, x: f64) -> Result<f64, QuadError> {
    let y = f(x);
    if y.is_finite() {
        Ok(y)
    } else {
        Err(QuadError::NonFinite { x })
    }
}

fn kronrod_panel<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Result<Panel, QuadError> {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);

    let fc = finite_at(f, center)?;
    let mut res_k = fc * WGK[7];
    let mut res_g = fc * WG[3];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];

    for j in 0..7 {
        let dx = half * XGK[j];
        let y1 = finite_at(f, center - dx)?;
        let y2 = finite_at(f, center + dx)?;
        fv1[j] = y1;
        fv2[j] = y2;
        res_k += WGK[j] * (y1 + y2);
        res_abs += WGK[j] * (y1.abs() + y2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (y1 + y2);
        }
    }

    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let h = half.abs();
    let error = rescale_error((res_k - res_g) * half, res_abs * h, res_asc * h);
    Ok(Panel {
        lo,
        hi,
        value: res_k * half,
        error,
    })
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

/// Adaptive integral of `f` over `[lo, hi]`.
///
/// Endpoint singularities must be removed by the caller through a change of
/// variables; the integrand is sampled only at interior Kronrod nodes.
pub fn integrate_finite<F>(f: F, lo: f64, hi: f64, cfg: &QuadConfig) -> Result<QuadResult, QuadError>
where
    F: Fn(f64) -> f64,
{
    cfg.validate()?;
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(QuadError::InvalidInterval { lo, hi });
    }

    let first = kronrod_panel(&f, lo, hi)?;
    let mut evaluations = PANEL_EVALS;
    let mut total_value = first.value;
    let mut total_error = first.error;
    let mut heap = BinaryHeap::new();
    // Panels too narrow to bisect further keep contributing their error.
    let mut frozen_value = 0.0;
    let mut frozen_error = 0.0;
    heap.push(first);

    loop {
        if total_error <= cfg.target(total_value) {
            // The running sums drift; confirm against a fresh sum.
            total_value = heap.iter().map(|p| p.value).sum::<f64>() + frozen_value;
            total_error = heap.iter().map(|p| p.error).sum::<f64>() + frozen_error;
            if total_error <= cfg.target(total_value) {
                break;
            }
        }
        if evaluations + 2 * PANEL_EVALS > cfg.max_evaluations {
            return Err(QuadError::BudgetExhausted {
                best: QuadResult {
                    value: total_value,
                    error_bound: total_error,
                    evaluations,
                },
            });
        }
        let Some(worst) = heap.pop() else {
            break;
        };
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi || (worst.hi - worst.lo) < 1e-15 * (hi - lo) {
            frozen_value += worst.value;
            frozen_error += worst.error;
            if heap.is_empty() {
                break;
            }
            continue;
        }
        let left = kronrod_panel(&f, worst.lo, mid)?;
        let right = kronrod_panel(&f, mid, worst.hi)?;
        evaluations += 2 * PANEL_EVALS;
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum to shed the drift of the running updates.
    let value = heap.iter().map(|p| p.value).sum::<f64>() + frozen_value;
    let error_bound = heap.iter().map(|p| p.error).sum::<f64>() + frozen_error;
    let result = QuadResult {
        value,
        error_bound,
        evaluations,
    };
    if error_bound > cfg.target(value) {
        return Err(QuadError::BudgetExhausted { best: result });
    }
    Ok(result)
}

/// Integral of `f` over `[0, ∞)` for an integrand with a known exponential
/// tail `|f(θ)| ≤ C e^{-decay_rate·θ}`.
///
/// The range is cut at `θ_max = max(1, ln(C / (rate·abs_tol)) / rate)` and the
/// analytic tail bound `C e^{-rate θ_max} / rate` is added to the reported
/// error.
pub fn integrate_semi_infinite<F>(f: F, decay_rate: f64, cfg: &QuadConfig) -> Result<QuadResult, QuadError>
where
    F: Fn(f64) -> f64,
{
    cfg.validate()?;
    if !(decay_rate > 0.0) || !decay_rate.is_finite() {
        return Err(QuadError::InvalidDecayRate(decay_rate));
    }
    let envelope = match cfg.tail_envelope {
        Some(c) => c.abs().max(f64::MIN_POSITIVE),
        None => probe_envelope(&f, decay_rate)?,
    };

    let mut cutoff = ((envelope / (decay_rate * cfg.abs_tol)).ln() / decay_rate).max(1.0);
    // The envelope is only an estimate; push the cutoff out until the
    // integrand itself is negligible there.
    for _ in 0..64 {
        let local = [1.0, 1.1, 1.25]
            .iter()
            .map(|s| f(cutoff * s).abs())
            .fold(0.0, f64::max);
        if !local.is_finite() {
            return Err(QuadError::NonFinite { x: cutoff });
        }
        if local / decay_rate <= 0.1 * cfg.abs_tol {
            break;
        }
        cutoff += (10.0 * local / (decay_rate * cfg.abs_tol)).ln().max(1.0) / decay_rate;
    }
    let tail = envelope * (-decay_rate * cutoff).exp() / decay_rate;

    let inner_cfg = QuadConfig {
        abs_tol: (cfg.abs_tol - tail).max(0.5 * cfg.abs_tol),
        ..*cfg
    };
    match integrate_finite(&f, 0.0, cutoff, &inner_cfg) {
        Ok(r) => Ok(QuadResult {
            error_bound: r.error_bound + tail,
            ..r
        }),
        Err(QuadError::BudgetExhausted { best }) => Err(QuadError::BudgetExhausted {
            best: QuadResult {
                error_bound: best.error_bound + tail,
                ..best
            },
        }),
        Err(e) => Err(e),
    }
}

fn probe_envelope<F: Fn(f64) -> f64>(f: &F, rate: f64) -> Result<f64, QuadError> {
    let mut c: f64 = 1.0;
    for k in [0.5, 1.0, 2.0, 4.0, 8.0] {
        let x = k / rate;
        let y = f(x);
        if !y.is_finite() {
            return Err(QuadError::NonFinite { x });
        }
        c = c.max(y.abs() * (rate * x).exp());
    }
    Ok(c)
}
