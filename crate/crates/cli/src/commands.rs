use std::path::Path;

use polyheat::coefficients::{coeff_a_closed, coeff_a_integral_quad, coeff_b, coeff_c_quad};
use polyheat::expansion::{eval_expansion, heat_content_coeffs, sector_heat_content_do, SectorSpec};
use polyheat::mc_oracle::{estimate_heat_content, MCConfig};
use polyheat::numerics::QuadConfig;
use polyheat::wedge_kernel::identity_suite;
use polyheat::{Angle, Polygon};
use serde_json::json;
use thiserror::Error;

use crate::output::{num, Report};
use crate::{Kind, Method, Unit};

/// Remainder scale above which the expansion is reported as unreliable.
const REMAINDER_WARNING: f64 = 0.01;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Validation(String),
    #[error("cannot write output: {0}")]
    Output(String),
    /// A verification ran but did not pass; carries the rendered report.
    #[error("verification failed")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Validation(_) | CliError::Output(_) => 2,
            CliError::Failed(_) => 3,
        }
    }
}

impl From<polyheat::Error> for CliError {
    fn from(e: polyheat::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

fn to_angle(value: f64, unit: Unit) -> Angle {
    match unit {
        Unit::Rad => Angle::radians(value),
        Unit::Deg => Angle::degrees(value),
    }
}

fn load_polygon(path: &Path) -> Result<Polygon, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

fn positive_time(t: f64) -> Result<(), CliError> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(CliError::Validation(format!("time must be positive, got {t}")))
    }
}

pub fn coeff(kind: Kind, angle: f64, unit: Unit, method: Option<Method>, tol: f64) -> Result<Report, CliError> {
    if !(tol > 0.0) {
        return Err(CliError::Usage(format!("--tol must be positive, got {tol}")));
    }
    let angle = to_angle(angle, unit);
    let cfg = QuadConfig::with_abs_tol(tol);
    let (value, method, est_error) = match (kind, method) {
        (Kind::A, None | Some(Method::Integral)) => {
            let r = coeff_a_integral_quad(angle, &cfg)?;
            (r.value, "integral", r.error_bound)
        }
        (Kind::A, Some(Method::Closed)) => (coeff_a_closed(angle)?, "closed", 0.0),
        (Kind::B, None | Some(Method::Closed)) => (coeff_b(angle)?, "closed", 0.0),
        (Kind::C, None | Some(Method::Integral)) => {
            let r = coeff_c_quad(angle, &cfg)?;
            (r.value, "integral", r.error_bound)
        }
        (Kind::B, Some(Method::Integral)) => {
            return Err(CliError::Usage("coefficient b is only available in closed form".into()))
        }
        (Kind::C, Some(Method::Closed)) => {
            return Err(CliError::Usage("coefficient c is only available as an integral".into()))
        }
    };
    let kind = match kind {
        Kind::A => "a",
        Kind::B => "b",
        Kind::C => "c",
    };
    Ok(Report {
        json: json!({
            "kind": kind,
            "angle_rad": angle.get(),
            "value": value,
            "method": method,
            "est_error": est_error,
        }),
        columns: vec!["kind", "angle_rad", "value", "method", "est_error"],
        rows: vec![vec![kind.into(), num(angle.get()), num(value), method.into(), num(est_error)]],
    })
}

pub fn expand(path: &Path) -> Result<Report, CliError> {
    let polygon = load_polygon(path)?;
    let coeffs = heat_content_coeffs(&polygon)?;
    let rows = coeffs
        .per_vertex
        .iter()
        .map(|v| {
            vec![
                v.vertex.vertex.loop_index.to_string(),
                v.vertex.vertex.position.to_string(),
                num(v.vertex.radians.get()),
                v.vertex.class.letter().to_string(),
                num(v.coefficient),
            ]
        })
        .collect();
    Ok(Report {
        json: serde_json::to_value(&coeffs).map_err(|e| CliError::Output(e.to_string()))?,
        columns: vec!["loop", "position", "angle_rad", "class", "coefficient"],
        rows,
    })
}

pub fn eval(path: &Path, times: &[f64]) -> Result<Report, CliError> {
    for &t in times {
        positive_time(t)?;
    }
    let polygon = load_polygon(path)?;
    let coeffs = heat_content_coeffs(&polygon)?;
    let mut rows = Vec::new();
    let mut records = Vec::new();
    for &t in times {
        let v = eval_expansion(&coeffs, t)?;
        rows.push(vec![num(t), num(v.value), num(v.remainder_scale)]);
        records.push(json!({ "t": t, "value": v.value, "remainder_scale": v.remainder_scale }));
    }
    Ok(Report {
        json: json!(records),
        columns: vec!["t", "value", "remainder_scale"],
        rows,
    })
}

pub struct VerifyOptions {
    pub t: f64,
    pub paths: u64,
    pub steps: u32,
    pub seed: u64,
    pub budget: f64,
    pub z_threshold: f64,
    pub bridge: bool,
}

pub fn verify(path: &Path, opts: &VerifyOptions) -> Result<(Report, bool), CliError> {
    positive_time(opts.t)?;
    if opts.paths == 0 || opts.steps == 0 {
        return Err(CliError::Validation("--paths and --steps must be at least 1".into()));
    }
    if !(opts.budget >= 0.0) || !(opts.z_threshold > 0.0) {
        return Err(CliError::Validation(
            "--budget must be non-negative and --z-threshold positive".into(),
        ));
    }
    let polygon = load_polygon(path)?;
    let coeffs = heat_content_coeffs(&polygon)?;
    let asym = eval_expansion(&coeffs, opts.t)?;
    let cfg = MCConfig {
        bridge_correction: opts.bridge,
        ..MCConfig::new(opts.paths, opts.steps, opts.seed)
    };
    let mc = estimate_heat_content(&polygon, opts.t, &cfg)?;
    let diff = asym.value - mc.mean;
    let z = if mc.std_error > 0.0 { diff / mc.std_error } else { 0.0 };
    let pass = diff.abs() <= opts.z_threshold * mc.std_error + opts.budget;
    let warning = (asym.remainder_scale > REMAINDER_WARNING).then(|| {
        format!(
            "remainder scale {:.3e} exceeds {REMAINDER_WARNING}: t is outside the small-time regime",
            asym.remainder_scale
        )
    });
    if let Some(w) = &warning {
        eprintln!("warning: {w}");
    }
    let json = json!({
        "t": opts.t,
        "asymptotic": asym.value,
        "remainder_scale": asym.remainder_scale,
        "mc_mean": mc.mean,
        "mc_std_error": mc.std_error,
        "z_score": z,
        "budget": opts.budget,
        "pass": pass,
        "warning": warning,
        "config": mc.config,
        "acceptance_rate": mc.acceptance_rate,
    });
    let rows = vec![vec![
        num(opts.t),
        num(asym.value),
        num(mc.mean),
        num(mc.std_error),
        num(z),
        pass.to_string(),
    ]];
    Ok((
        Report {
            json,
            columns: vec!["t", "asymptotic", "mc_mean", "mc_std_error", "z_score", "pass"],
            rows,
        },
        pass,
    ))
}

pub fn sector(radius: f64, alpha: f64, unit: Unit, t: f64) -> Result<Report, CliError> {
    positive_time(t)?;
    let spec = SectorSpec::new(radius, to_angle(alpha, unit))?;
    let b = sector_heat_content_do(spec, t)?;
    Ok(Report {
        json: json!({
            "radius": radius,
            "alpha_rad": spec.alpha.get(),
            "t": t,
            "area_term": b.area_term,
            "edge_term": b.edge_term,
            "angle_term": b.angle_term,
            "cusp_term": b.cusp_term,
            "total": b.total,
            "remainder_scale": b.remainder_scale,
        }),
        columns: vec![
            "radius",
            "alpha_rad",
            "t",
            "area_term",
            "edge_term",
            "angle_term",
            "cusp_term",
            "total",
            "remainder_scale",
        ],
        rows: vec![vec![
            num(radius),
            num(spec.alpha.get()),
            num(t),
            num(b.area_term),
            num(b.edge_term),
            num(b.angle_term),
            num(b.cusp_term),
            num(b.total),
            num(b.remainder_scale),
        ]],
    })
}

pub fn kernel_check(tol: f64) -> Result<(Report, bool), CliError> {
    if !(tol > 0.0) {
        return Err(CliError::Usage(format!("--tol must be positive, got {tol}")));
    }
    let suite = identity_suite()?;
    let mut all_pass = true;
    let mut rows = Vec::new();
    let mut records = Vec::new();
    for r in &suite {
        let pass = r.check.abs_err <= tol;
        all_pass &= pass;
        rows.push(vec![
            r.identity.to_string(),
            r.params.clone(),
            num(r.check.lhs),
            num(r.check.rhs),
            num(r.check.abs_err),
            pass.to_string(),
        ]);
        records.push(json!({
            "identity": r.identity,
            "params": r.params,
            "lhs": r.check.lhs,
            "rhs": r.check.rhs,
            "abs_err": r.check.abs_err,
            "pass": pass,
        }));
    }
    Ok((
        Report {
            json: json!(records),
            columns: vec!["identity", "params", "lhs", "rhs", "abs_err", "pass"],
            rows,
        },
        all_pass,
    ))
}
