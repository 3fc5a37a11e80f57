//! Killed Brownian motion estimates of solutions and heat contents.
//!
//! Paths have generator `Δ`: each coordinate increment over a step of length
//! `h` is normal with variance `2h`. A path dies when a step segment touches a
//! Dirichlet edge, or, with bridge correction, with probability
//! `exp(-d₁d₂/h)` per nearby edge, the chance that the Brownian bridge between
//! two points at distances `d₁, d₂` from the edge line crossed it. The
//! constant is checked against the half-plane survival `erf(x₂/√(4t))` with
//! as few as 16 steps.
//!
//! Path `i` draws from its own ChaCha stream `(seed, i)`, and results are
//! aggregated as integer counts, so estimates do not depend on the number of
//! worker threads.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expansion::SectorSpec;
use crate::geometry::{point_segment_distance, segments_intersect, BoundaryCondition, Point, Polygon};

/// Bridge kill probabilities below `e^{-BRIDGE_CUTOFF}` are ignored.
const BRIDGE_CUTOFF: f64 = 40.0;

/// Start points drawn per path before rejection sampling gives up.
const MAX_REJECTIONS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MCConfig {
    pub n_paths: u64,
    pub n_steps: u32,
    pub seed: u64,
    pub bridge_correction: bool,
}

impl MCConfig {
    /// Configuration with bridge correction enabled.
    pub fn new(n_paths: u64, n_steps: u32, seed: u64) -> Self {
        Self {
            n_paths,
            n_steps,
            seed,
            bridge_correction: true,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n_paths == 0 {
            return Err(Error::InvalidConfig("n_paths must be at least 1"));
        }
        if self.n_steps == 0 {
            return Err(Error::InvalidConfig("n_steps must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MCEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub n_paths: u64,
    pub config: MCConfig,
    /// Fraction of bounding-box draws that landed in the domain, when start
    /// points are sampled.
    pub acceptance_rate: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PathOutcome {
    SurvivedInside,
    SurvivedOutside,
    Killed,
}

fn check_time(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::domain("t", t, "(0, ∞)"))
    }
}

fn path_rng(seed: u64, path_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(path_index);
    rng
}

fn dirichlet_edges(polygon: &Polygon) -> Vec<(Point, Point)> {
    polygon
        .edges()
        .filter(|e| e.bc == BoundaryCondition::Dirichlet)
        .map(|e| (e.start, e.end))
        .collect()
}

/// Run one path from `start` against the killing segments `edges`.
fn run_path<R: Rng>(
    rng: &mut R,
    start: Point,
    t: f64,
    cfg: &MCConfig,
    edges: &[(Point, Point)],
    inside: impl Fn(Point) -> bool,
) -> PathOutcome {
    let h = t / cfg.n_steps as f64;
    let sigma = (2.0 * h).sqrt();
    let mut here = start;
    // Distance from the current point to each killing segment; a step can
    // only reach segments closer than its own length.
    let mut dist: Vec<f64> = edges.iter().map(|&(a, b)| point_segment_distance(here, a, b)).collect();
    for _ in 0..cfg.n_steps {
        let dx: f64 = rng.sample(StandardNormal);
        let dy: f64 = rng.sample(StandardNormal);
        let next = Point::new(here.x + sigma * dx, here.y + sigma * dy);
        let reach = sigma * dx.hypot(dy);
        let mut log_survive = 0.0;
        for (d, &(a, b)) in dist.iter_mut().zip(edges) {
            if *d <= reach && segments_intersect(here, next, a, b) {
                return PathOutcome::Killed;
            }
            let d_next = point_segment_distance(next, a, b);
            if cfg.bridge_correction {
                let exponent = *d * d_next / h;
                if exponent < BRIDGE_CUTOFF {
                    log_survive += (-(-exponent).exp()).ln_1p();
                }
            }
            *d = d_next;
        }
        if log_survive < 0.0 {
            let u: f64 = rng.random();
            if u >= log_survive.exp() {
                return PathOutcome::Killed;
            }
        }
        here = next;
    }
    if inside(here) {
        PathOutcome::SurvivedInside
    } else {
        PathOutcome::SurvivedOutside
    }
}

/// Outcome of path `path_index` started at `start`. Deterministic in
/// `(cfg.seed, path_index)`.
pub fn simulate_path(polygon: &Polygon, start: Point, t: f64, cfg: &MCConfig, path_index: u64) -> Result<PathOutcome> {
    cfg.validate()?;
    check_time(t)?;
    if !polygon.point_in_domain(start) {
        return Err(Error::OutsideDomain { x: start.x, y: start.y });
    }
    let edges = dirichlet_edges(polygon);
    let mut rng = path_rng(cfg.seed, path_index);
    Ok(run_path(&mut rng, start, t, cfg, &edges, |p| polygon.point_in_domain(p)))
}

/// Sum of per-path `(successes, extra draws)` over all paths, in parallel.
fn count_paths<F>(cfg: &MCConfig, path: F) -> (u64, u64)
where
    F: Fn(u64) -> (bool, u64) + Sync,
{
    (0..cfg.n_paths)
        .into_par_iter()
        .map(|i| {
            let (ok, draws) = path(i);
            (ok as u64, draws)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1))
}

fn binomial(successes: u64, cfg: &MCConfig, scale: f64, acceptance_rate: Option<f64>) -> MCEstimate {
    let n = cfg.n_paths as f64;
    let p = successes as f64 / n;
    MCEstimate {
        mean: scale * p,
        std_error: scale * (p * (1.0 - p) / n).sqrt(),
        n_paths: cfg.n_paths,
        config: *cfg,
        acceptance_rate,
    }
}

/// Monte Carlo estimate of the solution `u(x; t)` with initial value 1.
pub fn estimate_solution_at(polygon: &Polygon, x: Point, t: f64, cfg: &MCConfig) -> Result<MCEstimate> {
    cfg.validate()?;
    check_time(t)?;
    if !polygon.point_in_domain(x) {
        return Err(Error::OutsideDomain { x: x.x, y: x.y });
    }
    let edges = dirichlet_edges(polygon);
    let (hits, _) = count_paths(cfg, |i| {
        let mut rng = path_rng(cfg.seed, i);
        let out = run_path(&mut rng, x, t, cfg, &edges, |p| polygon.point_in_domain(p));
        (out == PathOutcome::SurvivedInside, 0)
    });
    Ok(binomial(hits, cfg, 1.0, None))
}

/// Monte Carlo estimate of the heat content: `|D|` times the survival
/// probability from a uniform start point.
pub fn estimate_heat_content(polygon: &Polygon, t: f64, cfg: &MCConfig) -> Result<MCEstimate> {
    cfg.validate()?;
    check_time(t)?;
    let edges = dirichlet_edges(polygon);
    let (lo, hi) = polygon.bounding_box();
    let sample_start = |rng: &mut ChaCha8Rng| -> Option<(Point, u64)> {
        for draws in 1..=MAX_REJECTIONS as u64 {
            let u: f64 = rng.random();
            let v: f64 = rng.random();
            let p = Point::new(lo.x + u * (hi.x - lo.x), lo.y + v * (hi.y - lo.y));
            if polygon.point_in_domain(p) {
                return Some((p, draws));
            }
        }
        None
    };
    let (hits, draws) = count_paths(cfg, |i| {
        let mut rng = path_rng(cfg.seed, i);
        match sample_start(&mut rng) {
            Some((start, draws)) => {
                let out = run_path(&mut rng, start, t, cfg, &edges, |p| polygon.point_in_domain(p));
                (out == PathOutcome::SurvivedInside, draws)
            }
            None => (false, MAX_REJECTIONS as u64),
        }
    });
    let acceptance = cfg.n_paths as f64 / draws as f64;
    Ok(binomial(hits, cfg, polygon.area(), Some(acceptance)))
}

/// Monte Carlo estimate of the sector heat content: start uniform in the
/// sector `{r < R, 0 < φ < α}`, killing on the face `φ = 0`, and survival
/// meaning the path ends inside the infinite wedge `0 < φ < α`.
pub fn estimate_sector_heat_content(spec: SectorSpec, t: f64, cfg: &MCConfig) -> Result<MCEstimate> {
    cfg.validate()?;
    check_time(t)?;
    let spec = SectorSpec::new(spec.radius, spec.alpha)?;
    let alpha = spec.alpha.get();
    // Paths started within R stay well inside R + 40√t.
    let face = (Point::new(0.0, 0.0), Point::new(spec.radius + 40.0 * t.sqrt(), 0.0));
    let in_wedge = |p: Point| {
        let phi = p.y.atan2(p.x).rem_euclid(TAU);
        phi > 0.0 && phi < alpha
    };
    let (hits, _) = count_paths(cfg, |i| {
        let mut rng = path_rng(cfg.seed, i);
        let r = spec.radius * rng.random::<f64>().sqrt();
        let phi = alpha * rng.random::<f64>();
        let start = Point::new(r * phi.cos(), r * phi.sin());
        let out = run_path(&mut rng, start, t, cfg, &[face], in_wedge);
        (out == PathOutcome::SurvivedInside, 0)
    });
    Ok(binomial(hits, cfg, spec.area(), None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::half_space_solution;
    use BoundaryCondition::{Dirichlet as D, Open as N};

    fn square(marks: [BoundaryCondition; 4]) -> Polygon {
        let v = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];
        Polygon::simple(v.iter().map(|&(x, y)| Point::new(x, y)).collect(), marks.to_vec()).unwrap()
    }

    #[test]
    fn path_is_deterministic() {
        let sq = square([D, D, N, N]);
        let cfg = MCConfig::new(1, 32, 7);
        let start = Point::new(0.1, 0.2);
        let outcomes: Vec<_> = (0..50).map(|i| simulate_path(&sq, start, 0.05, &cfg, i).unwrap()).collect();
        let again: Vec<_> = (0..50).map(|i| simulate_path(&sq, start, 0.05, &cfg, i).unwrap()).collect();
        assert_eq!(outcomes, again);
        assert!(outcomes.contains(&PathOutcome::Killed));
        assert!(outcomes.contains(&PathOutcome::SurvivedInside));
    }

    #[test]
    fn tiny_time_survives() {
        let sq = square([D; 4]);
        let cfg = MCConfig::new(1, 4, 1);
        let c = sq.centroid();
        for i in 0..200 {
            assert_eq!(simulate_path(&sq, c, 1e-9, &cfg, i).unwrap(), PathOutcome::SurvivedInside);
        }
    }

    #[test]
    fn open_polygon_never_kills() {
        let sq = square([N; 4]);
        let cfg = MCConfig::new(1, 8, 3);
        for i in 0..500 {
            assert_ne!(simulate_path(&sq, Point::new(0.02, 0.5), 0.1, &cfg, i).unwrap(), PathOutcome::Killed);
        }
    }

    #[test]
    fn rejects_bad_input() {
        let sq = square([D; 4]);
        let cfg = MCConfig::new(10, 8, 3);
        assert!(matches!(
            simulate_path(&sq, Point::new(2.0, 0.5), 0.1, &cfg, 0),
            Err(Error::OutsideDomain { .. })
        ));
        assert!(estimate_solution_at(&sq, Point::new(0.5, 0.5), 0.0, &cfg).is_err());
        assert!(estimate_heat_content(&sq, 0.1, &MCConfig::new(0, 8, 3)).is_err());
        assert!(estimate_heat_content(&sq, 0.1, &MCConfig::new(8, 0, 3)).is_err());
    }

    #[test]
    fn half_plane_survival_with_few_steps() {
        let v = [(-5.0, 0.0), (5.0, 0.0), (5.0, 5.0), (-5.0, 5.0)];
        let strip = Polygon::simple(v.iter().map(|&(x, y)| Point::new(x, y)).collect(), vec![D, N, N, N]).unwrap();
        let t = 0.01;
        let cfg = MCConfig::new(40_000, 16, 11);
        for x2 in [0.05, 0.1, 0.2] {
            let est = estimate_solution_at(&strip, Point::new(0.0, x2), t, &cfg).unwrap();
            let exact = half_space_solution(x2, t, D).unwrap();
            assert!((est.mean - exact).abs() <= 3.0 * est.std_error, "x2={x2}: {} vs {exact}", est.mean);
        }
    }
}
