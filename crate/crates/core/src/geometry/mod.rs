//! Polygon data model, validation and the geometric quantities entering the
//! heat-content expansion.
//!
//! A [`Polygon`] is a list of loops: the first is the outer boundary, the rest
//! are holes. Each edge carries a [`BoundaryCondition`]. After validation the
//! outer loop is counter-clockwise and every hole clockwise, so the domain is
//! always on the left of each directed edge.

mod predicates;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coefficients::{Angle, AngleClass};

pub use predicates::{orient, point_segment_distance, segments_intersect, Point};

/// Distance below which a point counts as lying on the boundary.
pub const BOUNDARY_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundaryCondition {
    #[serde(rename = "D")]
    Dirichlet,
    #[serde(rename = "N")]
    Open,
}

/// Location of an edge or vertex: loop index, then position within the loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LoopIndex {
    #[serde(rename = "loop")]
    pub loop_index: usize,
    pub position: usize,
}

impl std::fmt::Display for LoopIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "loop {} index {}", self.loop_index, self.position)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("polygon has no loops")]
    NoLoops,
    #[error("loop {loop_index} has {count} vertices, at least 3 are required")]
    TooFewVertices { loop_index: usize, count: usize },
    #[error("loop {loop_index} has {vertices} vertices but {edges} edge marks")]
    EdgeCountMismatch {
        loop_index: usize,
        vertices: usize,
        edges: usize,
    },
    #[error("non-finite coordinate at {0}")]
    NonFinite(LoopIndex),
    #[error("duplicate vertex: {first} and {second}")]
    DuplicateVertex { first: LoopIndex, second: LoopIndex },
    #[error("self-intersection between edge {first} and edge {second}")]
    SelfIntersection { first: LoopIndex, second: LoopIndex },
    #[error("loop {0} encloses zero area")]
    ZeroArea(usize),
    #[error("hole {0} is not inside the outer loop")]
    HoleOutside(usize),
    #[error("holes {0} and {1} overlap")]
    HolesOverlap(usize, usize),
    #[error("degenerate polygon: vertex separation radius is zero")]
    Degenerate,
}

/// One closed boundary curve. `edges[i]` marks the segment
/// `vertices[i] → vertices[(i + 1) % n]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Loop {
    pub vertices: Vec<Point>,
    pub edges: Vec<BoundaryCondition>,
}

impl Loop {
    pub fn new(vertices: Vec<Point>, edges: Vec<BoundaryCondition>) -> Self {
        Loop { vertices, edges }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    fn vertex(&self, i: usize) -> Point {
        self.vertices[i % self.vertices.len()]
    }

    fn signed_area(&self) -> f64 {
        let n = self.len();
        0.5 * (0..n).map(|i| self.vertex(i).cross(self.vertex(i + 1))).sum::<f64>()
    }

    fn reversed(&self) -> Loop {
        let n = self.len();
        let vertices: Vec<Point> = (0..n).map(|k| self.vertices[n - 1 - k]).collect();
        // New edge k runs v[n-1-k] → v[n-2-k], which is old edge (n-2-k) mod n.
        let edges = (0..n).map(|k| self.edges[(2 * n - 2 - k) % n]).collect();
        Loop { vertices, edges }
    }
}

/// A directed boundary edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub start: Point,
    pub end: Point,
    pub bc: BoundaryCondition,
    pub index: LoopIndex,
}

impl Edge {
    pub fn length(&self) -> f64 {
        self.start.dist(self.end)
    }
}

#[derive(Serialize, Deserialize)]
struct PolygonSpec {
    loops: Vec<Loop>,
}

/// A validated polygonal domain. Immutable once constructed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PolygonSpec", into = "PolygonSpec")]
pub struct Polygon {
    loops: Vec<Loop>,
}

impl TryFrom<PolygonSpec> for Polygon {
    type Error = GeometryError;
    fn try_from(spec: PolygonSpec) -> Result<Self, GeometryError> {
        validate(spec.loops)
    }
}

impl From<Polygon> for PolygonSpec {
    fn from(p: Polygon) -> Self {
        PolygonSpec { loops: p.loops }
    }
}

/// Interior angle and boundary-condition class at one vertex.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VertexAngle {
    pub vertex: LoopIndex,
    pub radians: Angle,
    pub class: AngleClass,
}

/// Radius of the vertex sectors, smallest interior angle, boundary-strip
/// width and the resulting exponential remainder rate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PartitionParams {
    pub radius: f64,
    pub epsilon: f64,
    pub delta: f64,
    /// `R² sin²(ε/2) / 16`, in units of 1/time.
    pub decay_rate: f64,
}

/// Check every structural hypothesis and normalize loop orientation.
pub fn validate(loops: Vec<Loop>) -> Result<Polygon, GeometryError> {
    if loops.is_empty() {
        return Err(GeometryError::NoLoops);
    }
    for (li, lp) in loops.iter().enumerate() {
        check_loop_shape(li, lp)?;
    }
    for (li, lp) in loops.iter().enumerate() {
        check_loop_edges(li, lp)?;
    }
    check_cross_loop_edges(&loops)?;
    if let Some(li) = loops.iter().position(|lp| lp.signed_area() == 0.0) {
        return Err(GeometryError::ZeroArea(li));
    }

    let loops: Vec<Loop> = loops
        .into_iter()
        .enumerate()
        .map(|(li, lp)| {
            let ccw = lp.signed_area() > 0.0;
            let want_ccw = li == 0;
            if ccw == want_ccw {
                lp
            } else {
                lp.reversed()
            }
        })
        .collect();

    let outer = &loops[0];
    for (hi, hole) in loops.iter().enumerate().skip(1) {
        if !inside_loop(outer, hole.vertices[0]) {
            return Err(GeometryError::HoleOutside(hi));
        }
        for (hj, other) in loops.iter().enumerate().skip(hi + 1) {
            if inside_loop(hole, other.vertices[0]) || inside_loop(other, hole.vertices[0]) {
                return Err(GeometryError::HolesOverlap(hi, hj));
            }
        }
    }
    Ok(Polygon { loops })
}

fn check_loop_shape(li: usize, lp: &Loop) -> Result<(), GeometryError> {
    let n = lp.len();
    if n < 3 {
        return Err(GeometryError::TooFewVertices { loop_index: li, count: n });
    }
    if lp.edges.len() != n {
        return Err(GeometryError::EdgeCountMismatch {
            loop_index: li,
            vertices: n,
            edges: lp.edges.len(),
        });
    }
    let at = |position| LoopIndex { loop_index: li, position };
    for (i, v) in lp.vertices.iter().enumerate() {
        if !v.x.is_finite() || !v.y.is_finite() {
            return Err(GeometryError::NonFinite(at(i)));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if lp.vertices[i] == lp.vertices[j] {
                return Err(GeometryError::DuplicateVertex {
                    first: at(i),
                    second: at(j),
                });
            }
        }
    }
    Ok(())
}

fn check_loop_edges(li: usize, lp: &Loop) -> Result<(), GeometryError> {
    let n = lp.len();
    let at = |position| LoopIndex { loop_index: li, position };
    for i in 0..n {
        let (a, b) = (lp.vertex(i), lp.vertex(i + 1));
        for j in i + 1..n {
            let (c, d) = (lp.vertex(j), lp.vertex(j + 1));
            let bad = if j == i + 1 {
                // Shared vertex b == c; reject a fold back onto the edge.
                folds_back(a, b, d)
            } else if i == 0 && j == n - 1 {
                folds_back(c, a, b)
            } else {
                segments_intersect(a, b, c, d)
            };
            if bad {
                return Err(GeometryError::SelfIntersection {
                    first: at(i),
                    second: at(j),
                });
            }
        }
    }
    Ok(())
}

/// Edges `prev → v` and `v → next` overlap along a segment.
fn folds_back(prev: Point, v: Point, next: Point) -> bool {
    orient(prev, v, next) == 0.0 && (prev - v).dot(next - v) > 0.0
}

fn check_cross_loop_edges(loops: &[Loop]) -> Result<(), GeometryError> {
    for (li, a) in loops.iter().enumerate() {
        for (lj, b) in loops.iter().enumerate().skip(li + 1) {
            for i in 0..a.len() {
                for j in 0..b.len() {
                    if segments_intersect(a.vertex(i), a.vertex(i + 1), b.vertex(j), b.vertex(j + 1)) {
                        return Err(GeometryError::SelfIntersection {
                            first: LoopIndex { loop_index: li, position: i },
                            second: LoopIndex { loop_index: lj, position: j },
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Even–odd crossing test against a single loop.
fn inside_loop(lp: &Loop, p: Point) -> bool {
    let n = lp.len();
    let mut inside = false;
    for i in 0..n {
        let (a, b) = (lp.vertex(i), lp.vertex(i + 1));
        if (a.y > p.y) != (b.y > p.y) {
            let x_cross = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if p.x < x_cross {
                inside = !inside;
            }
        }
    }
    inside
}

impl Polygon {
    /// Validate raw loops; see [`validate`].
    pub fn new(loops: Vec<Loop>) -> Result<Self, GeometryError> {
        validate(loops)
    }

    /// Single-loop polygon from vertices and per-edge marks.
    pub fn simple(vertices: Vec<Point>, edges: Vec<BoundaryCondition>) -> Result<Self, GeometryError> {
        validate(vec![Loop::new(vertices, edges)])
    }

    pub fn loops(&self) -> &[Loop] {
        &self.loops
    }

    pub fn vertex_count(&self) -> usize {
        self.loops.iter().map(Loop::len).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.loops.iter().enumerate().flat_map(|(li, lp)| {
            (0..lp.len()).map(move |i| Edge {
                start: lp.vertex(i),
                end: lp.vertex(i + 1),
                bc: lp.edges[i],
                index: LoopIndex { loop_index: li, position: i },
            })
        })
    }

    /// Shoelace area of the outer loop minus the holes.
    pub fn area(&self) -> f64 {
        // Holes are clockwise, so signed areas already subtract.
        self.loops.iter().map(Loop::signed_area).sum()
    }

    /// Total Dirichlet and open edge lengths `(L₋, L₊)`.
    pub fn lengths_by_type(&self) -> (f64, f64) {
        self.edges().fold((0.0, 0.0), |(dir, open), e| match e.bc {
            BoundaryCondition::Dirichlet => (dir + e.length(), open),
            BoundaryCondition::Open => (dir, open + e.length()),
        })
    }

    pub fn perimeter(&self) -> f64 {
        let (d, o) = self.lengths_by_type();
        d + o
    }

    /// Interior angle and class of every vertex, loop by loop.
    pub fn classify_vertices(&self) -> Vec<VertexAngle> {
        let mut out = Vec::with_capacity(self.vertex_count());
        for (li, lp) in self.loops.iter().enumerate() {
            let n = lp.len();
            for i in 0..n {
                let prev = lp.vertex(i + n - 1);
                let here = lp.vertex(i);
                let next = lp.vertex(i + 1);
                let e_in = here - prev;
                let e_out = next - here;
                let turn = e_in.cross(e_out).atan2(e_in.dot(e_out));
                let class = match (lp.edges[(i + n - 1) % n], lp.edges[i]) {
                    (BoundaryCondition::Dirichlet, BoundaryCondition::Dirichlet) => AngleClass::DirichletDirichlet,
                    (BoundaryCondition::Open, BoundaryCondition::Open) => AngleClass::OpenOpen,
                    _ => AngleClass::DirichletOpen,
                };
                out.push(VertexAngle {
                    vertex: LoopIndex { loop_index: li, position: i },
                    radians: Angle::radians(PI - turn),
                    class,
                });
            }
        }
        out
    }

    /// Sector radius `R`, minimal angle `ε`, strip width `δ` and the remainder
    /// rate `R² sin²(ε/2) / 16`.
    pub fn partition_params(&self) -> Result<PartitionParams, GeometryError> {
        let mut min_dist = f64::INFINITY;
        for (li, lp) in self.loops.iter().enumerate() {
            let n = lp.len();
            for i in 0..n {
                let v = lp.vertex(i);
                let incident = |e: &Edge| e.index.loop_index == li && (e.index.position == i || e.index.position == (i + n - 1) % n);
                for e in self.edges().filter(|e| !incident(e)) {
                    min_dist = min_dist.min(point_segment_distance(v, e.start, e.end));
                }
            }
        }
        let radius = 0.5 * min_dist;
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(GeometryError::Degenerate);
        }
        let epsilon = self
            .classify_vertices()
            .iter()
            .map(|v| v.radians.get())
            .fold(f64::INFINITY, f64::min);
        let s = (0.5 * epsilon).sin();
        Ok(PartitionParams {
            radius,
            epsilon,
            delta: 0.5 * radius * s,
            decay_rate: radius * radius * s * s / 16.0,
        })
    }

    /// Whether `p` lies in the open domain. Points within [`BOUNDARY_EPS`] of
    /// an edge are reported as outside.
    pub fn point_in_domain(&self, p: Point) -> bool {
        if self.edges().any(|e| point_segment_distance(p, e.start, e.end) <= BOUNDARY_EPS) {
            return false;
        }
        self.loops.iter().filter(|lp| inside_loop(lp, p)).count() % 2 == 1
    }

    /// Whether the closed segment `p → q` touches any Dirichlet edge.
    pub fn segment_hits_dirichlet(&self, p: Point, q: Point) -> bool {
        self.edges()
            .filter(|e| e.bc == BoundaryCondition::Dirichlet)
            .any(|e| segments_intersect(p, q, e.start, e.end))
    }

    /// Axis-aligned bounding box `(min, max)` of the outer loop.
    pub fn bounding_box(&self) -> (Point, Point) {
        let vs = &self.loops[0].vertices;
        let mut lo = vs[0];
        let mut hi = vs[0];
        for v in vs {
            lo = Point::new(lo.x.min(v.x), lo.y.min(v.y));
            hi = Point::new(hi.x.max(v.x), hi.y.max(v.y));
        }
        (lo, hi)
    }

    /// Largest distance between two vertices.
    pub fn diameter(&self) -> f64 {
        let vs = &self.loops[0].vertices;
        let mut d: f64 = 0.0;
        for (i, a) in vs.iter().enumerate() {
            for b in &vs[i + 1..] {
                d = d.max(a.dist(*b));
            }
        }
        d
    }

    /// Area centroid.
    pub fn centroid(&self) -> Point {
        let mut cx = 0.0;
        let mut cy = 0.0;
        for lp in &self.loops {
            for i in 0..lp.len() {
                let (a, b) = (lp.vertex(i), lp.vertex(i + 1));
                let w = a.cross(b);
                cx += (a.x + b.x) * w;
                cy += (a.y + b.y) * w;
            }
        }
        let a6 = 6.0 * self.area();
        Point::new(cx / a6, cy / a6)
    }

    /// Same shape with every edge set to `bc`.
    pub fn with_uniform_marks(&self, bc: BoundaryCondition) -> Polygon {
        let loops = self
            .loops
            .iter()
            .map(|lp| Loop::new(lp.vertices.clone(), vec![bc; lp.len()]))
            .collect();
        Polygon { loops }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, TAU};
    use BoundaryCondition::{Dirichlet as D, Open as N};

    fn pts(v: &[(f64, f64)]) -> Vec<Point> {
        v.iter().map(|&(x, y)| Point::new(x, y)).collect()
    }

    fn unit_square(marks: [BoundaryCondition; 4]) -> Polygon {
        Polygon::simple(pts(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]), marks.to_vec()).unwrap()
    }

    fn l_shape() -> Polygon {
        Polygon::simple(
            pts(&[(0.0, 0.0), (2.0, 0.0), (2.0, 1.0), (1.0, 1.0), (1.0, 2.0), (0.0, 2.0)]),
            vec![D; 6],
        )
        .unwrap()
    }

    fn square_with_hole() -> Polygon {
        Polygon::new(vec![
            Loop::new(pts(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]), vec![D; 4]),
            Loop::new(pts(&[(0.25, 0.25), (0.75, 0.25), (0.75, 0.75), (0.25, 0.75)]), vec![N; 4]),
        ])
        .unwrap()
    }

    #[test]
    fn validation_accepts_and_normalizes() {
        let sq = unit_square([D, D, N, N]);
        assert!(sq.loops()[0].signed_area() > 0.0);

        let cw = Polygon::simple(pts(&[(0.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, 0.0)]), vec![D, N, N, D]).unwrap();
        let lp = &cw.loops()[0];
        assert!(lp.signed_area() > 0.0);
        // Each physical edge keeps its mark after reversal.
        for e in cw.edges() {
            let mid = (e.start + e.end).scale(0.5);
            // Input order was (0,0)->(0,1) D, (0,1)->(1,1) N, (1,1)->(1,0) N, (1,0)->(0,0) D.
            let original = if mid.x == 0.0 || mid.y == 0.0 { D } else { N };
            assert_eq!(e.bc, original, "edge at {mid:?}");
        }

        let h = square_with_hole();
        assert!(h.loops()[1].signed_area() < 0.0);
    }

    #[test]
    fn validation_errors() {
        let bowtie = Polygon::simple(pts(&[(0.0, 0.0), (1.0, 1.0), (1.0, 0.0), (0.0, 1.0)]), vec![D; 4]);
        assert!(matches!(bowtie, Err(GeometryError::SelfIntersection { .. })));

        let dup = Polygon::simple(pts(&[(0.0, 0.0), (1.0, 0.0), (1.0, 0.0), (0.0, 1.0)]), vec![D; 4]);
        assert!(matches!(dup, Err(GeometryError::DuplicateVertex { .. })));

        let two = Polygon::simple(pts(&[(0.0, 0.0), (1.0, 0.0)]), vec![D; 2]);
        assert!(matches!(two, Err(GeometryError::TooFewVertices { count: 2, .. })));

        let mismatch = Polygon::simple(pts(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]), vec![D; 2]);
        assert!(matches!(mismatch, Err(GeometryError::EdgeCountMismatch { .. })));

        let outside = Polygon::new(vec![
            Loop::new(pts(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]), vec![D; 4]),
            Loop::new(pts(&[(2.0, 2.0), (3.0, 2.0), (3.0, 3.0)]), vec![D; 3]),
        ]);
        assert!(matches!(outside, Err(GeometryError::HoleOutside(1))));

        let nested = Polygon::new(vec![
            Loop::new(pts(&[(0.0, 0.0), (10.0, 0.0), (10.0, 10.0), (0.0, 10.0)]), vec![D; 4]),
            Loop::new(pts(&[(1.0, 1.0), (9.0, 1.0), (9.0, 9.0), (1.0, 9.0)]), vec![D; 4]),
            Loop::new(pts(&[(4.0, 4.0), (5.0, 4.0), (5.0, 5.0)]), vec![D; 3]),
        ]);
        assert!(matches!(nested, Err(GeometryError::HolesOverlap(1, 2))));

        let spike = Polygon::simple(pts(&[(0.0, 0.0), (2.0, 0.0), (1.0, 0.0), (1.0, 1.0)]), vec![D; 4]);
        assert!(matches!(spike, Err(GeometryError::SelfIntersection { .. })));
    }

    #[test]
    fn json_schema_round_trip() {
        let text = r#"{"loops":[{"vertices":[[0,0],[1,0],[1,1],[0,1]],"edges":["D","D","N","N"]}]}"#;
        let poly: Polygon = serde_json::from_str(text).unwrap();
        assert_eq!(poly, unit_square([D, D, N, N]));
        let back = serde_json::to_string(&poly).unwrap();
        let again: Polygon = serde_json::from_str(&back).unwrap();
        assert_eq!(again, poly);

        let bad = r#"{"loops":[{"vertices":[[0,0],[1,1],[1,0],[0,1]],"edges":["D","D","D","D"]}]}"#;
        let err = serde_json::from_str::<Polygon>(bad).unwrap_err().to_string();
        assert!(err.contains("self-intersection"), "{err}");
    }

    #[test]
    fn classify_square_and_l_shape() {
        let v = unit_square([D, D, N, N]).classify_vertices();
        let classes: Vec<AngleClass> = v.iter().map(|x| x.class).collect();
        // Vertex 0 joins edge 3 (N) and edge 0 (D).
        assert_eq!(
            classes,
            vec![
                AngleClass::DirichletOpen,
                AngleClass::DirichletDirichlet,
                AngleClass::DirichletOpen,
                AngleClass::OpenOpen
            ]
        );
        for x in &v {
            assert!((x.radians.get() - FRAC_PI_2).abs() < 1e-15);
        }

        let all_d = unit_square([D; 4]).classify_vertices();
        assert!(all_d.iter().all(|x| x.class == AngleClass::DirichletDirichlet));

        let l = l_shape().classify_vertices();
        let reflex = l.iter().filter(|x| (x.radians.get() - 3.0 * FRAC_PI_2).abs() < 1e-12).count();
        let right = l.iter().filter(|x| (x.radians.get() - FRAC_PI_2).abs() < 1e-12).count();
        assert_eq!((reflex, right), (1, 5));
    }

    #[test]
    fn turning_sums() {
        for poly in [l_shape(), square_with_hole(), unit_square([D, N, D, N])] {
            let angles = poly.classify_vertices();
            for (li, _) in poly.loops().iter().enumerate() {
                let s: f64 = angles
                    .iter()
                    .filter(|a| a.vertex.loop_index == li)
                    .map(|a| PI - a.radians.get())
                    .sum();
                let expect = if li == 0 { TAU } else { -TAU };
                assert!((s - expect).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn lengths_and_area() {
        assert_eq!(unit_square([D, D, N, N]).lengths_by_type(), (2.0, 2.0));
        assert_eq!(unit_square([D; 4]).lengths_by_type(), (4.0, 0.0));
        assert_eq!(unit_square([N; 4]).lengths_by_type(), (0.0, 4.0));
        assert!((unit_square([D; 4]).area() - 1.0).abs() < 1e-15);
        assert!((square_with_hole().area() - 0.75).abs() < 1e-15);
        let tri = Polygon::simple(pts(&[(0.0, 0.0), (4.0, 0.0), (0.0, 3.0)]), vec![D; 3]).unwrap();
        assert!((tri.area() - 6.0).abs() < 1e-15);
    }

    #[test]
    fn partition_parameters() {
        let p = unit_square([D; 4]).partition_params().unwrap();
        assert!((p.radius - 0.5).abs() < 1e-15);
        assert!((p.epsilon - FRAC_PI_2).abs() < 1e-15);
        assert!((p.delta - 2f64.sqrt() / 8.0).abs() < 1e-15);

        let h = 3f64.sqrt() / 2.0;
        let tri = Polygon::simple(pts(&[(0.0, 0.0), (1.0, 0.0), (0.5, h)]), vec![D; 3]).unwrap();
        let p = tri.partition_params().unwrap();
        assert!((p.epsilon - FRAC_PI_3).abs() < 1e-12);
        assert!((p.radius - 3f64.sqrt() / 4.0).abs() < 1e-12);

        let hex: Vec<Point> = (0..6)
            .map(|k| {
                let t = k as f64 * FRAC_PI_3;
                Point::new(t.cos(), t.sin())
            })
            .collect();
        let p = Polygon::simple(hex, vec![N; 6]).unwrap().partition_params().unwrap();
        assert!((p.epsilon - 2.0 * FRAC_PI_3).abs() < 1e-12);
    }

    #[test]
    fn partition_disks_disjoint() {
        for poly in [l_shape(), square_with_hole(), unit_square([D; 4])] {
            let r = poly.partition_params().unwrap().radius;
            let vs: Vec<Point> = poly.loops().iter().flat_map(|l| l.vertices.clone()).collect();
            for (i, a) in vs.iter().enumerate() {
                for b in &vs[i + 1..] {
                    assert!(a.dist(*b) >= 2.0 * r - 1e-12);
                }
            }
        }
    }

    #[test]
    fn point_location() {
        let sq = unit_square([D; 4]);
        assert!(sq.point_in_domain(Point::new(0.5, 0.5)));
        assert!(!sq.point_in_domain(Point::new(2.0, 2.0)));
        assert!(!sq.point_in_domain(Point::new(1.0, 0.5)));
        assert!(!sq.point_in_domain(Point::new(0.5, 1e-13)));
        let h = square_with_hole();
        assert!(!h.point_in_domain(Point::new(0.5, 0.5)));
        assert!(h.point_in_domain(Point::new(0.1, 0.5)));
    }

    #[test]
    fn dirichlet_hits() {
        let sq = unit_square([D, D, N, N]);
        // Edge 0 is y = 0 (Dirichlet), edge 2 is y = 1 (open).
        assert!(sq.segment_hits_dirichlet(Point::new(0.5, 0.1), Point::new(0.5, -0.1)));
        assert!(!sq.segment_hits_dirichlet(Point::new(0.5, 0.9), Point::new(0.5, 1.1)));
        assert!(!sq.segment_hits_dirichlet(Point::new(0.4, 0.4), Point::new(0.6, 0.6)));
        // Dirichlet edges include their endpoints.
        assert!(!sq.segment_hits_dirichlet(Point::new(-0.1, 1.1), Point::new(0.0, 1.0)));
        assert!(sq.segment_hits_dirichlet(Point::new(1.1, -0.1), Point::new(1.0, 0.0)));
    }

    #[test]
    fn dirichlet_mark_parity_per_loop() {
        let marks = [D, N, N, D, D, N];
        let hex: Vec<Point> = (0..6)
            .map(|k| {
                let t = k as f64 * FRAC_PI_3;
                Point::new(t.cos(), t.sin())
            })
            .collect();
        let poly = Polygon::simple(hex, marks.to_vec()).unwrap();
        let a = poly
            .classify_vertices()
            .iter()
            .filter(|v| v.class == AngleClass::DirichletOpen)
            .count();
        assert_eq!(a % 2, 0);
    }
}
