use std::f64::consts::{PI, TAU};

use polyheat::geometry::{BoundaryCondition, GeometryError, Loop, Point, Polygon};
use proptest::prelude::*;

fn star(radii: &[f64], phase: f64, center: (f64, f64), scale: f64) -> Vec<Point> {
    let n = radii.len();
    radii
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let th = phase + TAU * i as f64 / n as f64;
            Point::new(center.0 + scale * r * th.cos(), center.1 + scale * r * th.sin())
        })
        .collect()
}

fn marks(bits: &[bool]) -> Vec<BoundaryCondition> {
    bits.iter()
        .map(|&b| if b { BoundaryCondition::Dirichlet } else { BoundaryCondition::Open })
        .collect()
}

fn star_case() -> impl Strategy<Value = (Vec<f64>, Vec<bool>, f64)> {
    (3usize..10).prop_flat_map(|n| {
        (
            prop::collection::vec(0.5f64..1.5, n),
            prop::collection::vec(any::<bool>(), n),
            0.0f64..TAU,
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn interior_angles_sum_to_polygon_total((radii, bits, phase) in star_case()) {
        let n = radii.len();
        let p = Polygon::simple(star(&radii, phase, (0.0, 0.0), 1.0), marks(&bits)).unwrap();
        let sum: f64 = p.classify_vertices().iter().map(|v| v.radians.get()).sum();
        prop_assert!((sum - (n as f64 - 2.0) * PI).abs() < 1e-9);
    }

    #[test]
    fn hole_angles_follow_reversed_turning((radii, bits, phase) in star_case()) {
        let n = radii.len();
        let outer = Loop::new(star(&[1.0; 4], PI / 4.0, (0.0, 0.0), 4.0), marks(&[true; 4]));
        let hole = Loop::new(star(&radii, phase, (0.0, 0.0), 1.0), marks(&bits));
        let p = Polygon::new(vec![outer, hole]).unwrap();
        let sum: f64 = p.classify_vertices().iter().map(|v| v.radians.get()).sum();
        prop_assert!((sum - 2.0 * PI - (n as f64 + 2.0) * PI).abs() < 1e-9);
        prop_assert!((p.area() - (32.0 - Polygon::simple(star(&radii, phase, (0.0, 0.0), 1.0), marks(&bits)).unwrap().area())).abs() < 1e-9);
    }

    #[test]
    fn partition_disks_are_disjoint((radii, bits, phase) in star_case()) {
        let p = Polygon::simple(star(&radii, phase, (0.0, 0.0), 1.0), marks(&bits)).unwrap();
        let pp = p.partition_params().unwrap();
        prop_assert!(pp.radius > 0.0);
        prop_assert!(pp.delta > 0.0 && pp.delta < pp.radius);
        prop_assert!(pp.decay_rate > 0.0);
        let vs = &p.loops()[0].vertices;
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                let d = ((vs[i].x - vs[j].x).powi(2) + (vs[i].y - vs[j].y).powi(2)).sqrt();
                prop_assert!(d >= 2.0 * pp.radius - 1e-12);
            }
        }
    }

    #[test]
    fn reversal_preserves_marks_and_angles((radii, bits, phase) in star_case()) {
        let n = radii.len();
        let vs = star(&radii, phase, (0.0, 0.0), 1.0);
        let ms = marks(&bits);
        let fwd = Polygon::simple(vs.clone(), ms.clone()).unwrap();
        let rev_vs: Vec<Point> = vs.iter().rev().copied().collect();
        let rev_ms: Vec<BoundaryCondition> = (0..n).map(|j| ms[(2 * n - 2 - j) % n]).collect();
        let rev = Polygon::simple(rev_vs, rev_ms).unwrap();
        let (d1, o1) = fwd.lengths_by_type();
        let (d2, o2) = rev.lengths_by_type();
        prop_assert!((d1 - d2).abs() < 1e-12 && (o1 - o2).abs() < 1e-12);
        prop_assert!((fwd.area() - rev.area()).abs() < 1e-12);
        let key = |p: &Polygon| {
            let mut v: Vec<(i64, char)> = p
                .classify_vertices()
                .iter()
                .map(|a| ((a.radians.get() * 1e9).round() as i64, a.class.letter()))
                .collect();
            v.sort();
            v
        };
        prop_assert_eq!(key(&fwd), key(&rev));
    }

    #[test]
    fn translation_and_scaling(radii in prop::collection::vec(0.5f64..1.5, 3..8), dx in -5.0f64..5.0, s in 0.2f64..5.0) {
        let n = radii.len();
        let ms = marks(&vec![true; n]);
        let a = Polygon::simple(star(&radii, 0.3, (0.0, 0.0), 1.0), ms.clone()).unwrap();
        let b = Polygon::simple(star(&radii, 0.3, (dx, -dx), s), ms).unwrap();
        prop_assert!((b.area() - s * s * a.area()).abs() < 1e-9 * b.area());
        prop_assert!((b.perimeter() - s * a.perimeter()).abs() < 1e-9 * b.perimeter());
        let (ra, rb) = (a.partition_params().unwrap().radius, b.partition_params().unwrap().radius);
        prop_assert!((rb - s * ra).abs() < 1e-9 * rb);
    }
}

#[test]
fn rejects_hole_outside_outer_loop() {
    let outer = Loop::new(star(&[1.0; 4], PI / 4.0, (0.0, 0.0), 1.0), marks(&[true; 4]));
    let hole = Loop::new(star(&[1.0; 4], PI / 4.0, (5.0, 0.0), 0.5), marks(&[true; 4]));
    assert_eq!(Polygon::new(vec![outer, hole]).unwrap_err(), GeometryError::HoleOutside(1));
}

#[test]
fn rejects_overlapping_holes() {
    let outer = Loop::new(star(&[1.0; 4], PI / 4.0, (0.0, 0.0), 10.0), marks(&[true; 4]));
    let h1 = Loop::new(star(&[1.0; 4], PI / 4.0, (0.0, 0.0), 1.0), marks(&[true; 4]));
    let h2 = Loop::new(star(&[1.0; 4], PI / 4.0, (0.0, 0.0), 0.5), marks(&[true; 4]));
    assert!(matches!(
        Polygon::new(vec![outer, h1, h2]).unwrap_err(),
        GeometryError::HolesOverlap(..) | GeometryError::HoleOutside(_)
    ));
}

#[test]
fn json_round_trip() {
    let p = Polygon::simple(star(&[1.0, 1.2, 0.8, 1.1, 0.9], 0.1, (0.0, 0.0), 1.0), marks(&[true, false, true, true, false])).unwrap();
    let text = serde_json::to_string(&p).unwrap();
    let q: Polygon = serde_json::from_str(&text).unwrap();
    assert_eq!(p, q);
}
