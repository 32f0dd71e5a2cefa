use std::f64::consts::PI;

use polyframe::planar::{
    classify_quadrilateral, classify_triangle, convexify, cyclic_relabel, frame_to_polygon, lift_signs,
    polygon_to_frame, winding_number,
};
use polyframe::sampling::{sample_polygon, sample_stiefel, SeededRng};
use polyframe::{Complex64, PlanarPolygon, QuadClass, TriangleClass};
use proptest::prelude::*;

fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

/// Convex in the oracle's sense: every consecutive cross product non-negative,
/// and the edge directions turn once around.
fn oracle_convex(edges: &[Complex64]) -> bool {
    let n = edges.len();
    let turns_left = (0..n).all(|k| cross(edges[k], edges[(k + 1) % n]) >= -1e-12);
    let total: f64 = (0..n)
        .map(|k| {
            let (a, b) = (edges[k], edges[(k + 1) % n]);
            cross(a, b).atan2(a.re * b.re + a.im * b.im)
        })
        .sum();
    turns_left && (total - 2.0 * PI).abs() < 1e-6
}

fn sorted_bits(edges: &[Complex64]) -> Vec<(u64, u64)> {
    let mut v: Vec<_> = edges.iter().map(|e| (e.re.to_bits(), e.im.to_bits())).collect();
    v.sort_unstable();
    v
}

/// Winding number by summing signed turning angles seen from `q`.
fn oracle_winding(verts: &[Complex64], q: Complex64) -> i32 {
    let n = verts.len();
    let total: f64 = (0..n)
        .map(|k| {
            let a = verts[k] - q;
            let b = verts[(k + 1) % n] - q;
            cross(a, b).atan2(a.re * b.re + a.im * b.im)
        })
        .sum();
    (total / (2.0 * PI)).round() as i32
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn projections_close_with_perimeter_two(seed in any::<u64>(), n in 3usize..400) {
        let f = sample_stiefel(n, &mut SeededRng::new(seed)).unwrap();
        let p = frame_to_polygon(&f);
        let sum: Complex64 = p.edges().iter().sum();
        prop_assert!(sum.norm() <= 1e-12);
        let perimeter: f64 = p.edges().iter().map(|e| e.norm()).sum();
        prop_assert!((perimeter - 2.0).abs() <= 1e-12);
    }

    #[test]
    fn lift_with_recovered_signs_round_trips(seed in any::<u64>(), n in 3usize..300) {
        let f = sample_stiefel(n, &mut SeededRng::new(seed)).unwrap();
        let p = frame_to_polygon(&f);
        let g = polygon_to_frame(&p, &lift_signs(&f)).unwrap();
        prop_assert!(g.orthonormality_defect() <= 1e-10);
        prop_assert!(frame_to_polygon(&g).max_edge_diff(&p) <= 1e-10);
        // the recovered signs reproduce the frame itself
        prop_assert!(g.max_abs_diff(&f) <= 1e-10);
    }

    #[test]
    fn cyclic_relabels_compose(seed in any::<u64>(), n in 3usize..60, a in 0usize..200, b in 0usize..200) {
        let f = sample_stiefel(n, &mut SeededRng::new(seed)).unwrap();
        let twice = cyclic_relabel(&cyclic_relabel(&f, a), b);
        prop_assert_eq!(twice, cyclic_relabel(&f, (a + b) % n));
    }

    #[test]
    fn relabeled_frame_projects_to_rotated_edge_list(seed in any::<u64>(), n in 3usize..60, k in 0usize..60) {
        let f = sample_stiefel(n, &mut SeededRng::new(seed)).unwrap();
        let p = frame_to_polygon(&f);
        let q = frame_to_polygon(&cyclic_relabel(&f, k));
        for l in 0..n {
            prop_assert_eq!(q.edges()[l], p.edges()[(l + k) % n]);
        }
    }

    #[test]
    fn convexify_sorts_into_a_convex_polygon(seed in any::<u64>(), n in 4usize..=50) {
        let f = sample_stiefel(n, &mut SeededRng::new(seed)).unwrap();
        let c = convexify(&f).unwrap();
        let p = frame_to_polygon(&f);
        let q = frame_to_polygon(&c);
        prop_assert!(oracle_convex(q.edges()));
        prop_assert!(q.is_convex());
        prop_assert_eq!(sorted_bits(p.edges()), sorted_bits(q.edges()));
        let again = frame_to_polygon(&convexify(&c).unwrap());
        prop_assert_eq!(again.edges(), q.edges());
    }

    #[test]
    fn winding_matches_angle_summation(seed in any::<u64>(), n in 3usize..40, qx in -1.0f64..1.0, qy in -1.0f64..1.0) {
        let p = sample_polygon(n, &mut SeededRng::new(seed)).unwrap();
        let base = Complex64::new(0.0, 0.0);
        let verts = p.vertices(base);
        let q = Complex64::new(qx, qy) * 0.5;
        let w = winding_number(&p, base, q);
        // skip probes that land on an edge
        if let Ok(w) = w {
            prop_assert_eq!(w, oracle_winding(&verts[..n], q));
        }
    }
}

fn oracle_triangle(p: &PlanarPolygon) -> TriangleClass {
    let mut sq: Vec<f64> = p.edges().iter().map(|e| e.norm_sqr()).collect();
    sq.sort_by(f64::total_cmp);
    let d = sq[2] - sq[0] - sq[1];
    if d.abs() <= 1e-12 {
        TriangleClass::Right
    } else if d > 0.0 {
        TriangleClass::Obtuse
    } else {
        TriangleClass::Acute
    }
}

/// Proper intersection of two closed segments by parametric solve.
fn segments_intersect(p: Complex64, p2: Complex64, q: Complex64, q2: Complex64) -> bool {
    let r = p2 - p;
    let s = q2 - q;
    let denom = cross(r, s);
    if denom == 0.0 {
        return false;
    }
    let t = cross(q - p, s) / denom;
    let u = cross(q - p, r) / denom;
    (0.0..=1.0).contains(&t) && (0.0..=1.0).contains(&u)
}

fn oracle_quad(p: &PlanarPolygon) -> QuadClass {
    let v = p.vertices(Complex64::new(0.0, 0.0));
    if segments_intersect(v[0], v[1], v[2], v[3]) || segments_intersect(v[1], v[2], v[3], v[0]) {
        return QuadClass::Crossed;
    }
    let e = p.edges();
    let positive = (0..4).filter(|&k| cross(e[k], e[(k + 1) % 4]) > 0.0).count();
    if positive == 0 || positive == 4 {
        QuadClass::Convex
    } else {
        QuadClass::Reflex
    }
}

#[test]
fn triangle_classes_agree_with_law_of_cosines() {
    let mut rng = SeededRng::new(21);
    for _ in 0..20_000 {
        let p = sample_polygon(3, &mut rng).unwrap();
        assert_eq!(classify_triangle(&p).unwrap(), oracle_triangle(&p));
    }
}

#[test]
fn every_sampled_quadrilateral_gets_one_class() {
    let mut rng = SeededRng::new(22);
    let mut counts = [0usize; 3];
    for k in 0..100_000 {
        let p = sample_polygon(4, &mut rng).unwrap();
        let class = classify_quadrilateral(&p).expect("no degenerate quadrilaterals");
        if k % 10 == 0 {
            assert_eq!(class, oracle_quad(&p));
        }
        counts[class as usize] += 1;
    }
    assert_eq!(counts.iter().sum::<usize>(), 100_000);
    assert!(counts.iter().all(|&c| c > 30_000), "{counts:?}");
}

#[test]
fn large_polygons_close() {
    let p = sample_polygon(100_000, &mut SeededRng::new(23)).unwrap();
    assert!(p.closure_defect() <= 1e-9);
    assert!((p.perimeter() - 2.0).abs() <= 1e-9);
}
