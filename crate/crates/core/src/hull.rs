//! Point-set diameter: brute force for small sets, convex hull plus rotating
//! calipers for large ones.

use num_complex::Complex64;

use crate::planar::cross;

/// Point sets up to this size use the O(n²) pairwise scan.
pub const BRUTE_FORCE_LIMIT: usize = 1000;

pub fn diameter(points: &[Complex64]) -> f64 {
    if points.len() <= BRUTE_FORCE_LIMIT {
        diameter_brute_force(points)
    } else {
        diameter_calipers(&convex_hull(points))
    }
}

pub fn diameter_brute_force(points: &[Complex64]) -> f64 {
    let mut best = 0.0f64;
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            best = best.max((a - b).norm_sqr());
        }
    }
    best.sqrt()
}

/// Andrew's monotone chain; counterclockwise, collinear points dropped.
pub fn convex_hull(points: &[Complex64]) -> Vec<Complex64> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<Complex64> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Complex64>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2 {
                let a = hull[hull.len() - 2];
                let b = hull[hull.len() - 1];
                if cross(b - a, p - a) <= 0.0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// Diameter of a convex polygon given counterclockwise.
pub fn diameter_calipers(hull: &[Complex64]) -> f64 {
    let m = hull.len();
    if m < 3 {
        return diameter_brute_force(hull);
    }
    let mut best = 0.0f64;
    let mut j = 1;
    for i in 0..m {
        let a = hull[i];
        let b = hull[(i + 1) % m];
        let edge = b - a;
        // advance the antipodal pointer while it moves away from edge (a, b)
        while cross(edge, hull[(j + 1) % m] - a) > cross(edge, hull[j] - a) {
            j = (j + 1) % m;
        }
        best = best
            .max((a - hull[j]).norm_sqr())
            .max((b - hull[j]).norm_sqr());
    }
    best.sqrt()
}
