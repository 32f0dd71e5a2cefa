//! Planar polygons and their lifts to St₂(ℝⁿ).
//!
//! A frame `(x, y)` maps to the polygon with edges `e_k = (x_k + i·y_k)²`.
//! Orthonormality of the frame is exactly closure plus perimeter 2, so every
//! frame gives a valid polygon and every valid polygon has 2ⁿ lifts, one per
//! choice of square-root sign on each edge.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{GeometryError, Result};
use crate::linalg::{Frame, RealVector, Vector};

/// Closure tolerance, relative to the perimeter.
pub const CLOSURE_TOL: f64 = 1e-10;
/// Tolerance on `|perimeter − 2|`.
pub const PERIMETER_TOL: f64 = 1e-10;

const ZERO_EDGE: f64 = 1e-14;
const ANGLE_TOL: f64 = 1e-9;
const ORIENT_TOL: f64 = 1e-12;
const BOUNDARY_TOL: f64 = 1e-12;

/// A point in the plane, stored as a complex number.
pub type Point2 = Complex64;

pub type StiefelFrame = Frame<f64>;

/// Neumaier-compensated sum of complex numbers.
pub(crate) fn compensated_sum<I: IntoIterator<Item = Complex64>>(items: I) -> Complex64 {
    let (mut sr, mut cr, mut si, mut ci) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for z in items {
        neumaier_step(&mut sr, &mut cr, z.re);
        neumaier_step(&mut si, &mut ci, z.im);
    }
    Complex64::new(sr + cr, si + ci)
}

pub(crate) fn neumaier_step(sum: &mut f64, comp: &mut f64, x: f64) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *comp += (*sum - t) + x;
    } else {
        *comp += (x - t) + *sum;
    }
    *sum = t;
}

pub(crate) fn compensated_real_sum<I: IntoIterator<Item = f64>>(items: I) -> f64 {
    let (mut s, mut c) = (0.0, 0.0);
    for x in items {
        neumaier_step(&mut s, &mut c, x);
    }
    s + c
}

/// `a × b` for planar vectors.
pub fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

fn dot2(a: Complex64, b: Complex64) -> f64 {
    a.re * b.re + a.im * b.im
}

/// A closed polygon given by its edge vectors, normally scaled to perimeter 2.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanarPolygon {
    edges: Vec<Complex64>,
}

impl PlanarPolygon {
    /// Validates closure and perimeter 2.
    pub fn new(edges: Vec<Complex64>) -> Result<Self> {
        let p = Self::new_unchecked(edges);
        p.validate()?;
        Ok(p)
    }

    /// Rescales to perimeter 2, then validates closure.
    pub fn normalized(edges: Vec<Complex64>) -> Result<Self> {
        let perimeter = compensated_real_sum(edges.iter().map(|e| e.norm()));
        if !(perimeter > 0.0 && perimeter.is_finite()) {
            return Err(GeometryError::NotNormalized(perimeter));
        }
        let s = 2.0 / perimeter;
        Self::new(edges.into_iter().map(|e| e * s).collect())
    }

    pub fn new_unchecked(edges: Vec<Complex64>) -> Self {
        Self { edges }
    }

    pub fn validate(&self) -> Result<()> {
        if self.edges.len() < 3 {
            return Err(GeometryError::TooFewEdges(self.edges.len()));
        }
        let perimeter = self.perimeter();
        if !perimeter.is_finite() || (perimeter - 2.0).abs() > PERIMETER_TOL {
            return Err(GeometryError::NotNormalized(perimeter));
        }
        let closure = self.closure_defect();
        if closure > CLOSURE_TOL * perimeter {
            return Err(GeometryError::NotClosed(closure));
        }
        Ok(())
    }

    pub fn edges(&self) -> &[Complex64] {
        &self.edges
    }

    pub fn n(&self) -> usize {
        self.edges.len()
    }

    /// `|Σ e_k|`, summed with compensation.
    pub fn closure_defect(&self) -> f64 {
        compensated_sum(self.edges.iter().copied()).norm()
    }

    pub fn perimeter(&self) -> f64 {
        compensated_real_sum(self.edges.iter().map(|e| e.norm()))
    }

    /// Whether some edge is too short to have a direction.
    pub fn has_zero_edge(&self) -> bool {
        self.edges.iter().any(|e| e.norm() <= ZERO_EDGE)
    }

    fn first_zero_edge(&self) -> Option<usize> {
        self.edges.iter().position(|e| e.norm() <= ZERO_EDGE)
    }

    /// Cumulative vertex positions starting at `base`.
    pub fn vertices(&self, base: Point2) -> Vec<Point2> {
        vertices(self, base)
    }

    /// Maximum distance between two vertices.
    pub fn diameter(&self) -> f64 {
        crate::hull::diameter(&self.vertices(Complex64::new(0.0, 0.0))[..self.n()])
    }

    /// Largest elementwise distance to another polygon's edges.
    pub fn max_edge_diff(&self, other: &Self) -> f64 {
        if self.n() != other.n() {
            return f64::INFINITY;
        }
        self.edges
            .iter()
            .zip(&other.edges)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Convex with a single turn: consecutive cross products nonnegative
    /// (nonpositive for clockwise) and total turning ±2π.
    pub fn is_convex(&self) -> bool {
        let n = self.n();
        let scale = self.perimeter() / n as f64;
        let tol = ORIENT_TOL * scale * scale;
        let crosses: Vec<f64> = (0..n)
            .map(|k| cross(self.edges[k], self.edges[(k + 1) % n]))
            .collect();
        let ccw = crosses.iter().all(|&c| c >= -tol);
        let cw = crosses.iter().all(|&c| c <= tol);
        if !(ccw || cw) {
            return false;
        }
        let turning: f64 = (0..n)
            .map(|k| {
                let a = self.edges[k];
                let b = self.edges[(k + 1) % n];
                cross(a, b).atan2(dot2(a, b))
            })
            .sum();
        (turning.abs() - TAU).abs() < 1e-6
    }
}

/// Regular n-gon with perimeter 2, counterclockwise, first edge along +x.
pub fn regular_polygon(n: usize) -> Result<PlanarPolygon> {
    star_polygon(n, 1)
}

/// Star polygon `{n/step}` with perimeter 2.
pub fn star_polygon(n: usize, step: usize) -> Result<PlanarPolygon> {
    let len = 2.0 / n as f64;
    let edges = (0..n)
        .map(|k| Complex64::from_polar(len, TAU * (step * k) as f64 / n as f64))
        .collect();
    PlanarPolygon::normalized(edges)
}

/// Cumulative sums `v₀ = base`, `v_k = v_{k−1} + e_k`; returns n+1 points.
pub fn vertices(p: &PlanarPolygon, base: Point2) -> Vec<Point2> {
    let mut out = Vec::with_capacity(p.n() + 1);
    let mut v = base;
    out.push(v);
    for &e in p.edges() {
        v += e;
        out.push(v);
    }
    out
}

/// Sign of a square root in a lift.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    /// `'0'`/`'+'` is plus, `'1'`/`'-'` is minus.
    pub fn from_char(c: char) -> Option<Self> {
        match c {
            '0' | '+' => Some(Sign::Plus),
            '1' | '-' => Some(Sign::Minus),
            _ => None,
        }
    }
}

/// Parses a bitstring such as `"01101"` into signs (`1` flips the root).
pub fn parse_signs(bits: &str) -> Result<Vec<Sign>> {
    bits.chars()
        .map(|c| {
            Sign::from_char(c)
                .ok_or_else(|| GeometryError::InvalidArgument(format!("bad sign character {c:?}")))
        })
        .collect()
}

/// Principal square root `|e|^{1/2} e^{i·arg(e)/2}` with `arg(e) ∈ (−π, π]`.
pub fn principal_sqrt(e: Complex64) -> Complex64 {
    let r = e.norm();
    if r == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    // half-angle formulas; exact on the negative real axis, where arg(e) = π
    let re = ((r + e.re) / 2.0).max(0.0).sqrt();
    let im = ((r - e.re) / 2.0).max(0.0).sqrt();
    if e.im < 0.0 {
        Complex64::new(re, -im)
    } else {
        Complex64::new(re, im)
    }
}

/// Edges `e_k = (x_k + i·y_k)²`.
pub fn frame_to_polygon(f: &StiefelFrame) -> PlanarPolygon {
    let edges = f
        .x()
        .iter()
        .zip(f.y().iter())
        .map(|(&x, &y)| {
            let z = Complex64::new(x, y);
            z * z
        })
        .collect();
    PlanarPolygon::new_unchecked(edges)
}

/// Lift with `z_k = signs_k · principal_sqrt(e_k)`.
pub fn polygon_to_frame(p: &PlanarPolygon, signs: &[Sign]) -> Result<StiefelFrame> {
    p.validate()?;
    if signs.len() != p.n() {
        return Err(GeometryError::LengthMismatch(p.n(), signs.len()));
    }
    let (x, y): (Vec<f64>, Vec<f64>) = p
        .edges()
        .iter()
        .zip(signs)
        .map(|(&e, s)| {
            let z = principal_sqrt(e) * s.value();
            (z.re, z.im)
        })
        .unzip();
    Frame::new(Vector::new(x), Vector::new(y))
}

/// The signs under which [`polygon_to_frame`] recovers `f` itself.
pub fn lift_signs(f: &StiefelFrame) -> Vec<Sign> {
    f.x()
        .iter()
        .zip(f.y().iter())
        .map(|(&x, &y)| {
            // the principal root has Re > 0, or Re = 0 and Im ≥ 0
            if x > 0.0 || (x == 0.0 && y >= 0.0) {
                Sign::Plus
            } else {
                Sign::Minus
            }
        })
        .collect()
}

/// Rotates both coordinate vectors left by `k`, relabeling edge `k` as the first.
pub fn cyclic_relabel(f: &StiefelFrame, k: usize) -> StiefelFrame {
    Frame::new_unchecked(f.x().rotated_left(k), f.y().rotated_left(k))
}

fn permute(v: &RealVector, perm: &[usize]) -> RealVector {
    Vector::new(perm.iter().map(|&i| v[i]).collect())
}

/// Edge angle mapped to `[0, 2π)`.
fn edge_angle(e: Complex64) -> f64 {
    let a = e.im.atan2(e.re);
    if a < 0.0 {
        (a + TAU) % TAU
    } else {
        a
    }
}

/// The permutation sorting edges by angle with the x-axis; ties keep index order.
pub fn convexifying_permutation(p: &PlanarPolygon) -> Result<Vec<usize>> {
    if let Some(k) = p.first_zero_edge() {
        return Err(GeometryError::ZeroEdge(k));
    }
    let angles: Vec<f64> = p.edges().iter().map(|&e| edge_angle(e)).collect();
    let mut perm: Vec<usize> = (0..p.n()).collect();
    perm.sort_by(|&a, &b| angles[a].total_cmp(&angles[b]));
    Ok(perm)
}

/// Permutes the frame coordinates so the edges appear in order of increasing angle.
pub fn convexify(f: &StiefelFrame) -> Result<StiefelFrame> {
    let perm = convexifying_permutation(&frame_to_polygon(f))?;
    Ok(Frame::new_unchecked(permute(f.x(), &perm), permute(f.y(), &perm)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TriangleClass {
    Acute,
    Right,
    Obtuse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuadClass {
    Convex,
    Reflex,
    Crossed,
}

impl QuadClass {
    pub fn name(self) -> &'static str {
        match self {
            QuadClass::Convex => "convex",
            QuadClass::Reflex => "reflex",
            QuadClass::Crossed => "crossed",
        }
    }
}

/// Interior angle between `−e_k` and `e_{k+1}` at each vertex.
fn interior_angles(p: &PlanarPolygon) -> Vec<f64> {
    let n = p.n();
    (0..n)
        .map(|k| {
            let a = -p.edges()[k];
            let b = p.edges()[(k + 1) % n];
            cross(a, b).abs().atan2(dot2(a, b))
        })
        .collect()
}

pub fn classify_triangle(p: &PlanarPolygon) -> Result<TriangleClass> {
    if p.n() != 3 {
        return Err(GeometryError::InvalidArgument(format!(
            "expected a triangle, got {} edges",
            p.n()
        )));
    }
    if let Some(k) = p.first_zero_edge() {
        return Err(GeometryError::ZeroEdge(k));
    }
    let angles = interior_angles(p);
    if angles
        .iter()
        .any(|&a| a < ANGLE_TOL || (PI - a) < ANGLE_TOL)
    {
        return Err(GeometryError::Degenerate("collinear triangle"));
    }
    let max = angles.iter().copied().fold(0.0, f64::max);
    Ok(if max > PI / 2.0 + ANGLE_TOL {
        TriangleClass::Obtuse
    } else if max >= PI / 2.0 - ANGLE_TOL {
        TriangleClass::Right
    } else {
        TriangleClass::Acute
    })
}

fn orient(a: Point2, b: Point2, c: Point2) -> f64 {
    cross(b - a, c - a)
}

/// Whether segments `p1p2` and `p3p4` cross at a single interior point.
/// Touching or collinear overlap is reported as `Degenerate`.
pub fn segments_cross(p1: Point2, p2: Point2, p3: Point2, p4: Point2, tol: f64) -> Result<bool> {
    let d1 = orient(p3, p4, p1);
    let d2 = orient(p3, p4, p2);
    let d3 = orient(p1, p2, p3);
    let d4 = orient(p1, p2, p4);
    if d1 * d2 < 0.0 && d3 * d4 < 0.0 {
        let small = [d1, d2, d3, d4].iter().any(|d| d.abs() <= tol);
        return if small {
            Err(GeometryError::Degenerate("segments touch"))
        } else {
            Ok(true)
        };
    }
    let on = |d: f64, a: Point2, b: Point2, q: Point2| {
        d.abs() <= tol
            && q.re >= a.re.min(b.re) - tol.sqrt()
            && q.re <= a.re.max(b.re) + tol.sqrt()
            && q.im >= a.im.min(b.im) - tol.sqrt()
            && q.im <= a.im.max(b.im) + tol.sqrt()
    };
    if on(d1, p3, p4, p1) || on(d2, p3, p4, p2) || on(d3, p1, p2, p3) || on(d4, p1, p2, p4) {
        return Err(GeometryError::Degenerate("segments touch"));
    }
    Ok(false)
}

/// Crossed if opposite edges intersect; otherwise convex if all turns agree, else reflex.
pub fn classify_quadrilateral(p: &PlanarPolygon) -> Result<QuadClass> {
    if p.n() != 4 {
        return Err(GeometryError::InvalidArgument(format!(
            "expected a quadrilateral, got {} edges",
            p.n()
        )));
    }
    if let Some(k) = p.first_zero_edge() {
        return Err(GeometryError::ZeroEdge(k));
    }
    let e = p.edges();
    let scale = p.perimeter() / 4.0;
    let tol = ORIENT_TOL * scale * scale;
    let turns: Vec<f64> = (0..4).map(|k| cross(e[k], e[(k + 1) % 4])).collect();
    if turns.iter().any(|t| t.abs() <= tol) {
        return Err(GeometryError::Degenerate("three collinear vertices"));
    }
    let v = vertices(p, Complex64::new(0.0, 0.0));
    if segments_cross(v[0], v[1], v[2], v[3], tol)? || segments_cross(v[1], v[2], v[3], v[0], tol)? {
        return Ok(QuadClass::Crossed);
    }
    let positive = turns.iter().filter(|&&t| t > 0.0).count();
    Ok(if positive == 4 || positive == 0 {
        QuadClass::Convex
    } else {
        QuadClass::Reflex
    })
}

fn point_segment_distance(q: Point2, a: Point2, b: Point2) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (q - a).norm();
    }
    let t = (dot2(q - a, ab) / len2).clamp(0.0, 1.0);
    (q - (a + ab * t)).norm()
}

/// Winding number of a closed vertex loop (last vertex joined back to the first).
pub fn winding_number_of_loop(loop_: &[Point2], query: Point2) -> Result<i32> {
    let n = loop_.len();
    let mut w = 0;
    for k in 0..n {
        let a = loop_[k];
        let b = loop_[(k + 1) % n];
        if point_segment_distance(query, a, b) <= BOUNDARY_TOL {
            return Err(GeometryError::OnBoundary);
        }
        if a.im <= query.im {
            if b.im > query.im && orient(a, b, query) > 0.0 {
                w += 1;
            }
        } else if b.im <= query.im && orient(a, b, query) < 0.0 {
            w -= 1;
        }
    }
    Ok(w)
}

/// Signed winding number of the polygon placed at `base` around `query`.
pub fn winding_number(p: &PlanarPolygon, base: Point2, query: Point2) -> Result<i32> {
    let v = vertices(p, base);
    winding_number_of_loop(&v[..p.n()], query)
}
