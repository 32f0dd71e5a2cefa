//! Space polygons as points of St₂(ℂⁿ).
//!
//! An entry pair `(x_ℓ, y_ℓ)` of a Hermitian frame is read as the quaternion
//! `q_ℓ = x_ℓ + y_ℓ·j`, and the ℓ-th edge is its image `q̄ i q` under the Hopf
//! map. Lifting an edge back picks a point on the Hopf fiber: a fixed section
//! times a per-edge unit complex number (the framing angle).

use std::f64::consts::TAU;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{GeometryError, Result};
use crate::linalg::{Frame, Vector};
use crate::planar::{compensated_real_sum, neumaier_step, CLOSURE_TOL, PERIMETER_TOL};
use crate::sampling::SeededRng;

pub type HermitianFrame = Frame<Complex64>;

/// A point or vector in ℝ³, identified with the pure quaternion `x·i + y·j + z·k`.
pub type Point3 = [f64; 3];

const SECTION_TOL: f64 = 1e-8;
const ROTATION_ATTEMPTS: usize = 32;

/// A quaternion `w + x·i + y·j + z·k`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    pub fn pure(v: Point3) -> Self {
        Self::new(0.0, v[0], v[1], v[2])
    }

    /// `a + b·j` for complex `a`, `b`.
    pub fn from_complex_pair(a: Complex64, b: Complex64) -> Self {
        Self::new(a.re, a.im, b.re, b.im)
    }

    /// Inverse of [`Quaternion::from_complex_pair`].
    pub fn to_complex_pair(self) -> (Complex64, Complex64) {
        (Complex64::new(self.w, self.x), Complex64::new(self.y, self.z))
    }

    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    pub fn vector(self) -> Point3 {
        [self.x, self.y, self.z]
    }

    /// Rotates `v` by this unit quaternion: `q v q̄`.
    pub fn rotate(self, v: Point3) -> Point3 {
        (self * Self::pure(v) * self.conj()).vector()
    }
}

impl Mul for Quaternion {
    type Output = Self;
    fn mul(self, r: Self) -> Self {
        let (a, b, c, d) = (self.w, self.x, self.y, self.z);
        let (e, f, g, h) = (r.w, r.x, r.y, r.z);
        Self {
            w: a * e - b * f - c * g - d * h,
            x: a * f + b * e + c * h - d * g,
            y: a * g - b * h + c * e + d * f,
            z: a * h + b * g - c * f + d * e,
        }
    }
}

impl Add for Quaternion {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        Self::new(self.w + r.w, self.x + r.x, self.y + r.y, self.z + r.z)
    }
}

impl Sub for Quaternion {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        Self::new(self.w - r.w, self.x - r.x, self.y - r.y, self.z - r.z)
    }
}

impl Neg for Quaternion {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

/// The Hopf map `q ↦ q̄ i q`.
pub fn hopf_map(q: Quaternion) -> Quaternion {
    q.conj() * Quaternion::I * q
}

/// A section of the Hopf map: `√‖e‖ · (i + u)/‖i + u‖` with `u = e/‖e‖`.
///
/// Singular when `u = −i`.
pub fn hopf_section(e: Point3) -> Result<Quaternion> {
    let len = norm3(e);
    if len == 0.0 || !len.is_finite() {
        return Err(GeometryError::SectionSingular(0));
    }
    let u = [e[0] / len, e[1] / len, e[2] / len];
    let h = [u[0] + 1.0, u[1], u[2]];
    let hn = norm3(h);
    if hn <= SECTION_TOL {
        return Err(GeometryError::SectionSingular(0));
    }
    let s = len.sqrt() / hn;
    Ok(Quaternion::new(0.0, h[0] * s, h[1] * s, h[2] * s))
}

pub(crate) fn norm3(v: Point3) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

/// A closed polygon in ℝ³ given by its edge vectors, normally of perimeter 2.
#[derive(Debug, Clone, PartialEq)]
pub struct SpacePolygon {
    edges: Vec<Point3>,
}

impl SpacePolygon {
    pub fn new(edges: Vec<Point3>) -> Result<Self> {
        let p = Self::new_unchecked(edges);
        p.validate()?;
        Ok(p)
    }

    /// Rescales to perimeter 2, then validates closure.
    pub fn normalized(edges: Vec<Point3>) -> Result<Self> {
        let perimeter = compensated_real_sum(edges.iter().map(|&e| norm3(e)));
        if !(perimeter > 0.0 && perimeter.is_finite()) {
            return Err(GeometryError::NotNormalized(perimeter));
        }
        let s = 2.0 / perimeter;
        Self::new(
            edges
                .into_iter()
                .map(|e| [e[0] * s, e[1] * s, e[2] * s])
                .collect(),
        )
    }

    pub fn new_unchecked(edges: Vec<Point3>) -> Self {
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

    pub fn edges(&self) -> &[Point3] {
        &self.edges
    }

    pub fn n(&self) -> usize {
        self.edges.len()
    }

    pub fn perimeter(&self) -> f64 {
        compensated_real_sum(self.edges.iter().map(|&e| norm3(e)))
    }

    /// `‖Σ e_ℓ‖`, summed with compensation.
    pub fn closure_defect(&self) -> f64 {
        norm3(self.edge_sum())
    }

    fn edge_sum(&self) -> Point3 {
        let mut sums = [0.0; 3];
        let mut comps = [0.0; 3];
        for e in &self.edges {
            for a in 0..3 {
                neumaier_step(&mut sums[a], &mut comps[a], e[a]);
            }
        }
        [sums[0] + comps[0], sums[1] + comps[1], sums[2] + comps[2]]
    }

    /// Cumulative sums from the origin: `v₀ = 0`, `v_ℓ = v_{ℓ−1} + e_ℓ`; n+1 points.
    pub fn vertices(&self) -> Vec<Point3> {
        let mut out = Vec::with_capacity(self.n() + 1);
        let mut v = [0.0; 3];
        out.push(v);
        for e in &self.edges {
            v = [v[0] + e[0], v[1] + e[1], v[2] + e[2]];
            out.push(v);
        }
        out
    }

    pub fn max_edge_diff(&self, other: &Self) -> f64 {
        if self.n() != other.n() {
            return f64::INFINITY;
        }
        self.edges
            .iter()
            .zip(&other.edges)
            .map(|(a, b)| norm3([a[0] - b[0], a[1] - b[1], a[2] - b[2]]))
            .fold(0.0, f64::max)
    }

    /// Applies the rotation `v ↦ r v r̄` of a unit quaternion to every edge.
    pub fn rotated(&self, r: Quaternion) -> Self {
        Self::new_unchecked(self.edges.iter().map(|&e| r.rotate(e)).collect())
    }

    /// Index of the first edge on which the Hopf section is singular.
    pub fn singular_edge(&self) -> Option<usize> {
        self.edges.iter().position(|&e| hopf_section(e).is_err())
    }
}

/// Per-edge framing angles in radians, read modulo 2π.
#[derive(Debug, Clone, PartialEq)]
pub struct FramingAngles(Vec<f64>);

impl FramingAngles {
    pub fn new(theta: Vec<f64>) -> Result<Self> {
        if theta.iter().any(|t| !t.is_finite()) {
            return Err(GeometryError::InvalidArgument(
                "framing angles must be finite".into(),
            ));
        }
        Ok(Self(theta))
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0.0; n])
    }

    pub fn constant(n: usize, theta: f64) -> Self {
        Self(vec![theta; n])
    }

    /// `θ_ℓ = 2π·m·ℓ/n`, a frame with `m` full twists around the polygon.
    pub fn twisted(n: usize, m: i64) -> Self {
        Self(
            (0..n)
                .map(|l| TAU * (m as f64) * (l as f64) / n as f64)
                .collect(),
        )
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Edges `(x̄_ℓ − y_ℓ j) i (x_ℓ + y_ℓ j)`.
pub fn frame_to_space_polygon(f: &HermitianFrame) -> SpacePolygon {
    let edges = f
        .x()
        .iter()
        .zip(f.y().iter())
        .map(|(&x, &y)| hopf_map(Quaternion::from_complex_pair(x, y)).vector())
        .collect();
    SpacePolygon::new_unchecked(edges)
}

/// Lift with `q_ℓ = e^{iθ_ℓ} · hopf_section(e_ℓ)`.
pub fn space_polygon_to_frame(p: &SpacePolygon, angles: &FramingAngles) -> Result<HermitianFrame> {
    p.validate()?;
    if angles.len() != p.n() {
        return Err(GeometryError::LengthMismatch(p.n(), angles.len()));
    }
    let mut x = Vec::with_capacity(p.n());
    let mut y = Vec::with_capacity(p.n());
    for (l, (&e, &theta)) in p.edges().iter().zip(angles.as_slice()).enumerate() {
        let q = hopf_section(e).map_err(|_| GeometryError::SectionSingular(l))?;
        let (a, b) = q.to_complex_pair();
        let phase = Complex64::cis(theta);
        x.push(phase * a);
        y.push(phase * b);
    }
    Frame::new(Vector::new(x), Vector::new(y))
}

/// Moves every entry along its Hopf fiber: `(x_ℓ, y_ℓ) ↦ e^{iθ_ℓ}(x_ℓ, y_ℓ)`.
///
/// The result is re-validated; `FrameInvalid` reports orthonormality drift
/// beyond tolerance or a change in the projected polygon.
pub fn apply_framing(f: &HermitianFrame, angles: &FramingAngles) -> Result<HermitianFrame> {
    if angles.len() != f.n() {
        return Err(GeometryError::LengthMismatch(f.n(), angles.len()));
    }
    let rot = |v: &Vector<Complex64>| {
        Vector::new(
            v.iter()
                .zip(angles.as_slice())
                .map(|(&z, &t)| Complex64::cis(t) * z)
                .collect(),
        )
    };
    let g = Frame::new(rot(f.x()), rot(f.y()))?;
    let drift = frame_to_space_polygon(f).max_edge_diff(&frame_to_space_polygon(&g));
    if drift > 1e-12 {
        return Err(GeometryError::FrameInvalid(drift));
    }
    Ok(g)
}

/// Uniform random rotation (from a Gaussian 4-vector).
pub fn random_rotation(rng: &mut SeededRng) -> Quaternion {
    loop {
        let q = Quaternion::new(
            rng.standard_normal(),
            rng.standard_normal(),
            rng.standard_normal(),
            rng.standard_normal(),
        );
        let n = q.norm();
        if n > 1e-6 {
            return q.scale(1.0 / n);
        }
    }
}

/// Rotates the whole polygon by random rotations until no edge points along
/// the singular direction `−i` of the section. Returns the rotated polygon
/// and the rotation used.
pub fn rotate_off_singular(p: &SpacePolygon, rng: &mut SeededRng) -> Result<(SpacePolygon, Quaternion)> {
    if p.singular_edge().is_none() {
        return Ok((p.clone(), Quaternion::ONE));
    }
    for _ in 0..ROTATION_ATTEMPTS {
        let r = random_rotation(rng);
        let q = p.rotated(r);
        // keep a comfortable margin from the singular fiber
        let clear = q.edges().iter().all(|&e| {
            let len = norm3(e);
            len == 0.0 || norm3([e[0] / len + 1.0, e[1] / len, e[2] / len]) > 1e-6
        });
        if clear {
            return Ok((q, r));
        }
    }
    Err(GeometryError::SamplingFailure(ROTATION_ATTEMPTS))
}

/// Regular n-gon of perimeter 2 in the `j–k` plane, so no edge meets the
/// singular direction of the section.
pub fn regular_space_polygon(n: usize) -> Result<SpacePolygon> {
    let edges = (0..n)
        .map(|l| {
            let a = TAU * l as f64 / n as f64;
            [0.0, a.cos(), a.sin()]
        })
        .collect();
    SpacePolygon::normalized(edges)
}

/// Equilateral polygon with `n` vertices on the `(p, q)` torus knot lying on a
/// torus with radii 2 and 1, scaled to perimeter 2.
pub fn torus_knot(p: u32, q: u32, n: usize) -> Result<SpacePolygon> {
    let point = |k: usize| {
        let phi = TAU * k as f64 / n as f64;
        let r = 2.0 + (q as f64 * phi).cos();
        [
            r * (p as f64 * phi).cos(),
            r * (p as f64 * phi).sin(),
            (q as f64 * phi).sin(),
        ]
    };
    let edges = (0..n)
        .map(|k| {
            let a = point(k);
            let b = point((k + 1) % n);
            [b[0] - a[0], b[1] - a[1], b[2] - a[2]]
        })
        .collect();
    SpacePolygon::normalized(edges)
}
