//! Small dense linear algebra over real and complex scalars.
//!
//! Everything here works with 2-frames: pairs of vectors in 𝔽ⁿ, the 2×2
//! overlap matrices between them, and rotations inside the planes they span.
//! The [`Scalar`] trait lets the same code serve the planar (real) and the
//! spatial (complex) polygon models.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{GeometryError, Result};

/// Tolerance for the "unit vector" predicate.
pub const UNIT_TOL: f64 = 1e-12;
/// Tolerance used when validating frames.
pub const FRAME_TOL: f64 = 1e-10;

const PARALLEL_SINE_TOL: f64 = 1e-10;
const ANTIPODAL_TOL: f64 = 1e-10;
const SMALL_ANGLE: f64 = 1e-12;

/// A real or complex field element.
pub trait Scalar:
    Copy
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    const IS_COMPLEX: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_real(r: f64) -> Self;
    fn conj(self) -> Self;
    fn re(self) -> f64;
    fn im(self) -> f64;
    fn abs_sqr(self) -> f64;
    fn abs(self) -> f64;
    fn scale(self, s: f64) -> Self;
    /// `e^{iθ}`; `None` for real scalars.
    fn cis(theta: f64) -> Option<Self>;

    /// `self / |self|`, or one when `self` is zero.
    fn unit_phase(self) -> Self {
        let r = self.abs();
        if r == 0.0 {
            Self::one()
        } else {
            self.scale(1.0 / r)
        }
    }
}

impl Scalar for f64 {
    const IS_COMPLEX: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_real(r: f64) -> Self {
        r
    }
    fn conj(self) -> Self {
        self
    }
    fn re(self) -> f64 {
        self
    }
    fn im(self) -> f64 {
        0.0
    }
    fn abs_sqr(self) -> f64 {
        self * self
    }
    fn abs(self) -> f64 {
        f64::abs(self)
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn cis(_theta: f64) -> Option<Self> {
        None
    }
}

impl Scalar for Complex64 {
    const IS_COMPLEX: bool = true;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_real(r: f64) -> Self {
        Complex64::new(r, 0.0)
    }
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    fn re(self) -> f64 {
        self.re
    }
    fn im(self) -> f64 {
        self.im
    }
    fn abs_sqr(self) -> f64 {
        self.norm_sqr()
    }
    fn abs(self) -> f64 {
        self.norm()
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn cis(theta: f64) -> Option<Self> {
        Some(Complex64::cis(theta))
    }
}

/// An n-vector over a [`Scalar`] field.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector<S>(Vec<S>);

pub type RealVector = Vector<f64>;
pub type ComplexVector = Vector<Complex64>;

impl<S: Scalar> Vector<S> {
    pub fn new(entries: Vec<S>) -> Self {
        Self(entries)
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![S::zero(); n])
    }

    /// The k-th standard basis vector.
    pub fn basis(n: usize, k: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[k] = S::one();
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[S] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<S> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, S> {
        self.0.iter()
    }

    /// Hermitian inner product `Σ conj(self_k) · other_k` (the dot product for reals).
    pub fn dot(&self, other: &Self) -> S {
        debug_assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(&other.0)
            .fold(S::zero(), |acc, (&a, &b)| acc + a.conj() * b)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|a| a.abs_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_unit(&self) -> bool {
        (self.norm() - 1.0).abs() <= UNIT_TOL
    }

    pub fn scaled(&self, s: S) -> Self {
        Self(self.0.iter().map(|&a| s * a).collect())
    }

    pub fn scaled_real(&self, s: f64) -> Self {
        Self(self.0.iter().map(|&a| a.scale(s)).collect())
    }

    /// `self + s · other`.
    pub fn add_scaled(&self, s: S, other: &Self) -> Self {
        Self(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a + s * b)
                .collect(),
        )
    }

    /// `a · self + b · other` with real coefficients.
    pub fn combine(&self, a: f64, other: &Self, b: f64) -> Self {
        Self(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&p, &q)| p.scale(a) + q.scale(b))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(&a, &b)| a - b).collect())
    }

    /// Unit vector in the direction of `self`, or `None` for the zero vector.
    pub fn normalized(&self) -> Option<Self> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| self.scaled_real(1.0 / n))
    }

    /// Removes the component along the unit vector `unit`.
    pub fn reject(&self, unit: &Self) -> Self {
        let c = unit.dot(self);
        self.add_scaled(-c, unit)
    }

    /// Left rotation of the entries by `k` positions.
    pub fn rotated_left(&self, k: usize) -> Self {
        let mut v = self.0.clone();
        if !v.is_empty() {
            let n = v.len();
            v.rotate_left(k % n);
        }
        Self(v)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl<S> std::ops::Index<usize> for Vector<S> {
    type Output = S;
    fn index(&self, i: usize) -> &S {
        &self.0[i]
    }
}

impl<S> From<Vec<S>> for Vector<S> {
    fn from(v: Vec<S>) -> Self {
        Self(v)
    }
}

/// An orthonormal 2-frame `(x, y)` in 𝔽ⁿ.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame<S> {
    x: Vector<S>,
    y: Vector<S>,
}

impl<S: Scalar> Frame<S> {
    /// Builds a frame, checking orthonormality to [`FRAME_TOL`].
    pub fn new(x: Vector<S>, y: Vector<S>) -> Result<Self> {
        if x.len() != y.len() {
            return Err(GeometryError::LengthMismatch(x.len(), y.len()));
        }
        let f = Self { x, y };
        let defect = f.orthonormality_defect();
        if defect > FRAME_TOL || defect.is_nan() {
            return Err(GeometryError::FrameInvalid(defect));
        }
        Ok(f)
    }

    /// Builds a frame without validation. Callers are responsible for the invariants.
    pub fn new_unchecked(x: Vector<S>, y: Vector<S>) -> Self {
        debug_assert_eq!(x.len(), y.len());
        Self { x, y }
    }

    pub fn x(&self) -> &Vector<S> {
        &self.x
    }

    pub fn y(&self) -> &Vector<S> {
        &self.y
    }

    pub fn into_parts(self) -> (Vector<S>, Vector<S>) {
        (self.x, self.y)
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// Largest of `|‖x‖−1|`, `|‖y‖−1|` and `|⟨x,y⟩|`.
    pub fn orthonormality_defect(&self) -> f64 {
        let nx = (self.x.norm() - 1.0).abs();
        let ny = (self.y.norm() - 1.0).abs();
        let xy = self.x.dot(&self.y).abs();
        nx.max(ny).max(xy)
    }

    /// The n×2 matrix product `self* · other` as a 2×2 overlap matrix.
    pub fn overlap(&self, other: &Self) -> Matrix2<S> {
        Matrix2::new(
            self.x.dot(&other.x),
            self.x.dot(&other.y),
            self.y.dot(&other.x),
            self.y.dot(&other.y),
        )
    }

    /// Right multiplication of the n×2 matrix `[x y]` by a 2×2 matrix.
    pub fn mul_right(&self, m: &Matrix2<S>) -> Self {
        let x = self.x.scaled(m.m11).add_scaled(m.m21, &self.y);
        let y = self.x.scaled(m.m12).add_scaled(m.m22, &self.y);
        Self { x, y }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.x
            .max_abs_diff(&other.x)
            .max(self.y.max_abs_diff(&other.y))
    }
}

/// A 2×2 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2<S> {
    pub m11: S,
    pub m12: S,
    pub m21: S,
    pub m22: S,
}

impl<S: Scalar> Matrix2<S> {
    pub fn new(m11: S, m12: S, m21: S, m22: S) -> Self {
        Self { m11, m12, m21, m22 }
    }

    pub fn identity() -> Self {
        Self::new(S::one(), S::zero(), S::zero(), S::one())
    }

    pub fn from_columns(c1: [S; 2], c2: [S; 2]) -> Self {
        Self::new(c1[0], c2[0], c1[1], c2[1])
    }

    pub fn column(&self, j: usize) -> [S; 2] {
        match j {
            0 => [self.m11, self.m21],
            _ => [self.m12, self.m22],
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(
            self.m11 * o.m11 + self.m12 * o.m21,
            self.m11 * o.m12 + self.m12 * o.m22,
            self.m21 * o.m11 + self.m22 * o.m21,
            self.m21 * o.m12 + self.m22 * o.m22,
        )
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::new(
            self.m11.conj(),
            self.m21.conj(),
            self.m12.conj(),
            self.m22.conj(),
        )
    }

    pub fn frobenius_distance(&self, o: &Self) -> f64 {
        ((self.m11 - o.m11).abs_sqr()
            + (self.m12 - o.m12).abs_sqr()
            + (self.m21 - o.m21).abs_sqr()
            + (self.m22 - o.m22).abs_sqr())
        .sqrt()
    }

    fn scale_column(&mut self, j: usize, s: S) {
        if j == 0 {
            self.m11 = self.m11 * s;
            self.m21 = self.m21 * s;
        } else {
            self.m12 = self.m12 * s;
            self.m22 = self.m22 * s;
        }
    }

    fn swap_columns(&mut self) {
        std::mem::swap(&mut self.m11, &mut self.m12);
        std::mem::swap(&mut self.m21, &mut self.m22);
    }
}

/// Singular value decomposition `M = U · diag(σ) · V*` of a 2×2 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Svd2<S> {
    pub u: Matrix2<S>,
    pub sigma: [f64; 2],
    pub v: Matrix2<S>,
}

impl<S: Scalar> Svd2<S> {
    pub fn reconstruct(&self) -> Matrix2<S> {
        let d = Matrix2::new(
            S::from_real(self.sigma[0]),
            S::zero(),
            S::zero(),
            S::from_real(self.sigma[1]),
        );
        self.u.mul(&d).mul(&self.v.adjoint())
    }
}

fn col_dot<S: Scalar>(a: [S; 2], b: [S; 2]) -> S {
    a[0].conj() * b[0] + a[1].conj() * b[1]
}

fn col_norm<S: Scalar>(a: [S; 2]) -> f64 {
    a[0].abs().hypot(a[1].abs())
}

/// Closed-form SVD of a 2×2 matrix.
///
/// A single (complex) Jacobi rotation `V` orthogonalizes the columns of `M`;
/// `U` is then read off `M·V`, its second column completed as the orthogonal
/// complement of the first so that `U` stays unitary when `σ₂` vanishes.
/// Conventions: `σ₁ ≥ σ₂ ≥ 0`; for real input `det U = +1` and `U₁₁ ≥ 0`;
/// for complex input the first row of `U` is real and nonnegative.
pub fn svd_2x2<S: Scalar>(m: &Matrix2<S>) -> Svd2<S> {
    let c1 = m.column(0);
    let c2 = m.column(1);
    let alpha = c1[0].abs_sqr() + c1[1].abs_sqr();
    let beta = c2[0].abs_sqr() + c2[1].abs_sqr();
    let gamma = col_dot(c1, c2);
    let g = gamma.abs();

    let mut v = if g == 0.0 {
        Matrix2::identity()
    } else {
        let zeta = (beta - alpha) / (2.0 * g);
        let t = if zeta >= 0.0 {
            1.0 / (zeta + 1f64.hypot(zeta))
        } else {
            -1.0 / (-zeta + 1f64.hypot(zeta))
        };
        let c = 1.0 / 1f64.hypot(t);
        let s = c * t;
        // V = diag(1, conj(phase)) · [[c, s], [-s, c]] diagonalizes M*M.
        let ph = gamma.unit_phase().conj();
        Matrix2::new(
            S::from_real(c),
            S::from_real(s),
            ph.scale(-s),
            ph.scale(c),
        )
    };

    let apply = |v: &Matrix2<S>, j: usize| -> [S; 2] {
        let vj = v.column(j);
        [
            m.m11 * vj[0] + m.m12 * vj[1],
            m.m21 * vj[0] + m.m22 * vj[1],
        ]
    };

    let mut w1 = apply(&v, 0);
    let mut w2 = apply(&v, 1);
    if col_norm(w1) < col_norm(w2) {
        v.swap_columns();
        std::mem::swap(&mut w1, &mut w2);
    }
    let s1 = col_norm(w1);
    if s1 == 0.0 {
        return Svd2 {
            u: Matrix2::identity(),
            sigma: [0.0, 0.0],
            v: Matrix2::identity(),
        };
    }
    let u1 = [w1[0].scale(1.0 / s1), w1[1].scale(1.0 / s1)];
    let mut u2 = [-u1[1].conj(), u1[0].conj()];
    let tau = col_dot(u2, w2);
    let s2 = tau.abs();
    if s2 > 0.0 {
        let ph = tau.unit_phase();
        u2 = [u2[0] * ph, u2[1] * ph];
    }
    let mut u = Matrix2::from_columns(u1, u2);

    if S::IS_COMPLEX {
        for j in 0..2 {
            let lead = u.column(j)[0];
            if lead.abs() > 0.0 {
                let ph = lead.unit_phase().conj();
                u.scale_column(j, ph);
                v.scale_column(j, ph);
            }
        }
    } else {
        // u2 = (-u1[1], u1[0]) up to the sign fixed by tau: force det U = +1.
        let det = (u.m11 * u.m22 - u.m12 * u.m21).re();
        if det < 0.0 {
            u.scale_column(1, -S::one());
            v.scale_column(1, -S::one());
        }
        if u.m11.re() < 0.0 {
            u.scale_column(0, -S::one());
            u.scale_column(1, -S::one());
            v.scale_column(0, -S::one());
            v.scale_column(1, -S::one());
        }
    }

    Svd2 {
        u,
        sigma: [s1, s2],
        v,
    }
}

/// Gram–Schmidt on a pair: `a = u/‖u‖`, `b` the normalized rejection of `v` from `a`.
///
/// The rejection is applied twice, which keeps `|⟨a,b⟩|` at rounding level even
/// for long vectors.
pub fn gram_schmidt_pair<S: Scalar>(u: &Vector<S>, v: &Vector<S>) -> Result<(Vector<S>, Vector<S>)> {
    if u.len() != v.len() {
        return Err(GeometryError::LengthMismatch(u.len(), v.len()));
    }
    let a = u
        .normalized()
        .ok_or(GeometryError::DegeneratePair("first vector is zero"))?;
    let vn = v.norm();
    if vn == 0.0 || !vn.is_finite() {
        return Err(GeometryError::DegeneratePair("second vector is zero"));
    }
    let r = v.reject(&a);
    if r.norm() <= PARALLEL_SINE_TOL * vn {
        return Err(GeometryError::DegeneratePair("vectors are parallel"));
    }
    let r = r.reject(&a);
    let b = r
        .normalized()
        .ok_or(GeometryError::DegeneratePair("vectors are parallel"))?;
    Ok((a, b))
}

/// QR factors of an n×2 real matrix given by its columns.
#[derive(Debug, Clone, PartialEq)]
pub struct ThinQr {
    pub q: (RealVector, RealVector),
    /// Upper triangle `[r11, r12, r22]`.
    pub r: [f64; 3],
}

/// Householder QR with the LAPACK `geqrf` sign convention: each reflector maps
/// its pivot column to `-sign(α)·‖·‖·e_k`, so `R` may carry negative diagonal
/// entries and `Q₁₁ ≤ 0` whenever the first column has nonzero tail.
pub fn qr_householder(c1: &RealVector, c2: &RealVector) -> Result<ThinQr> {
    let n = c1.len();
    if n != c2.len() {
        return Err(GeometryError::LengthMismatch(n, c2.len()));
    }
    if n < 2 {
        return Err(GeometryError::DegeneratePair("need at least two rows"));
    }

    // Returns (beta, tau, v) with v[start] = 1 implicit in the returned vector.
    fn reflector(col: &[f64], start: usize) -> (f64, f64, Vec<f64>) {
        let n = col.len();
        let alpha = col[start];
        let xnorm = col[start + 1..].iter().map(|a| a * a).sum::<f64>().sqrt();
        let mut v = vec![0.0; n];
        v[start] = 1.0;
        if xnorm == 0.0 {
            return (alpha, 0.0, v);
        }
        let norm = alpha.hypot(xnorm);
        let beta = if alpha >= 0.0 { -norm } else { norm };
        let tau = (beta - alpha) / beta;
        let scale = 1.0 / (alpha - beta);
        for k in start + 1..n {
            v[k] = col[k] * scale;
        }
        (beta, tau, v)
    }

    fn apply(tau: f64, v: &[f64], x: &mut [f64]) {
        let d: f64 = v.iter().zip(x.iter()).map(|(a, b)| a * b).sum();
        for (xi, vi) in x.iter_mut().zip(v) {
            *xi -= tau * d * vi;
        }
    }

    let (r11, tau1, v1) = reflector(c1.as_slice(), 0);
    let mut a2 = c2.as_slice().to_vec();
    apply(tau1, &v1, &mut a2);
    let r12 = a2[0];
    let (r22, tau2, v2) = reflector(&a2, 1);

    if r11 == 0.0 || r22.abs() <= PARALLEL_SINE_TOL * c2.norm() {
        return Err(GeometryError::DegeneratePair("columns are linearly dependent"));
    }

    let mut q1 = vec![0.0; n];
    q1[0] = 1.0;
    apply(tau1, &v1, &mut q1);
    let mut q2 = vec![0.0; n];
    q2[1] = 1.0;
    apply(tau2, &v2, &mut q2);
    apply(tau1, &v1, &mut q2);

    Ok(ThinQr {
        q: (Vector::new(q1), Vector::new(q2)),
        r: [r11, r12, r22],
    })
}

/// QR with `diag(R) > 0`, which makes `Q` unique and equal to Gram–Schmidt on the columns.
pub fn qr_sign_corrected(c1: &RealVector, c2: &RealVector) -> Result<ThinQr> {
    let ThinQr { q: (mut q1, mut q2), r: [mut r11, mut r12, mut r22] } = qr_householder(c1, c2)?;
    if r11 < 0.0 {
        q1 = q1.scaled(-1.0);
        r11 = -r11;
        r12 = -r12;
    }
    if r22 < 0.0 {
        q2 = q2.scaled(-1.0);
        r22 = -r22;
    }
    Ok(ThinQr {
        q: (q1, q2),
        r: [r11, r12, r22],
    })
}

/// Rotation of the unit vector `a` toward the unit vector `b` inside their
/// common plane, by the fraction `t` of the angle between them.
///
/// `⟨a,b⟩` must be real (phase-align complex targets first, see
/// [`phase_aligned_rotation`]) and not `-1`.
pub fn direct_rotation<S: Scalar>(a: &Vector<S>, b: &Vector<S>, t: f64) -> Result<Vector<S>> {
    if a.len() != b.len() {
        return Err(GeometryError::LengthMismatch(a.len(), b.len()));
    }
    let c = a.dot(b);
    if c.im().abs() > ANTIPODAL_TOL {
        return Err(GeometryError::PhaseMisaligned(c.im()));
    }
    let cr = c.re();
    if cr <= -1.0 + ANTIPODAL_TOL {
        return Err(GeometryError::AntipodalPair(cr));
    }
    let perp = b.add_scaled(S::from_real(-cr), a);
    let s = perp.norm();
    let theta = s.atan2(cr.clamp(-1.0, 1.0));
    if theta < SMALL_ANGLE || s == 0.0 {
        return Ok(a.clone());
    }
    let (st, ct) = (t * theta).sin_cos();
    Ok(a.combine(ct, &perp, st / s))
}

/// Like [`direct_rotation`], but accepts a complex overlap `⟨a,b⟩ = |c|e^{iφ}`:
/// rotates `a` toward `e^{-iφ}b` and multiplies by the phase ramp `e^{itφ}`,
/// so the result is unit for every `t` and equals `b` at `t = 1`.
/// For real vectors this is exactly [`direct_rotation`].
pub fn phase_aligned_rotation<S: Scalar>(
    a: &Vector<S>,
    b: &Vector<S>,
    t: f64,
) -> Result<Vector<S>> {
    if !S::IS_COMPLEX {
        return direct_rotation(a, b, t);
    }
    let c = a.dot(b);
    if c.abs() == 0.0 {
        return direct_rotation(a, b, t);
    }
    let ph = c.unit_phase();
    let phi = ph.im().atan2(ph.re());
    let aligned = b.scaled(ph.conj());
    let r = direct_rotation(a, &aligned, t)?;
    let ramp = S::cis(t * phi).expect("complex scalar");
    Ok(r.scaled(ramp))
}

/// Angle between two unit vectors, `atan2(‖b − ⟨a,b⟩a‖, Re⟨a,b⟩)`.
pub fn angle_between<S: Scalar>(a: &Vector<S>, b: &Vector<S>) -> f64 {
    let c = a.dot(b);
    let perp = b.add_scaled(-c, a);
    perp.norm().atan2(c.re())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rv(v: &[f64]) -> RealVector {
        Vector::new(v.to_vec())
    }

    #[test]
    fn gram_schmidt_already_orthogonal() {
        let (a, b) = gram_schmidt_pair(&rv(&[1.0, 0.0, 0.0]), &rv(&[0.0, 2.0, 0.0])).unwrap();
        assert_eq!(a, rv(&[1.0, 0.0, 0.0]));
        assert_eq!(b, rv(&[0.0, 1.0, 0.0]));
    }

    #[test]
    fn gram_schmidt_one_projection_step() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let u = rv(&[3.0 * s, 3.0 * s, 0.0]);
        let (a, b) = gram_schmidt_pair(&u, &rv(&[1.0, 0.0, 0.0])).unwrap();
        assert!(a.max_abs_diff(&rv(&[s, s, 0.0])) < 1e-15);
        assert!(b.max_abs_diff(&rv(&[s, -s, 0.0])) < 1e-15);
    }

    #[test]
    fn gram_schmidt_rejects_parallel_and_zero() {
        assert!(matches!(
            gram_schmidt_pair(&rv(&[1.0, 0.0]), &rv(&[2.0, 0.0])),
            Err(GeometryError::DegeneratePair(_))
        ));
        assert!(matches!(
            gram_schmidt_pair(&rv(&[0.0, 0.0, 0.0]), &rv(&[1.0, 0.0, 0.0])),
            Err(GeometryError::DegeneratePair(_))
        ));
    }

    #[test]
    fn qr_identity_columns() {
        let c1 = rv(&[1.0, 0.0, 0.0]);
        let c2 = rv(&[0.0, 1.0, 0.0]);
        let qr = qr_sign_corrected(&c1, &c2).unwrap();
        assert!(qr.q.0.max_abs_diff(&c1) < 1e-15);
        assert!(qr.q.1.max_abs_diff(&c2) < 1e-15);
        assert!((qr.r[0] - 1.0).abs() < 1e-15 && qr.r[1].abs() < 1e-15 && (qr.r[2] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn qr_negative_first_column() {
        let c1 = rv(&[-1.0, 0.0]);
        let c2 = rv(&[0.0, 1.0]);
        let qr = qr_sign_corrected(&c1, &c2).unwrap();
        assert!(qr.q.0.max_abs_diff(&c1) < 1e-15);
        assert!(qr.q.1.max_abs_diff(&c2) < 1e-15);
        assert!(qr.r[0] > 0.0 && qr.r[2] > 0.0);
    }

    #[test]
    fn raw_householder_has_nonpositive_leading_entry() {
        let c1 = rv(&[0.3, -1.2, 0.7, 2.0]);
        let c2 = rv(&[1.1, 0.4, -0.2, 0.5]);
        let qr = qr_householder(&c1, &c2).unwrap();
        assert!(qr.q.0[0] <= 0.0);
        // A = QR
        for k in 0..4 {
            let a1 = qr.q.0[k] * qr.r[0];
            let a2 = qr.q.0[k] * qr.r[1] + qr.q.1[k] * qr.r[2];
            assert!((a1 - c1[k]).abs() < 1e-14);
            assert!((a2 - c2[k]).abs() < 1e-14);
        }
    }

    #[test]
    fn direct_rotation_endpoints_and_midpoint() {
        let a = rv(&[1.0, 0.0]);
        let b = rv(&[0.0, 1.0]);
        assert_eq!(direct_rotation(&a, &b, 0.0).unwrap(), a);
        assert!(direct_rotation(&a, &b, 1.0).unwrap().max_abs_diff(&b) < 1e-15);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!(direct_rotation(&a, &b, 0.5).unwrap().max_abs_diff(&rv(&[s, s])) < 1e-15);
    }

    #[test]
    fn direct_rotation_antipodal_is_error() {
        let a = rv(&[1.0, 0.0, 0.0]);
        assert!(matches!(
            direct_rotation(&a, &a.scaled(-1.0), 0.5),
            Err(GeometryError::AntipodalPair(_))
        ));
    }

    #[test]
    fn direct_rotation_requires_real_overlap() {
        let a = Vector::new(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
        let b = Vector::new(vec![Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.0)]);
        assert!(matches!(
            direct_rotation(&a, &b, 0.5),
            Err(GeometryError::PhaseMisaligned(_))
        ));
        let r = phase_aligned_rotation(&a, &b, 1.0).unwrap();
        assert!(r.max_abs_diff(&b) < 1e-15);
        let mid = phase_aligned_rotation(&a, &b, 0.5).unwrap();
        assert!((mid.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn svd_examples() {
        let id = svd_2x2(&Matrix2::<f64>::identity());
        assert_eq!(id.sigma, [1.0, 1.0]);

        let m = Matrix2::new(3.0, 0.0, 0.0, -2.0);
        let s = svd_2x2(&m);
        assert!((s.sigma[0] - 3.0).abs() < 1e-15 && (s.sigma[1] - 2.0).abs() < 1e-15);
        assert!(s.reconstruct().frobenius_distance(&m) < 1e-14);

        let z = svd_2x2(&Matrix2::new(0.0, 0.0, 0.0, 0.0));
        assert_eq!(z.sigma, [0.0, 0.0]);
        assert_eq!(z.u, Matrix2::identity());
    }

    #[test]
    fn svd_rank_one_complex() {
        let a = Complex64::new(0.3, -0.4);
        let b = Complex64::new(-1.2, 0.5);
        // outer product (a, b) ⊗ (1, 2i): rank one
        let m = Matrix2::new(a, a * Complex64::new(0.0, 2.0), b, b * Complex64::new(0.0, 2.0));
        let s = svd_2x2(&m);
        assert!(s.sigma[1] < 1e-15);
        assert!(s.reconstruct().frobenius_distance(&m) < 1e-14);
        let uu = s.u.adjoint().mul(&s.u);
        assert!(uu.frobenius_distance(&Matrix2::identity()) < 1e-14);
    }
}
