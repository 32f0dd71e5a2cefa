//! Morphs between frames: the rotate-and-project Stiefel path and the
//! Grassmann geodesic obtained after SVD registration of the two planes.
//!
//! Paths are evaluators: a [`MorphPath`] stores its endpoints and produces the
//! frame at any `t ∈ [0, 1]` on demand.

use crate::error::{GeometryError, Result};
use crate::linalg::{angle_between, direct_rotation, phase_aligned_rotation, svd_2x2, Frame, Scalar, Vector};
use crate::planar::{cyclic_relabel, polygon_to_frame, PlanarPolygon, Sign, StiefelFrame};

/// Hard cap on lift enumeration (2ⁿ frames).
pub const MAX_ENUMERATION: usize = 20;
/// Cap for the brute-force registration search over 2ⁿ·n lifts.
pub const MAX_REGISTRATION_SEARCH: usize = 12;

const PROJECTION_TOL: f64 = 1e-10;
const PLANE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathKind {
    /// Direct rotation of `x`, projected direct rotation of `y`. With
    /// `reversed`, the roles of `x` and `y` are swapped.
    Stiefel { reversed: bool },
    GrassmannGeodesic,
}

/// Principal angles between two planes, `theta1 ≥ theta2`.
///
/// After registration the `x` vectors are separated by `theta2` (the larger
/// singular value) and the `y` vectors by `theta1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrincipalAngles {
    pub theta1: f64,
    pub theta2: f64,
}

impl PrincipalAngles {
    pub fn x_angle(&self) -> f64 {
        self.theta2
    }

    pub fn y_angle(&self) -> f64 {
        self.theta1
    }

    /// Geodesic distance in the Grassmannian.
    pub fn distance(&self) -> f64 {
        self.theta1.hypot(self.theta2)
    }
}

/// Registered bases of two planes.
#[derive(Debug, Clone, PartialEq)]
pub struct Alignment<S> {
    pub g0: Frame<S>,
    pub g1: Frame<S>,
    pub sigma: [f64; 2],
    pub angles: PrincipalAngles,
}

/// Registers two frames: with `U Σ V* = M₀* M₁`, returns the bases `M₀U` and
/// `M₁V`, whose overlap matrix is `Σ`.
pub fn grassmann_align<S: Scalar>(f0: &Frame<S>, f1: &Frame<S>) -> Result<Alignment<S>> {
    if f0.n() != f1.n() {
        return Err(GeometryError::LengthMismatch(f0.n(), f1.n()));
    }
    let svd = svd_2x2(&f0.overlap(f1));
    if svd.sigma[0] <= PLANE_TOL {
        return Err(GeometryError::DegeneratePlanes(svd.sigma[0]));
    }
    let g0 = f0.mul_right(&svd.u);
    let g1 = f1.mul_right(&svd.v);
    let angles = PrincipalAngles {
        theta1: angle_between(g0.y(), g1.y()),
        theta2: angle_between(g0.x(), g1.x()),
    };
    Ok(Alignment {
        g0,
        g1,
        sigma: svd.sigma,
        angles,
    })
}

/// A path of frames `t ↦ f(t)`, `t ∈ [0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MorphPath<S> {
    kind: PathKind,
    start: Frame<S>,
    end: Frame<S>,
    angles: Option<PrincipalAngles>,
}

/// The rotate-and-project path from `f0` to `f1`.
pub fn stiefel_path<S: Scalar>(f0: &Frame<S>, f1: &Frame<S>, reversed: bool) -> Result<MorphPath<S>> {
    if f0.n() != f1.n() {
        return Err(GeometryError::LengthMismatch(f0.n(), f1.n()));
    }
    if !S::IS_COMPLEX {
        for (a, b) in [(f0.x(), f1.x()), (f0.y(), f1.y())] {
            let c = a.dot(b).re();
            if c <= -1.0 + PROJECTION_TOL {
                return Err(GeometryError::AntipodalPair(c));
            }
        }
    }
    Ok(MorphPath {
        kind: PathKind::Stiefel { reversed },
        start: f0.clone(),
        end: f1.clone(),
        angles: None,
    })
}

/// The Grassmann geodesic between the spans of `f0` and `f1`, lifted through
/// the registered bases. Its endpoints are those bases, not `f0` and `f1`.
pub fn grassmann_geodesic<S: Scalar>(f0: &Frame<S>, f1: &Frame<S>) -> Result<MorphPath<S>> {
    let a = grassmann_align(f0, f1)?;
    Ok(MorphPath {
        kind: PathKind::GrassmannGeodesic,
        start: a.g0,
        end: a.g1,
        angles: Some(a.angles),
    })
}

impl<S: Scalar> MorphPath<S> {
    pub fn kind(&self) -> PathKind {
        self.kind
    }

    pub fn start(&self) -> &Frame<S> {
        &self.start
    }

    pub fn end(&self) -> &Frame<S> {
        &self.end
    }

    /// Principal angles, for geodesics.
    pub fn angles(&self) -> Option<PrincipalAngles> {
        self.angles
    }

    pub fn eval(&self, t: f64) -> Result<Frame<S>> {
        if !(0.0..=1.0).contains(&t) {
            return Err(GeometryError::InvalidArgument(format!("t = {t} outside [0, 1]")));
        }
        if t == 0.0 {
            return Ok(self.start.clone());
        }
        let (s, e) = (&self.start, &self.end);
        match self.kind {
            PathKind::GrassmannGeodesic => Ok(Frame::new_unchecked(
                direct_rotation(s.x(), e.x(), t)?,
                direct_rotation(s.y(), e.y(), t)?,
            )),
            PathKind::Stiefel { reversed: false } => {
                let x = phase_aligned_rotation(s.x(), e.x(), t)?;
                let y = project_off(&phase_aligned_rotation(s.y(), e.y(), t)?, &x, t)?;
                Ok(Frame::new_unchecked(x, y))
            }
            PathKind::Stiefel { reversed: true } => {
                let y = phase_aligned_rotation(s.y(), e.y(), t)?;
                let x = project_off(&phase_aligned_rotation(s.x(), e.x(), t)?, &y, t)?;
                Ok(Frame::new_unchecked(x, y))
            }
        }
    }

    /// Frames at `count` evenly spaced parameters, `t = 0` through `t = 1`.
    pub fn sample(&self, count: usize) -> Result<Vec<Frame<S>>> {
        match count {
            0 => Ok(Vec::new()),
            1 => Ok(vec![self.eval(0.0)?]),
            _ => (0..count)
                .map(|k| self.eval(k as f64 / (count - 1) as f64))
                .collect(),
        }
    }

    /// Polygonal approximation of the path length in the Frobenius metric.
    pub fn length(&self, steps: usize) -> Result<f64> {
        let frames = self.sample(steps.max(1) + 1)?;
        Ok(frames
            .windows(2)
            .map(|w| {
                let dx = w[1].x().sub(w[0].x()).norm_sqr();
                let dy = w[1].y().sub(w[0].y()).norm_sqr();
                (dx + dy).sqrt()
            })
            .sum())
    }
}

fn project_off<S: Scalar>(v: &Vector<S>, unit: &Vector<S>, t: f64) -> Result<Vector<S>> {
    let r = v.reject(unit);
    if r.norm() <= PROJECTION_TOL {
        return Err(GeometryError::DegenerateProjection(t));
    }
    Ok(r.normalized().expect("nonzero rejection"))
}

/// Sign vector for lift number `mask`: bit `k` set flips the root of edge `k`.
pub fn signs_from_mask(n: usize, mask: u64) -> Vec<Sign> {
    (0..n)
        .map(|k| if mask >> k & 1 == 1 { Sign::Minus } else { Sign::Plus })
        .collect()
}

/// All 2ⁿ lifts of `p`, indexed by sign mask.
pub fn lift_variants(p: &PlanarPolygon, max_n: usize) -> Result<Vec<StiefelFrame>> {
    let limit = max_n.min(MAX_ENUMERATION);
    let n = p.n();
    if n > limit {
        return Err(GeometryError::TooLarge { n, max: limit });
    }
    (0..1u64 << n)
        .map(|mask| polygon_to_frame(p, &signs_from_mask(n, mask)))
        .collect()
}

/// Result of the brute-force registration search.
#[derive(Debug, Clone)]
pub struct Registration {
    pub path: MorphPath<f64>,
    pub signs: Vec<Sign>,
    pub relabel: usize,
    pub distance: f64,
}

/// Searches all 2ⁿ sign choices and n cyclic relabelings of the target lift
/// for the shortest Grassmann geodesic from the principal lift of `from`.
/// Exhaustive, so limited to `n ≤ 12`.
pub fn shortest_registered_geodesic(from: &PlanarPolygon, to: &PlanarPolygon) -> Result<Registration> {
    let n = from.n();
    if to.n() != n {
        return Err(GeometryError::LengthMismatch(n, to.n()));
    }
    if n > MAX_REGISTRATION_SEARCH {
        return Err(GeometryError::TooLarge {
            n,
            max: MAX_REGISTRATION_SEARCH,
        });
    }
    let f0 = polygon_to_frame(from, &vec![Sign::Plus; n])?;
    let mut best: Option<(f64, u64, usize)> = None;
    // masks m and !m span the same plane, so fixing the top bit halves the search
    for mask in 0..1u64 << (n - 1) {
        let lift = polygon_to_frame(to, &signs_from_mask(n, mask))?;
        for k in 0..n {
            let Ok(a) = grassmann_align(&f0, &cyclic_relabel(&lift, k)) else {
                continue;
            };
            let d = a.angles.distance();
            if best.is_none_or(|(bd, _, _)| d < bd) {
                best = Some((d, mask, k));
            }
        }
    }
    let (distance, mask, relabel) = best.ok_or(GeometryError::DegeneratePlanes(0.0))?;
    let signs = signs_from_mask(n, mask);
    let target = cyclic_relabel(&polygon_to_frame(to, &signs)?, relabel);
    Ok(Registration {
        path: grassmann_geodesic(&f0, &target)?,
        signs,
        relabel,
        distance,
    })
}
