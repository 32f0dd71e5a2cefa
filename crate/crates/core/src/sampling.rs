//! Seeded Haar sampling of frames and polygons, and Monte Carlo ensembles.
//!
//! The random source is ChaCha8 (`rand_chacha`), seeded from a `u64` and
//! split into independent streams with `set_stream`. Standard normals come
//! from the ziggurat sampler of `rand_distr::StandardNormal`. Both are
//! platform independent, so a seed fully determines every sample.
//!
//! Ensembles are cut into fixed blocks of [`BLOCK_SIZE`] samples; block `b`
//! draws from stream `b + 1` of the seed. Workers take whole blocks and the
//! per-block tallies are merged in block order, so a report depends only on
//! `(kind, samples, seed)` and never on the number of workers.

use std::num::NonZeroUsize;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{GeometryError, Result};
use crate::linalg::{gram_schmidt_pair, qr_householder, qr_sign_corrected, ComplexVector, Frame, RealVector, Vector};
use crate::planar::{
    classify_quadrilateral, classify_triangle, convexify, frame_to_polygon, PlanarPolygon, QuadClass,
    StiefelFrame, TriangleClass,
};
use crate::spatial::{frame_to_space_polygon, HermitianFrame, SpacePolygon};

pub const MAX_ATTEMPTS: usize = 8;
pub const BLOCK_SIZE: usize = 1024;

/// A seeded, reproducible random stream.
#[derive(Debug, Clone)]
pub struct SeededRng {
    seed: u64,
    rng: ChaCha8Rng,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        Self::with_stream(seed, 0)
    }

    /// Stream `stream` of `seed`; distinct streams do not overlap.
    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { seed, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn standard_normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    /// Uniform on `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    pub fn gaussian_vector(&mut self, n: usize) -> RealVector {
        Vector::new((0..n).map(|_| self.standard_normal()).collect())
    }

    /// Entries with independent standard normal real and imaginary parts.
    pub fn complex_gaussian_vector(&mut self, n: usize) -> ComplexVector {
        Vector::new(
            (0..n)
                .map(|_| {
                    let re = self.standard_normal();
                    let im = self.standard_normal();
                    Complex64::new(re, im)
                })
                .collect(),
        )
    }
}

fn check_n(n: usize) -> Result<()> {
    if n < 3 {
        return Err(GeometryError::TooFewEdges(n));
    }
    Ok(())
}

fn retry<T>(mut f: impl FnMut() -> Result<T>) -> Result<T> {
    for _ in 0..MAX_ATTEMPTS {
        match f() {
            Ok(v) => return Ok(v),
            Err(GeometryError::DegeneratePair(_)) | Err(GeometryError::ZeroEdge(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(GeometryError::SamplingFailure(MAX_ATTEMPTS))
}

/// Haar-random point of St₂(ℝⁿ): Gram–Schmidt on two Gaussian vectors.
pub fn sample_stiefel(n: usize, rng: &mut SeededRng) -> Result<StiefelFrame> {
    check_n(n)?;
    retry(|| {
        let u = rng.gaussian_vector(n);
        let v = rng.gaussian_vector(n);
        let (x, y) = gram_schmidt_pair(&u, &v)?;
        Ok(Frame::new_unchecked(x, y))
    })
}

/// Haar-random point of St₂(ℂⁿ).
pub fn sample_stiefel_complex(n: usize, rng: &mut SeededRng) -> Result<HermitianFrame> {
    check_n(n)?;
    retry(|| {
        let u = rng.complex_gaussian_vector(n);
        let v = rng.complex_gaussian_vector(n);
        let (x, y) = gram_schmidt_pair(&u, &v)?;
        Ok(Frame::new_unchecked(x, y))
    })
}

/// Which QR factor to keep when sampling through a QR decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QrConvention {
    /// `diag(R) > 0`; the Haar-uniform choice.
    SignCorrected,
    /// The raw Householder factor, `Q₁₁ ≤ 0` always.
    Raw,
}

/// Samples St₂(ℝⁿ) as the Q factor of an n×2 Gaussian matrix. Consumes the
/// stream exactly like [`sample_stiefel`] (first column, then second).
pub fn sample_stiefel_qr(n: usize, rng: &mut SeededRng, convention: QrConvention) -> Result<StiefelFrame> {
    check_n(n)?;
    retry(|| {
        let a1 = rng.gaussian_vector(n);
        let a2 = rng.gaussian_vector(n);
        let qr = match convention {
            QrConvention::SignCorrected => qr_sign_corrected(&a1, &a2)?,
            QrConvention::Raw => qr_householder(&a1, &a2)?,
        };
        Ok(Frame::new_unchecked(qr.q.0, qr.q.1))
    })
}

pub fn sample_polygon(n: usize, rng: &mut SeededRng) -> Result<PlanarPolygon> {
    Ok(frame_to_polygon(&sample_stiefel(n, rng)?))
}

pub fn sample_space_polygon(n: usize, rng: &mut SeededRng) -> Result<SpacePolygon> {
    Ok(frame_to_space_polygon(&sample_stiefel_complex(n, rng)?))
}

/// Uniform random convex n-gon: a random frame with its edges sorted by angle.
pub fn sample_convex_frame(n: usize, rng: &mut SeededRng) -> Result<StiefelFrame> {
    check_n(n)?;
    retry(|| convexify(&sample_stiefel(n, rng)?))
}

pub fn sample_convex_polygon(n: usize, rng: &mut SeededRng) -> Result<PlanarPolygon> {
    Ok(frame_to_polygon(&sample_convex_frame(n, rng)?))
}

/// The population an ensemble is drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnsembleKind {
    Triangle,
    Quad,
    Ngon(usize),
}

impl EnsembleKind {
    pub fn n(self) -> usize {
        match self {
            EnsembleKind::Triangle => 3,
            EnsembleKind::Quad => 4,
            EnsembleKind::Ngon(n) => n,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            EnsembleKind::Triangle => "triangle",
            EnsembleKind::Quad => "quad",
            EnsembleKind::Ngon(_) => "ngon",
        }
    }
}

/// Summary statistics of a random polygon ensemble.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleReport {
    pub kind: &'static str,
    pub n: usize,
    pub sample_count: u64,
    pub seed: u64,
    /// Triangles only.
    pub obtuse_fraction: Option<f64>,
    /// `(convex, reflex, crossed)`, quadrilaterals only.
    pub class_fractions: Option<[f64; 3]>,
    pub mean_edge_length: f64,
    pub mean_diameter: f64,
    /// Members rejected by the classifier (a measure-zero event).
    pub degenerate_count: u64,
}

#[derive(Debug, Clone, Default)]
struct Tally {
    count: u64,
    obtuse: u64,
    classified: u64,
    quad: [u64; 3],
    degenerate: u64,
    sum_edge: f64,
    sum_diameter: f64,
}

impl Tally {
    fn merge(&mut self, o: &Tally) {
        self.count += o.count;
        self.obtuse += o.obtuse;
        self.classified += o.classified;
        for k in 0..3 {
            self.quad[k] += o.quad[k];
        }
        self.degenerate += o.degenerate;
        self.sum_edge += o.sum_edge;
        self.sum_diameter += o.sum_diameter;
    }
}

fn run_block(kind: EnsembleKind, seed: u64, block: u64, size: usize) -> Result<Tally> {
    let mut rng = SeededRng::with_stream(seed, block + 1);
    let n = kind.n();
    let mut t = Tally::default();
    for _ in 0..size {
        let p = sample_polygon(n, &mut rng)?;
        t.count += 1;
        t.sum_edge += p.perimeter() / n as f64;
        t.sum_diameter += p.diameter();
        match kind {
            EnsembleKind::Triangle => match classify_triangle(&p) {
                Ok(c) => {
                    t.classified += 1;
                    if c == TriangleClass::Obtuse {
                        t.obtuse += 1;
                    }
                }
                Err(_) => t.degenerate += 1,
            },
            EnsembleKind::Quad => match classify_quadrilateral(&p) {
                Ok(c) => {
                    t.classified += 1;
                    let k = match c {
                        QuadClass::Convex => 0,
                        QuadClass::Reflex => 1,
                        QuadClass::Crossed => 2,
                    };
                    t.quad[k] += 1;
                }
                Err(_) => t.degenerate += 1,
            },
            EnsembleKind::Ngon(_) => {}
        }
    }
    Ok(t)
}

fn default_workers() -> usize {
    std::thread::available_parallelism()
        .map(NonZeroUsize::get)
        .unwrap_or(1)
}

/// Draws `samples` random polygons and summarizes them, using all available cores.
pub fn ensemble_report(kind: EnsembleKind, samples: u64, seed: u64) -> Result<EnsembleReport> {
    ensemble_report_sharded(kind, samples, seed, default_workers())
}

/// As [`ensemble_report`] with an explicit worker count; the result does not depend on it.
pub fn ensemble_report_sharded(
    kind: EnsembleKind,
    samples: u64,
    seed: u64,
    workers: usize,
) -> Result<EnsembleReport> {
    if samples == 0 {
        return Err(GeometryError::InvalidArgument("samples must be at least 1".into()));
    }
    check_n(kind.n())?;
    let blocks = samples.div_ceil(BLOCK_SIZE as u64);
    let block_len = |b: u64| -> usize {
        let start = b * BLOCK_SIZE as u64;
        (samples - start).min(BLOCK_SIZE as u64) as usize
    };
    let workers = workers.clamp(1, blocks as usize);

    let mut results: Vec<Option<Result<Tally>>> = vec![None; blocks as usize];
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                scope.spawn(move || {
                    (w as u64..blocks)
                        .step_by(workers)
                        .map(|b| (b, run_block(kind, seed, b, block_len(b))))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (b, r) in h.join().expect("ensemble worker panicked") {
                results[b as usize] = Some(r);
            }
        }
    });

    let mut total = Tally::default();
    for r in results {
        total.merge(&r.expect("every block is assigned")?);
    }

    let classified = total.classified.max(1) as f64;
    let count = total.count as f64;
    Ok(EnsembleReport {
        kind: kind.name(),
        n: kind.n(),
        sample_count: total.count,
        seed,
        obtuse_fraction: (kind == EnsembleKind::Triangle).then(|| total.obtuse as f64 / classified),
        class_fractions: (kind == EnsembleKind::Quad).then(|| {
            [
                total.quad[0] as f64 / classified,
                total.quad[1] as f64 / classified,
                total.quad[2] as f64 / classified,
            ]
        }),
        mean_edge_length: total.sum_edge / count,
        mean_diameter: total.sum_diameter / count,
        degenerate_count: total.degenerate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_frame() {
        let a = sample_stiefel(3, &mut SeededRng::new(42)).unwrap();
        let b = sample_stiefel(3, &mut SeededRng::new(42)).unwrap();
        assert_eq!(a, b);
        let c = sample_stiefel(3, &mut SeededRng::new(43)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn streams_differ() {
        let mut a = SeededRng::with_stream(5, 1);
        let mut b = SeededRng::with_stream(5, 2);
        assert_ne!(a.standard_normal(), b.standard_normal());
    }

    #[test]
    fn rejects_small_n() {
        assert_eq!(sample_stiefel(2, &mut SeededRng::new(0)), Err(GeometryError::TooFewEdges(2)));
    }

    #[test]
    fn convex_sample_is_convex() {
        let mut rng = SeededRng::new(9);
        for n in [5, 200] {
            assert!(sample_convex_polygon(n, &mut rng).unwrap().is_convex());
        }
    }

    #[test]
    fn report_independent_of_workers() {
        let a = ensemble_report_sharded(EnsembleKind::Quad, 5000, 17, 1).unwrap();
        let b = ensemble_report_sharded(EnsembleKind::Quad, 5000, 17, 3).unwrap();
        let c = ensemble_report_sharded(EnsembleKind::Quad, 5000, 17, 8).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        let f = a.class_fractions.unwrap();
        assert!((f.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn zero_samples_rejected() {
        assert!(ensemble_report(EnsembleKind::Triangle, 0, 1).is_err());
    }
}
