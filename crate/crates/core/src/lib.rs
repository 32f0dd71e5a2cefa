//! Polygons as points on Stiefel manifolds.
//!
//! A planar n-gon of perimeter 2 is an orthonormal pair of vectors in ℝⁿ, and
//! a space n-gon of perimeter 2 is a Hermitian-orthonormal pair in ℂⁿ. This
//! crate provides both correspondences, uniform (Haar) sampling of random
//! polygons, morphs along Stiefel paths and Grassmann geodesics, Monte Carlo
//! ensemble statistics, and SVG/OBJ/JSON output.

pub mod error;
pub mod hull;
pub mod io;
pub mod linalg;
pub mod paths;
pub mod planar;
pub mod sampling;
pub mod spatial;
pub mod tiling;

pub use error::{GeometryError, Result};
pub use linalg::{Frame, Matrix2, Scalar, Svd2, Vector};
pub use num_complex::Complex64;
pub use planar::{PlanarPolygon, QuadClass, Sign, StiefelFrame, TriangleClass};
pub use spatial::{HermitianFrame, Quaternion, SpacePolygon};
