//! Plane tilings by a single quadrilateral.
//!
//! For a quadrilateral ABCD, the half-turn about the midpoint of AB together
//! with the translations by `C − A` and `D − B` generate a tiling: every
//! half-turn about an edge midpoint of a copy is one of these maps. Each
//! lattice cell holds the quad and its half-turned copy. Crossed quads tile
//! in the oriented sense: with boundaries oriented to positive signed area,
//! winding numbers of all copies sum to +1 off the edges.

use std::io::{self, Write};

use num_complex::Complex64;

use crate::error::{GeometryError, Result};
use crate::io::{emit_svg, SvgShape, PALETTE};
use crate::planar::{classify_quadrilateral, cross, winding_number_of_loop, PlanarPolygon, Point2};

pub const MAX_TILES: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct TilingSpec {
    pub rows: usize,
    pub cols: usize,
    pub quad: PlanarPolygon,
}

impl TilingSpec {
    pub fn new(rows: usize, cols: usize, quad: PlanarPolygon) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(GeometryError::InvalidArgument("rows and cols must be positive".into()));
        }
        if rows.saturating_mul(cols) > MAX_TILES {
            return Err(GeometryError::InvalidArgument(format!(
                "rows·cols must not exceed {MAX_TILES}"
            )));
        }
        classify_quadrilateral(&quad)?;
        Ok(Self { rows, cols, quad })
    }
}

/// A rows×cols patch; `tiles` holds 2·rows·cols positively oriented quads.
#[derive(Debug, Clone, PartialEq)]
pub struct Tiling {
    pub tiles: Vec<[Point2; 4]>,
    /// The quad itself, positively oriented, with its first vertex at the origin.
    pub base: [Point2; 4],
    /// Lattice vectors `C − A` and `D − B`.
    pub lattice: (Point2, Point2),
}

impl Tiling {
    /// Coordinates `(a, b)` with `p = a·u + b·v` in the lattice basis.
    pub fn lattice_coords(&self, p: Point2) -> (f64, f64) {
        let (u, v) = self.lattice;
        let det = cross(u, v);
        (cross(p, v) / det, cross(u, p) / det)
    }

    /// Sum of the winding numbers of all tiles around `q`.
    pub fn winding_sum(&self, q: Point2) -> Result<i32> {
        self.tiles
            .iter()
            .map(|t| winding_number_of_loop(t, q))
            .sum()
    }
}

/// Builds the patch of translates `i·u + j·v`, `0 ≤ i < cols`, `0 ≤ j < rows`.
pub fn build_tiling(spec: &TilingSpec) -> Result<Tiling> {
    let v = spec.quad.vertices(Complex64::new(0.0, 0.0));
    let mut q = [v[0], v[1], v[2], v[3]];
    // shoelace area of a quadrilateral is half the cross product of its diagonals
    if cross(q[2] - q[0], q[3] - q[1]) < 0.0 {
        q = [q[0], q[3], q[2], q[1]];
    }
    let (a, b, c, d) = (q[0], q[1], q[2], q[3]);
    let u = c - a;
    let w = d - b;
    let turned = q.map(|p| a + b - p);

    let mut tiles = Vec::with_capacity(2 * spec.rows * spec.cols);
    for j in 0..spec.rows {
        for i in 0..spec.cols {
            let t = u * i as f64 + w * j as f64;
            tiles.push(q.map(|p| p + t));
            tiles.push(turned.map(|p| p + t));
        }
    }
    Ok(Tiling {
        tiles,
        base: q,
        lattice: (u, w),
    })
}

/// Renders the patch as SVG, alternating two palette colors between the quad
/// and its half-turned copy.
pub fn emit_tiling<W: Write>(spec: &TilingSpec, out: &mut W) -> Result<(), TilingError> {
    let tiling = build_tiling(spec)?;
    let shapes: Vec<SvgShape> = tiling
        .tiles
        .iter()
        .enumerate()
        .map(|(k, t)| SvgShape {
            points: t.to_vec(),
            stroke: PALETTE[2].to_string(),
            fill: Some(PALETTE[k % 2].to_string()),
        })
        .collect();
    emit_svg(&shapes, out)?;
    Ok(())
}

#[derive(Debug, thiserror::Error)]
pub enum TilingError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Io(#[from] io::Error),
}
