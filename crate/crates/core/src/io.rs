//! Versioned JSON documents for polygons and frames, and SVG/OBJ/CSV output.
//!
//! Floats in JSON are written with 17 significant digits (`{:.16e}`), so a
//! document survives serialize → parse → serialize byte for byte. Parsing
//! goes through `serde_json`; writing is done here to pin the format.

use std::fmt::Write as _;
use std::io::{self, Write};

use num_complex::Complex64;
use serde::Deserialize;
use thiserror::Error;

use crate::error::GeometryError;
use crate::linalg::{Frame, Vector};
use crate::planar::{PlanarPolygon, Point2, Sign, StiefelFrame};
use crate::sampling::EnsembleReport;
use crate::spatial::{HermitianFrame, Point3, SpacePolygon};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported document version {0}")]
    Version(u32),
    #[error("invalid document: {0}")]
    Schema(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// 17 significant digits, lossless for `f64`.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolygonKind {
    Planar,
    Spatial,
}

/// A polygon on disk: edges as `[re, im]` (planar) or `[x, y, z]` (spatial).
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolygonDocument {
    pub version: u32,
    pub kind: PolygonKind,
    pub n: usize,
    pub edges: Vec<Vec<f64>>,
    /// Lift signs as `+1`/`-1`, planar only.
    #[serde(default)]
    pub signs: Option<Vec<i8>>,
    /// Framing angles, spatial only.
    #[serde(default)]
    pub theta: Option<Vec<f64>>,
    #[serde(default)]
    pub seed: Option<u64>,
}

impl PolygonDocument {
    pub fn planar(p: &PlanarPolygon) -> Self {
        Self {
            version: SCHEMA_VERSION,
            kind: PolygonKind::Planar,
            n: p.n(),
            edges: p.edges().iter().map(|e| vec![e.re, e.im]).collect(),
            signs: None,
            theta: None,
            seed: None,
        }
    }

    pub fn spatial(p: &SpacePolygon) -> Self {
        Self {
            version: SCHEMA_VERSION,
            kind: PolygonKind::Spatial,
            n: p.n(),
            edges: p.edges().iter().map(|e| e.to_vec()).collect(),
            signs: None,
            theta: None,
            seed: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let doc: Self = serde_json::from_str(text)?;
        doc.check()?;
        Ok(doc)
    }

    fn check(&self) -> Result<(), DocumentError> {
        if self.version != SCHEMA_VERSION {
            return Err(DocumentError::Version(self.version));
        }
        if self.edges.len() != self.n {
            return Err(DocumentError::Schema(format!(
                "n = {} but {} edges given",
                self.n,
                self.edges.len()
            )));
        }
        let width = match self.kind {
            PolygonKind::Planar => 2,
            PolygonKind::Spatial => 3,
        };
        if self.edges.iter().any(|e| e.len() != width) {
            return Err(DocumentError::Schema(format!("edges must have {width} components")));
        }
        if let Some(s) = &self.signs {
            if self.kind != PolygonKind::Planar || s.len() != self.n || s.iter().any(|&v| v != 1 && v != -1) {
                return Err(DocumentError::Schema("signs must be n values of +1 or -1 on a planar polygon".into()));
            }
        }
        if let Some(t) = &self.theta {
            if self.kind != PolygonKind::Spatial || t.len() != self.n {
                return Err(DocumentError::Schema("theta must hold n angles on a spatial polygon".into()));
            }
        }
        match self.kind {
            PolygonKind::Planar => self.to_planar().map(drop),
            PolygonKind::Spatial => self.to_spatial().map(drop),
        }
    }

    pub fn to_planar(&self) -> Result<PlanarPolygon, DocumentError> {
        if self.kind != PolygonKind::Planar {
            return Err(DocumentError::Schema("expected a planar polygon".into()));
        }
        Ok(PlanarPolygon::new(
            self.edges.iter().map(|e| Complex64::new(e[0], e[1])).collect(),
        )?)
    }

    pub fn to_spatial(&self) -> Result<SpacePolygon, DocumentError> {
        if self.kind != PolygonKind::Spatial {
            return Err(DocumentError::Schema("expected a spatial polygon".into()));
        }
        Ok(SpacePolygon::new(self.edges.iter().map(|e| [e[0], e[1], e[2]]).collect())?)
    }

    pub fn lift_signs(&self) -> Option<Vec<Sign>> {
        self.signs.as_ref().map(|s| {
            s.iter()
                .map(|&v| if v < 0 { Sign::Minus } else { Sign::Plus })
                .collect()
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = String::new();
        s.push_str("{\n");
        let _ = writeln!(s, "  \"version\": {},", self.version);
        let kind = match self.kind {
            PolygonKind::Planar => "planar",
            PolygonKind::Spatial => "spatial",
        };
        let _ = writeln!(s, "  \"kind\": \"{kind}\",");
        let _ = writeln!(s, "  \"n\": {},", self.n);
        s.push_str("  \"edges\": [");
        for (k, e) in self.edges.iter().enumerate() {
            s.push_str(if k == 0 { "\n    " } else { ",\n    " });
            s.push_str(&float_array(e));
        }
        s.push_str(if self.edges.is_empty() { "]" } else { "\n  ]" });
        if let Some(signs) = &self.signs {
            let list: Vec<String> = signs.iter().map(|v| v.to_string()).collect();
            let _ = write!(s, ",\n  \"signs\": [{}]", list.join(", "));
        }
        if let Some(theta) = &self.theta {
            let _ = write!(s, ",\n  \"theta\": {}", float_array(theta));
        }
        if let Some(seed) = self.seed {
            let _ = write!(s, ",\n  \"seed\": {seed}");
        }
        s.push_str("\n}\n");
        s
    }
}

fn float_array(v: &[f64]) -> String {
    let items: Vec<String> = v.iter().map(|&x| fmt_f64(x)).collect();
    format!("[{}]", items.join(", "))
}

/// Parses either a single polygon document or a JSON array of them.
pub fn parse_polygon_documents(text: &str) -> Result<Vec<PolygonDocument>, DocumentError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let docs: Vec<PolygonDocument> = match value {
        serde_json::Value::Array(items) => items
            .into_iter()
            .map(serde_json::from_value)
            .collect::<Result<_, _>>()?,
        other => vec![serde_json::from_value(other)?],
    };
    for d in &docs {
        d.check()?;
    }
    Ok(docs)
}

/// Serializes several documents as a JSON array.
pub fn polygon_documents_to_json(docs: &[PolygonDocument]) -> String {
    let mut s = String::from("[\n");
    for (k, d) in docs.iter().enumerate() {
        if k > 0 {
            s.push_str(",\n");
        }
        s.push_str(d.to_json().trim_end());
    }
    s.push_str("\n]\n");
    s
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Entry {
    Real(f64),
    Complex([f64; 2]),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFrameDocument {
    version: u32,
    kind: String,
    n: usize,
    x: Vec<Entry>,
    y: Vec<Entry>,
    #[serde(default)]
    signs: Option<Vec<i8>>,
    #[serde(default)]
    theta: Option<Vec<f64>>,
}

/// A lifted polygon: a Stiefel (real) or Hermitian (complex) frame.
#[derive(Debug, Clone, PartialEq)]
pub enum FrameDocument {
    Stiefel { frame: StiefelFrame, signs: Option<Vec<Sign>> },
    Hermitian { frame: HermitianFrame, theta: Option<Vec<f64>> },
}

impl FrameDocument {
    pub fn n(&self) -> usize {
        match self {
            FrameDocument::Stiefel { frame, .. } => frame.n(),
            FrameDocument::Hermitian { frame, .. } => frame.n(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = String::from("{\n");
        let _ = writeln!(s, "  \"version\": {SCHEMA_VERSION},");
        match self {
            FrameDocument::Stiefel { frame, signs } => {
                let _ = writeln!(s, "  \"kind\": \"stiefel\",");
                let _ = writeln!(s, "  \"n\": {},", frame.n());
                let _ = write!(s, "  \"x\": {},\n  \"y\": {}", float_array(frame.x().as_slice()), float_array(frame.y().as_slice()));
                if let Some(signs) = signs {
                    let list: Vec<&str> = signs
                        .iter()
                        .map(|s| if *s == Sign::Minus { "-1" } else { "1" })
                        .collect();
                    let _ = write!(s, ",\n  \"signs\": [{}]", list.join(", "));
                }
            }
            FrameDocument::Hermitian { frame, theta } => {
                let complex = |v: &Vector<Complex64>| {
                    let items: Vec<String> = v.iter().map(|z| float_array(&[z.re, z.im])).collect();
                    format!("[{}]", items.join(", "))
                };
                let _ = writeln!(s, "  \"kind\": \"hermitian\",");
                let _ = writeln!(s, "  \"n\": {},", frame.n());
                let _ = write!(s, "  \"x\": {},\n  \"y\": {}", complex(frame.x()), complex(frame.y()));
                if let Some(theta) = theta {
                    let _ = write!(s, ",\n  \"theta\": {}", float_array(theta));
                }
            }
        }
        s.push_str("\n}\n");
        s
    }

    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        Self::from_raw(serde_json::from_str(text)?)
    }

    fn from_raw(raw: RawFrameDocument) -> Result<Self, DocumentError> {
        if raw.version != SCHEMA_VERSION {
            return Err(DocumentError::Version(raw.version));
        }
        if raw.x.len() != raw.n || raw.y.len() != raw.n {
            return Err(DocumentError::Schema("x and y must have n entries".into()));
        }
        match raw.kind.as_str() {
            "stiefel" => {
                let real = |v: Vec<Entry>| -> Result<Vec<f64>, DocumentError> {
                    v.into_iter()
                        .map(|e| match e {
                            Entry::Real(r) => Ok(r),
                            Entry::Complex(_) => Err(DocumentError::Schema("stiefel entries must be real".into())),
                        })
                        .collect()
                };
                let frame = Frame::new(Vector::new(real(raw.x)?), Vector::new(real(raw.y)?))?;
                let signs = raw.signs.map(|s| {
                    s.iter()
                        .map(|&v| if v < 0 { Sign::Minus } else { Sign::Plus })
                        .collect()
                });
                Ok(FrameDocument::Stiefel { frame, signs })
            }
            "hermitian" => {
                let complex = |v: Vec<Entry>| -> Result<Vec<Complex64>, DocumentError> {
                    v.into_iter()
                        .map(|e| match e {
                            Entry::Complex([re, im]) => Ok(Complex64::new(re, im)),
                            Entry::Real(_) => Err(DocumentError::Schema("hermitian entries must be [re, im]".into())),
                        })
                        .collect()
                };
                let frame = Frame::new(Vector::new(complex(raw.x)?), Vector::new(complex(raw.y)?))?;
                Ok(FrameDocument::Hermitian { frame, theta: raw.theta })
            }
            other => Err(DocumentError::Schema(format!("unknown frame kind {other:?}"))),
        }
    }
}

/// Serializes several frame documents as a JSON array.
pub fn frame_documents_to_json(docs: &[FrameDocument]) -> String {
    let mut s = String::from("[\n");
    for (k, d) in docs.iter().enumerate() {
        if k > 0 {
            s.push_str(",\n");
        }
        s.push_str(d.to_json().trim_end());
    }
    s.push_str("\n]\n");
    s
}

/// Parses a JSON list of framing angles.
pub fn parse_angles(text: &str) -> Result<Vec<f64>, DocumentError> {
    Ok(serde_json::from_str(text)?)
}

pub fn report_to_json(r: &EnsembleReport) -> String {
    let opt = |v: Option<f64>| v.map_or("null".to_string(), fmt_f64);
    let classes = r
        .class_fractions
        .map_or("null".to_string(), |c| float_array(&c));
    format!(
        "{{\n  \"kind\": \"{}\",\n  \"n\": {},\n  \"sample_count\": {},\n  \"seed\": {},\n  \"obtuse_fraction\": {},\n  \"class_fractions\": {},\n  \"mean_edge_length\": {},\n  \"mean_diameter\": {},\n  \"degenerate_count\": {}\n}}\n",
        r.kind,
        r.n,
        r.sample_count,
        r.seed,
        opt(r.obtuse_fraction),
        classes,
        fmt_f64(r.mean_edge_length),
        fmt_f64(r.mean_diameter),
        r.degenerate_count
    )
}

pub const REPORT_CSV_HEADER: &str =
    "kind,n,sample_count,seed,obtuse_fraction,convex_fraction,reflex_fraction,crossed_fraction,mean_edge_length,mean_diameter,degenerate_count";

/// One CSV row matching [`REPORT_CSV_HEADER`]; absent statistics are empty fields.
pub fn report_to_csv_row(r: &EnsembleReport) -> String {
    let opt = |v: Option<f64>| v.map_or(String::new(), fmt_f64);
    let c = r.class_fractions;
    format!(
        "{},{},{},{},{},{},{},{},{},{},{}",
        r.kind,
        r.n,
        r.sample_count,
        r.seed,
        opt(r.obtuse_fraction),
        opt(c.map(|c| c[0])),
        opt(c.map(|c| c[1])),
        opt(c.map(|c| c[2])),
        fmt_f64(r.mean_edge_length),
        fmt_f64(r.mean_diameter),
        r.degenerate_count
    )
}

/// Default stroke palette, cycled over shapes.
pub const PALETTE: [&str; 6] = ["#fd5f00", "#76b39d", "#05004e", "#b83b5e", "#3f72af", "#6a2c70"];

/// A closed vertex loop with its styling.
#[derive(Debug, Clone, PartialEq)]
pub struct SvgShape {
    pub points: Vec<Point2>,
    pub stroke: String,
    pub fill: Option<String>,
}

impl SvgShape {
    /// The polygon drawn from `base`, stroked with palette color `index`.
    pub fn from_polygon(p: &PlanarPolygon, base: Point2, index: usize) -> Self {
        let mut points = p.vertices(base);
        points.pop();
        Self {
            points,
            stroke: PALETTE[index % PALETTE.len()].to_string(),
            fill: None,
        }
    }
}

fn fmt_coord(v: f64) -> String {
    // +0.0 folds negative zero
    format!("{:.9}", v + 0.0)
}

/// Writes an SVG 1.1 document with one `<path>` per shape.
///
/// The view box fits all points with a 5% margin. The y axis is flipped so
/// that counterclockwise polygons appear counterclockwise.
pub fn emit_svg<W: Write>(shapes: &[SvgShape], out: &mut W) -> io::Result<()> {
    let mut pts = shapes.iter().flat_map(|s| s.points.iter());
    let (mut x0, mut x1, mut y0, mut y1) = match pts.next() {
        Some(p) => (p.re, p.re, -p.im, -p.im),
        None => (0.0, 1.0, 0.0, 1.0),
    };
    for p in pts {
        x0 = x0.min(p.re);
        x1 = x1.max(p.re);
        y0 = y0.min(-p.im);
        y1 = y1.max(-p.im);
    }
    let extent = (x1 - x0).max(y1 - y0);
    let extent = if extent > 0.0 { extent } else { 1.0 };
    let margin = 0.05 * extent;
    let (vx, vy) = (x0 - margin, y0 - margin);
    let (vw, vh) = ((x1 - x0) + 2.0 * margin, (y1 - y0) + 2.0 * margin);
    let stroke_width = 0.003 * extent;

    writeln!(out, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>")?;
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\" width=\"800\" height=\"{}\">",
        fmt_coord(vx),
        fmt_coord(vy),
        fmt_coord(vw),
        fmt_coord(vh),
        ((800.0 * vh / vw).round() as i64).max(1)
    )?;
    for s in shapes {
        let mut d = String::new();
        for (k, p) in s.points.iter().enumerate() {
            let _ = write!(
                d,
                "{}{} {} ",
                if k == 0 { "M " } else { "L " },
                fmt_coord(p.re),
                fmt_coord(-p.im)
            );
        }
        d.push('Z');
        writeln!(
            out,
            "  <path d=\"{}\" fill=\"{}\" stroke=\"{}\" stroke-width=\"{}\" stroke-linejoin=\"round\"/>",
            d,
            s.fill.as_deref().unwrap_or("none"),
            s.stroke,
            fmt_coord(stroke_width)
        )?;
    }
    writeln!(out, "</svg>")?;
    Ok(())
}

/// Places polygons row by row on a grid of `cols` columns, each centered on
/// its vertex centroid in a cell of side `spacing`.
pub fn grid_layout(polygons: &[PlanarPolygon], cols: usize, spacing: f64) -> Vec<SvgShape> {
    let cols = cols.max(1);
    polygons
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let verts = p.vertices(Complex64::new(0.0, 0.0));
            let centroid = verts[..p.n()].iter().sum::<Complex64>() / p.n() as f64;
            let cell = Complex64::new((k % cols) as f64 * spacing, -((k / cols) as f64) * spacing);
            SvgShape::from_polygon(p, cell - centroid, k)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceFormat {
    CsvVertices,
    ObjPolyline,
}

/// Writes the n vertices `v₀ = 0, v_ℓ = v_{ℓ−1} + e_ℓ` as CSV or as an OBJ closed polyline.
pub fn export_space_polygon<W: Write>(p: &SpacePolygon, format: SpaceFormat, out: &mut W) -> io::Result<()> {
    let verts = p.vertices();
    let verts: &[Point3] = &verts[..p.n()];
    match format {
        SpaceFormat::CsvVertices => {
            writeln!(out, "x,y,z")?;
            for v in verts {
                writeln!(out, "{},{},{}", fmt_f64(v[0]), fmt_f64(v[1]), fmt_f64(v[2]))?;
            }
        }
        SpaceFormat::ObjPolyline => {
            writeln!(out, "# space polygon, {} vertices", p.n())?;
            for v in verts {
                writeln!(out, "v {} {} {}", fmt_f64(v[0]), fmt_f64(v[1]), fmt_f64(v[2]))?;
            }
            let mut line = String::from("l");
            for k in 1..=p.n() {
                let _ = write!(line, " {k}");
            }
            line.push_str(" 1");
            writeln!(out, "{line}")?;
        }
    }
    Ok(())
}
