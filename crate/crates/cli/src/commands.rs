use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use polyframe::io::{
    emit_svg, export_space_polygon, frame_documents_to_json, grid_layout, parse_angles,
    parse_polygon_documents, polygon_documents_to_json, report_to_csv_row, report_to_json,
    DocumentError, FrameDocument, PolygonDocument, PolygonKind, SpaceFormat, SvgShape,
    REPORT_CSV_HEADER,
};
use polyframe::linalg::Frame;
use polyframe::paths::{grassmann_geodesic, lift_variants, signs_from_mask, stiefel_path, MorphPath, MAX_ENUMERATION};
use polyframe::planar::{cyclic_relabel, frame_to_polygon, parse_signs, polygon_to_frame};
use polyframe::sampling::{
    ensemble_report, sample_convex_polygon, sample_polygon, sample_space_polygon, EnsembleKind, SeededRng,
};
use polyframe::spatial::{frame_to_space_polygon, space_polygon_to_frame, FramingAngles};
use polyframe::tiling::{emit_tiling, TilingError, TilingSpec};
use polyframe::{Complex64, GeometryError, HermitianFrame, PlanarPolygon, Scalar, Sign, SpacePolygon, StiefelFrame};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Validation(String),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 64,
            CliError::Validation(_) => 2,
            CliError::Io { .. } => 74,
        }
    }

    pub fn category(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Validation(_) => "validation",
            CliError::Io { .. } => "io",
        }
    }
}

impl From<GeometryError> for CliError {
    fn from(e: GeometryError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<DocumentError> for CliError {
    fn from(e: DocumentError) -> Self {
        CliError::Validation(e.to_string())
    }
}

type CliResult<T = ()> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "polyframe", version, about = "Random polygons as orthonormal frames")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample uniformly random polygons.
    Sample(SampleArgs),
    /// Monte Carlo statistics of a random polygon ensemble.
    Stats(StatsArgs),
    /// Morph between two polygons, writing one file per frame.
    Morph(MorphArgs),
    /// Tile the plane with copies of a quadrilateral.
    Tile(TileArgs),
    /// Lift a polygon to its frame.
    Lift(LiftArgs),
    /// Draw polygons as SVG (or export space polygons as OBJ/CSV).
    Render(RenderArgs),
}

#[derive(Debug, Args)]
struct SampleArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(2..=3))]
    dim: u8,
    #[arg(long)]
    convex: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    count: u64,
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Triangle,
    Quad,
    Ngon,
}

#[derive(Debug, Args)]
struct StatsArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, conflicts_with = "json")]
    csv: bool,
    #[arg(long)]
    json: bool,
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Stiefel,
    Geodesic,
}

#[derive(Debug, Args)]
struct MorphArgs {
    #[arg(long)]
    from: PathBuf,
    #[arg(long)]
    to: PathBuf,
    #[arg(long, value_enum, default_value_t = Method::Stiefel)]
    method: Method,
    #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u64).range(1..=100_000))]
    frames: u64,
    /// Cyclically relabel the target lift by K positions.
    #[arg(long, default_value_t = 0)]
    relabel: usize,
    /// Lift signs for the target, one character per edge: 0/+ or 1/-.
    #[arg(long)]
    signs: Option<String>,
    /// Use the reversed Stiefel path (rotate y toward y₁ first).
    #[arg(long)]
    reversed: bool,
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Debug, Args)]
struct TileArgs {
    #[arg(long)]
    quad: PathBuf,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    rows: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    cols: u64,
    #[arg(long)]
    out: String,
}

#[derive(Debug, Args)]
struct LiftArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, conflicts_with = "enumerate")]
    signs: Option<String>,
    /// Write all 2ⁿ lifts of a planar polygon.
    #[arg(long)]
    enumerate: bool,
    /// JSON list of framing angles for a space polygon.
    #[arg(long)]
    theta: Option<PathBuf>,
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Debug, Args)]
struct RenderArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: String,
}

pub fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Sample(a) => sample(a),
        Command::Stats(a) => stats(a),
        Command::Morph(a) => morph(a),
        Command::Tile(a) => tile(a),
        Command::Lift(a) => lift(a),
        Command::Render(a) => render(a),
    }
}

fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write_bytes(out: &str, bytes: &[u8]) -> CliResult {
    let io_err = |source| CliError::Io {
        path: out.to_string(),
        source,
    };
    if out == "-" {
        let mut stdout = io::stdout().lock();
        stdout.write_all(bytes).map_err(io_err)?;
        stdout.flush().map_err(io_err)
    } else {
        fs::write(out, bytes).map_err(io_err)
    }
}

fn read_single_document(path: &Path) -> CliResult<PolygonDocument> {
    let mut docs = parse_polygon_documents(&read_text(path)?)?;
    if docs.len() != 1 {
        return Err(CliError::Validation(format!(
            "{}: expected one polygon, found {}",
            path.display(),
            docs.len()
        )));
    }
    Ok(docs.remove(0))
}

fn sample(a: SampleArgs) -> CliResult {
    if a.convex && a.dim == 3 {
        return Err(CliError::Usage("--convex applies to planar polygons only".into()));
    }
    let mut rng = SeededRng::new(a.seed);
    let mut docs = Vec::with_capacity(a.count.min(1 << 16) as usize);
    for _ in 0..a.count {
        let doc = match (a.dim, a.convex) {
            (3, _) => PolygonDocument::spatial(&sample_space_polygon(a.n, &mut rng)?),
            (_, true) => PolygonDocument::planar(&sample_convex_polygon(a.n, &mut rng)?),
            _ => PolygonDocument::planar(&sample_polygon(a.n, &mut rng)?),
        };
        docs.push(doc.with_seed(a.seed));
    }
    let text = if docs.len() == 1 {
        docs[0].to_json()
    } else {
        polygon_documents_to_json(&docs)
    };
    write_bytes(&a.out, text.as_bytes())
}

fn stats(a: StatsArgs) -> CliResult {
    let kind = match (a.kind, a.n) {
        (KindArg::Triangle, None | Some(3)) => EnsembleKind::Triangle,
        (KindArg::Quad, None | Some(4)) => EnsembleKind::Quad,
        (KindArg::Ngon, Some(n)) => EnsembleKind::Ngon(n),
        (KindArg::Ngon, None) => return Err(CliError::Usage("--kind ngon requires --n".into())),
        (_, Some(n)) => {
            return Err(CliError::Usage(format!("--n {n} contradicts --kind")));
        }
    };
    let report = ensemble_report(kind, a.samples, a.seed)?;
    let text = if a.csv {
        format!("{REPORT_CSV_HEADER}\n{}\n", report_to_csv_row(&report))
    } else {
        report_to_json(&report)
    };
    write_bytes(&a.out, text.as_bytes())
}

fn morph(a: MorphArgs) -> CliResult {
    let from = read_single_document(&a.from)?;
    let to = read_single_document(&a.to)?;
    if from.kind != to.kind {
        return Err(CliError::Validation("cannot morph between planar and spatial polygons".into()));
    }
    if from.n != to.n {
        return Err(CliError::Validation(format!(
            "polygons have {} and {} edges",
            from.n, to.n
        )));
    }
    fs::create_dir_all(&a.out_dir).map_err(|source| CliError::Io {
        path: a.out_dir.display().to_string(),
        source,
    })?;
    let n = from.n;
    let relabel = a.relabel % n;
    match from.kind {
        PolygonKind::Planar => {
            let f0 = planar_lift(&from, None)?;
            let f1 = cyclic_relabel(&planar_lift(&to, a.signs.as_deref())?, relabel);
            let path = build_path(&f0, &f1, a.method, a.reversed)?;
            for (k, t) in frame_times(a.frames).enumerate() {
                let p = frame_to_polygon(&path.eval(t)?);
                let mut svg = Vec::new();
                emit_svg(&[SvgShape::from_polygon(&p, Complex64::new(0.0, 0.0), 0)], &mut svg)
                    .expect("writing to memory");
                write_file(&a.out_dir.join(format!("frame_{k:04}.svg")), &svg)?;
            }
        }
        PolygonKind::Spatial => {
            if a.signs.is_some() {
                return Err(CliError::Usage("--signs applies to planar polygons only".into()));
            }
            let f0 = spatial_lift(&from, None)?;
            let f1 = spatial_lift(&to, None)?;
            let f1 = Frame::new_unchecked(f1.x().rotated_left(relabel), f1.y().rotated_left(relabel));
            let path = build_path(&f0, &f1, a.method, a.reversed)?;
            for (k, t) in frame_times(a.frames).enumerate() {
                let p = frame_to_space_polygon(&path.eval(t)?);
                let mut obj = Vec::new();
                export_space_polygon(&p, SpaceFormat::ObjPolyline, &mut obj).expect("writing to memory");
                write_file(&a.out_dir.join(format!("frame_{k:04}.obj")), &obj)?;
            }
        }
    }
    Ok(())
}

fn build_path<S: Scalar>(f0: &Frame<S>, f1: &Frame<S>, method: Method, reversed: bool) -> CliResult<MorphPath<S>> {
    Ok(match method {
        Method::Stiefel => stiefel_path(f0, f1, reversed)?,
        Method::Geodesic => grassmann_geodesic(f0, f1)?,
    })
}

/// `frames` evenly spaced times in [0, 1], both ends included.
fn frame_times(frames: u64) -> impl Iterator<Item = f64> {
    let last = frames.saturating_sub(1).max(1) as f64;
    (0..frames).map(move |k| k as f64 / last)
}

fn write_file(path: &Path, bytes: &[u8]) -> CliResult {
    fs::write(path, bytes).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn planar_polygon(doc: &PolygonDocument) -> CliResult<PlanarPolygon> {
    Ok(doc.to_planar()?)
}

/// Lift with explicit `signs`, else the document's own, else all `+`.
fn planar_lift(doc: &PolygonDocument, signs: Option<&str>) -> CliResult<StiefelFrame> {
    let p = planar_polygon(doc)?;
    let signs = match signs {
        Some(bits) => parse_signs(bits).map_err(|e| CliError::Usage(e.to_string()))?,
        None => doc.lift_signs().unwrap_or_else(|| vec![Sign::Plus; p.n()]),
    };
    if signs.len() != p.n() {
        return Err(CliError::Usage(format!(
            "expected {} sign characters, got {}",
            p.n(),
            signs.len()
        )));
    }
    Ok(polygon_to_frame(&p, &signs)?)
}

/// Lift with framing angles from `theta`, else the document's own, else zeros.
fn spatial_lift(doc: &PolygonDocument, theta: Option<Vec<f64>>) -> CliResult<HermitianFrame> {
    let p: SpacePolygon = doc.to_spatial()?;
    let angles = match theta.or_else(|| doc.theta.clone()) {
        Some(t) => FramingAngles::new(t)?,
        None => FramingAngles::zeros(p.n()),
    };
    Ok(space_polygon_to_frame(&p, &angles)?)
}

fn tile(a: TileArgs) -> CliResult {
    let doc = read_single_document(&a.quad)?;
    let quad = planar_polygon(&doc)?;
    if quad.n() != 4 {
        return Err(CliError::Validation(format!("expected a quadrilateral, got n = {}", quad.n())));
    }
    let rows = usize::try_from(a.rows).map_err(|e| CliError::Usage(e.to_string()))?;
    let cols = usize::try_from(a.cols).map_err(|e| CliError::Usage(e.to_string()))?;
    let spec = TilingSpec::new(rows, cols, quad)?;
    let mut svg = Vec::new();
    match emit_tiling(&spec, &mut svg) {
        Ok(()) => {}
        Err(TilingError::Geometry(e)) => return Err(e.into()),
        Err(TilingError::Io(e)) => {
            return Err(CliError::Io {
                path: a.out,
                source: e,
            })
        }
    }
    write_bytes(&a.out, &svg)
}

fn lift(a: LiftArgs) -> CliResult {
    let doc = read_single_document(&a.input)?;
    let text = match doc.kind {
        PolygonKind::Planar => {
            if a.theta.is_some() {
                return Err(CliError::Usage("--theta applies to space polygons only".into()));
            }
            if a.enumerate {
                let p = planar_polygon(&doc)?;
                if p.n() > MAX_ENUMERATION {
                    return Err(GeometryError::TooLarge {
                        n: p.n(),
                        max: MAX_ENUMERATION,
                    }
                    .into());
                }
                let docs: Vec<FrameDocument> = lift_variants(&p, MAX_ENUMERATION)?
                    .into_iter()
                    .enumerate()
                    .map(|(mask, frame)| FrameDocument::Stiefel {
                        frame,
                        signs: Some(signs_from_mask(p.n(), mask as u64)),
                    })
                    .collect();
                frame_documents_to_json(&docs)
            } else {
                let frame = planar_lift(&doc, a.signs.as_deref())?;
                let signs = polyframe::planar::lift_signs(&frame);
                FrameDocument::Stiefel {
                    frame,
                    signs: Some(signs),
                }
                .to_json()
            }
        }
        PolygonKind::Spatial => {
            if a.signs.is_some() || a.enumerate {
                return Err(CliError::Usage(
                    "--signs and --enumerate apply to planar polygons only".into(),
                ));
            }
            let theta = match &a.theta {
                Some(path) => Some(parse_angles(&read_text(path)?)?),
                None => None,
            };
            let theta_out = theta.clone().or_else(|| doc.theta.clone()).unwrap_or_else(|| vec![0.0; doc.n]);
            let frame = spatial_lift(&doc, theta)?;
            FrameDocument::Hermitian {
                frame,
                theta: Some(theta_out),
            }
            .to_json()
        }
    };
    write_bytes(&a.out, text.as_bytes())
}

fn render(a: RenderArgs) -> CliResult {
    let docs = parse_polygon_documents(&read_text(&a.input)?)?;
    if docs.is_empty() {
        let mut svg = Vec::new();
        emit_svg(&[], &mut svg).expect("writing to memory");
        return write_bytes(&a.out, &svg);
    }
    let kind = docs[0].kind;
    if docs.iter().any(|d| d.kind != kind) {
        return Err(CliError::Validation("cannot render planar and spatial polygons together".into()));
    }
    let planar: Vec<PlanarPolygon> = match kind {
        PolygonKind::Planar => docs.iter().map(planar_polygon).collect::<CliResult<_>>()?,
        PolygonKind::Spatial => {
            let spatial: Vec<SpacePolygon> = docs.iter().map(|d| Ok(d.to_spatial()?)).collect::<CliResult<_>>()?;
            let ext = Path::new(&a.out).extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase);
            let format = match ext.as_deref() {
                Some("obj") => Some(SpaceFormat::ObjPolyline),
                Some("csv") => Some(SpaceFormat::CsvVertices),
                _ => None,
            };
            if let Some(format) = format {
                if spatial.len() != 1 {
                    return Err(CliError::Usage("OBJ/CSV export takes a single polygon".into()));
                }
                let mut bytes = Vec::new();
                export_space_polygon(&spatial[0], format, &mut bytes).expect("writing to memory");
                return write_bytes(&a.out, &bytes);
            }
            // orthographic projection onto the xy plane; the projected loop is
            // closed but its edges are no longer of unit total length
            spatial
                .iter()
                .map(|p| {
                    PlanarPolygon::new_unchecked(p.edges().iter().map(|e| Complex64::new(e[0], e[1])).collect())
                })
                .collect()
        }
    };
    let shapes = if planar.len() == 1 {
        vec![SvgShape::from_polygon(&planar[0], Complex64::new(0.0, 0.0), 0)]
    } else {
        let cols = (planar.len() as f64).sqrt().ceil() as usize;
        grid_layout(&planar, cols, 1.2)
    };
    let mut svg = Vec::new();
    emit_svg(&shapes, &mut svg).expect("writing to memory");
    write_bytes(&a.out, &svg)
}
