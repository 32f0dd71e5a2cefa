use thiserror::Error;

/// Errors raised by the geometric operations of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("vectors have mismatched lengths {0} and {1}")]
    LengthMismatch(usize, usize),
    #[error("degenerate pair: {0}")]
    DegeneratePair(&'static str),
    #[error("antipodal pair: rotation plane is not unique (overlap {0})")]
    AntipodalPair(f64),
    #[error("overlap is not real (imaginary part {0}); phase-align the target first")]
    PhaseMisaligned(f64),
    #[error("frame is not orthonormal (defect {0:e})")]
    FrameInvalid(f64),
    #[error("polygon is not closed (closure defect {0:e})")]
    NotClosed(f64),
    #[error("polygon is not normalized (perimeter {0})")]
    NotNormalized(f64),
    #[error("polygon needs at least 3 edges, got {0}")]
    TooFewEdges(usize),
    #[error("edge {0} has zero length")]
    ZeroEdge(usize),
    #[error("degenerate polygon: {0}")]
    Degenerate(&'static str),
    #[error("query point lies on the polygon boundary")]
    OnBoundary,
    #[error("Hopf section is singular at edge direction -i (edge {0})")]
    SectionSingular(usize),
    #[error("projection onto the orthogonal complement vanished at t = {0}")]
    DegenerateProjection(f64),
    #[error("planes are (numerically) orthogonal: largest singular value {0:e}")]
    DegeneratePlanes(f64),
    #[error("n = {n} exceeds the enumeration limit {max}")]
    TooLarge { n: usize, max: usize },
    #[error("sampling failed after {0} attempts")]
    SamplingFailure(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = GeometryError> = std::result::Result<T, E>;
