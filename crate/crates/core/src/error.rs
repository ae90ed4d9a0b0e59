use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report. Variant names double as the
/// machine-readable error names printed by the command line front end.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("ZeroVector: direction of a zero vector is undefined")]
    ZeroVector,

    #[error("NonFiniteCoordinate: vertex {index} has a non-finite coordinate")]
    NonFiniteCoordinate { index: usize },

    #[error("TooFewVertices: an arc needs at least 2 distinct vertices, got {count}")]
    TooFewVertices { count: usize },

    #[error("DuplicateVertex: vertices {index} and {} coincide", index + 1)]
    DuplicateVertex { index: usize },

    #[error("SelfIntersecting: segments {first} and {second} intersect or overlap")]
    SelfIntersecting { first: usize, second: usize },

    #[error("ParamOutOfRange: parameter {param} outside [0, {length}]")]
    ParamOutOfRange { param: f64, length: f64 },

    #[error("StraightArc: all vertices are collinear")]
    StraightArc,

    #[error("MalformedFunction: {0}")]
    MalformedFunction(String),

    #[error("InvalidDelta: angle difference {0} must lie strictly inside (0, 2π)")]
    InvalidDelta(f64),

    #[error("NotFound: no support line pair at angle difference {0}")]
    NotFound(f64),

    #[error("GenerationExhausted: trial {trial} hit the cap of {rejections} rejections")]
    GenerationExhausted { trial: u64, rejections: usize },
}

impl Error {
    /// Short name of the variant, e.g. `"StraightArc"`.
    pub fn name(&self) -> &'static str {
        match self {
            Error::ZeroVector => "ZeroVector",
            Error::NonFiniteCoordinate { .. } => "NonFiniteCoordinate",
            Error::TooFewVertices { .. } => "TooFewVertices",
            Error::DuplicateVertex { .. } => "DuplicateVertex",
            Error::SelfIntersecting { .. } => "SelfIntersecting",
            Error::ParamOutOfRange { .. } => "ParamOutOfRange",
            Error::StraightArc => "StraightArc",
            Error::MalformedFunction(_) => "MalformedFunction",
            Error::InvalidDelta(_) => "InvalidDelta",
            Error::NotFound(_) => "NotFound",
            Error::GenerationExhausted { .. } => "GenerationExhausted",
        }
    }
}
