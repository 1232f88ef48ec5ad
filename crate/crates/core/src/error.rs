use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("invalid presentation: {0}")]
    Presentation(String),
    #[error("invalid map: {0}")]
    Map(String),
    #[error("invalid marking: {0}")]
    Marking(String),
    #[error("invalid category: {0}")]
    Category(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("requested {requested} exceeds computed bounds {bounds}")]
    Bounds { requested: String, bounds: String },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("search budget of {0} nodes exhausted")]
    Budget(u64),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
