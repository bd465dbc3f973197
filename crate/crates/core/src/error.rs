use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("capacity exceeded: {what} is {got}, limit is {limit}")]
    Capacity {
        what: &'static str,
        limit: usize,
        got: usize,
    },
    #[error("graph is disconnected; a connected input is required")]
    Disconnected,
    #[error("graph is not planar")]
    NotPlanar,
    #[error("degenerate segment: endpoints coincide")]
    DegenerateSegment,
    #[error("no position given for vertex {0}")]
    MissingPosition(usize),
    #[error("planes are parallel or identical, the spine is undefined")]
    ParallelPlanes,
    #[error("invalid leveling: {0}")]
    InvalidLeveling(String),
    #[error("invalid drawing: {0}")]
    InvalidDrawing(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    /// True for errors that signal a resource limit rather than bad data.
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. })
    }
}
