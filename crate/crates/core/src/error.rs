use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {name} = {value} (must be finite and > 0)")]
    Config { name: &'static str, value: f64 },

    #[error("invalid grid: {0}")]
    Grid(String),

    #[error("eigen index must be >= 1, got {0}")]
    Index(u32),

    #[error("invalid packet parameter: {0}")]
    Packet(String),

    #[error(
        "packet too close to a wall: distance {distance} < required {required} (5 x position spread)"
    )]
    PacketPlacement { distance: f64, required: f64 },

    #[error("expansion truncated at n_max = {n_max}: residual norm {residual:e} >= {limit:e}")]
    Truncation { n_max: u32, residual: f64, limit: f64 },

    #[error("quadrature did not converge: |fine - coarse| = {difference:e} > {tolerance:e}")]
    NonConvergence { difference: f64, tolerance: f64 },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("point {point} outside classical support (|value| must be < {bound})")]
    Domain { point: f64, bound: f64 },

    #[error("parse error in {path}: line {line}: {message}")]
    Parse { path: PathBuf, line: usize, message: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
