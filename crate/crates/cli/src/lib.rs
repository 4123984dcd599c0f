//! Command-line front end for `qlink`: scene files in, JSON results and SVG
//! figures out.

pub mod commands;
pub mod render;
pub mod scene;

pub use commands::run;
pub use render::{render_svg, Layer};
pub use scene::{parse_scene, serialize_scene, Scene};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("geometry error: {0}")]
    Geometry(qlink::Error),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) => 2,
            CliError::Geometry(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

impl From<qlink::Error> for CliError {
    fn from(e: qlink::Error) -> Self {
        match e {
            qlink::Error::ConstructionFailure(msg) => CliError::Internal(msg),
            other => CliError::Geometry(other),
        }
    }
}
