use std::path::PathBuf;

use thiserror::Error;

use crate::instance::ObjectError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{count} propert{plural} failed", plural = if *count == 1 { "y" } else { "ies" })]
    PropertyFailure { count: usize },
    #[error("{0}")]
    Semantic(String),
    #[error("{} invalid object(s):\n{}", .0.len(), render_objects(.0))]
    InvalidObjects(Vec<ObjectError>),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot write output: {0}")]
    Output(#[from] std::io::Error),
}

fn render_objects(errors: &[ObjectError]) -> String {
    errors.iter().map(|e| format!("  {e}")).collect::<Vec<_>>().join("\n")
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::PropertyFailure { .. } => 1,
            CliError::Semantic(_) | CliError::InvalidObjects(_) => 2,
            CliError::Parse(_) => 3,
            CliError::Io { .. } | CliError::Output(_) => 4,
        }
    }
}
