use std::path::PathBuf;

use flseq_core::characters::CharacterError;
use flseq_core::finite_field::FieldError;
use flseq_core::linear_span::SpanError;
use flseq_core::projective::GroupError;
use flseq_core::records::RecordError;
use flseq_core::sequence::SequenceError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    SearchFailure(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Unsupported(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::SearchFailure(_) => 3,
            CliError::Io { .. } => 4,
            CliError::Unsupported(_) => 5,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        CliError::Validation(msg.into())
    }
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::NotFound(_) => CliError::SearchFailure(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<CharacterError> for CliError {
    fn from(e: CharacterError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<SequenceError> for CliError {
    fn from(e: SequenceError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<RecordError> for CliError {
    fn from(e: RecordError) -> Self {
        match e {
            RecordError::Group(g) => g.into(),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<SpanError> for CliError {
    fn from(e: SpanError) -> Self {
        match e {
            SpanError::CompositeCharacterOrder(_) => CliError::Unsupported(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<flseq_core::bounds::BoundsError> for CliError {
    fn from(e: flseq_core::bounds::BoundsError) -> Self {
        CliError::Validation(e.to_string())
    }
}
