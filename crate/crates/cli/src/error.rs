use std::path::PathBuf;

use serde_json::{json, Value};
use spinsurgery::invariants::{CassonError, SchemeError, SeifertError};
use spinsurgery::kirby::{ParseMoveError, SequenceError};
use spinsurgery::presentation::PresentationError;
use thiserror::Error;

/// Process exit code for malformed or invalid input.
pub const EXIT_INPUT: i32 = 2;
/// Process exit code for a failed mathematical precondition.
pub const EXIT_PRECONDITION: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error("no characteristic vector given and the matrix has {count} spin structures; add `c`")]
    MissingCharacteristicVector { count: String },
    #[error(transparent)]
    MoveSyntax(#[from] ParseMoveError),
    #[error(transparent)]
    Move(#[from] SequenceError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Seifert(#[from] SeifertError),
    #[error("unknown knot `{0}` (known: {1})")]
    UnknownKnot(String, String),
    #[error(transparent)]
    Casson(#[from] CassonError),
    #[error("fuzz step {step}: {message}")]
    FuzzViolation { step: usize, message: String },
}

impl CliError {
    pub fn field(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self::Field {
            field: field.into(),
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Move(_) | Self::Casson(_) | Self::FuzzViolation { .. } => EXIT_PRECONDITION,
            Self::Scheme(e) => match e {
                SchemeError::SizeMismatch { .. }
                | SchemeError::BaseMismatch { .. }
                | SchemeError::DeclaredLength { .. }
                | SchemeError::NotAnExtra { .. } => EXIT_INPUT,
                _ => EXIT_PRECONDITION,
            },
            _ => EXIT_INPUT,
        }
    }

    /// Stable machine-readable name of the error class.
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Io { .. } => "Io",
            Self::Syntax { .. } => "ParseError",
            Self::Field { .. } => "ParseError",
            Self::Presentation(e) => match e {
                PresentationError::Matrix(spinsurgery::exactlin::MatrixError::NotSymmetric { .. }) => "NotSymmetric",
                PresentationError::Matrix(_) => "ParseError",
                PresentationError::NotCharacteristic { .. } => "NotCharacteristic",
                PresentationError::LengthMismatch { .. } | PresentationError::InvalidBit => "ParseError",
                PresentationError::IndexOutOfRange { .. } => "IndexOutOfRange",
            },
            Self::MissingCharacteristicVector { .. } => "MissingCharacteristicVector",
            Self::MoveSyntax(_) => "MoveSyntax",
            Self::Move(e) => match e.source {
                spinsurgery::kirby::MoveError::IndexOutOfRange { .. } => "IndexOutOfRange",
                spinsurgery::kirby::MoveError::NotIsolated { .. } => "NotIsolated",
                spinsurgery::kirby::MoveError::NotUnitFramed { .. } => "NotUnitFramed",
                spinsurgery::kirby::MoveError::SameIndex { .. } => "SameIndex",
            },
            Self::Scheme(e) => match e {
                SchemeError::AmbiguousExtension { .. } => "AmbiguousExtension",
                SchemeError::NoExtension { .. } => "NoExtension",
                SchemeError::InsufficientExtras { .. } => "InsufficientExtras",
                _ => "InvalidScheme",
            },
            Self::Seifert(SeifertError::InvalidSeifertMatrix { .. }) => "InvalidSeifertMatrix",
            Self::Seifert(SeifertError::Matrix(_)) => "ParseError",
            Self::UnknownKnot(..) => "UnknownKnot",
            Self::Casson(CassonError::NotNormalized(_)) => "NotNormalized",
            Self::Casson(CassonError::OddSecondDerivative(_)) => "OddSecondDerivative",
            Self::FuzzViolation { .. } => "FuzzViolation",
        }
    }

    pub fn to_json(&self) -> Value {
        let mut obj = json!({
            "error": self.kind(),
            "message": self.to_string(),
            "exit_code": self.exit_code(),
        });
        match self {
            Self::Move(e) => obj["step"] = json!(e.position),
            Self::Syntax { line, column, .. } => {
                obj["line"] = json!(line);
                obj["column"] = json!(column);
            }
            Self::Field { field, .. } => obj["field"] = json!(field),
            Self::Presentation(PresentationError::NotCharacteristic { row }) => obj["row"] = json!(row),
            Self::Scheme(SchemeError::AmbiguousExtension { subset, .. })
            | Self::Scheme(SchemeError::NoExtension { subset }) => obj["subset"] = json!(subset),
            _ => {}
        }
        obj
    }
}
