//! Library side of the `metahecke` command-line tool: the flat key/value job
//! grammar, dispatch to the library, and record serialization.
//!
//! A config is a sequence of jobs separated by lines containing only `---`.
//! Each job is a set of whitespace-separated `key=value` pairs, spread over
//! any number of lines; `#` starts a comment and values may be double-quoted
//! to include spaces. Coweights are comma-separated integers in simple-coroot
//! coordinates, words are comma-separated node labels (`0` is the affine
//! node, `e` the empty word).
//!
//! ```text
//! # twisted Littlewood-Richardson polynomials for A1, n = 3
//! type=A1 n=3 twist=primitive
//! cmd=glr mu=0 lambda=3
//! ---
//! type=A1 n=3 cmd=gauss-sums q=7 format=table
//! ```

pub mod config;
pub mod exec;
pub mod output;

use thiserror::Error;

pub use config::{parse_config, Command, Format, JobConfig, Specialization};
pub use exec::execute;
pub use output::{render, Key, Record, Value};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("ParseError at line {line}, column {column}: {msg}")]
    Parse {
        line: usize,
        column: usize,
        msg: String,
    },
    #[error("ValidationError in field `{field}`: {msg}")]
    Validation { field: String, msg: String },
    #[error("{}: {0}", .0.name())]
    Computation(#[from] metahecke::Error),
}

impl CliError {
    pub fn validation(field: &str, msg: impl Into<String>) -> Self {
        CliError::Validation {
            field: field.into(),
            msg: msg.into(),
        }
    }

    /// A library error raised while validating `field`.
    pub fn invalid(field: &str, e: metahecke::Error) -> Self {
        CliError::validation(field, format!("{}: {e}", e.name()))
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Validation { .. } => 2,
            CliError::Computation(_) => 3,
        }
    }
}
