//! Library side of the `river-banks` command: expression parsing, input
//! loading and the subcommand implementations. Every command returns its
//! stdout text and exit code; `main` only wires them to clap.

pub mod commands;
pub mod expr;

use std::path::Path;

use river_banks::CohomologyTable;
use thiserror::Error;

pub use expr::{parse_expr, BundleExpr, Parsed};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNDECIDABLE: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },

    #[error("dimension mismatch in '{subterm}' at line {}, column {}: expected {expected} entries, found {got}", position.0, position.1)]
    Dimension { subterm: String, position: (usize, usize), expected: usize, got: usize },

    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },

    #[error("{path}: {source}")]
    File { path: String, source: river_banks::Error },

    #[error(transparent)]
    Core(#[from] river_banks::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use river_banks::Error as E;
        let core = match self {
            CliError::Core(e) | CliError::File { source: e, .. } => e,
            _ => return EXIT_USAGE,
        };
        match core {
            E::WindowExceeded { .. }
            | E::Undecidable(_)
            | E::NoHilbertPolynomial
            | E::NotDecomposableWithinScope(_) => EXIT_UNDECIDABLE,
            E::NoWitness { .. } => EXIT_VIOLATION,
            _ => EXIT_USAGE,
        }
    }
}

/// Reads a table from a `.json` or ASCII file when `arg` names an existing
/// file, and parses it as a bundle expression otherwise.
pub fn load_table(arg: &str) -> Result<CohomologyTable, CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: arg.to_string(), source })?;
        let is_json = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
        let parsed = if is_json { CohomologyTable::from_json(&text) } else { CohomologyTable::parse_ascii(&text) };
        return parsed.map_err(|source| CliError::File { path: arg.to_string(), source });
    }
    parse_expr(arg)?.to_table()
}
