//! The two parallel circuit languages (English and Picture files), the log
//! file, and the line-by-line correspondence check between the languages.
//!
//! Line numbers in errors and reports are 0-based, the same convention used
//! by `LOOP` labels.

mod correspond;
mod english;
mod log;
mod picture;

use thiserror::Error;

use crate::circuit::CircuitError;

pub use correspond::{check_correspondence, Mismatch};
pub use english::{emit_english, english_line, english_qubits, parse_english, parse_english_line};
pub use log::{emit_log, LogInfo};
pub use picture::{
    emit_picture, parse_picture, parse_picture_line, project, render_picture_op, Glyph, Picture, PictureOp,
};

pub const ENGLISH_FILE: &str = "quibbs_eng.txt";
pub const PICTURE_FILE: &str = "quibbs_pic.txt";
pub const LOG_FILE: &str = "quibbs_log.txt";

#[derive(Debug, Error, Clone, PartialEq)]
#[error("line {line}: {kind}")]
pub struct TextError {
    pub line: usize,
    pub kind: TextErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TextErrorKind {
    #[error("empty line")]
    EmptyLine,
    #[error("non-ASCII text")]
    NonAscii,
    #[error("unknown opcode {0:?}")]
    UnknownOpcode(String),
    #[error("{0}")]
    Syntax(String),
    #[error("bad number {0:?}")]
    BadNumber(String),
    #[error("LOOP label {found} differs from its line number {expected}")]
    LoopLabel { expected: usize, found: usize },
    #[error("line has no operation")]
    NoOperation,
    #[error("unknown symbol {symbol:?} at column {column}")]
    UnknownSymbol { column: usize, symbol: char },
    #[error("symbol {symbol:?} at non-qubit column {column}")]
    StrayMark { column: usize, symbol: char },
    #[error("malformed picture at column {0}")]
    Malformed(usize),
    #[error("picture lines disagree on qubit count ({0} vs {1})")]
    Width(usize, usize),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

impl TextError {
    pub(crate) fn new(line: usize, kind: TextErrorKind) -> Self {
        TextError { line, kind }
    }
}
