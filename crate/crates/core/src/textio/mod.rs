//! Surface syntax: the graph file format, the schema language, printers
//! and JSON report types.
//!
//! # Graph files
//!
//! One statement per line; `#` starts a comment.
//!
//! ```text
//! a closeTo b      # subject property object
//! node lonely      # declares a node without edges
//! ```
//!
//! # Schema files
//!
//! ```text
//! shape atRisk := not geq 1 (vaccinated, top)
//!     and (geq 1 (hasSymptoms, top) or geq 1 (closeTo, atRisk));
//! shape canWork := not atRisk;
//! target geq 1 (vaccinated, top) <= canWork;
//! ```
//!
//! `not` binds tightest, then `and`, then `or`. Paths use `^p` for the
//! inverse of `p`, `/` for composition, `|` for union and postfix `*` and
//! `?`; `/` binds tighter than `|`.

pub mod json;
mod lexer;
mod graph_format;
mod print;
mod schema_parser;

use std::fmt;
use std::sync::Arc;

pub use graph_format::{parse_graph, parse_graph_named, print_graph};
pub use print::print_schema;
pub use schema_parser::{parse_schema, parse_schema_with, ParseOptions};

/// A location in a source file: one line, columns `col_start..col_end`
/// (1-based, end exclusive).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SourceSpan {
    pub file: Option<Arc<str>>,
    pub line: u32,
    pub col_start: u32,
    pub col_end: u32,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(file) = &self.file {
            write!(f, "{file}:")?;
        }
        write!(f, "{}:{}", self.line, self.col_start)
    }
}
