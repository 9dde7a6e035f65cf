//! Validation of recursive SHACL schemas under supported, stable,
//! well-founded and Kripke-Kleene semantics.
//!
//! A [`Schema`] is a set of rules `s ← φ` plus target inclusions. It is
//! bound to a [`Graph`] by a [`Program`], on which the fixpoint operators
//! of [`fixpoint`] run. [`validate()`] reads targets against the chosen
//! semantics.
//!
//! ```
//! use recshacl::{parse_graph, parse_schema, Program, SemanticsKind, ValidationMode, Limits};
//!
//! let graph = parse_graph("a knows b\nb knows a\n").unwrap();
//! let schema = parse_schema(
//!     "shape Friendly := geq 1 (knows, Friendly);\ntarget top <= Friendly;",
//! )
//! .unwrap();
//! let prog = Program::new(&schema, &graph).unwrap();
//! let report = recshacl::validate(&prog, SemanticsKind::WellFounded, ValidationMode::Cautious, Limits::default()).unwrap();
//! // Nothing grounds the cycle.
//! assert!(!report.pass);
//! ```

pub mod acorss;
pub mod error;
pub mod eval;
pub mod fixpoint;
pub mod graph;
pub mod interp;
#[cfg(feature = "oracle")]
pub mod oracle;
pub mod schema;
pub mod textio;
pub mod truth;
pub mod validate;

pub use error::{Error, Result};
pub use eval::Program;
pub use fixpoint::{Limits, Models, SemanticsKind};
pub use graph::{BinaryRelation, Graph, NodeId, NodeSet};
pub use interp::{PartialInterpretation, ShapeAssignment, ShapeId, Vocabulary};
pub use schema::{PathExpr, Rule, Schema, ShapeExpr, Target};
pub use textio::{parse_graph, parse_schema, SourceSpan};
pub use truth::TruthValue;
pub use validate::{validate, ValidationMode, ValidationReport};

// The guide's code listings run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/shapes.md")]
    mod shapes {}
    #[doc = include_str!("../../../book/src/three-valued.md")]
    mod three_valued {}
    #[doc = include_str!("../../../book/src/semantics.md")]
    mod semantics {}
    #[doc = include_str!("../../../book/src/validation.md")]
    mod validation {}
    #[doc = include_str!("../../../book/src/levels.md")]
    mod levels {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
