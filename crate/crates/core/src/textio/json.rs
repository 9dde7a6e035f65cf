//! Serializable views of interpretations, keyed by node names.

use std::fmt;

use serde::Serialize;

use crate::graph::Graph;
use crate::interp::{PartialInterpretation, ShapeAssignment};
use crate::truth::TruthValue;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShapeNodes {
    pub shape: String,
    pub nodes: Vec<String>,
}

/// A two-valued assignment: for each shape name, its nodes in domain order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssignmentJson {
    pub shapes: Vec<ShapeNodes>,
}

impl AssignmentJson {
    pub fn new(a: &ShapeAssignment, g: &Graph) -> Self {
        let vocab = a.vocabulary();
        let shapes = vocab
            .ids()
            .map(|id| ShapeNodes {
                shape: vocab.name(id).to_owned(),
                nodes: g.names_of(a.get(id)).map(str::to_owned).collect(),
            })
            .collect();
        AssignmentJson { shapes }
    }

    pub fn nodes_of(&self, shape: &str) -> Option<&[String]> {
        self.shapes
            .iter()
            .find(|s| s.shape == shape)
            .map(|s| s.nodes.as_slice())
    }
}

impl fmt::Display for AssignmentJson {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.shapes {
            writeln!(f, "  {}: {{{}}}", s.shape, s.nodes.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShapeValues {
    pub shape: String,
    #[serde(rename = "true")]
    pub true_nodes: Vec<String>,
    pub unknown: Vec<String>,
    #[serde(rename = "false")]
    pub false_nodes: Vec<String>,
}

/// A three-valued interpretation split by truth value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartialJson {
    pub shapes: Vec<ShapeValues>,
}

impl PartialJson {
    pub fn new(p: &PartialInterpretation, g: &Graph) -> Self {
        let vocab = p.vocabulary();
        let names = |id, v| -> Vec<String> {
            g.names_of(&p.nodes_with(id, v)).map(str::to_owned).collect()
        };
        let shapes = vocab
            .ids()
            .map(|id| ShapeValues {
                shape: vocab.name(id).to_owned(),
                true_nodes: names(id, TruthValue::True),
                unknown: names(id, TruthValue::Unknown),
                false_nodes: names(id, TruthValue::False),
            })
            .collect();
        PartialJson { shapes }
    }
}

impl fmt::Display for PartialJson {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.shapes {
            writeln!(
                f,
                "  {}: t{{{}}} u{{{}}} f{{{}}}",
                s.shape,
                s.true_nodes.join(", "),
                s.unknown.join(", "),
                s.false_nodes.join(", ")
            )?;
        }
        Ok(())
    }
}
