//! Brave and cautious validation of target inclusions.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Result;
use crate::eval::Program;
use crate::fixpoint::{models, Limits, Models, SemanticsKind};
use crate::graph::{NodeId, NodeSet};
use crate::interp::{PartialInterpretation, ShapeAssignment};
use crate::textio::json::{AssignmentJson, PartialJson};
use crate::truth::TruthValue;

/// Version of the JSON report layout.
pub const REPORT_FORMAT: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ValidationMode {
    Brave,
    Cautious,
}

impl ValidationMode {
    pub const ALL: [ValidationMode; 2] = [ValidationMode::Brave, ValidationMode::Cautious];
}

impl fmt::Display for ValidationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ValidationMode::Brave => "brave",
            ValidationMode::Cautious => "cautious",
        })
    }
}

impl FromStr for ValidationMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "brave" => Ok(ValidationMode::Brave),
            "cautious" => Ok(ValidationMode::Cautious),
            other => Err(format!("unknown validation mode `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TargetVerdict {
    /// The target query, in schema syntax.
    pub query: String,
    pub shape: String,
    pub pass: bool,
    /// Nodes violating the inclusion, in domain order. Empty when passing.
    pub witnesses: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Evidence {
    /// The three-valued model the verdicts were read from.
    Partial { model: PartialJson },
    /// The two-valued models inspected.
    Models { models: Vec<AssignmentJson> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub format: u32,
    pub semantics: SemanticsKind,
    pub mode: ValidationMode,
    pub pass: bool,
    /// For supported and stable semantics, the number of models inspected.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub models_inspected: Option<usize>,
    pub targets: Vec<TargetVerdict>,
    pub evidence: Evidence,
}

/// Three-valued truth of `φ ∧ ¬s` at every node, where `query` holds the
/// nodes satisfying the shape-free `φ`.
fn violation_values(query: &NodeSet, s: crate::interp::ShapeId, p: &PartialInterpretation) -> Vec<TruthValue> {
    (0..p.domain_len())
        .map(|a| TruthValue::from(query.contains(a)).min_t(!p.value(s, NodeId(a as u32))))
        .collect()
}

/// Nodes satisfying `φ ∧ ¬s` in a two-valued model.
fn violations(query: &NodeSet, s: crate::interp::ShapeId, m: &ShapeAssignment) -> NodeSet {
    let mut v = query.clone();
    v.difference_with(m.get(s));
    v
}

/// Decides every target of the program's schema under `sigma` and `mode`.
///
/// For Kripke-Kleene and well-founded semantics, cautious validation
/// requires `φ ∧ ¬s` to be f at every node and brave validation requires it
/// to be at most u. For supported and stable semantics, cautious validation
/// requires every model to satisfy each inclusion and brave validation
/// requires some model to; over an empty model set cautious passes and
/// brave fails.
pub fn validate(
    prog: &Program,
    sigma: SemanticsKind,
    mode: ValidationMode,
    limits: Limits,
) -> Result<ValidationReport> {
    let schema = prog.schema();
    let graph = prog.graph();
    let vocab = prog.vocabulary();
    let m = models(prog, sigma, limits)?;
    let names = |set: &NodeSet| graph.names_of(set).map(str::to_owned).collect::<Vec<_>>();
    let mut targets = Vec::with_capacity(schema.targets().len());
    for (i, t) in schema.targets().iter().enumerate() {
        let query = prog.eval_exact(&prog.query(i), &prog.bottom());
        let s = vocab.id(&t.shape).expect("target shapes are defined");
        let (pass, witnesses) = match &m {
            Models::Partial(p) => {
                let values = violation_values(&query, s, p);
                let bad: NodeSet = values
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| match mode {
                        ValidationMode::Cautious => !v.is_false(),
                        ValidationMode::Brave => v.is_true(),
                    })
                    .map(|(a, _)| a)
                    .collect();
                (bad.is_clear(), bad)
            }
            Models::Set(ms) => {
                let per_model: Vec<NodeSet> = ms.iter().map(|m| violations(&query, s, m)).collect();
                let pass = match mode {
                    ValidationMode::Cautious => per_model.iter().all(|v| v.is_clear()),
                    ValidationMode::Brave => per_model.iter().any(|v| v.is_clear()),
                };
                let mut bad = graph.empty_set();
                if !pass {
                    for v in &per_model {
                        bad.union_with(v);
                    }
                }
                (pass, bad)
            }
        };
        targets.push(TargetVerdict {
            query: t.query.to_string(),
            shape: t.shape.clone(),
            pass,
            witnesses: names(&witnesses),
        });
    }
    let (models_inspected, evidence) = match &m {
        Models::Partial(p) => (
            None,
            Evidence::Partial {
                model: PartialJson::new(p, graph),
            },
        ),
        Models::Set(ms) => (
            Some(ms.len()),
            Evidence::Models {
                models: ms.iter().map(|m| AssignmentJson::new(m, graph)).collect(),
            },
        ),
    };
    Ok(ValidationReport {
        format: REPORT_FORMAT,
        semantics: sigma,
        mode,
        pass: targets.iter().all(|t| t.pass),
        models_inspected,
        targets,
        evidence,
    })
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "semantics: {}, mode: {}", self.semantics, self.mode)?;
        if let Some(n) = self.models_inspected {
            writeln!(f, "models inspected: {n}")?;
        }
        for t in &self.targets {
            write!(f, "target {} <= {}: ", t.query, t.shape)?;
            if t.pass {
                writeln!(f, "PASS")?;
            } else {
                writeln!(f, "FAIL (witnesses: {})", t.witnesses.join(", "))?;
            }
        }
        writeln!(f, "result: {}", if self.pass { "PASS" } else { "FAIL" })
    }
}
