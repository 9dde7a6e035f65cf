//! Stable models defined through level assignments, and their comparison
//! with the fixpoint-based stable models.
//!
//! A level assignment ranks every true `(subshape, node)` pair of a
//! two-valued model. Conjunctions take the maximum of their operands,
//! disjunctions the minimum over their true operands, `≥n E.φ` the least
//! `k` such that `n` true `E`-successors have level at most `k`, and `∀E.φ`
//! the maximum over its (true) successors. Every other true subshape,
//! negations included, gets level 0. A supported model is level-stable if
//! some assignment gives each true shape atom `s(a)` a level strictly above
//! that of its rule body at `a`.
//!
//! Only shape-name levels are free; every other level is a monotone
//! function of them. [`minimal_levels`] therefore computes the least
//! solution of `level(s, a) = level(body_s, a) + 1` by ascending
//! iteration. In a least solution each shape level is one more than another
//! shape level or equal to 1, so no level exceeds the number of true atoms;
//! crossing that bound proves no assignment exists.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::eval::{eval_path, eval_shape_2v, Program};
use crate::fixpoint::{enumerate_supported, is_stable, lfp_monotone, Limits};
use crate::graph::{BinaryRelation, Graph, NodeId, NodeSet};
use crate::interp::{ShapeAssignment, ShapeId};
use crate::schema::{is_snf, Schema, ShapeExpr};
use crate::textio::json::AssignmentJson;

enum Kind {
    /// Shape-free atoms and negations.
    Zero,
    Name(ShapeId),
    And,
    Or,
    Geq(usize, BinaryRelation),
    Forall(BinaryRelation),
}

/// One occurrence of a subshape in a rule body, with the nodes where it
/// holds in the model under consideration.
struct Occurrence {
    kind: Kind,
    truth: NodeSet,
    children: Vec<Occurrence>,
}

impl Occurrence {
    fn build(phi: &ShapeExpr, g: &Graph, m: &ShapeAssignment) -> Result<Self> {
        let truth = eval_shape_2v(phi, g, m)?;
        let kind = match phi {
            ShapeExpr::Name(s) => Kind::Name(
                m.vocabulary()
                    .id(s)
                    .ok_or_else(|| Error::UnknownShape(s.clone()))?,
            ),
            ShapeExpr::And(..) => Kind::And,
            ShapeExpr::Or(..) => Kind::Or,
            ShapeExpr::GeqN(n, e, _) => Kind::Geq(n.get() as usize, eval_path(e, g)),
            ShapeExpr::Forall(e, _) => Kind::Forall(eval_path(e, g)),
            _ => Kind::Zero,
        };
        let children = match kind {
            // Levels below a negation or a shape-free atom are never read.
            Kind::Zero => Vec::new(),
            _ => phi
                .children()
                .into_iter()
                .map(|c| Occurrence::build(c, g, m))
                .collect::<Result<_>>()?,
        };
        Ok(Occurrence {
            kind,
            truth,
            children,
        })
    }

    /// Level at every node where the occurrence is true; `None` elsewhere.
    fn levels(&self, shape_levels: &[Vec<Option<u32>>]) -> Vec<Option<u32>> {
        let n = self.truth.len();
        let child: Vec<Vec<Option<u32>>> =
            self.children.iter().map(|c| c.levels(shape_levels)).collect();
        (0..n)
            .map(|a| {
                if !self.truth.contains(a) {
                    return None;
                }
                Some(match &self.kind {
                    Kind::Zero => 0,
                    Kind::Name(s) => shape_levels[s.index()][a].expect("true atom has a level"),
                    Kind::And => child.iter().map(|c| c[a].expect("conjunct true")).max()?,
                    Kind::Or => child.iter().filter_map(|c| c[a]).min()?,
                    Kind::Geq(k, rel) => {
                        let mut ls: Vec<u32> =
                            rel.image(NodeId(a as u32)).ones().filter_map(|b| child[0][b]).collect();
                        ls.sort_unstable();
                        ls[*k - 1]
                    }
                    Kind::Forall(rel) => rel
                        .image(NodeId(a as u32))
                        .ones()
                        .map(|b| child[0][b].expect("universal successors are true"))
                        .max()
                        .unwrap_or(0),
                })
            })
            .collect()
    }
}

/// Levels for the true shape atoms of a model and for the rule bodies at
/// the nodes where they hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelAssignment {
    shapes: Vec<Vec<Option<u32>>>,
    bodies: Vec<Vec<Option<u32>>>,
}

impl LevelAssignment {
    /// `level(s, a)`, defined when `s` holds at `a`.
    pub fn shape_level(&self, s: ShapeId, a: NodeId) -> Option<u32> {
        self.shapes[s.index()][a.index()]
    }

    /// Level of the body of the rule for `s` at `a`, defined when the body
    /// holds at `a`.
    pub fn body_level(&self, s: ShapeId, a: NodeId) -> Option<u32> {
        self.bodies[s.index()][a.index()]
    }

    pub fn max_level(&self) -> u32 {
        self.shapes.iter().flatten().flatten().copied().max().unwrap_or(0)
    }
}

/// The pointwise-least level assignment for a supported model `m`, or
/// `None` if none satisfies the rule condition.
pub fn minimal_levels(prog: &Program, m: &ShapeAssignment) -> Result<Option<LevelAssignment>> {
    if prog.t_op(m) != *m {
        return Err(Error::NotSupported);
    }
    let g = prog.graph();
    let bodies = prog
        .schema()
        .rules()
        .iter()
        .map(|r| Occurrence::build(&r.body, g, m))
        .collect::<Result<Vec<_>>>()?;
    let bound = m.count_true() as u32;
    let n = g.domain_len();
    let mut shapes: Vec<Vec<Option<u32>>> = prog
        .vocabulary()
        .ids()
        .map(|s| (0..n).map(|a| m.get(s).contains(a).then_some(0)).collect())
        .collect();
    loop {
        let body_levels: Vec<Vec<Option<u32>>> = bodies.iter().map(|b| b.levels(&shapes)).collect();
        let mut next = shapes.clone();
        for (s, row) in next.iter_mut().enumerate() {
            for (a, slot) in row.iter_mut().enumerate() {
                if slot.is_some() {
                    let body = body_levels[s][a].expect("supported model: body holds where the head does");
                    if body + 1 > bound {
                        return Ok(None);
                    }
                    *slot = Some(body + 1);
                }
            }
        }
        if next == shapes {
            return Ok(Some(LevelAssignment {
                shapes,
                bodies: body_levels,
            }));
        }
        shapes = next;
    }
}

/// Whether `m` is a supported model admitting a level assignment.
pub fn is_acorss_stable(prog: &Program, m: &ShapeAssignment) -> bool {
    matches!(minimal_levels(prog, m), Ok(Some(_)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShapeLevels {
    pub shape: String,
    /// `(node, level)` for every node where the shape holds.
    pub levels: Vec<(String, u32)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelClassification {
    pub model: AssignmentJson,
    pub aft_stable: bool,
    pub acorss_stable: bool,
    /// The least level assignment, when one exists.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub levels: Option<Vec<ShapeLevels>>,
    /// `lfp z ↦ Ψ(z, m)₁`, when it differs from the model.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grounded_part: Option<AssignmentJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub format: u32,
    pub shape_normal_form: bool,
    pub supported: usize,
    pub aft_stable: usize,
    pub acorss_stable: usize,
    pub aft_subset_of_acorss: bool,
    pub sets_equal: bool,
    pub models: Vec<ModelClassification>,
}

fn shape_levels(schema: &Schema, g: &Graph, levels: &LevelAssignment) -> Vec<ShapeLevels> {
    schema
        .vocabulary()
        .ids()
        .map(|s| ShapeLevels {
            shape: schema.vocabulary().name(s).to_owned(),
            levels: g
                .nodes()
                .filter_map(|a| levels.shape_level(s, a).map(|l| (g.node_name(a).to_owned(), l)))
                .collect(),
        })
        .collect()
}

/// Classifies every supported model as fixpoint-stable and/or
/// level-stable.
///
/// Fails with [`Error::InvariantViolated`] if a fixpoint-stable model is
/// not level-stable, or if the schema is in shape normal form and the two
/// sets differ.
pub fn compare_semantics(prog: &Program, limits: Limits) -> Result<Comparison> {
    let g = prog.graph();
    let schema = prog.schema();
    let snf = is_snf(schema);
    let mut models = Vec::new();
    for m in enumerate_supported(prog, limits)? {
        let aft = is_stable(prog, &m);
        let levels = minimal_levels(prog, &m)?;
        let grounded = lfp_monotone(prog.bottom(), |z| prog.psi_lower(z, &m))?;
        models.push(ModelClassification {
            model: AssignmentJson::new(&m, g),
            aft_stable: aft,
            acorss_stable: levels.is_some(),
            levels: levels.as_ref().map(|l| shape_levels(schema, g, l)),
            grounded_part: (grounded != m).then(|| AssignmentJson::new(&grounded, g)),
        });
    }
    let aft_subset = models.iter().all(|c| !c.aft_stable || c.acorss_stable);
    let equal = models.iter().all(|c| c.aft_stable == c.acorss_stable);
    if !aft_subset {
        return Err(Error::InvariantViolated(
            "a fixpoint-stable model has no level assignment".into(),
        ));
    }
    if snf && !equal {
        return Err(Error::InvariantViolated(
            "stable model sets differ on a schema in shape normal form".into(),
        ));
    }
    Ok(Comparison {
        format: crate::validate::REPORT_FORMAT,
        shape_normal_form: snf,
        supported: models.len(),
        aft_stable: models.iter().filter(|c| c.aft_stable).count(),
        acorss_stable: models.iter().filter(|c| c.acorss_stable).count(),
        aft_subset_of_acorss: aft_subset,
        sets_equal: equal,
        models,
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "supported models: {}", self.supported)?;
        writeln!(f, "AFT-stable: {}, ACORSS-stable: {}", self.aft_stable, self.acorss_stable)?;
        writeln!(f, "shape normal form: {}", yes_no(self.shape_normal_form))?;
        writeln!(f, "AFT-stable within ACORSS-stable: {}", yes_no(self.aft_subset_of_acorss))?;
        writeln!(f, "sets equal: {}", yes_no(self.sets_equal))?;
        for (i, c) in self.models.iter().enumerate() {
            writeln!(
                f,
                "model {}: AFT-stable {}, ACORSS-stable {}",
                i + 1,
                yes_no(c.aft_stable),
                yes_no(c.acorss_stable)
            )?;
            write!(f, "{}", c.model)?;
        }
        Ok(())
    }
}
