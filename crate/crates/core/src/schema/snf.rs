//! Shape normal form: every rule body is a single connective applied to
//! shape names, or a shape-free atom.

use std::collections::HashSet;
use std::sync::Arc;

use super::{Rule, Schema, ShapeExpr};
use crate::error::Result;
use crate::interp::Vocabulary;

/// Prefix of the shape names introduced by [`to_snf`]. The schema parser
/// rejects user shape names starting with it.
pub const SNF_PREFIX: &str = "_snf";

/// The result of [`to_snf`].
#[derive(Debug, Clone)]
pub struct Snf {
    /// The normalized schema. Original rules keep their heads and relative
    /// order; each is followed by the rules for the names it introduced.
    pub schema: Schema,
    /// The shape names of the input schema.
    pub original: Arc<Vocabulary>,
    /// Each introduced name with the subshape of the input it stands for.
    pub introduced: Vec<(String, ShapeExpr)>,
}

fn is_name(e: &ShapeExpr) -> bool {
    matches!(e, ShapeExpr::Name(_))
}

/// Whether every rule body has one of the normal-form shapes:
/// `⊤`, `{c}`, `¬s`, `s ∧ s'`, `s ∨ s'`, `≥n E.s`, `∀E.s`, `eq(E, E')`,
/// `disj(E, E')` or `closed(Q)`.
pub fn is_snf(schema: &Schema) -> bool {
    schema.rules().iter().all(|r| match &r.body {
        ShapeExpr::Top
        | ShapeExpr::Nominal(_)
        | ShapeExpr::Eq(..)
        | ShapeExpr::Disj(..)
        | ShapeExpr::Closed(_) => true,
        ShapeExpr::Not(a) | ShapeExpr::Forall(_, a) | ShapeExpr::GeqN(_, _, a) => is_name(a),
        ShapeExpr::And(a, b) | ShapeExpr::Or(a, b) => is_name(a) && is_name(b),
        ShapeExpr::Name(_) => false,
    })
}

struct Namer<'a> {
    taken: &'a HashSet<String>,
    next: usize,
    introduced: Vec<(String, ShapeExpr)>,
}

impl Namer<'_> {
    fn fresh(&mut self) -> String {
        loop {
            self.next += 1;
            let name = format!("{SNF_PREFIX}{}", self.next);
            if !self.taken.contains(&name) {
                return name;
            }
        }
    }

    /// A shape name standing for `e`, adding rules for fresh names to `out`.
    fn name_for(&mut self, e: &ShapeExpr, out: &mut Vec<Rule>) -> ShapeExpr {
        if is_name(e) {
            return e.clone();
        }
        let name = self.fresh();
        self.introduced.push((name.clone(), e.clone()));
        let slot = out.len();
        out.push(Rule::new(name.clone(), ShapeExpr::Top));
        out[slot].body = self.flatten(e, out);
        ShapeExpr::Name(name)
    }

    /// Keeps the outermost connective of `e` and names its operands.
    fn flatten(&mut self, e: &ShapeExpr, out: &mut Vec<Rule>) -> ShapeExpr {
        match e {
            ShapeExpr::Top
            | ShapeExpr::Nominal(_)
            | ShapeExpr::Eq(..)
            | ShapeExpr::Disj(..)
            | ShapeExpr::Closed(_) => e.clone(),
            // `s ← s'` has no normal form of its own; `s' ∧ s'` is equivalent
            // in every semantics considered here.
            ShapeExpr::Name(_) => e.clone().and(e.clone()),
            ShapeExpr::Not(a) => self.name_for(a, out).not(),
            ShapeExpr::And(a, b) => {
                let a = self.name_for(a, out);
                a.and(self.name_for(b, out))
            }
            ShapeExpr::Or(a, b) => {
                let a = self.name_for(a, out);
                a.or(self.name_for(b, out))
            }
            ShapeExpr::Forall(p, a) => ShapeExpr::forall(p.clone(), self.name_for(a, out)),
            ShapeExpr::GeqN(n, p, a) => ShapeExpr::GeqN(*n, p.clone(), Box::new(self.name_for(a, out))),
        }
    }
}

/// Rewrites `schema` into shape normal form by introducing a fresh shape
/// name for every proper subshape that is not already a name. Targets are
/// unchanged.
pub fn to_snf(schema: &Schema) -> Result<Snf> {
    let taken: HashSet<String> = schema.vocabulary().names().iter().cloned().collect();
    let mut namer = Namer {
        taken: &taken,
        next: 0,
        introduced: Vec::new(),
    };
    let mut rules = Vec::new();
    for r in schema.rules() {
        let mut extra = Vec::new();
        let body = namer.flatten(&r.body, &mut extra);
        rules.push(Rule {
            head: r.head.clone(),
            body,
            span: r.span.clone(),
        });
        rules.extend(extra);
    }
    Ok(Snf {
        schema: Schema::new(rules, schema.targets().to_vec())?,
        original: schema.vocabulary().clone(),
        introduced: namer.introduced,
    })
}
