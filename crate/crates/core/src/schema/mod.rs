//! Abstract syntax for path expressions, shapes and schemas.

mod snf;

use std::collections::{BTreeSet, HashSet};
use std::num::NonZeroU32;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::interp::{ShapeId, Vocabulary};
use crate::textio::SourceSpan;

pub use snf::{is_snf, to_snf, Snf, SNF_PREFIX};

/// A regular path expression over property names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PathExpr {
    Prop(String),
    /// The surface syntax only admits the inverse of a property name; the
    /// AST allows any operand.
    Inverse(Box<PathExpr>),
    Union(Box<PathExpr>, Box<PathExpr>),
    Compose(Box<PathExpr>, Box<PathExpr>),
    Star(Box<PathExpr>),
    Optional(Box<PathExpr>),
}

impl PathExpr {
    pub fn prop(p: impl Into<String>) -> Self {
        PathExpr::Prop(p.into())
    }

    pub fn inverse(self) -> Self {
        PathExpr::Inverse(Box::new(self))
    }

    pub fn union(self, other: PathExpr) -> Self {
        PathExpr::Union(Box::new(self), Box::new(other))
    }

    pub fn then(self, other: PathExpr) -> Self {
        PathExpr::Compose(Box::new(self), Box::new(other))
    }

    pub fn star(self) -> Self {
        PathExpr::Star(Box::new(self))
    }

    pub fn optional(self) -> Self {
        PathExpr::Optional(Box::new(self))
    }

    pub fn props(&self, out: &mut BTreeSet<String>) {
        match self {
            PathExpr::Prop(p) => {
                out.insert(p.clone());
            }
            PathExpr::Inverse(e) | PathExpr::Star(e) | PathExpr::Optional(e) => e.props(out),
            PathExpr::Union(a, b) | PathExpr::Compose(a, b) => {
                a.props(out);
                b.props(out);
            }
        }
    }
}

/// A shape expression.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ShapeExpr {
    Top,
    Name(String),
    Nominal(String),
    And(Box<ShapeExpr>, Box<ShapeExpr>),
    Or(Box<ShapeExpr>, Box<ShapeExpr>),
    Not(Box<ShapeExpr>),
    Forall(PathExpr, Box<ShapeExpr>),
    GeqN(NonZeroU32, PathExpr, Box<ShapeExpr>),
    Eq(PathExpr, PathExpr),
    Disj(PathExpr, PathExpr),
    Closed(Vec<String>),
}

impl ShapeExpr {
    pub fn name(s: impl Into<String>) -> Self {
        ShapeExpr::Name(s.into())
    }

    pub fn nominal(c: impl Into<String>) -> Self {
        ShapeExpr::Nominal(c.into())
    }

    pub fn and(self, other: ShapeExpr) -> Self {
        ShapeExpr::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: ShapeExpr) -> Self {
        ShapeExpr::Or(Box::new(self), Box::new(other))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        ShapeExpr::Not(Box::new(self))
    }

    pub fn forall(path: PathExpr, body: ShapeExpr) -> Self {
        ShapeExpr::Forall(path, Box::new(body))
    }

    /// `≥n E.φ`. Panics if `n == 0`.
    pub fn geq(n: u32, path: PathExpr, body: ShapeExpr) -> Self {
        let n = NonZeroU32::new(n).expect("geq count must be at least 1");
        ShapeExpr::GeqN(n, path, Box::new(body))
    }

    /// `∃E.φ`, i.e. `≥1 E.φ`.
    pub fn exists(path: PathExpr, body: ShapeExpr) -> Self {
        Self::geq(1, path, body)
    }

    pub fn closed<S: Into<String>>(q: impl IntoIterator<Item = S>) -> Self {
        ShapeExpr::Closed(q.into_iter().map(Into::into).collect())
    }

    /// Direct subshapes, left to right.
    pub fn children(&self) -> Vec<&ShapeExpr> {
        match self {
            ShapeExpr::And(a, b) | ShapeExpr::Or(a, b) => vec![a, b],
            ShapeExpr::Not(a) | ShapeExpr::Forall(_, a) | ShapeExpr::GeqN(_, _, a) => vec![a],
            _ => Vec::new(),
        }
    }

    /// Calls `f` on every shape name occurrence, in pre-order.
    pub fn visit_names<'a>(&'a self, f: &mut impl FnMut(&'a str)) {
        if let ShapeExpr::Name(s) = self {
            f(s);
        }
        for c in self.children() {
            c.visit_names(f);
        }
    }

    pub fn mentions_shapes(&self) -> bool {
        let mut any = false;
        self.visit_names(&mut |_| any = true);
        any
    }

    pub fn props(&self, out: &mut BTreeSet<String>) {
        match self {
            ShapeExpr::Forall(e, _) | ShapeExpr::GeqN(_, e, _) => e.props(out),
            ShapeExpr::Eq(a, b) | ShapeExpr::Disj(a, b) => {
                a.props(out);
                b.props(out);
            }
            ShapeExpr::Closed(q) => out.extend(q.iter().cloned()),
            _ => {}
        }
        for c in self.children() {
            c.props(out);
        }
    }

    /// Expands `∨` and `∀` into their `¬`/`∧`/`≥1` forms, everywhere.
    pub fn expand_abbreviations(&self) -> ShapeExpr {
        match self {
            ShapeExpr::Or(a, b) => a
                .expand_abbreviations()
                .not()
                .and(b.expand_abbreviations().not())
                .not(),
            ShapeExpr::Forall(e, a) => {
                ShapeExpr::exists(e.clone(), a.expand_abbreviations().not()).not()
            }
            ShapeExpr::And(a, b) => a.expand_abbreviations().and(b.expand_abbreviations()),
            ShapeExpr::Not(a) => a.expand_abbreviations().not(),
            ShapeExpr::GeqN(n, e, a) => {
                ShapeExpr::GeqN(*n, e.clone(), Box::new(a.expand_abbreviations()))
            }
            other => other.clone(),
        }
    }
}

/// A rule `head ← body`.
#[derive(Debug, Clone)]
pub struct Rule {
    pub head: String,
    pub body: ShapeExpr,
    pub span: Option<SourceSpan>,
}

impl Rule {
    pub fn new(head: impl Into<String>, body: ShapeExpr) -> Self {
        Rule {
            head: head.into(),
            body,
            span: None,
        }
    }
}

impl PartialEq for Rule {
    fn eq(&self, other: &Self) -> bool {
        self.head == other.head && self.body == other.body
    }
}

impl Eq for Rule {}

/// A target inclusion `query ⊆ shape`.
#[derive(Debug, Clone)]
pub struct Target {
    pub query: ShapeExpr,
    pub shape: String,
    pub span: Option<SourceSpan>,
}

impl Target {
    pub fn new(query: ShapeExpr, shape: impl Into<String>) -> Self {
        Target {
            query,
            shape: shape.into(),
            span: None,
        }
    }
}

impl PartialEq for Target {
    fn eq(&self, other: &Self) -> bool {
        self.query == other.query && self.shape == other.shape
    }
}

impl Eq for Target {}

/// A validated schema: rules defining every shape name exactly once, and
/// targets whose queries mention no shape names.
///
/// The vocabulary is the list of rule heads in rule order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schema {
    rules: Vec<Rule>,
    targets: Vec<Target>,
    vocab: Arc<Vocabulary>,
}

impl Schema {
    pub fn new(rules: Vec<Rule>, targets: Vec<Target>) -> Result<Self> {
        let mut heads = HashSet::new();
        for r in &rules {
            if !heads.insert(r.head.as_str()) {
                return Err(Error::InvalidSchema(format!(
                    "shape `{}` is defined more than once",
                    r.head
                )));
            }
        }
        for r in &rules {
            let mut missing = None;
            r.body.visit_names(&mut |s| {
                if missing.is_none() && !heads.contains(s) {
                    missing = Some(s.to_owned());
                }
            });
            if let Some(s) = missing {
                return Err(Error::InvalidSchema(format!(
                    "shape `{s}` used in the body of `{}` has no defining rule",
                    r.head
                )));
            }
        }
        for t in &targets {
            if t.query.mentions_shapes() {
                return Err(Error::InvalidSchema(format!(
                    "target query for `{}` mentions a shape name",
                    t.shape
                )));
            }
            if !heads.contains(t.shape.as_str()) {
                return Err(Error::InvalidSchema(format!(
                    "target shape `{}` has no defining rule",
                    t.shape
                )));
            }
        }
        let vocab = Arc::new(Vocabulary::new(rules.iter().map(|r| r.head.clone())));
        Ok(Schema {
            rules,
            targets,
            vocab,
        })
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn targets(&self) -> &[Target] {
        &self.targets
    }

    pub fn vocabulary(&self) -> &Arc<Vocabulary> {
        &self.vocab
    }

    /// The rule defining `s`.
    pub fn rule(&self, s: &str) -> Option<&Rule> {
        self.vocab.id(s).map(|id| &self.rules[id.index()])
    }

    /// Property names mentioned anywhere in rules or targets.
    pub fn props(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for r in &self.rules {
            r.body.props(&mut out);
        }
        for t in &self.targets {
            t.query.props(&mut out);
        }
        out
    }

    /// Direct dependencies: for each shape, the shapes occurring in its body.
    fn direct_deps(&self) -> Vec<Vec<ShapeId>> {
        self.rules
            .iter()
            .map(|r| {
                let mut deps = Vec::new();
                r.body.visit_names(&mut |s| {
                    // Bodies only mention defined names.
                    if let Some(id) = self.vocab.id(s) {
                        if !deps.contains(&id) {
                            deps.push(id);
                        }
                    }
                });
                deps
            })
            .collect()
    }

    /// Shapes reachable from `s` in one or more steps of the mention graph.
    fn reachable(&self, s: ShapeId, deps: &[Vec<ShapeId>]) -> Vec<bool> {
        let mut seen = vec![false; self.vocab.len()];
        let mut stack: Vec<ShapeId> = deps[s.index()].clone();
        while let Some(t) = stack.pop() {
            if !std::mem::replace(&mut seen[t.index()], true) {
                stack.extend(deps[t.index()].iter().copied());
            }
        }
        seen
    }

    pub fn depends_on(&self, s1: &str, s2: &str) -> Result<bool> {
        let a = self
            .vocab
            .id(s1)
            .ok_or_else(|| Error::UnknownShape(s1.to_owned()))?;
        let b = self
            .vocab
            .id(s2)
            .ok_or_else(|| Error::UnknownShape(s2.to_owned()))?;
        Ok(self.reachable(a, &self.direct_deps())[b.index()])
    }

    pub fn is_recursive(&self) -> bool {
        let deps = self.direct_deps();
        self.vocab
            .ids()
            .any(|s| self.reachable(s, &deps)[s.index()])
    }

    /// Shapes in an order where every shape comes after the shapes it
    /// depends on, or `None` if the schema is recursive.
    pub fn dependency_order(&self) -> Option<Vec<ShapeId>> {
        let deps = self.direct_deps();
        let n = self.vocab.len();
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut state = vec![0u8; n];
        let mut order = Vec::with_capacity(n);
        fn visit(
            s: usize,
            deps: &[Vec<ShapeId>],
            state: &mut [u8],
            order: &mut Vec<ShapeId>,
        ) -> bool {
            match state[s] {
                1 => return false,
                2 => return true,
                _ => {}
            }
            state[s] = 1;
            for d in &deps[s] {
                if !visit(d.index(), deps, state, order) {
                    return false;
                }
            }
            state[s] = 2;
            order.push(ShapeId(s as u32));
            true
        }
        for s in 0..n {
            if !visit(s, &deps, &mut state, &mut order) {
                return None;
            }
        }
        Some(order)
    }
}

pub fn depends_on(schema: &Schema, s1: &str, s2: &str) -> Result<bool> {
    schema.depends_on(s1, s2)
}

pub fn is_recursive(schema: &Schema) -> bool {
    schema.is_recursive()
}
