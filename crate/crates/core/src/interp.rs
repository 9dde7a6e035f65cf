//! Two- and three-valued interpretations of shape names over a fixed graph
//! domain, with the truth and precision orders.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, NodeSet};
use crate::truth::TruthValue;

/// Dense index of a shape name within a [`Vocabulary`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ShapeId(pub u32);

impl ShapeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// The ordered set of shape names a schema defines.
#[derive(Debug, Clone, Default)]
pub struct Vocabulary {
    names: Vec<String>,
    index: HashMap<String, ShapeId>,
}

impl PartialEq for Vocabulary {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}

impl Eq for Vocabulary {}

impl Vocabulary {
    /// Builds a vocabulary; later duplicates of a name are ignored.
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        let mut v = Vocabulary::default();
        for n in names {
            let n = n.into();
            if !v.index.contains_key(&n) {
                v.index.insert(n.clone(), ShapeId(v.names.len() as u32));
                v.names.push(n);
            }
        }
        v
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn id(&self, name: &str) -> Option<ShapeId> {
        self.index.get(name).copied()
    }

    pub fn name(&self, id: ShapeId) -> &str {
        &self.names[id.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn ids(&self) -> impl Iterator<Item = ShapeId> {
        (0..self.names.len() as u32).map(ShapeId)
    }
}

/// A two-valued interpretation of every shape name as a set of nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeAssignment {
    vocab: Arc<Vocabulary>,
    domain: usize,
    sets: Vec<NodeSet>,
}

impl ShapeAssignment {
    /// The ≤t-least assignment: every shape empty.
    pub fn bottom(vocab: Arc<Vocabulary>, domain: usize) -> Self {
        let sets = vec![NodeSet::with_capacity(domain); vocab.len()];
        ShapeAssignment { vocab, domain, sets }
    }

    /// The ≤t-greatest assignment: every shape holds the whole domain.
    pub fn top(vocab: Arc<Vocabulary>, domain: usize) -> Self {
        let mut full = NodeSet::with_capacity(domain);
        full.insert_range(..);
        let sets = vec![full; vocab.len()];
        ShapeAssignment { vocab, domain, sets }
    }

    /// Builds an assignment from one set per shape, in vocabulary order.
    pub fn from_sets(vocab: Arc<Vocabulary>, domain: usize, sets: Vec<NodeSet>) -> Result<Self> {
        if sets.len() != vocab.len() || sets.iter().any(|s| s.len() != domain) {
            return Err(Error::VocabularyMismatch);
        }
        Ok(ShapeAssignment { vocab, domain, sets })
    }

    /// Builds an assignment from `(shape, node names)` pairs over `graph`.
    /// Shapes not mentioned are empty.
    pub fn from_names<'a>(
        vocab: Arc<Vocabulary>,
        graph: &Graph,
        entries: impl IntoIterator<Item = (&'a str, &'a [&'a str])>,
    ) -> Result<Self> {
        let mut a = Self::bottom(vocab, graph.domain_len());
        for (shape, nodes) in entries {
            let id = a
                .vocab
                .id(shape)
                .ok_or_else(|| Error::UnknownShape(shape.to_owned()))?;
            for n in nodes {
                let node = graph
                    .constant(n)
                    .ok_or_else(|| Error::UnknownConstant((*n).to_owned()))?;
                a.sets[id.index()].insert(node.index());
            }
        }
        Ok(a)
    }

    pub fn vocabulary(&self) -> &Arc<Vocabulary> {
        &self.vocab
    }

    pub fn domain_len(&self) -> usize {
        self.domain
    }

    pub fn get(&self, s: ShapeId) -> &NodeSet {
        &self.sets[s.index()]
    }

    pub fn get_mut(&mut self, s: ShapeId) -> &mut NodeSet {
        &mut self.sets[s.index()]
    }

    /// The set assigned to a shape name, if it is in the vocabulary.
    pub fn by_name(&self, name: &str) -> Option<&NodeSet> {
        self.vocab.id(name).map(|id| self.get(id))
    }

    pub fn contains(&self, s: ShapeId, node: NodeId) -> bool {
        self.sets[s.index()].contains(node.index())
    }

    pub fn sets(&self) -> &[NodeSet] {
        &self.sets
    }

    /// Number of `(shape, node)` atoms that hold.
    pub fn count_true(&self) -> usize {
        self.sets.iter().map(|s| s.count_ones(..)).sum()
    }

    pub(crate) fn same_shape(&self, other: &Self) -> bool {
        self.domain == other.domain && self.vocab == other.vocab
    }

    /// Pointwise subset inclusion.
    pub fn leq_t(&self, other: &Self) -> Result<bool> {
        if !self.same_shape(other) {
            return Err(Error::VocabularyMismatch);
        }
        Ok(self.sets.iter().zip(&other.sets).all(|(a, b)| a.is_subset(b)))
    }

    /// Keeps only the shapes named in `names`, in the order of `vocab`.
    pub fn restrict(&self, vocab: Arc<Vocabulary>) -> Result<Self> {
        let mut sets = Vec::with_capacity(vocab.len());
        for name in vocab.names() {
            let set = self
                .by_name(name)
                .ok_or_else(|| Error::UnknownShape(name.clone()))?;
            sets.push(set.clone());
        }
        Ok(ShapeAssignment {
            vocab,
            domain: self.domain,
            sets,
        })
    }

    /// Multi-line `shape: {n1, n2}` rendering in vocabulary then domain order.
    pub fn render(&self, graph: &Graph) -> String {
        let mut out = String::new();
        for id in self.vocab.ids() {
            let names: Vec<&str> = graph.names_of(self.get(id)).collect();
            let _ = writeln!(out, "{}: {{{}}}", self.vocab.name(id), names.join(", "));
        }
        out
    }
}

/// `a ≤t b`: pointwise subset inclusion over all shape names.
pub fn assignment_leq_t(a: &ShapeAssignment, b: &ShapeAssignment) -> Result<bool> {
    a.leq_t(b)
}

/// A consistent pair `(lower, upper)` with `lower ≤t upper`: `lower` is what
/// is certainly true, `upper` what is possibly true.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialInterpretation {
    lower: ShapeAssignment,
    upper: ShapeAssignment,
}

impl PartialInterpretation {
    /// Fails with [`Error::Inconsistent`] if the pair is not consistent.
    pub fn new(lower: ShapeAssignment, upper: ShapeAssignment) -> Result<Self> {
        if !lower.leq_t(&upper)? {
            return Err(Error::Inconsistent);
        }
        Ok(PartialInterpretation { lower, upper })
    }

    pub(crate) fn new_unchecked(lower: ShapeAssignment, upper: ShapeAssignment) -> Self {
        debug_assert!(lower.leq_t(&upper).unwrap_or(false));
        PartialInterpretation { lower, upper }
    }

    /// The ≤p-least pair `(⊥, ⊤)`: everything unknown.
    pub fn least_precise(vocab: Arc<Vocabulary>, domain: usize) -> Self {
        PartialInterpretation {
            lower: ShapeAssignment::bottom(vocab.clone(), domain),
            upper: ShapeAssignment::top(vocab, domain),
        }
    }

    /// Builds a pair from a truth value per `(shape, node)`.
    pub fn from_fn(
        vocab: Arc<Vocabulary>,
        domain: usize,
        mut value: impl FnMut(ShapeId, NodeId) -> TruthValue,
    ) -> Self {
        let mut lower = ShapeAssignment::bottom(vocab.clone(), domain);
        let mut upper = ShapeAssignment::bottom(vocab.clone(), domain);
        for s in vocab.ids() {
            for n in 0..domain {
                match value(s, NodeId(n as u32)) {
                    TruthValue::True => {
                        lower.sets[s.index()].insert(n);
                        upper.sets[s.index()].insert(n);
                    }
                    TruthValue::Unknown => upper.sets[s.index()].insert(n),
                    TruthValue::False => {}
                }
            }
        }
        PartialInterpretation { lower, upper }
    }

    pub fn lower(&self) -> &ShapeAssignment {
        &self.lower
    }

    pub fn upper(&self) -> &ShapeAssignment {
        &self.upper
    }

    pub fn into_parts(self) -> (ShapeAssignment, ShapeAssignment) {
        (self.lower, self.upper)
    }

    pub fn vocabulary(&self) -> &Arc<Vocabulary> {
        self.lower.vocabulary()
    }

    pub fn domain_len(&self) -> usize {
        self.lower.domain_len()
    }

    /// t if in lower, f if not in upper, u otherwise.
    pub fn value(&self, s: ShapeId, node: NodeId) -> TruthValue {
        if self.lower.contains(s, node) {
            TruthValue::True
        } else if self.upper.contains(s, node) {
            TruthValue::Unknown
        } else {
            TruthValue::False
        }
    }

    /// Nodes where `s` has the given value, in domain order.
    pub fn nodes_with(&self, s: ShapeId, v: TruthValue) -> NodeSet {
        let (l, u) = (self.lower.get(s), self.upper.get(s));
        match v {
            TruthValue::True => l.clone(),
            TruthValue::Unknown => {
                let mut out = u.clone();
                out.difference_with(l);
                out
            }
            TruthValue::False => {
                let mut out = NodeSet::with_capacity(self.domain_len());
                out.insert_range(..);
                out.difference_with(u);
                out
            }
        }
    }

    /// `self ≤p other`: lower grows, upper shrinks.
    pub fn precision_leq(&self, other: &Self) -> Result<bool> {
        Ok(self.lower.leq_t(&other.lower)? && other.upper.leq_t(&self.upper)?)
    }

    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    /// The two-valued assignment, if the pair is exact.
    pub fn as_exact(&self) -> Option<&ShapeAssignment> {
        self.is_exact().then_some(&self.lower)
    }

    /// Keeps only the shape names of `vocab`.
    pub fn restrict(&self, vocab: Arc<Vocabulary>) -> Result<Self> {
        Ok(PartialInterpretation {
            lower: self.lower.restrict(vocab.clone())?,
            upper: self.upper.restrict(vocab)?,
        })
    }

    /// One line per shape: `shape: t{..} u{..} f{..}`.
    pub fn render(&self, graph: &Graph) -> String {
        let mut out = String::new();
        for id in self.vocabulary().ids() {
            let _ = write!(out, "{}:", self.vocabulary().name(id));
            for v in [TruthValue::True, TruthValue::Unknown, TruthValue::False] {
                let set = self.nodes_with(id, v);
                let names: Vec<&str> = graph.names_of(&set).collect();
                let _ = write!(out, " {}{{{}}}", v.symbol(), names.join(", "));
            }
            out.push('\n');
        }
        out
    }
}

pub fn precision_leq(a: &PartialInterpretation, b: &PartialInterpretation) -> Result<bool> {
    a.precision_leq(b)
}

/// Embeds a two-valued assignment as the exact pair `(a, a)`.
pub fn exactify(a: &ShapeAssignment) -> PartialInterpretation {
    PartialInterpretation {
        lower: a.clone(),
        upper: a.clone(),
    }
}

pub fn is_exact(p: &PartialInterpretation) -> bool {
    p.is_exact()
}
