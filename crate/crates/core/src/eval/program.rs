use std::sync::Arc;

use super::{closed_nodes, complement, disj_nodes, eq_nodes, eval_path};
use crate::error::{Error, Result};
use crate::graph::{BinaryRelation, Graph, NodeSet};
use crate::interp::{PartialInterpretation, ShapeAssignment, ShapeId, Vocabulary};
use crate::schema::{Schema, ShapeExpr};

#[derive(Debug, Clone)]
enum Node {
    /// Shape-free subformulas (`⊤`, `{c}`, `eq`, `disj`, `closed`) depend
    /// only on the graph and are evaluated once.
    Fixed(NodeSet),
    Name(ShapeId),
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
    Not(Box<Node>),
    Geq(usize, usize, Box<Node>),
    Forall(usize, Box<Node>),
}

/// A shape expression bound to a [`Program`]'s graph and vocabulary.
#[derive(Debug, Clone)]
pub struct CompiledShape(Node);

/// A schema bound to a graph: constants resolved, path expressions
/// evaluated, shape names replaced by vocabulary indices.
#[derive(Debug, Clone)]
pub struct Program<'a> {
    schema: &'a Schema,
    graph: &'a Graph,
    relations: Vec<BinaryRelation>,
    bodies: Vec<Node>,
    queries: Vec<Node>,
}

impl<'a> Program<'a> {
    /// Fails if a nominal names a node that is not in the graph.
    pub fn new(schema: &'a Schema, graph: &'a Graph) -> Result<Self> {
        let mut prog = Program {
            schema,
            graph,
            relations: Vec::new(),
            bodies: Vec::new(),
            queries: Vec::new(),
        };
        for r in schema.rules() {
            let body = prog.lower(&r.body)?;
            prog.bodies.push(body);
        }
        for t in schema.targets() {
            let q = prog.lower(&t.query)?;
            prog.queries.push(q);
        }
        Ok(prog)
    }

    pub fn schema(&self) -> &'a Schema {
        self.schema
    }

    pub fn graph(&self) -> &'a Graph {
        self.graph
    }

    pub fn vocabulary(&self) -> &Arc<Vocabulary> {
        self.schema.vocabulary()
    }

    pub fn domain_len(&self) -> usize {
        self.graph.domain_len()
    }

    /// Number of `(shape, node)` atoms.
    pub fn atom_count(&self) -> usize {
        self.vocabulary().len() * self.domain_len()
    }

    pub fn bottom(&self) -> ShapeAssignment {
        ShapeAssignment::bottom(self.vocabulary().clone(), self.domain_len())
    }

    pub fn top(&self) -> ShapeAssignment {
        ShapeAssignment::top(self.vocabulary().clone(), self.domain_len())
    }

    pub fn least_precise(&self) -> PartialInterpretation {
        PartialInterpretation::least_precise(self.vocabulary().clone(), self.domain_len())
    }

    /// Compiles an arbitrary shape over this program's vocabulary.
    pub fn compile(&mut self, phi: &ShapeExpr) -> Result<CompiledShape> {
        self.lower(phi).map(CompiledShape)
    }

    /// The compiled body of the rule for `s`.
    pub fn body(&self, s: ShapeId) -> CompiledShape {
        CompiledShape(self.bodies[s.index()].clone())
    }

    /// The compiled query of the `i`-th target.
    pub fn query(&self, i: usize) -> CompiledShape {
        CompiledShape(self.queries[i].clone())
    }

    fn lower(&mut self, phi: &ShapeExpr) -> Result<Node> {
        let g = self.graph;
        Ok(match phi {
            ShapeExpr::Top => Node::Fixed(g.full_set()),
            ShapeExpr::Name(s) => Node::Name(
                self.vocabulary()
                    .id(s)
                    .ok_or_else(|| Error::UnknownShape(s.clone()))?,
            ),
            ShapeExpr::Nominal(c) => {
                let node = g
                    .constant(c)
                    .ok_or_else(|| Error::UnknownConstant(c.clone()))?;
                let mut s = g.empty_set();
                s.insert(node.index());
                Node::Fixed(s)
            }
            ShapeExpr::And(a, b) => Node::And(Box::new(self.lower(a)?), Box::new(self.lower(b)?)),
            ShapeExpr::Or(a, b) => Node::Or(Box::new(self.lower(a)?), Box::new(self.lower(b)?)),
            ShapeExpr::Not(a) => Node::Not(Box::new(self.lower(a)?)),
            ShapeExpr::GeqN(n, e, a) => {
                self.relations.push(eval_path(e, g));
                let rel = self.relations.len() - 1;
                Node::Geq(n.get() as usize, rel, Box::new(self.lower(a)?))
            }
            ShapeExpr::Forall(e, a) => {
                self.relations.push(eval_path(e, g));
                let rel = self.relations.len() - 1;
                Node::Forall(rel, Box::new(self.lower(a)?))
            }
            ShapeExpr::Eq(e1, e2) => Node::Fixed(eq_nodes(g, e1, e2)),
            ShapeExpr::Disj(e1, e2) => Node::Fixed(disj_nodes(g, e1, e2)),
            ShapeExpr::Closed(q) => Node::Fixed(closed_nodes(g, q)),
        })
    }

    /// Evaluates with shape names read positively from `pos` and under
    /// negation from `neg`. With `(pos, neg) = (lower, upper)` this yields
    /// the nodes where the shape is certainly true; with `(upper, lower)`
    /// the nodes where it is possibly true. Monotone in `pos`, antitone in
    /// `neg`.
    fn eval_bound(&self, e: &Node, pos: &ShapeAssignment, neg: &ShapeAssignment) -> NodeSet {
        match e {
            Node::Fixed(s) => s.clone(),
            Node::Name(s) => pos.get(*s).clone(),
            Node::And(a, b) => {
                let mut s = self.eval_bound(a, pos, neg);
                s.intersect_with(&self.eval_bound(b, pos, neg));
                s
            }
            Node::Or(a, b) => {
                let mut s = self.eval_bound(a, pos, neg);
                s.union_with(&self.eval_bound(b, pos, neg));
                s
            }
            Node::Not(a) => complement(&self.eval_bound(a, neg, pos)),
            Node::Geq(n, rel, a) => {
                let inner = self.eval_bound(a, pos, neg);
                let rel = &self.relations[*rel];
                let mut s = self.graph.empty_set();
                for node in self.graph.nodes() {
                    if rel.image(node).intersection_count(&inner) >= *n {
                        s.insert(node.index());
                    }
                }
                s
            }
            Node::Forall(rel, a) => {
                let inner = self.eval_bound(a, pos, neg);
                let rel = &self.relations[*rel];
                let mut s = self.graph.empty_set();
                for node in self.graph.nodes() {
                    if rel.image(node).is_subset(&inner) {
                        s.insert(node.index());
                    }
                }
                s
            }
        }
    }

    /// Two-valued evaluation.
    pub fn eval_exact(&self, phi: &CompiledShape, a: &ShapeAssignment) -> NodeSet {
        self.eval_bound(&phi.0, a, a)
    }

    /// Three-valued evaluation as `(certainly true, possibly true)` sets.
    pub fn eval_partial(&self, phi: &CompiledShape, p: &PartialInterpretation) -> (NodeSet, NodeSet) {
        (
            self.eval_bound(&phi.0, p.lower(), p.upper()),
            self.eval_bound(&phi.0, p.upper(), p.lower()),
        )
    }

    /// `A(x, y)₁`: the certainly-true part of the approximator at `(x, y)`.
    /// Defined for any pair, consistent or not.
    pub(crate) fn psi_lower(&self, x: &ShapeAssignment, y: &ShapeAssignment) -> ShapeAssignment {
        self.apply(|body| self.eval_bound(body, x, y))
    }

    /// `A(x, y)₂`: the possibly-true part of the approximator at `(x, y)`.
    pub(crate) fn psi_upper(&self, x: &ShapeAssignment, y: &ShapeAssignment) -> ShapeAssignment {
        self.apply(|body| self.eval_bound(body, y, x))
    }

    fn apply(&self, f: impl Fn(&Node) -> NodeSet) -> ShapeAssignment {
        let sets = self.bodies.iter().map(f).collect();
        ShapeAssignment::from_sets(self.vocabulary().clone(), self.domain_len(), sets)
            .expect("bodies match vocabulary")
    }

    /// The immediate consequence operator: every shape gets the value of
    /// its body, all shapes updated simultaneously.
    pub fn t_op(&self, a: &ShapeAssignment) -> ShapeAssignment {
        self.apply(|body| self.eval_bound(body, a, a))
    }

    /// The three-valued approximator of [`Program::t_op`].
    pub fn psi_op(&self, p: &PartialInterpretation) -> PartialInterpretation {
        PartialInterpretation::new_unchecked(
            self.psi_lower(p.lower(), p.upper()),
            self.psi_upper(p.lower(), p.upper()),
        )
    }
}
