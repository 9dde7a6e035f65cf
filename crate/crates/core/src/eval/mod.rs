//! Evaluation of path expressions and shapes.
//!
//! Two independent routes exist for shapes. [`eval_shape_2v`] and
//! [`eval_shape_3v`] walk the AST directly, following the two- and
//! three-valued truth tables node by node. [`Program`] binds a schema to a
//! graph once and evaluates every shape over the bilattice of
//! (certainly-true, possibly-true) node sets; the fixpoint engine runs on
//! it. Tests check the two agree.

mod path;
mod program;
mod three;
mod two;

pub use path::eval_path;
pub use program::{CompiledShape, Program};
pub use three::{eval_shape_3v, eval_shape_3v_all};
pub use two::eval_shape_2v;

use crate::graph::{Graph, NodeSet};
use crate::schema::PathExpr;

/// Nodes `a` with `E(a) = E'(a)`.
pub(crate) fn eq_nodes(g: &Graph, e1: &PathExpr, e2: &PathExpr) -> NodeSet {
    let (r1, r2) = (eval_path(e1, g), eval_path(e2, g));
    g.nodes()
        .filter(|&a| r1.image(a) == r2.image(a))
        .map(|a| a.index())
        .collect::<NodeSet>()
        .with_len(g.domain_len())
}

/// Nodes `a` with `E(a) ∩ E'(a) = ∅`.
pub(crate) fn disj_nodes(g: &Graph, e1: &PathExpr, e2: &PathExpr) -> NodeSet {
    let (r1, r2) = (eval_path(e1, g), eval_path(e2, g));
    g.nodes()
        .filter(|&a| r1.image(a).is_disjoint(r2.image(a)))
        .map(|a| a.index())
        .collect::<NodeSet>()
        .with_len(g.domain_len())
}

/// Nodes without outgoing edges for every property outside `allowed`.
/// Properties the graph never mentions are empty, so only the graph's own
/// properties need checking.
pub(crate) fn closed_nodes(g: &Graph, allowed: &[String]) -> NodeSet {
    let mut out = g.full_set();
    for p in g.prop_names() {
        if allowed.iter().any(|q| q == p) {
            continue;
        }
        let rel = g.relation(p).expect("listed property exists");
        for a in g.nodes() {
            if !rel.image(a).is_clear() {
                out.set(a.index(), false);
            }
        }
    }
    out
}

pub(crate) trait WithLen {
    fn with_len(self, n: usize) -> NodeSet;
}

impl WithLen for NodeSet {
    fn with_len(mut self, n: usize) -> NodeSet {
        self.grow(n);
        self
    }
}

pub(crate) fn complement(set: &NodeSet) -> NodeSet {
    let mut out = set.clone();
    out.toggle_range(..);
    out
}
