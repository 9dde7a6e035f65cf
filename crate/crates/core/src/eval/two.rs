use super::{closed_nodes, complement, disj_nodes, eq_nodes, eval_path};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeSet};
use crate::interp::ShapeAssignment;
use crate::schema::ShapeExpr;

/// The set of nodes satisfying `φ` in the two-valued interpretation that
/// extends `g` with `a`.
pub fn eval_shape_2v(phi: &ShapeExpr, g: &Graph, a: &ShapeAssignment) -> Result<NodeSet> {
    if a.domain_len() != g.domain_len() {
        return Err(Error::VocabularyMismatch);
    }
    Ok(match phi {
        ShapeExpr::Top => g.full_set(),
        ShapeExpr::Name(s) => a
            .by_name(s)
            .ok_or_else(|| Error::UnknownShape(s.clone()))?
            .clone(),
        ShapeExpr::Nominal(c) => {
            let node = g
                .constant(c)
                .ok_or_else(|| Error::UnknownConstant(c.clone()))?;
            let mut s = g.empty_set();
            s.insert(node.index());
            s
        }
        ShapeExpr::And(x, y) => {
            let mut s = eval_shape_2v(x, g, a)?;
            s.intersect_with(&eval_shape_2v(y, g, a)?);
            s
        }
        ShapeExpr::Or(x, y) => {
            let mut s = eval_shape_2v(x, g, a)?;
            s.union_with(&eval_shape_2v(y, g, a)?);
            s
        }
        ShapeExpr::Not(x) => complement(&eval_shape_2v(x, g, a)?),
        ShapeExpr::GeqN(n, e, x) => {
            let inner = eval_shape_2v(x, g, a)?;
            let rel = eval_path(e, g);
            let mut s = g.empty_set();
            for node in g.nodes() {
                if rel.image(node).intersection_count(&inner) >= n.get() as usize {
                    s.insert(node.index());
                }
            }
            s
        }
        ShapeExpr::Forall(e, x) => {
            let inner = eval_shape_2v(x, g, a)?;
            let rel = eval_path(e, g);
            let mut s = g.empty_set();
            for node in g.nodes() {
                if rel.image(node).is_subset(&inner) {
                    s.insert(node.index());
                }
            }
            s
        }
        ShapeExpr::Eq(e1, e2) => eq_nodes(g, e1, e2),
        ShapeExpr::Disj(e1, e2) => disj_nodes(g, e1, e2),
        ShapeExpr::Closed(q) => closed_nodes(g, q),
    })
}
