use super::{closed_nodes, disj_nodes, eq_nodes, eval_path};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, NodeSet};
use crate::interp::PartialInterpretation;
use crate::schema::ShapeExpr;
use crate::truth::TruthValue;

/// `φ^𝓘(node)` under Kleene's three-valued tables.
pub fn eval_shape_3v(
    phi: &ShapeExpr,
    g: &Graph,
    p: &PartialInterpretation,
    node: NodeId,
) -> Result<TruthValue> {
    Ok(eval_shape_3v_all(phi, g, p)?[node.index()])
}

/// `φ^𝓘(a)` for every node `a`, in domain order.
///
/// `≥n E.φ` is t when at least `n` successors are t, f when fewer than `n`
/// successors are t or u, and u otherwise. `∀E.φ` is the minimum over the
/// successors and `∨` the maximum of its operands.
pub fn eval_shape_3v_all(
    phi: &ShapeExpr,
    g: &Graph,
    p: &PartialInterpretation,
) -> Result<Vec<TruthValue>> {
    use TruthValue::*;
    if p.domain_len() != g.domain_len() {
        return Err(Error::VocabularyMismatch);
    }
    let n = g.domain_len();
    let from_set = |s: NodeSet| (0..n).map(|i| TruthValue::from(s.contains(i))).collect();
    Ok(match phi {
        ShapeExpr::Top => vec![True; n],
        ShapeExpr::Name(s) => {
            let id = p
                .vocabulary()
                .id(s)
                .ok_or_else(|| Error::UnknownShape(s.clone()))?;
            g.nodes().map(|a| p.value(id, a)).collect()
        }
        ShapeExpr::Nominal(c) => {
            let c = g
                .constant(c)
                .ok_or_else(|| Error::UnknownConstant(c.clone()))?;
            g.nodes().map(|a| TruthValue::from(a == c)).collect()
        }
        ShapeExpr::Not(x) => eval_shape_3v_all(x, g, p)?.into_iter().map(|v| !v).collect(),
        ShapeExpr::And(x, y) => {
            let (vx, vy) = (eval_shape_3v_all(x, g, p)?, eval_shape_3v_all(y, g, p)?);
            vx.into_iter().zip(vy).map(|(a, b)| a.min_t(b)).collect()
        }
        ShapeExpr::Or(x, y) => {
            let (vx, vy) = (eval_shape_3v_all(x, g, p)?, eval_shape_3v_all(y, g, p)?);
            vx.into_iter().zip(vy).map(|(a, b)| a.max_t(b)).collect()
        }
        ShapeExpr::GeqN(k, e, x) => {
            let inner = eval_shape_3v_all(x, g, p)?;
            let rel = eval_path(e, g);
            let k = k.get() as usize;
            g.nodes()
                .map(|a| {
                    let succ = rel.image(a);
                    let certain = succ.ones().filter(|&b| inner[b] == True).count();
                    let possible = succ.ones().filter(|&b| inner[b] != False).count();
                    if certain >= k {
                        True
                    } else if possible < k {
                        False
                    } else {
                        Unknown
                    }
                })
                .collect()
        }
        ShapeExpr::Forall(e, x) => {
            let inner = eval_shape_3v_all(x, g, p)?;
            let rel = eval_path(e, g);
            g.nodes()
                .map(|a| rel.image(a).ones().map(|b| inner[b]).min().unwrap_or(True))
                .collect()
        }
        ShapeExpr::Eq(e1, e2) => from_set(eq_nodes(g, e1, e2)),
        ShapeExpr::Disj(e1, e2) => from_set(disj_nodes(g, e1, e2)),
        ShapeExpr::Closed(q) => from_set(closed_nodes(g, q)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interp::{ShapeId, Vocabulary};
    use crate::schema::PathExpr;
    use std::sync::Arc;
    use TruthValue::*;

    #[test]
    fn negation_of_unknown() {
        let mut b = Graph::builder();
        b.node("n");
        let g = b.build();
        let v = Arc::new(Vocabulary::new(["s"]));
        let p = PartialInterpretation::least_precise(v, 1);
        let phi = ShapeExpr::name("s").not();
        assert_eq!(eval_shape_3v(&phi, &g, &p, NodeId(0)).unwrap(), Unknown);
    }

    #[test]
    fn counting_with_mixed_successors() {
        let mut b = Graph::builder();
        b.edge("a", "p", "x").edge("a", "p", "y").edge("a", "p", "z");
        let g = b.build();
        let v = Arc::new(Vocabulary::new(["s"]));
        let vals = |_: ShapeId, n: NodeId| match g.node_name(n) {
            "x" => True,
            "y" => Unknown,
            _ => False,
        };
        let p = PartialInterpretation::from_fn(v, g.domain_len(), vals);
        let a = g.constant("a").unwrap();
        let two = ShapeExpr::geq(2, PathExpr::prop("p"), ShapeExpr::name("s"));
        assert_eq!(eval_shape_3v(&two, &g, &p, a).unwrap(), Unknown);
        let one = ShapeExpr::geq(1, PathExpr::prop("p"), ShapeExpr::name("s"));
        assert_eq!(eval_shape_3v(&one, &g, &p, a).unwrap(), True);
        let three = ShapeExpr::geq(3, PathExpr::prop("p"), ShapeExpr::name("s"));
        assert_eq!(eval_shape_3v(&three, &g, &p, a).unwrap(), False);
        let all = ShapeExpr::forall(PathExpr::prop("p"), ShapeExpr::name("s"));
        assert_eq!(eval_shape_3v(&all, &g, &p, a).unwrap(), False);
    }
}
