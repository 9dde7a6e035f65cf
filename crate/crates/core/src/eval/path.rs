use crate::graph::{BinaryRelation, Graph};
use crate::schema::PathExpr;

/// The binary relation a path expression denotes in `g`. Property names
/// the graph does not mention denote the empty relation.
pub fn eval_path(e: &PathExpr, g: &Graph) -> BinaryRelation {
    let n = g.domain_len();
    match e {
        PathExpr::Prop(p) => g
            .relation(p)
            .cloned()
            .unwrap_or_else(|| BinaryRelation::empty(n)),
        PathExpr::Inverse(e) => eval_path(e, g).inverse(),
        PathExpr::Union(a, b) => eval_path(a, g).union(&eval_path(b, g)),
        PathExpr::Compose(a, b) => eval_path(a, g).compose(&eval_path(b, g)),
        PathExpr::Star(e) => eval_path(e, g).reflexive_transitive_closure(),
        PathExpr::Optional(e) => eval_path(e, g).union(&BinaryRelation::identity(n)),
    }
}
