//! Pretty-printing in schema syntax, with the fewest parentheses that
//! reproduce the same tree when parsed back.

use std::fmt::{self, Write as _};

use crate::schema::{PathExpr, Schema, ShapeExpr};

fn push_inverse(e: &PathExpr) -> PathExpr {
    match e {
        PathExpr::Prop(_) => e.clone().inverse(),
        PathExpr::Inverse(inner) => (**inner).clone(),
        PathExpr::Union(a, b) => push_inverse(a).union(push_inverse(b)),
        PathExpr::Compose(a, b) => push_inverse(b).then(push_inverse(a)),
        PathExpr::Star(a) => push_inverse(a).star(),
        PathExpr::Optional(a) => push_inverse(a).optional(),
    }
}

fn path(e: &PathExpr, prec: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    if let PathExpr::Inverse(inner) = e {
        // Only inverses of property names have surface syntax.
        if !matches!(**inner, PathExpr::Prop(_)) {
            return path(&push_inverse(inner), prec, out);
        }
    }
    let own = match e {
        PathExpr::Union(..) => 1,
        PathExpr::Compose(..) => 2,
        _ => 3,
    };
    if own < prec {
        out.write_char('(')?;
    }
    match e {
        PathExpr::Prop(p) => out.write_str(p)?,
        PathExpr::Inverse(inner) => write!(out, "^{}", inner)?,
        PathExpr::Union(a, b) => {
            path(a, 1, out)?;
            out.write_str(" | ")?;
            path(b, 2, out)?;
        }
        PathExpr::Compose(a, b) => {
            path(a, 2, out)?;
            out.write_char('/')?;
            path(b, 3, out)?;
        }
        PathExpr::Star(a) => {
            path(a, 3, out)?;
            out.write_char('*')?;
        }
        PathExpr::Optional(a) => {
            path(a, 3, out)?;
            out.write_char('?')?;
        }
    }
    if own < prec {
        out.write_char(')')?;
    }
    Ok(())
}

fn shape(e: &ShapeExpr, prec: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    let own = match e {
        ShapeExpr::Or(..) => 1,
        ShapeExpr::And(..) => 2,
        _ => 3,
    };
    if own < prec {
        out.write_char('(')?;
    }
    match e {
        ShapeExpr::Top => out.write_str("top")?,
        ShapeExpr::Name(s) => out.write_str(s)?,
        ShapeExpr::Nominal(c) => write!(out, "{{{c}}}")?,
        ShapeExpr::Or(a, b) => {
            shape(a, 1, out)?;
            out.write_str(" or ")?;
            shape(b, 2, out)?;
        }
        ShapeExpr::And(a, b) => {
            shape(a, 2, out)?;
            out.write_str(" and ")?;
            shape(b, 3, out)?;
        }
        ShapeExpr::Not(a) => {
            out.write_str("not ")?;
            shape(a, 3, out)?;
        }
        ShapeExpr::GeqN(n, p, a) => {
            write!(out, "geq {n} (")?;
            path(p, 1, out)?;
            out.write_str(", ")?;
            shape(a, 1, out)?;
            out.write_char(')')?;
        }
        ShapeExpr::Forall(p, a) => {
            out.write_str("forall (")?;
            path(p, 1, out)?;
            out.write_str(", ")?;
            shape(a, 1, out)?;
            out.write_char(')')?;
        }
        ShapeExpr::Eq(a, b) | ShapeExpr::Disj(a, b) => {
            out.write_str(if matches!(e, ShapeExpr::Eq(..)) { "eq (" } else { "disjoint (" })?;
            path(a, 1, out)?;
            out.write_str(", ")?;
            path(b, 1, out)?;
            out.write_char(')')?;
        }
        ShapeExpr::Closed(q) => write!(out, "closed ({})", q.join(", "))?,
    }
    if own < prec {
        out.write_char(')')?;
    }
    Ok(())
}

impl fmt::Display for PathExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        path(self, 1, f)
    }
}

impl fmt::Display for ShapeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        shape(self, 1, f)
    }
}

/// The schema in surface syntax: one rule or target per line, rules first.
pub fn print_schema(schema: &Schema) -> String {
    let mut out = String::new();
    for r in schema.rules() {
        let _ = writeln!(out, "shape {} := {};", r.head, r.body);
    }
    for t in schema.targets() {
        let _ = writeln!(out, "target {} <= {};", t.query, t.shape);
    }
    out
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_schema(self))
    }
}
