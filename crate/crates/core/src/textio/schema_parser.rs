use std::collections::HashMap;
use std::num::NonZeroU32;
use std::sync::Arc;

use super::lexer::{tokenize, Tok};
use super::SourceSpan;
use crate::error::{Error, Result};
use crate::schema::{PathExpr, Rule, Schema, ShapeExpr, Target, SNF_PREFIX};

const KEYWORDS: &[&str] = &[
    "shape", "target", "top", "not", "and", "or", "geq", "forall", "eq", "disjoint", "closed",
];

#[derive(Debug, Clone, Default)]
pub struct ParseOptions {
    /// File name attached to spans.
    pub file: Option<String>,
    /// Accept shape names with the prefix reserved for normal-form names.
    pub allow_reserved: bool,
}

pub fn parse_schema(text: &str) -> Result<Schema> {
    parse_schema_with(text, &ParseOptions::default())
}

pub fn parse_schema_with(text: &str, opts: &ParseOptions) -> Result<Schema> {
    let file: Option<Arc<str>> = opts.file.as_deref().map(Arc::from);
    let toks = tokenize(text, file.as_ref())?;
    let mut p = Parser {
        toks,
        pos: 0,
        refs: Vec::new(),
    };
    let mut rules = Vec::new();
    let mut targets = Vec::new();
    let mut heads: HashMap<String, SourceSpan> = HashMap::new();
    let mut target_refs = Vec::new();
    loop {
        let (tok, span) = p.peek().clone();
        match tok {
            Tok::Eof => break,
            Tok::Ident(k) if k == "shape" => {
                p.bump();
                let (head, head_span) = p.shape_name()?;
                if !opts.allow_reserved && head.starts_with(SNF_PREFIX) {
                    return Err(perr(
                        head_span,
                        format!("shape names starting with `{SNF_PREFIX}` are reserved"),
                    ));
                }
                if heads.contains_key(&head) {
                    return Err(perr(head_span, format!("shape `{head}` is defined more than once")));
                }
                heads.insert(head.clone(), head_span.clone());
                p.expect(Tok::Define)?;
                let body = p.shape()?;
                let end = p.expect(Tok::Semi)?;
                rules.push(Rule {
                    head,
                    body,
                    span: Some(join(&span, &end)),
                });
            }
            Tok::Ident(k) if k == "target" => {
                p.bump();
                let before = p.refs.len();
                let query = p.shape()?;
                if let Some((name, at)) = p.refs.get(before).cloned() {
                    return Err(perr(
                        at,
                        format!("target query mentions shape name `{name}`; target queries must be shape-free"),
                    ));
                }
                p.expect(Tok::Subset)?;
                let (shape, shape_span) = p.shape_name()?;
                let end = p.expect(Tok::Semi)?;
                target_refs.push((shape.clone(), shape_span));
                targets.push(Target {
                    query,
                    shape,
                    span: Some(join(&span, &end)),
                });
            }
            other => {
                return Err(perr(
                    span,
                    format!("expected `shape` or `target`, found {}", other.describe()),
                ))
            }
        }
    }
    for (name, at) in p.refs.iter().chain(&target_refs) {
        if !heads.contains_key(name) {
            return Err(perr(at.clone(), format!("shape `{name}` has no defining rule")));
        }
    }
    Schema::new(rules, targets)
}

fn perr(span: SourceSpan, message: String) -> Error {
    Error::Parse { span, message }
}

fn join(a: &SourceSpan, b: &SourceSpan) -> SourceSpan {
    if a.line == b.line {
        SourceSpan {
            col_end: b.col_end,
            ..a.clone()
        }
    } else {
        a.clone()
    }
}

struct Parser {
    toks: Vec<(Tok, SourceSpan)>,
    pos: usize,
    /// Shape-name references in shape position, with their spans.
    refs: Vec<(String, SourceSpan)>,
}

impl Parser {
    fn peek(&self) -> &(Tok, SourceSpan) {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> (Tok, SourceSpan) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(&self.peek().0, Tok::Ident(k) if k == kw)
    }

    fn expect(&mut self, want: Tok) -> Result<SourceSpan> {
        let (tok, span) = self.bump();
        if tok == want {
            Ok(span)
        } else {
            Err(perr(
                span,
                format!("expected {}, found {}", want.describe(), tok.describe()),
            ))
        }
    }

    /// Any identifier (node names, property names).
    fn name(&mut self) -> Result<(String, SourceSpan)> {
        match self.bump() {
            (Tok::Ident(s), span) => Ok((s, span)),
            (tok, span) => Err(perr(span, format!("expected a name, found {}", tok.describe()))),
        }
    }

    /// An identifier usable as a shape name: not a keyword.
    fn shape_name(&mut self) -> Result<(String, SourceSpan)> {
        let (s, span) = self.name()?;
        if KEYWORDS.contains(&s.as_str()) {
            return Err(perr(span, format!("`{s}` is a keyword, not a shape name")));
        }
        Ok((s, span))
    }

    fn shape(&mut self) -> Result<ShapeExpr> {
        let mut e = self.and_expr()?;
        while self.at_keyword("or") {
            self.bump();
            e = e.or(self.and_expr()?);
        }
        Ok(e)
    }

    fn and_expr(&mut self) -> Result<ShapeExpr> {
        let mut e = self.unary()?;
        while self.at_keyword("and") {
            self.bump();
            e = e.and(self.unary()?);
        }
        Ok(e)
    }

    fn unary(&mut self) -> Result<ShapeExpr> {
        if self.at_keyword("not") {
            self.bump();
            return Ok(self.unary()?.not());
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<ShapeExpr> {
        let (tok, span) = self.peek().clone();
        match tok {
            Tok::LParen => {
                self.bump();
                let e = self.shape()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::LBrace => {
                self.bump();
                let (c, _) = self.name()?;
                self.expect(Tok::RBrace)?;
                Ok(ShapeExpr::Nominal(c))
            }
            Tok::Ident(k) => match k.as_str() {
                "top" => {
                    self.bump();
                    Ok(ShapeExpr::Top)
                }
                "geq" => {
                    self.bump();
                    let (n, nspan) = self.name()?;
                    let n: u32 = n.parse().map_err(|_| {
                        perr(nspan.clone(), format!("expected a count after `geq`, found `{n}`"))
                    })?;
                    let n = NonZeroU32::new(n)
                        .ok_or_else(|| perr(nspan, "the count of `geq` must be at least 1".into()))?;
                    self.expect(Tok::LParen)?;
                    let path = self.path()?;
                    self.expect(Tok::Comma)?;
                    let body = self.shape()?;
                    self.expect(Tok::RParen)?;
                    Ok(ShapeExpr::GeqN(n, path, Box::new(body)))
                }
                "forall" => {
                    self.bump();
                    self.expect(Tok::LParen)?;
                    let path = self.path()?;
                    self.expect(Tok::Comma)?;
                    let body = self.shape()?;
                    self.expect(Tok::RParen)?;
                    Ok(ShapeExpr::forall(path, body))
                }
                "eq" | "disjoint" => {
                    self.bump();
                    self.expect(Tok::LParen)?;
                    let a = self.path()?;
                    self.expect(Tok::Comma)?;
                    let b = self.path()?;
                    self.expect(Tok::RParen)?;
                    Ok(if k == "eq" {
                        ShapeExpr::Eq(a, b)
                    } else {
                        ShapeExpr::Disj(a, b)
                    })
                }
                "closed" => {
                    self.bump();
                    self.expect(Tok::LParen)?;
                    let mut q = Vec::new();
                    if self.peek().0 != Tok::RParen {
                        q.push(self.name()?.0);
                        while self.peek().0 == Tok::Comma {
                            self.bump();
                            q.push(self.name()?.0);
                        }
                    }
                    self.expect(Tok::RParen)?;
                    Ok(ShapeExpr::Closed(q))
                }
                _ => {
                    let (s, span) = self.shape_name()?;
                    self.refs.push((s.clone(), span));
                    Ok(ShapeExpr::Name(s))
                }
            },
            other => Err(perr(span, format!("expected a shape, found {}", other.describe()))),
        }
    }

    fn path(&mut self) -> Result<PathExpr> {
        let mut e = self.seq()?;
        while self.peek().0 == Tok::Bar {
            self.bump();
            e = e.union(self.seq()?);
        }
        Ok(e)
    }

    fn seq(&mut self) -> Result<PathExpr> {
        let mut e = self.postfix()?;
        while self.peek().0 == Tok::Slash {
            self.bump();
            e = e.then(self.postfix()?);
        }
        Ok(e)
    }

    fn postfix(&mut self) -> Result<PathExpr> {
        let mut e = self.base()?;
        loop {
            match self.peek().0 {
                Tok::Star => e = e.star(),
                Tok::Question => e = e.optional(),
                _ => return Ok(e),
            }
            self.bump();
        }
    }

    fn base(&mut self) -> Result<PathExpr> {
        let (tok, span) = self.bump();
        match tok {
            Tok::Ident(p) => Ok(PathExpr::Prop(p)),
            Tok::Caret => Ok(PathExpr::prop(self.name()?.0).inverse()),
            Tok::LParen => {
                let e = self.path()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            other => Err(perr(span, format!("expected a path, found {}", other.describe()))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err_at(text: &str) -> (u32, u32, String) {
        match parse_schema(text) {
            Err(Error::Parse { span, message }) => (span.line, span.col_start, message),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn example_schema() {
        let s = parse_schema(
            "shape atRisk := not geq 1 (vaccinated, top) and (geq 1 (hasSymptoms, top) or geq 1 (closeTo, atRisk));\n\
             shape canWork := not atRisk;",
        )
        .unwrap();
        assert_eq!(s.rules().len(), 2);
        let p = PathExpr::prop;
        let expected = ShapeExpr::exists(p("vaccinated"), ShapeExpr::Top)
            .not()
            .and(
                ShapeExpr::exists(p("hasSymptoms"), ShapeExpr::Top)
                    .or(ShapeExpr::exists(p("closeTo"), ShapeExpr::name("atRisk"))),
            );
        assert_eq!(s.rules()[0].body, expected);
        assert_eq!(s.rules()[1].body, ShapeExpr::name("atRisk").not());
    }

    #[test]
    fn precedence() {
        let s = parse_schema("shape a := not a and a or a; shape b := not (a or b);").unwrap();
        let n = ShapeExpr::name;
        assert_eq!(s.rules()[0].body, n("a").not().and(n("a")).or(n("a")));
        assert_eq!(s.rules()[1].body, n("a").or(n("b")).not());
    }

    #[test]
    fn path_syntax() {
        let s = parse_schema("shape a := forall(p/^q* | r?, top);").unwrap();
        let p = PathExpr::prop;
        let expected = p("p").then(p("q").inverse().star()).union(p("r").optional());
        assert_eq!(s.rules()[0].body, ShapeExpr::forall(expected, ShapeExpr::Top));
    }

    #[test]
    fn closed_and_nominal() {
        let s = parse_schema("shape a := closed() or closed(p, q) or {c};").unwrap();
        let expected = ShapeExpr::closed(Vec::<String>::new())
            .or(ShapeExpr::closed(["p", "q"]))
            .or(ShapeExpr::nominal("c"));
        assert_eq!(s.rules()[0].body, expected);
    }

    #[test]
    fn duplicate_head() {
        let (line, col, msg) = err_at("shape s := top;\nshape s := top;");
        assert_eq!((line, col), (2, 7));
        assert!(msg.contains("more than once"));
    }

    #[test]
    fn shape_in_target() {
        let (line, col, msg) = err_at("shape s := top;\ntarget s <= s;");
        assert_eq!((line, col), (2, 8));
        assert!(msg.contains("shape-free"));
    }

    #[test]
    fn undefined_shape() {
        let (line, col, msg) = err_at("shape s := top and t;");
        assert_eq!((line, col), (1, 20));
        assert!(msg.contains("`t`"));
        let (_, _, msg) = err_at("shape s := top; target top <= u;");
        assert!(msg.contains("`u`"));
    }

    #[test]
    fn zero_count() {
        let (line, col, msg) = err_at("shape s := geq 0 (p, top);");
        assert_eq!((line, col), (1, 16));
        assert!(msg.contains("at least 1"));
    }

    #[test]
    fn reserved_prefix() {
        let (_, _, msg) = err_at("shape _snf1 := top;");
        assert!(msg.contains("reserved"));
        let opts = ParseOptions {
            allow_reserved: true,
            ..Default::default()
        };
        assert!(parse_schema_with("shape _snf1 := top;", &opts).is_ok());
    }

    #[test]
    fn syntax_errors_carry_spans() {
        let (line, col, _) = err_at("shape s := top\nshape t := top;");
        assert_eq!((line, col), (2, 1));
        let (line, col, _) = err_at("shape s := geq 1 (p top);");
        assert_eq!((line, col), (1, 21));
        let (_, _, msg) = err_at("shape s := ;");
        assert!(msg.contains("expected a shape"));
        let (_, _, msg) = err_at("shape and := top;");
        assert!(msg.contains("keyword"));
    }

    #[test]
    fn spans_name_the_file() {
        let opts = ParseOptions {
            file: Some("x.shacl".into()),
            ..Default::default()
        };
        let err = parse_schema_with("shape s := t;", &opts).unwrap_err();
        assert!(err.to_string().starts_with("x.shacl:1:12"));
    }

    #[test]
    fn empty_schema() {
        let s = parse_schema("# nothing here\n").unwrap();
        assert!(s.rules().is_empty());
    }
}
