use std::fmt::Write as _;
use std::sync::Arc;

use super::SourceSpan;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn parse_graph(text: &str) -> Result<Graph> {
    parse(text, None)
}

/// Like [`parse_graph`], with `file` attached to error spans.
pub fn parse_graph_named(text: &str, file: &str) -> Result<Graph> {
    parse(text, Some(Arc::from(file)))
}

fn parse(text: &str, file: Option<Arc<str>>) -> Result<Graph> {
    let mut b = Graph::builder();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = line.split_whitespace().collect();
        match words.as_slice() {
            [] => {}
            ["node", x] => {
                b.node(x);
            }
            [s, p, o] => {
                b.edge(s, p, o);
            }
            _ => {
                let start = line.len() - line.trim_start().len();
                return Err(Error::Parse {
                    span: SourceSpan {
                        file: file.clone(),
                        line: i as u32 + 1,
                        col_start: line[..start].chars().count() as u32 + 1,
                        col_end: line.trim_end().chars().count() as u32 + 1,
                    },
                    message: format!(
                        "expected `subject property object` or `node name`, found {} word(s)",
                        words.len()
                    ),
                });
            }
        }
    }
    Ok(b.build())
}

/// Node declarations in domain order, then the triples grouped by
/// property. Parsing the output gives back the same graph, node order
/// included.
pub fn print_graph(g: &Graph) -> String {
    let mut out = String::new();
    for n in g.nodes() {
        let _ = writeln!(out, "node {}", g.node_name(n));
    }
    for (s, p, o) in g.triples() {
        let _ = writeln!(out, "{s} {p} {o}");
    }
    out
}
