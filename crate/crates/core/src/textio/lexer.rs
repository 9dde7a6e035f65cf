use std::sync::Arc;

use super::SourceSpan;
use crate::error::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Define,
    Subset,
    Semi,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Bar,
    Slash,
    Star,
    Question,
    Caret,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Define => "`:=`".into(),
            Tok::Subset => "`<=`".into(),
            Tok::Semi => "`;`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Star => "`*`".into(),
            Tok::Question => "`?`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

const PUNCT: &[char] = &[';', '(', ')', '{', '}', ',', '|', '/', '*', '?', '^', '#'];

pub(crate) fn tokenize(src: &str, file: Option<&Arc<str>>) -> Result<Vec<(Tok, SourceSpan)>, Error> {
    let mut out = Vec::new();
    let mut line_no = 0u32;
    for line in src.lines() {
        line_no += 1;
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        let span = |start: usize, end: usize| SourceSpan {
            file: file.cloned(),
            line: line_no,
            col_start: start as u32 + 1,
            col_end: end as u32 + 1,
        };
        while i < chars.len() {
            let c = chars[i];
            let next = chars.get(i + 1).copied();
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c == '#' {
                break;
            }
            let (tok, len) = match (c, next) {
                (':', Some('=')) => (Tok::Define, 2),
                ('<', Some('=')) => (Tok::Subset, 2),
                (';', _) => (Tok::Semi, 1),
                ('(', _) => (Tok::LParen, 1),
                (')', _) => (Tok::RParen, 1),
                ('{', _) => (Tok::LBrace, 1),
                ('}', _) => (Tok::RBrace, 1),
                (',', _) => (Tok::Comma, 1),
                ('|', _) => (Tok::Bar, 1),
                ('/', _) => (Tok::Slash, 1),
                ('*', _) => (Tok::Star, 1),
                ('?', _) => (Tok::Question, 1),
                ('^', _) => (Tok::Caret, 1),
                _ => {
                    let start = i;
                    let mut j = i;
                    while j < chars.len() {
                        let c = chars[j];
                        let n = chars.get(j + 1).copied();
                        if c.is_whitespace()
                            || PUNCT.contains(&c)
                            || (c == ':' && n == Some('='))
                            || (c == '<' && n == Some('='))
                        {
                            break;
                        }
                        j += 1;
                    }
                    if j == start {
                        return Err(Error::Parse {
                            span: span(start, start + 1),
                            message: format!("unexpected character `{c}`"),
                        });
                    }
                    let text: String = chars[start..j].iter().collect();
                    (Tok::Ident(text), j - start)
                }
            };
            out.push((tok, span(i, i + len)));
            i += len;
        }
    }
    out.push((
        Tok::Eof,
        SourceSpan {
            file: file.cloned(),
            line: line_no.max(1),
            col_start: 1,
            col_end: 1,
        },
    ));
    Ok(out)
}
