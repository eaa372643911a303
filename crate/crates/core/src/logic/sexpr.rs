//! S-expression syntax: `(exists 1 (and (adj 1 2) (not (eq 1 2))))`.

use super::{Formula, Var};
use crate::error::{Error, Result};

pub(super) fn print(f: &Formula) -> String {
    let mut s = String::new();
    write(f, &mut s);
    s
}

fn write(f: &Formula, out: &mut String) {
    match f {
        Formula::Eq(a, b) => out.push_str(&format!("(eq {a} {b})")),
        Formula::Adj(a, b) => out.push_str(&format!("(adj {a} {b})")),
        Formula::Not(g) => {
            out.push_str("(not ");
            write(g, out);
            out.push(')');
        }
        Formula::And(gs) | Formula::Or(gs) => {
            out.push_str(if matches!(f, Formula::And(_)) { "(and" } else { "(or" });
            for g in gs {
                out.push(' ');
                write(g, out);
            }
            out.push(')');
        }
        Formula::Exists(v, g) | Formula::Forall(v, g) => {
            let q = if matches!(f, Formula::Exists(..)) {
                "exists"
            } else {
                "forall"
            };
            out.push_str(&format!("({q} {v} "));
            write(g, out);
            out.push(')');
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Tok<'a> {
    Open,
    Close,
    Word(&'a str),
}

struct Lexer<'a> {
    toks: Vec<(usize, Tok<'a>)>,
    pos: usize,
}

fn lex(s: &str) -> Lexer<'_> {
    let mut toks = Vec::new();
    for (ln, line) in s.lines().enumerate() {
        let mut rest = line;
        while let Some(c) = rest.chars().next() {
            if c.is_whitespace() {
                rest = &rest[c.len_utf8()..];
            } else if c == '(' || c == ')' {
                toks.push((ln + 1, if c == '(' { Tok::Open } else { Tok::Close }));
                rest = &rest[1..];
            } else {
                let end = rest
                    .find(|ch: char| ch.is_whitespace() || ch == '(' || ch == ')')
                    .unwrap_or(rest.len());
                toks.push((ln + 1, Tok::Word(&rest[..end])));
                rest = &rest[end..];
            }
        }
    }
    Lexer { toks, pos: 0 }
}

impl<'a> Lexer<'a> {
    fn line(&self) -> usize {
        self.toks.get(self.pos).or(self.toks.last()).map(|t| t.0).unwrap_or(1)
    }

    fn err(&self, detail: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line(),
            detail: detail.into(),
        }
    }

    fn next(&mut self) -> Option<Tok<'a>> {
        let t = self.toks.get(self.pos).map(|t| t.1);
        self.pos += 1;
        t
    }

    fn peek(&self) -> Option<Tok<'a>> {
        self.toks.get(self.pos).map(|t| t.1)
    }

    fn expect_close(&mut self) -> Result<()> {
        match self.next() {
            Some(Tok::Close) => Ok(()),
            _ => {
                self.pos -= 1;
                Err(self.err("expected `)`"))
            }
        }
    }

    fn var(&mut self) -> Result<Var> {
        match self.next() {
            Some(Tok::Word(w)) => match w.parse::<Var>() {
                Ok(v) if v > 0 => Ok(v),
                _ => {
                    let w = w.to_string();
                    self.pos -= 1;
                    Err(self.err(format!("expected a positive variable index, found {w:?}")))
                }
            },
            _ => {
                self.pos -= 1;
                Err(self.err("expected a variable"))
            }
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        match self.next() {
            Some(Tok::Open) => {}
            _ => {
                self.pos -= 1;
                return Err(self.err("expected `(`"));
            }
        }
        let head = match self.next() {
            Some(Tok::Word(w)) => w.to_string(),
            _ => {
                self.pos -= 1;
                return Err(self.err("expected an operator"));
            }
        };
        let f = match head.as_str() {
            "eq" | "adj" => {
                let a = self.var()?;
                let b = self.var()?;
                if head == "eq" {
                    Formula::Eq(a, b)
                } else {
                    Formula::Adj(a, b)
                }
            }
            "not" => Formula::not(self.formula()?),
            "and" | "or" => {
                let mut parts = Vec::new();
                while self.peek() == Some(Tok::Open) {
                    parts.push(self.formula()?);
                }
                if head == "and" {
                    Formula::And(parts)
                } else {
                    Formula::Or(parts)
                }
            }
            "exists" | "forall" => {
                let v = self.var()?;
                let body = self.formula()?;
                if head == "exists" {
                    Formula::exists(v, body)
                } else {
                    Formula::forall(v, body)
                }
            }
            other => {
                self.pos -= 1;
                return Err(self.err(format!("unknown operator {other:?}")));
            }
        };
        self.expect_close()?;
        Ok(f)
    }
}

pub(super) fn parse(s: &str) -> Result<Formula> {
    let mut lx = lex(s);
    let f = lx.formula()?;
    if lx.peek().is_some() {
        return Err(lx.err("trailing input after formula"));
    }
    Ok(f)
}
