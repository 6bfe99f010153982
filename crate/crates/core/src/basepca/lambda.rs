//! Surface syntax for combinator programs and bracket abstraction.
//!
//! ```text
//! term  := app
//! app   := atom+
//! atom  := K | S | PAIR | FST | SND | SUCC | PRED | IFZ | FIX | #n
//!        | name | ( term ) | \x y. term
//! ```

use std::collections::HashMap;

use crate::coding::Nat;
use crate::error::Error;

use super::term::{Prim, Term};

/// `⟨x⟩t`: a variable-free (in `x`) term `u` with `u a ≃ t[a/x]` and `u` a
/// value.
pub fn abstract_var(x: &str, t: &Term) -> Term {
    if !t.occurs(x) && t.is_value() {
        return Term::app(Term::Prim(Prim::K), t.clone());
    }
    match t {
        Term::Var(v) if v == x => Term::apps(Term::Prim(Prim::S), [Term::Prim(Prim::K), Term::Prim(Prim::K)]),
        Term::App(m, n) => {
            if let Term::Var(v) = n.as_ref() {
                if v == x && !m.occurs(x) && m.is_value() {
                    return (**m).clone();
                }
            }
            Term::apps(Term::Prim(Prim::S), [abstract_var(x, m), abstract_var(x, n)])
        }
        // atoms other than `x` are values and handled above
        _ => unreachable!("non-value atom"),
    }
}

/// `⟨x1 … xn⟩t`. Every free variable of `t` must be among `vars`.
pub fn bracket_abstract(t: &Term, vars: &[&str]) -> Result<Term, Error> {
    let mut out = t.clone();
    for v in vars.iter().rev() {
        out = abstract_var(v, &out);
    }
    match out.first_var() {
        Some(v) => Err(Error::Unbound(v.to_string())),
        None => Ok(out),
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Open,
    Close,
    Lambda,
    Dot,
    Num(Nat),
    Word(String),
}

fn lex(src: &str) -> Result<Vec<Tok>, Error> {
    let mut toks = Vec::new();
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '(' => {
                chars.next();
                toks.push(Tok::Open);
            }
            ')' => {
                chars.next();
                toks.push(Tok::Close);
            }
            '\\' => {
                chars.next();
                toks.push(Tok::Lambda);
            }
            '.' => {
                chars.next();
                toks.push(Tok::Dot);
            }
            '#' => {
                chars.next();
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    digits.push(d);
                    chars.next();
                }
                let n = digits
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad numeral `#{digits}`")))?;
                toks.push(Tok::Num(n));
            }
            c if c.is_alphanumeric() || c == '_' || c == '\'' => {
                let mut w = String::new();
                while let Some(&d) = chars.peek() {
                    if !(d.is_alphanumeric() || d == '_' || d == '\'') {
                        break;
                    }
                    w.push(d);
                    chars.next();
                }
                toks.push(Tok::Word(w));
            }
            other => return Err(Error::Parse(format!("unexpected character `{other}`"))),
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    env: &'a HashMap<String, Term>,
    bound: Vec<String>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn term(&mut self) -> Result<Term, Error> {
        let mut acc: Option<Term> = None;
        while let Some(tok) = self.peek() {
            if *tok == Tok::Close {
                break;
            }
            let next = if *tok == Tok::Lambda {
                // a lambda extends as far right as possible
                self.lambda()?
            } else {
                self.atom()?
            };
            acc = Some(match acc {
                None => next,
                Some(f) => Term::app(f, next),
            });
        }
        acc.ok_or_else(|| Error::Parse("empty term".into()))
    }

    fn lambda(&mut self) -> Result<Term, Error> {
        self.pos += 1;
        let mut vars = Vec::new();
        loop {
            match self.peek().cloned() {
                Some(Tok::Word(w)) => {
                    self.pos += 1;
                    vars.push(w);
                }
                Some(Tok::Dot) => {
                    self.pos += 1;
                    break;
                }
                _ => return Err(Error::Parse("expected variable or `.` in lambda".into())),
            }
        }
        if vars.is_empty() {
            return Err(Error::Parse("lambda without variables".into()));
        }
        let depth = self.bound.len();
        self.bound.extend(vars.iter().cloned());
        let body = self.term()?;
        self.bound.truncate(depth);
        let names: Vec<&str> = vars.iter().map(String::as_str).collect();
        let mut out = body;
        for v in names.iter().rev() {
            out = abstract_var(v, &out);
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<Term, Error> {
        let tok = self
            .peek()
            .cloned()
            .ok_or_else(|| Error::Parse("unexpected end".into()))?;
        self.pos += 1;
        match tok {
            Tok::Open => {
                let t = self.term()?;
                if self.peek() != Some(&Tok::Close) {
                    return Err(Error::Parse("missing `)`".into()));
                }
                self.pos += 1;
                Ok(t)
            }
            Tok::Num(n) => Ok(Term::Num(n)),
            Tok::Word(w) => {
                if self.bound.contains(&w) {
                    Ok(Term::Var(w))
                } else if let Some(p) = Prim::from_name(&w) {
                    Ok(Term::Prim(p))
                } else if let Some(t) = self.env.get(&w) {
                    Ok(t.clone())
                } else {
                    Err(Error::Unbound(w))
                }
            }
            Tok::Close | Tok::Dot | Tok::Lambda => Err(Error::Parse(format!("unexpected {tok:?}"))),
        }
    }
}

/// Parses a closed program; lambdas are compiled away by bracket
/// abstraction and names are resolved in `env`.
pub fn parse_with(src: &str, env: &HashMap<String, Term>) -> Result<Term, Error> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        env,
        bound: Vec::new(),
    };
    let t = p.term()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse("unbalanced `)`".into()));
    }
    Ok(t)
}

pub fn parse(src: &str) -> Result<Term, Error> {
    parse_with(src, &HashMap::new())
}
