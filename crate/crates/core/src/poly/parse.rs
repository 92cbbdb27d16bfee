//! Text form of polynomials and field elements.
//!
//! Grammar:
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary ("*" unary)*
//! unary  := "-" unary | power
//! power  := atom ("^" integer)?
//! atom   := integer | "a" | variable | "(" expr ")"
//! ```
//!
//! `a` is the generator of the coefficient field. Integers are reduced mod p.

use super::{MPoly, Monomial};
use crate::error::{Error, Result};
use crate::field::FieldConfig;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Sym(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Tok::Int(chars[st..i].iter().collect()));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[st..i].iter().collect()));
        } else if "+-*^()".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    field: &'a FieldConfig,
    names: &'a [&'a str],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            acc = acc.checked_mul(&self.unary()?)?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MPoly> {
        if self.eat('-') {
            Ok(-&self.unary()?)
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<MPoly> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Int(s)) => {
                    self.pos += 1;
                    let e: u64 = s
                        .parse()
                        .map_err(|_| Error::Parse(format!("exponent {s} out of range")))?;
                    base.pow(e)
                }
                _ => Err(Error::Parse("expected integer exponent after '^'".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MPoly> {
        let tok = self
            .toks
            .get(self.pos)
            .cloned()
            .ok_or_else(|| Error::Parse("unexpected end of input".into()))?;
        self.pos += 1;
        match tok {
            Tok::Int(s) => {
                let p = self.field.p() as u64;
                let v = s
                    .bytes()
                    .fold(0u64, |acc, b| (acc * 10 + (b - b'0') as u64) % p);
                Ok(MPoly::constant(self.field, self.nvars(), v as u32))
            }
            Tok::Ident(name) => {
                if let Some(i) = self.names.iter().position(|n| *n == name) {
                    Ok(MPoly::var(self.field, self.nvars(), i))
                } else if name == "a" {
                    Ok(MPoly::constant(self.field, self.nvars(), self.field.gen()))
                } else {
                    Err(Error::Parse(format!("unknown identifier {name:?}")))
                }
            }
            Tok::Sym('(') => {
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("expected ')'".into()));
                }
                Ok(e)
            }
            Tok::Sym(c) => Err(Error::Parse(format!("unexpected {c:?}"))),
        }
    }
}

/// Parse a polynomial whose variables are named by `names`.
pub fn parse_poly_with_names(field: &FieldConfig, names: &[&str], s: &str) -> Result<MPoly> {
    if let Some(n) = names.iter().find(|n| **n == "a") {
        return Err(Error::Parse(format!(
            "variable name {n:?} clashes with the field generator"
        )));
    }
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        field,
        names,
    };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(out)
}

/// Parse a polynomial in `z0, ..., z{nvars-1}`.
pub fn parse_poly(field: &FieldConfig, nvars: usize, s: &str) -> Result<MPoly> {
    let names: Vec<String> = (0..nvars).map(|i| format!("z{i}")).collect();
    let names: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    parse_poly_with_names(field, &names, s)
}

/// Parse a field element written in terms of the generator `a`.
pub fn parse_element(field: &FieldConfig, s: &str) -> Result<u32> {
    let p = parse_poly_with_names(field, &[], s)?;
    Ok(p.constant_value().expect("no variables"))
}

fn format_monomial(m: &Monomial, names: &[&str]) -> String {
    let parts: Vec<String> =
        m.0.iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(v, &e)| {
                if e == 1 {
                    names[v].to_string()
                } else {
                    format!("{}^{e}", names[v])
                }
            })
            .collect();
    parts.join("*")
}

pub(crate) fn format_poly(poly: &MPoly, names: &[&str]) -> String {
    let f = poly.field();
    let many = poly.num_terms() > 1;
    let parts: Vec<String> = poly
        .terms()
        .rev()
        .map(|(m, c)| {
            let mono = format_monomial(m, names);
            let coef = f.format_elem(c);
            let compound = f.elem_weight(c) > 1;
            match (mono.is_empty(), c == 1) {
                (true, _) if compound && many => format!("({coef})"),
                (true, _) => coef,
                (false, true) => mono,
                (false, false) if compound => format!("({coef})*{mono}"),
                (false, false) => format!("{coef}*{mono}"),
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}
