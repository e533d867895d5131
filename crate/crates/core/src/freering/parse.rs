//! Polynomial grammar:
//!
//! ```text
//! poly   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := integer ['/' integer] | letter ['^' integer] | 'e' integer
//! ```
//!
//! A module marker `e<i>` may only appear as the last factor of a term.

use num_traits::One;

use super::{Alphabet, NcPoly, Term, TermOrder};
use crate::coeff::{Domain, Scalar};
use crate::error::{Error, Result};

struct Lexer<'a> {
    chars: Vec<(usize, char)>,
    i: usize,
    line: usize,
    col0: usize,
    _src: &'a str,
}

impl<'a> Lexer<'a> {
    fn col(&self) -> usize {
        self.col0 + self.chars.get(self.i).map(|(c, _)| *c).unwrap_or(self.chars.len())
    }

    fn skip_ws(&mut self) {
        while self.i < self.chars.len() && self.chars[self.i].1.is_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.i).map(|(_, c)| *c)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax { line: self.line, col: self.col(), msg: msg.into() }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> String {
        let mut s = String::new();
        while let Some(&(_, c)) = self.chars.get(self.i) {
            if !f(c) {
                break;
            }
            s.push(c);
            self.i += 1;
        }
        s
    }
}

/// Parses one polynomial written on a single line.
pub fn parse_poly(text: &str, a: &Alphabet, ord: &TermOrder, dom: Domain, rank: u32) -> Result<NcPoly> {
    parse_poly_at(text, 1, 1, a, ord, dom, rank)
}

/// Like [`parse_poly`], reporting errors relative to `line` and starting column `col0`.
pub fn parse_poly_at(
    text: &str,
    line: usize,
    col0: usize,
    a: &Alphabet,
    ord: &TermOrder,
    dom: Domain,
    rank: u32,
) -> Result<NcPoly> {
    let chars: Vec<(usize, char)> = text.chars().enumerate().collect();
    let mut lx = Lexer { chars, i: 0, line, col0, _src: text };
    let mut terms: Vec<(Term, Scalar)> = Vec::new();
    let mut first = true;
    loop {
        let mut sign = Scalar::one();
        match lx.peek() {
            None if first => return Err(lx.err("empty polynomial")),
            None => break,
            Some('+') => lx.i += 1,
            Some('-') => {
                lx.i += 1;
                sign = -sign;
            }
            Some(_) if first => {}
            Some(c) => return Err(lx.err(format!("expected `+` or `-`, found `{c}`"))),
        }
        first = false;
        let (t, c) = parse_term(&mut lx, a, dom, rank)?;
        terms.push((t, c * sign));
    }
    Ok(NcPoly::from_terms(ord, terms))
}

fn parse_term(lx: &mut Lexer, a: &Alphabet, dom: Domain, rank: u32) -> Result<(Term, Scalar)> {
    let mut coeff = Scalar::one();
    let mut word = Vec::new();
    let mut pos: Option<u32> = None;
    loop {
        let next = lx.peek();
        let col = lx.col();
        match next {
            Some(c) if c.is_ascii_digit() => {
                if pos.is_some() {
                    return Err(lx.err("module marker must be the last factor"));
                }
                let mut s = lx.take_while(|c| c.is_ascii_digit());
                if lx.chars.get(lx.i).map(|(_, c)| *c) == Some('/') {
                    lx.i += 1;
                    let d = lx.take_while(|c| c.is_ascii_digit());
                    s = format!("{s}/{d}");
                }
                let v = dom.parse_scalar(&s).ok_or(Error::Syntax {
                    line: lx.line,
                    col,
                    msg: format!("invalid coefficient `{s}`"),
                })?;
                coeff *= v;
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                if pos.is_some() {
                    return Err(lx.err("module marker must be the last factor"));
                }
                let name = lx.take_while(|c| c.is_alphanumeric() || c == '_');
                if let Some(l) = a.letter(&name) {
                    let mut k = 1usize;
                    if lx.peek() == Some('^') {
                        lx.i += 1;
                        lx.skip_ws();
                        let e = lx.take_while(|c| c.is_ascii_digit());
                        k = e.parse().map_err(|_| lx.err("expected exponent after `^`"))?;
                    }
                    word.extend(std::iter::repeat_n(l, k));
                } else if let Some(n) = name.strip_prefix('e').and_then(|d| d.parse::<u32>().ok()) {
                    if n == 0 || n > rank {
                        return Err(Error::PositionOutOfRange { line: lx.line, col, pos: n, rank });
                    }
                    pos = Some(if rank == 1 { 0 } else { n });
                } else {
                    return Err(Error::UndeclaredSymbol { line: lx.line, col, symbol: name });
                }
            }
            Some(c) => return Err(lx.err(format!("unexpected `{c}`"))),
            None => return Err(lx.err("unexpected end of input")),
        }
        match lx.peek() {
            Some('*') => lx.i += 1,
            _ => break,
        }
    }
    let pos = match pos {
        Some(p) => p,
        None if rank <= 1 => 0,
        None => return Err(lx.err("missing module marker `e<i>`")),
    };
    Ok((Term::new(word, pos), coeff))
}
