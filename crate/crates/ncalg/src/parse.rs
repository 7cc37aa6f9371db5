//! The expression mini-language.
//!
//! Tokens: idempotents `e1`, arrows `v12`, auxiliary arrows `w12`, loops `g1`
//! and inverse loops `g1inv`, optionally prefixed by a color name (`c:v12`).
//! Two-digit arrow names split into target and source; larger vertex numbers
//! use an underscore (`v10_2`).  Products are written by juxtaposition or
//! `*`, sums with `+`/`-`, rational literals as `3/2`, and tensor factors
//! are separated by `(x)`, which binds more loosely than products and more
//! tightly than sums.  Whitespace is insignificant.

use num::{BigInt, One};

use crate::error::NcError;
use crate::lin::{AlgElem, Tensor2, Tensor3};
use crate::symbol::{Kind, Sym};
use crate::word::Word;
use crate::Q;

/// What the parser needs to know about the ambient quiver.
#[derive(Clone, Debug)]
pub struct ParseCtx {
    /// Number of vertices (used for the scalar unit `1 = Σ e_s`).
    pub n: u32,
    /// Color names; the first one is used when a symbol has no prefix.
    pub colors: Vec<String>,
}

impl ParseCtx {
    pub fn new(n: u32, colors: Vec<String>) -> Self {
        ParseCtx { n, colors }
    }

    /// A single-color context on `n` vertices.
    pub fn single(n: u32) -> Self {
        ParseCtx {
            n,
            colors: vec!["c".to_string()],
        }
    }
}

/// A parsed expression of arity one, two or three.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parsed {
    Alg(AlgElem),
    T2(Tensor2),
    T3(Tensor3),
}

impl Parsed {
    pub fn arity(&self) -> usize {
        match self {
            Parsed::Alg(_) => 1,
            Parsed::T2(_) => 2,
            Parsed::T3(_) => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Slash,
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
    Tensor,
    Symbol(Option<usize>, Kind, u32, u32),
}

fn lex(input: &str, ctx: &ParseCtx) -> Result<Vec<(usize, Tok)>, NcError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |pos: usize, msg: &str| NcError::Parse {
        pos,
        msg: msg.to_string(),
    };
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        match c {
            '+' => {
                out.push((start, Tok::Plus));
                i += 1;
            }
            '-' => {
                out.push((start, Tok::Minus));
                i += 1;
            }
            '*' => {
                out.push((start, Tok::Star));
                i += 1;
            }
            '/' => {
                out.push((start, Tok::Slash));
                i += 1;
            }
            ')' => {
                out.push((start, Tok::RParen));
                i += 1;
            }
            '(' => {
                let rest: String = input[i + 1..]
                    .chars()
                    .filter(|c| !c.is_whitespace())
                    .take(2)
                    .collect();
                if rest == "x)" {
                    // Consume up to and including the closing parenthesis.
                    let close = input[i..]
                        .find(')')
                        .map(|k| i + k)
                        .ok_or_else(|| err(i, "unclosed (x)"))?;
                    out.push((start, Tok::Tensor));
                    i = close + 1;
                } else {
                    out.push((start, Tok::LParen));
                    i += 1;
                }
            }
            d if d.is_ascii_digit() => {
                let mut j = i;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                let n: BigInt = input[i..j].parse().map_err(|_| err(i, "bad integer"))?;
                out.push((start, Tok::Num(n)));
                i = j;
            }
            a if a.is_ascii_alphabetic() => {
                // A run followed by ':' is a color prefix.
                let mut j = i;
                while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
                    j += 1;
                }
                let mut color = None;
                let mut k = i;
                if j < bytes.len() && bytes[j] == b':' {
                    let name = &input[i..j];
                    let idx = ctx
                        .colors
                        .iter()
                        .position(|c| c == name)
                        .ok_or_else(|| err(i, &format!("unknown color '{name}'")))?;
                    color = Some(idx);
                    k = j + 1;
                }
                let (tok, next) = lex_symbol(input, k, color)?;
                out.push((start, tok));
                i = next;
            }
            _ => return Err(err(i, &format!("unexpected character '{c}'"))),
        }
    }
    Ok(out)
}

fn lex_symbol(input: &str, i: usize, color: Option<usize>) -> Result<(Tok, usize), NcError> {
    let bytes = input.as_bytes();
    let err = |pos: usize, msg: &str| NcError::Parse {
        pos,
        msg: msg.to_string(),
    };
    let Some(&head) = bytes.get(i) else {
        return Err(err(i, "expected a symbol"));
    };
    let kind = match head {
        b'e' => Kind::Idempotent,
        b'v' => Kind::V,
        b'w' => Kind::W,
        b'g' => Kind::Gamma,
        _ => return Err(err(i, &format!("unknown symbol prefix '{}'", head as char))),
    };
    let mut j = i + 1;
    let digits_start = j;
    while j < bytes.len() && bytes[j].is_ascii_digit() {
        j += 1;
    }
    if j == digits_start {
        return Err(err(j, "expected vertex digits"));
    }
    let first = &input[digits_start..j];
    let mut second: Option<&str> = None;
    if j < bytes.len() && bytes[j] == b'_' {
        let s = j + 1;
        let mut k = s;
        while k < bytes.len() && bytes[k].is_ascii_digit() {
            k += 1;
        }
        if k == s {
            return Err(err(k, "expected digits after '_'"));
        }
        second = Some(&input[s..k]);
        j = k;
    }
    let num = |s: &str, pos: usize| {
        s.parse::<u32>()
            .map_err(|_| err(pos, "vertex index out of range"))
    };
    let tok = match kind {
        Kind::V | Kind::W => {
            let (t, s) = match second {
                Some(sec) => (num(first, digits_start)?, num(sec, digits_start)?),
                None if first.len() == 2 => (
                    num(&first[..1], digits_start)?,
                    num(&first[1..], digits_start)?,
                ),
                None => {
                    return Err(err(
                        digits_start,
                        "ambiguous arrow indices; write v<target>_<source>",
                    ))
                }
            };
            if t == s || t == 0 || s == 0 {
                return Err(err(
                    digits_start,
                    "arrow endpoints must be distinct positive vertices",
                ));
            }
            Tok::Symbol(color, kind, t, s)
        }
        _ => {
            if second.is_some() {
                return Err(err(
                    digits_start,
                    "loops and idempotents take a single vertex",
                ));
            }
            let v = num(first, digits_start)?;
            if v == 0 {
                return Err(err(digits_start, "vertices are numbered from 1"));
            }
            let mut kind = kind;
            if kind == Kind::Gamma && input[j..].starts_with("inv") {
                kind = Kind::GammaInv;
                j += 3;
            }
            Tok::Symbol(color, kind, v, v)
        }
    };
    Ok((tok, j))
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    ctx: &'a ParseCtx,
    len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.len)
    }

    fn err(&self, msg: &str) -> NcError {
        NcError::Parse {
            pos: self.offset(),
            msg: msg.to_string(),
        }
    }

    /// sum := ['+'|'-'] tterm (('+'|'-') tterm)*
    fn sum(&mut self) -> Result<Parsed, NcError> {
        let mut sign = Q::one();
        match self.peek() {
            Some(Tok::Plus) => self.pos += 1,
            Some(Tok::Minus) => {
                self.pos += 1;
                sign = -sign;
            }
            _ => {}
        }
        let mut acc = scale(self.tensor_term()?, &sign);
        loop {
            let sign = match self.peek() {
                Some(Tok::Plus) => Q::one(),
                Some(Tok::Minus) => -Q::one(),
                _ => break,
            };
            self.pos += 1;
            let at = self.offset();
            let next = scale(self.tensor_term()?, &sign);
            acc = add(acc, next).ok_or(NcError::Parse {
                pos: at,
                msg: "mixed tensor arities in a sum".into(),
            })?;
        }
        Ok(acc)
    }

    /// tterm := product ('(x)' product)*
    fn tensor_term(&mut self) -> Result<Parsed, NcError> {
        let first = self.product()?;
        let mut factors = vec![first];
        while self.peek() == Some(&Tok::Tensor) {
            self.pos += 1;
            factors.push(self.product()?);
        }
        match factors.len() {
            1 => Ok(Parsed::Alg(factors.pop().unwrap())),
            2 => Ok(Parsed::T2(factors[0].tensor(&factors[1]))),
            3 => Ok(Parsed::T3(Tensor3::from_factors(
                &factors[0],
                &factors[1],
                &factors[2],
            ))),
            _ => Err(self.err("at most three tensor factors are supported")),
        }
    }

    /// product := factor ('*'? factor)*
    fn product(&mut self) -> Result<AlgElem, NcError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                Some(Tok::Num(_)) | Some(Tok::Symbol(..)) | Some(Tok::LParen) => {
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    /// factor := rational | symbol | '(' sum ')'
    fn factor(&mut self) -> Result<AlgElem, NcError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let mut d = BigInt::one();
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Tok::Num(m)) => {
                            if m == BigInt::from(0) {
                                return Err(self.err("zero denominator"));
                            }
                            d = m;
                            self.pos += 1;
                        }
                        _ => return Err(self.err("expected a denominator")),
                    }
                }
                Ok(AlgElem::scalar(self.ctx.n, Q::new(n, d)))
            }
            Some(Tok::Symbol(color, kind, t, s)) => {
                self.pos += 1;
                let color = color.unwrap_or(0) as u16;
                Ok(match kind {
                    Kind::Idempotent => {
                        if t > self.ctx.n {
                            return Err(self.err("idempotent vertex out of range"));
                        }
                        AlgElem::idempotent(t)
                    }
                    _ => AlgElem::basis(Word::letter(Sym {
                        kind,
                        color,
                        target: t,
                        source: s,
                    })),
                })
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                match inner {
                    Parsed::Alg(a) => Ok(a),
                    _ => Err(self.err("tensor expressions cannot be nested in products")),
                }
            }
            _ => Err(self.err("expected a number, symbol or '('")),
        }
    }
}

fn scale(p: Parsed, c: &Q) -> Parsed {
    match p {
        Parsed::Alg(a) => Parsed::Alg(a.scale(c)),
        Parsed::T2(a) => Parsed::T2(a.scale(c)),
        Parsed::T3(a) => Parsed::T3(a.scale(c)),
    }
}

fn add(a: Parsed, b: Parsed) -> Option<Parsed> {
    match (a, b) {
        (Parsed::Alg(x), Parsed::Alg(y)) => Some(Parsed::Alg(x + y)),
        (Parsed::T2(x), Parsed::T2(y)) => Some(Parsed::T2(x + y)),
        (Parsed::T3(x), Parsed::T3(y)) => Some(Parsed::T3(x + y)),
        _ => None,
    }
}

/// Parses an expression of any arity.
pub fn parse(input: &str, ctx: &ParseCtx) -> Result<Parsed, NcError> {
    let toks = lex(input, ctx)?;
    if toks.is_empty() {
        return Err(NcError::Parse {
            pos: 0,
            msg: "empty expression".into(),
        });
    }
    let mut p = Parser {
        toks,
        pos: 0,
        ctx,
        len: input.len(),
    };
    let out = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

/// Parses an algebra element.
pub fn parse_alg(input: &str, ctx: &ParseCtx) -> Result<AlgElem, NcError> {
    match parse(input, ctx)? {
        Parsed::Alg(a) => Ok(a),
        other => Err(NcError::Type(format!(
            "expected an algebra element, found arity {}",
            other.arity()
        ))),
    }
}

/// Parses an element of the tensor square.
pub fn parse_t2(input: &str, ctx: &ParseCtx) -> Result<Tensor2, NcError> {
    match parse(input, ctx)? {
        Parsed::T2(a) => Ok(a),
        Parsed::Alg(a) if a.is_zero() => Ok(Tensor2::zero()),
        other => Err(NcError::Type(format!(
            "expected a tensor of arity 2, found arity {}",
            other.arity()
        ))),
    }
}

/// Parses an element of the tensor cube.
pub fn parse_t3(input: &str, ctx: &ParseCtx) -> Result<Tensor3, NcError> {
    match parse(input, ctx)? {
        Parsed::T3(a) => Ok(a),
        Parsed::Alg(a) if a.is_zero() => Ok(Tensor3::zero()),
        other => Err(NcError::Type(format!(
            "expected a tensor of arity 3, found arity {}",
            other.arity()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn ctx() -> ParseCtx {
        ParseCtx::single(3)
    }

    fn v(t: u32, s: u32) -> AlgElem {
        AlgElem::sym(Sym::v(0, t, s))
    }

    #[test]
    fn juxtaposition_and_star_agree() {
        let a = parse_alg("v12 v23", &ctx()).unwrap();
        let b = parse_alg("v12*v23", &ctx()).unwrap();
        let c = parse_alg("v12v23", &ctx()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(a, v(1, 2).mul(&v(2, 3)));
    }

    #[test]
    fn rationals_and_signs() {
        let a = parse_alg("-3/2 v12 + v13", &ctx()).unwrap();
        assert_eq!(a, &v(1, 3) - &v(1, 2).scale(&rat(3, 2)));
    }

    #[test]
    fn loops_and_inverses() {
        let a = parse_alg("g3 g3inv", &ctx()).unwrap();
        let w = Word::from_letters([Sym::gamma(0, 3), Sym::gamma_inv(0, 3)]).unwrap();
        assert_eq!(a, AlgElem::basis(w));
    }

    #[test]
    fn tensor_binds_looser_than_product() {
        let t = parse_t2("1/2 v21*w13 (x) e1 - w23 (x) e1", &ctx()).unwrap();
        let w13 = AlgElem::sym(Sym::w(0, 1, 3));
        let w23 = AlgElem::sym(Sym::w(0, 2, 3));
        let e1 = AlgElem::idempotent(1);
        let expected = &v(2, 1).mul(&w13).scale(&rat(1, 2)).tensor(&e1) - &w23.tensor(&e1);
        assert_eq!(t, expected);
    }

    #[test]
    fn parenthesized_sums() {
        let a = parse_alg("(e1 + v12 v21) v13", &ctx()).unwrap();
        assert_eq!(a, &v(1, 3) + &v(1, 2).mul(&v(2, 1)).mul(&v(1, 3)));
    }

    #[test]
    fn color_prefix_and_long_indices() {
        let c = ParseCtx::new(12, vec!["a".into(), "b".into()]);
        let a = parse_alg("b:v10_2", &c).unwrap();
        assert_eq!(a, AlgElem::sym(Sym::v(1, 10, 2)));
    }

    #[test]
    fn whitespace_insensitive_tensor_separator() {
        let a = parse_t2("e1 ( x ) e2", &ctx()).unwrap();
        assert_eq!(a, AlgElem::idempotent(1).tensor(&AlgElem::idempotent(2)));
    }

    #[test]
    fn errors_carry_offsets() {
        match parse("v12 + ?", &ctx()) {
            Err(NcError::Parse { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse("v11", &ctx()).is_err());
        assert!(parse("v123", &ctx()).is_err());
        assert!(parse("v12 (x) e1 + e1", &ctx()).is_err());
        assert!(parse("e9", &ctx()).is_err());
    }

    #[test]
    fn scalar_is_a_multiple_of_the_unit() {
        let a = parse_alg("2", &ParseCtx::single(2)).unwrap();
        assert_eq!(
            a,
            &AlgElem::idempotent(1).scale(&rat(2, 1)) + &AlgElem::idempotent(2).scale(&rat(2, 1))
        );
    }
}
