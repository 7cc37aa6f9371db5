//! A small language for coefficient conditions.
//!
//! Conditions are stored as text and parsed on use, so the condition tables
//! read like the identities they encode:
//!
//! ```text
//! condition := [ "forall" VAR "with" PRED ":" ] expr "=" expr
//! expr      := term { ("+" | "-") term }
//! term      := factor { "*" factor }
//! factor    := "-" factor | INT [ "/" INT ] | "(" expr ")"
//!            | CLASS "[" idx "]" "(" idx "," idx ")" | "delta" "(" idx "," idx ")"
//! PRED      := conj { "|" conj };  conj := atom { "&" atom }
//! atom      := "!" atom | "(" PRED ")" | "distinct" | idx REL idx { REL idx }
//! REL       := "<" | "<=" | ">" | ">=" | "=" | "!="
//! ```
//!
//! `CLASS` is one of `alpha`, `beta`, `mu`, `nu`, `kappa`; `alpha[i](j,k)`
//! stands for `α^(i)_jk` and `kappa[j](i,k)` for `κ_j^(i,k)`.  An index is a
//! single-letter variable or a positive integer.

use std::collections::BTreeMap;
use std::fmt;

use ncalg::{rat, render, Q};
use num::{One, Zero};

use crate::error::FamilyError;
use crate::family::{Class, Coeff};

/// An index: a variable or a fixed vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Idx {
    Var(char),
    Lit(u32),
}

/// Values of index variables.
pub type Env = BTreeMap<char, u32>;

impl Idx {
    pub fn value(&self, env: &Env) -> u32 {
        match self {
            Idx::Lit(x) => *x,
            Idx::Var(v) => *env
                .get(v)
                .unwrap_or_else(|| panic!("unbound index variable '{v}'")),
        }
    }

    fn collect_vars(&self, out: &mut Vec<char>) {
        if let Idx::Var(v) = self {
            if !out.contains(v) {
                out.push(*v);
            }
        }
    }
}

impl fmt::Display for Idx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Idx::Var(v) => write!(f, "{v}"),
            Idx::Lit(x) => write!(f, "{x}"),
        }
    }
}

/// A polynomial expression in the coefficients.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Q),
    Coef {
        class: Class,
        head: Idx,
        a: Idx,
        b: Idx,
    },
    Delta(Idx, Idx),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
}

impl Expr {
    /// Value under `env`, reading coefficients through `lookup`.
    pub fn eval(&self, env: &Env, lookup: &dyn Fn(Coeff) -> Q) -> Q {
        match self {
            Expr::Num(q) => q.clone(),
            Expr::Coef { class, head, a, b } => lookup(Coeff {
                class: *class,
                head: head.value(env),
                a: a.value(env),
                b: b.value(env),
            }),
            Expr::Delta(x, y) => {
                if x.value(env) == y.value(env) {
                    Q::one()
                } else {
                    Q::zero()
                }
            }
            Expr::Neg(x) => -x.eval(env, lookup),
            Expr::Add(x, y) => x.eval(env, lookup) + y.eval(env, lookup),
            Expr::Sub(x, y) => x.eval(env, lookup) - y.eval(env, lookup),
            Expr::Mul(x, y) => {
                let l = x.eval(env, lookup);
                if l.is_zero() {
                    return l;
                }
                l * y.eval(env, lookup)
            }
        }
    }

    /// Coefficients the expression mentions under `env`.
    pub fn coeffs(&self, env: &Env, out: &mut Vec<Coeff>) {
        match self {
            Expr::Coef { class, head, a, b } => {
                let c = Coeff {
                    class: *class,
                    head: head.value(env),
                    a: a.value(env),
                    b: b.value(env),
                };
                if !out.contains(&c) {
                    out.push(c);
                }
            }
            Expr::Num(_) | Expr::Delta(..) => {}
            Expr::Neg(x) => x.coeffs(env, out),
            Expr::Add(x, y) | Expr::Sub(x, y) | Expr::Mul(x, y) => {
                x.coeffs(env, out);
                y.coeffs(env, out);
            }
        }
    }

    fn collect_vars(&self, out: &mut Vec<char>) {
        match self {
            Expr::Num(_) => {}
            Expr::Coef { head, a, b, .. } => {
                head.collect_vars(out);
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Expr::Delta(x, y) => {
                x.collect_vars(out);
                y.collect_vars(out);
            }
            Expr::Neg(x) => x.collect_vars(out),
            Expr::Add(x, y) | Expr::Sub(x, y) | Expr::Mul(x, y) => {
                x.collect_vars(out);
                y.collect_vars(out);
            }
        }
    }

    /// Text with every index variable replaced by its value.
    pub fn render(&self, env: &Env) -> String {
        self.render_prec(env, 0)
    }

    fn render_prec(&self, env: &Env, prec: u8) -> String {
        let idx = |i: &Idx| match i {
            Idx::Var(v) => env
                .get(v)
                .map(|x| x.to_string())
                .unwrap_or_else(|| v.to_string()),
            Idx::Lit(x) => x.to_string(),
        };
        let wrap = |s: String, p: u8| if p < prec { format!("({s})") } else { s };
        match self {
            Expr::Num(q) => render::rational(q),
            Expr::Coef { class, head, a, b } => {
                format!("{class}[{}]({},{})", idx(head), idx(a), idx(b))
            }
            Expr::Delta(x, y) => format!("delta({},{})", idx(x), idx(y)),
            Expr::Neg(x) => wrap(format!("-{}", x.render_prec(env, 3)), 3),
            Expr::Add(x, y) => wrap(
                format!("{} + {}", x.render_prec(env, 1), y.render_prec(env, 2)),
                1,
            ),
            Expr::Sub(x, y) => wrap(
                format!("{} - {}", x.render_prec(env, 1), y.render_prec(env, 2)),
                1,
            ),
            Expr::Mul(x, y) => wrap(
                format!("{}*{}", x.render_prec(env, 2), y.render_prec(env, 3)),
                2,
            ),
        }
    }
}

/// A relation between indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rel {
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Ne,
}

impl Rel {
    fn holds(self, x: u32, y: u32) -> bool {
        match self {
            Rel::Lt => x < y,
            Rel::Le => x <= y,
            Rel::Gt => x > y,
            Rel::Ge => x >= y,
            Rel::Eq => x == y,
            Rel::Ne => x != y,
        }
    }
}

/// A predicate on index variables.
#[derive(Clone, Debug, PartialEq)]
pub enum Pred {
    True,
    /// All variables of the enclosing pattern take distinct values.
    Distinct,
    Chain(Vec<Idx>, Vec<Rel>),
    Not(Box<Pred>),
    And(Box<Pred>, Box<Pred>),
    Or(Box<Pred>, Box<Pred>),
}

impl Pred {
    /// Truth value under `env`; `Distinct` refers to all bound variables.
    pub fn holds(&self, env: &Env) -> bool {
        match self {
            Pred::True => true,
            Pred::Distinct => {
                let mut vals: Vec<u32> = env.values().copied().collect();
                vals.sort_unstable();
                vals.windows(2).all(|w| w[0] != w[1])
            }
            Pred::Chain(xs, rels) => rels
                .iter()
                .enumerate()
                .all(|(k, r)| r.holds(xs[k].value(env), xs[k + 1].value(env))),
            Pred::Not(p) => !p.holds(env),
            Pred::And(p, q) => p.holds(env) && q.holds(env),
            Pred::Or(p, q) => p.holds(env) || q.holds(env),
        }
    }
}

/// `lhs = rhs`, optionally for every value of a bound variable satisfying
/// a predicate.
#[derive(Clone, Debug, PartialEq)]
pub struct Condition {
    pub forall: Option<(char, Pred)>,
    pub lhs: Expr,
    pub rhs: Expr,
}

impl Condition {
    /// Index variables used outside the bound variable.
    pub fn free_vars(&self) -> Vec<char> {
        let mut out = Vec::new();
        self.lhs.collect_vars(&mut out);
        self.rhs.collect_vars(&mut out);
        if let Some((v, _)) = &self.forall {
            out.retain(|x| x != v);
        }
        out
    }

    /// Every environment the condition must hold in: `env` itself, or `env`
    /// extended by each admissible value `1..=n` of the bound variable.
    pub fn instances(&self, env: &Env, n: u32) -> Vec<Env> {
        match &self.forall {
            None => vec![env.clone()],
            Some((v, pred)) => (1..=n)
                .filter_map(|x| {
                    let mut e = env.clone();
                    e.insert(*v, x);
                    pred.holds(&e).then_some(e)
                })
                .collect(),
        }
    }

    pub fn render(&self, env: &Env) -> String {
        format!("{} = {}", self.lhs.render(env), self.rhs.render(env))
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(u64),
    Sym(&'static str),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, String> {
    const SYMS: [&str; 17] = [
        "<=", ">=", "!=", "<", ">", "=", "!", "&", "|", "+", "-", "*", "/", "(", ")", "[", "]",
    ];
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let t: String = cs[st..i].iter().collect();
            out.push(Tok::Int(
                t.parse()
                    .map_err(|_| format!("integer '{t}' is too large"))?,
            ));
        } else if c == ',' || c == ':' {
            out.push(Tok::Sym(if c == ',' { "," } else { ":" }));
            i += 1;
        } else {
            let rest: String = cs[i..cs.len().min(i + 2)].iter().collect();
            let Some(sym) = SYMS.iter().find(|s| rest.starts_with(**s)) else {
                return Err(format!("unexpected character '{c}'"));
            };
            out.push(Tok::Sym(sym));
            i += sym.len();
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, s: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Sym(x)) if *x == s) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), String> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(format!("expected '{s}' at token {}", self.pos + 1))
        }
    }

    fn eat_ident(&mut self, name: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Ident(x)) if x == name) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<u64, String> {
        match self.peek() {
            Some(Tok::Int(x)) => {
                let x = *x;
                self.pos += 1;
                Ok(x)
            }
            _ => Err(format!("expected an integer at token {}", self.pos + 1)),
        }
    }

    fn idx(&mut self) -> Result<Idx, String> {
        match self.peek().cloned() {
            Some(Tok::Int(x)) if x >= 1 => {
                self.pos += 1;
                Ok(Idx::Lit(x as u32))
            }
            Some(Tok::Ident(s)) if s.chars().count() == 1 => {
                self.pos += 1;
                Ok(Idx::Var(s.chars().next().expect("one char")))
            }
            _ => Err(format!("expected an index at token {}", self.pos + 1)),
        }
    }

    fn expr(&mut self) -> Result<Expr, String> {
        let mut acc = self.term()?;
        loop {
            if self.eat("+") {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat("-") {
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, String> {
        let mut acc = self.factor()?;
        while self.eat("*") {
            acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr, String> {
        if self.eat("-") {
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        if self.eat("(") {
            let e = self.expr()?;
            self.expect(")")?;
            return Ok(e);
        }
        match self.peek().cloned() {
            Some(Tok::Int(_)) => {
                let p = self.int()?;
                let q = if self.eat("/") { self.int()? } else { 1 };
                if q == 0 {
                    return Err("zero denominator".into());
                }
                Ok(Expr::Num(rat(p as i64, q as i64)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if name == "delta" {
                    self.expect("(")?;
                    let x = self.idx()?;
                    self.expect(",")?;
                    let y = self.idx()?;
                    self.expect(")")?;
                    return Ok(Expr::Delta(x, y));
                }
                let class =
                    Class::from_name(&name).ok_or_else(|| format!("unknown name '{name}'"))?;
                self.expect("[")?;
                let head = self.idx()?;
                self.expect("]")?;
                self.expect("(")?;
                let a = self.idx()?;
                self.expect(",")?;
                let b = self.idx()?;
                self.expect(")")?;
                Ok(Expr::Coef { class, head, a, b })
            }
            _ => Err(format!("expected a factor at token {}", self.pos + 1)),
        }
    }

    fn pred(&mut self) -> Result<Pred, String> {
        let mut acc = self.conj()?;
        while self.eat("|") {
            acc = Pred::Or(Box::new(acc), Box::new(self.conj()?));
        }
        Ok(acc)
    }

    fn conj(&mut self) -> Result<Pred, String> {
        let mut acc = self.atom()?;
        while self.eat("&") {
            acc = Pred::And(Box::new(acc), Box::new(self.atom()?));
        }
        Ok(acc)
    }

    fn rel(&mut self) -> Option<Rel> {
        for (s, r) in [
            ("<=", Rel::Le),
            (">=", Rel::Ge),
            ("!=", Rel::Ne),
            ("<", Rel::Lt),
            (">", Rel::Gt),
            ("=", Rel::Eq),
        ] {
            if self.eat(s) {
                return Some(r);
            }
        }
        None
    }

    fn atom(&mut self) -> Result<Pred, String> {
        if self.eat("!") {
            return Ok(Pred::Not(Box::new(self.atom()?)));
        }
        if self.eat("(") {
            let p = self.pred()?;
            self.expect(")")?;
            return Ok(p);
        }
        if self.eat_ident("distinct") {
            return Ok(Pred::Distinct);
        }
        if self.eat_ident("true") {
            return Ok(Pred::True);
        }
        let mut xs = vec![self.idx()?];
        let mut rels = Vec::new();
        while let Some(r) = self.rel() {
            rels.push(r);
            xs.push(self.idx()?);
        }
        if rels.is_empty() {
            return Err(format!("expected a relation at token {}", self.pos + 1));
        }
        Ok(Pred::Chain(xs, rels))
    }

    fn finish<T>(&self, v: T) -> Result<T, String> {
        if self.pos == self.toks.len() {
            Ok(v)
        } else {
            Err(format!(
                "unexpected trailing input at token {}",
                self.pos + 1
            ))
        }
    }
}

fn run<T>(text: &str, f: impl FnOnce(&mut Parser) -> Result<T, String>) -> Result<T, FamilyError> {
    let err = |reason: String| FamilyError::Condition {
        text: text.to_string(),
        reason,
    };
    let toks = tokenize(text).map_err(err)?;
    let mut p = Parser { toks, pos: 0 };
    let v = f(&mut p).map_err(err)?;
    p.finish(v).map_err(err)
}

/// Parses an index predicate (an empty string is `true`).
pub fn parse_pred(text: &str) -> Result<Pred, FamilyError> {
    if text.trim().is_empty() {
        return Ok(Pred::True);
    }
    run(text, |p| p.pred())
}

/// Parses a polynomial expression.
pub fn parse_expr(text: &str) -> Result<Expr, FamilyError> {
    run(text, |p| p.expr())
}

/// Parses a condition.
pub fn parse_condition(text: &str) -> Result<Condition, FamilyError> {
    run(text, |p| {
        let forall = if p.eat_ident("forall") {
            let Idx::Var(v) = p.idx()? else {
                return Err("a bound index must be a variable".into());
            };
            if !p.eat_ident("with") {
                return Err("expected 'with' after the bound variable".into());
            }
            let pred = p.pred()?;
            p.expect(":")?;
            Some((v, pred))
        } else {
            None
        };
        let lhs = p.expr()?;
        p.expect("=")?;
        let rhs = p.expr()?;
        Ok(Condition { forall, lhs, rhs })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env(pairs: &[(char, u32)]) -> Env {
        pairs.iter().copied().collect()
    }

    #[test]
    fn arithmetic_and_precedence() {
        let e = parse_expr("1/2*(2 - 3) + -1/4 - delta(i,j)*3").unwrap();
        let v = e.eval(&env(&[('i', 1), ('j', 1)]), &|_| Q::zero());
        assert_eq!(v, rat(-1, 2) - rat(1, 4) - rat(3, 1));
    }

    #[test]
    fn coefficients_are_looked_up_with_substituted_indices() {
        let e = parse_expr("kappa[b](j,i)*(mu[j](k,b) + 1)").unwrap();
        let en = env(&[('b', 2), ('i', 1), ('j', 3), ('k', 4)]);
        let lookup = |c: Coeff| match (c.class, c.head, c.a, c.b) {
            (Class::Kappa, 2, 3, 1) => rat(2, 1),
            (Class::Mu, 3, 4, 2) => rat(1, 2),
            _ => Q::zero(),
        };
        assert_eq!(e.eval(&en, &lookup), rat(3, 1));
        let mut cs = Vec::new();
        e.coeffs(&en, &mut cs);
        assert_eq!(cs.len(), 2);
        assert_eq!(e.render(&en), "kappa[2](3,1)*(mu[3](4,2) + 1)");
    }

    #[test]
    fn predicates_chain_and_combine() {
        let p = parse_pred("k<j<i | j<i<k").unwrap();
        assert!(p.holds(&env(&[('i', 3), ('j', 2), ('k', 1)])));
        assert!(p.holds(&env(&[('i', 2), ('j', 1), ('k', 3)])));
        assert!(!p.holds(&env(&[('i', 1), ('j', 2), ('k', 3)])));
        let q = parse_pred("!(i=k) & distinct").unwrap();
        assert!(q.holds(&env(&[('i', 1), ('k', 2)])));
        assert!(!q.holds(&env(&[('i', 1), ('k', 1)])));
        assert_eq!(parse_pred("").unwrap(), Pred::True);
    }

    #[test]
    fn bound_variables_range_over_the_predicate() {
        let c = parse_condition("forall a with j<a<=k: kappa[a](i,j) = 0").unwrap();
        assert_eq!(c.free_vars(), vec!['i', 'j']);
        let inst = c.instances(&env(&[('i', 5), ('j', 1), ('k', 3)]), 5);
        assert_eq!(inst.iter().map(|e| e[&'a']).collect::<Vec<_>>(), vec![2, 3]);
    }

    #[test]
    fn malformed_text_is_reported() {
        for bad in [
            "alpha[i](j) = 0",
            "mu[i](j,k)",
            "1/0 = 0",
            "gamma[i](j,k) = 0",
            "x = 0 0",
            "forall 2 with i<j: 0 = 0",
        ] {
            let e = parse_condition(bad).unwrap_err();
            assert!(matches!(e, FamilyError::Condition { .. }), "{bad}: {e}");
        }
        assert!(parse_pred("i j").is_err());
    }
}
