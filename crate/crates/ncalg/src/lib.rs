//! Exact arithmetic in path algebras of quivers with adjoined inverse loops.
//!
//! The crate provides generator symbols and composable words, sparse exact
//! rational linear combinations (algebra elements and their tensor square
//! and cube with the outer and inner bimodule actions), a rewriting layer
//! with memoized leftmost-innermost normalization and a critical-pair
//! checker, the expression mini-language, and layered equality decisions.

pub mod equality;
pub mod error;
pub mod lin;
pub mod parse;
pub mod render;
pub mod rewrite;
pub mod symbol;
pub mod word;

pub use equality::{
    Decision, ElemRef, EqualityContext, Oracle, OracleOutcome, Slotted, Strategy, Verdict,
};
pub use error::NcError;
pub use lin::{AlgElem, Lin, Tensor2, Tensor3};
pub use parse::{parse, parse_alg, parse_t2, parse_t3, ParseCtx, Parsed};
pub use render::Names;
pub use rewrite::{
    critical_pairs, normalize, normalize_random, Normalized, Normalizer, Rule, RuleSet,
    DEFAULT_STEP_CAP,
};
pub use symbol::{Kind, Sym};
pub use word::Word;

/// Exact rational scalars.
pub type Q = num::BigRational;

/// The rational `n/d`.
pub fn rat(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

/// Parses `p`, `-p` or `p/q` into a rational.
pub fn parse_rational(s: &str) -> Option<Q> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: num::BigInt = n.parse().ok()?;
    let d: num::BigInt = d.parse().ok()?;
    if d == num::BigInt::from(0) {
        return None;
    }
    Some(Q::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("-1/2"), Some(rat(-1, 2)));
        assert_eq!(parse_rational("3"), Some(rat(3, 1)));
        assert_eq!(parse_rational("2/4"), Some(rat(1, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }
}
