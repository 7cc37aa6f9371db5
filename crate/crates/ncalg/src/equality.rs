//! Layered equality decisions.
//!
//! * `Structural` normalizes with the loop-cancellation rules only.
//! * `Expanded` expands every defined symbol and normalizes with the full
//!   rule set of the presentation.
//! * `Oracle` delegates to exact evaluation on matrix representations.
//!
//! A zero difference is always a definitive `Equal`.  A nonzero difference is
//! a definitive `NotEqual` only when the normal form is known to be unique:
//! for `Expanded` this needs a certified-confluent rule set, for `Structural`
//! it additionally needs the difference to involve arrows of the double
//! quiver only.  An oracle `NotEqual` is definitive; an oracle `Equal` is
//! evidence and is flagged as such.

use std::fmt;
use std::str::FromStr;

use crate::lin::{AlgElem, Lin, Tensor2, Tensor3};
use crate::render::{self, Names, RenderKey};
use crate::rewrite::{Normalizer, RuleSet, DEFAULT_STEP_CAP};
use crate::symbol::{Kind, Sym};
use crate::word::Word;

/// An equality strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strategy {
    Structural,
    Expanded,
    Oracle,
}

impl Strategy {
    /// The default chain, fastest first.
    pub fn default_chain() -> Vec<Strategy> {
        vec![Strategy::Structural, Strategy::Expanded, Strategy::Oracle]
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Structural => "STRUCTURAL",
            Strategy::Expanded => "EXPANDED",
            Strategy::Oracle => "ORACLE",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "structural" => Ok(Strategy::Structural),
            "expanded" => Ok(Strategy::Expanded),
            "oracle" => Ok(Strategy::Oracle),
            other => Err(format!("unknown strategy '{other}'")),
        }
    }
}

/// Three-valued verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    Equal,
    NotEqual,
    Undecided,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Equal => "EQUAL",
            Verdict::NotEqual => "NOT_EQUAL",
            Verdict::Undecided => "UNDECIDED",
        }
    }

    /// Combines verdicts of a conjunction: any `NotEqual` wins, then any
    /// `Undecided`.
    pub fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (NotEqual, _) | (_, NotEqual) => NotEqual,
            (Undecided, _) | (_, Undecided) => Undecided,
            _ => Equal,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A verdict together with how it was reached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub verdict: Verdict,
    /// The strategy that produced the verdict (`None` if none applied).
    pub strategy: Option<Strategy>,
    /// Rendered nonzero difference (or oracle witness) on `NotEqual`.
    pub witness: Option<String>,
    /// True when `Equal` rests on oracle evidence rather than symbolic proof.
    pub evidence_only: bool,
}

impl Decision {
    fn new(verdict: Verdict, strategy: Strategy) -> Self {
        Decision {
            verdict,
            strategy: Some(strategy),
            witness: None,
            evidence_only: false,
        }
    }
}

/// Borrowed element of any arity, for oracles.
#[derive(Clone, Copy, Debug)]
pub enum ElemRef<'a> {
    Alg(&'a AlgElem),
    T2(&'a Tensor2),
    T3(&'a Tensor3),
}

/// Result of an oracle zero test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleOutcome {
    /// Evaluates to zero on every sample.
    Zero,
    /// Nonzero on some sample.
    NonZero { witness: String },
    /// The oracle could not evaluate the element.
    Failed(String),
}

/// An identity-testing oracle.
pub trait Oracle: Sync {
    fn test_zero(&self, x: ElemRef<'_>) -> OracleOutcome;
}

/// Keys of `AlgElem`, `Tensor2` and `Tensor3`: tuples of words whose slots
/// can be normalized independently.
pub trait Slotted: Ord + Clone + RenderKey {
    fn slots(&self) -> Vec<&Word>;
    fn from_slots(slots: Vec<Word>) -> Self;
    fn as_elem(lin: &Lin<Self>) -> ElemRef<'_>;
}

impl Slotted for Word {
    fn slots(&self) -> Vec<&Word> {
        vec![self]
    }
    fn from_slots(mut slots: Vec<Word>) -> Self {
        slots.pop().expect("one slot")
    }
    fn as_elem(lin: &Lin<Self>) -> ElemRef<'_> {
        ElemRef::Alg(lin)
    }
}

impl Slotted for (Word, Word) {
    fn slots(&self) -> Vec<&Word> {
        vec![&self.0, &self.1]
    }
    fn from_slots(slots: Vec<Word>) -> Self {
        let mut it = slots.into_iter();
        (it.next().unwrap(), it.next().unwrap())
    }
    fn as_elem(lin: &Lin<Self>) -> ElemRef<'_> {
        ElemRef::T2(lin)
    }
}

impl Slotted for (Word, Word, Word) {
    fn slots(&self) -> Vec<&Word> {
        vec![&self.0, &self.1, &self.2]
    }
    fn from_slots(slots: Vec<Word>) -> Self {
        let mut it = slots.into_iter();
        (it.next().unwrap(), it.next().unwrap(), it.next().unwrap())
    }
    fn as_elem(lin: &Lin<Self>) -> ElemRef<'_> {
        ElemRef::T3(lin)
    }
}

/// Normalizes every slot of every term; returns the result and whether all
/// slot normalizations reached a fixpoint.
pub fn normalize_slots<K: Slotted>(x: &Lin<K>, nf: &mut Normalizer<'_>) -> (Lin<K>, bool) {
    let mut out = Lin::zero();
    let mut ok = true;
    for (k, c) in x.iter() {
        // Expand the tensor product of the slot normal forms.
        let mut partial: Vec<(Vec<Word>, crate::Q)> = vec![(Vec::new(), c.clone())];
        for w in k.slots() {
            let (n, fix) = nf.word(w);
            ok &= fix;
            let mut next = Vec::with_capacity(partial.len() * n.len());
            for (ws, pc) in &partial {
                for (u, uc) in n.iter() {
                    let mut ws2 = ws.clone();
                    ws2.push(u.clone());
                    next.push((ws2, pc * uc));
                }
            }
            partial = next;
        }
        for (ws, pc) in partial {
            out.add_term(K::from_slots(ws), pc);
        }
    }
    (out, ok)
}

/// True if every letter of every slot is an arrow of the double quiver.
pub fn only_arrows<K: Slotted>(x: &Lin<K>) -> bool {
    x.keys()
        .all(|k| k.slots().iter().all(|w| w.all_of_kind(Kind::V)))
}

/// Everything needed to decide equalities in one algebra.
pub struct EqualityContext<'a> {
    /// Loop-cancellation rules (the STRUCTURAL layer).
    pub structural: &'a RuleSet,
    /// Full rule set with expansions (the EXPANDED layer), if any.
    pub expanded: Option<&'a RuleSet>,
    /// True if `expanded` is certified terminating and confluent.
    pub expanded_complete: bool,
    /// Oracle for the ORACLE layer, if any.
    pub oracle: Option<&'a dyn Oracle>,
    /// Strategies to try, in order.
    pub chain: Vec<Strategy>,
    pub step_cap: usize,
    pub names: Names,
}

impl<'a> EqualityContext<'a> {
    /// A context for a free path algebra (no relations): structural
    /// normalization with an empty rule set decides everything.
    pub fn free(empty: &'a RuleSet) -> Self {
        EqualityContext {
            structural: empty,
            expanded: None,
            expanded_complete: true,
            oracle: None,
            chain: vec![Strategy::Structural],
            step_cap: DEFAULT_STEP_CAP,
            names: Names::default(),
        }
    }

    /// Decides whether `x == y`.
    pub fn equal<K: Slotted>(&self, x: &Lin<K>, y: &Lin<K>) -> Decision {
        self.decide_zero(&(x - y))
    }

    /// Decides whether `diff == 0`, trying the strategies in order.
    pub fn decide_zero<K: Slotted>(&self, diff: &Lin<K>) -> Decision {
        if diff.is_zero() {
            let first = self.chain.first().copied().unwrap_or(Strategy::Structural);
            return Decision::new(Verdict::Equal, first);
        }
        let mut last_witness = None;
        for &s in &self.chain {
            match s {
                Strategy::Structural => {
                    let mut nf = Normalizer::new(self.structural, self.step_cap);
                    let (n, fix) = normalize_slots(diff, &mut nf);
                    if n.is_zero() {
                        return Decision::new(Verdict::Equal, s);
                    }
                    let w = render::lin(&n, &self.names);
                    if fix && self.expanded_complete && only_arrows(&n) {
                        return Decision {
                            witness: Some(w),
                            ..Decision::new(Verdict::NotEqual, s)
                        };
                    }
                    last_witness = Some(w);
                }
                Strategy::Expanded => {
                    let Some(rules) = self.expanded else { continue };
                    let mut nf = Normalizer::new(rules, self.step_cap);
                    let (n, fix) = normalize_slots(diff, &mut nf);
                    if n.is_zero() {
                        return Decision::new(Verdict::Equal, s);
                    }
                    let w = render::lin(&n, &self.names);
                    if fix && self.expanded_complete {
                        return Decision {
                            witness: Some(w),
                            ..Decision::new(Verdict::NotEqual, s)
                        };
                    }
                    last_witness = Some(w);
                }
                Strategy::Oracle => {
                    let Some(oracle) = self.oracle else { continue };
                    match oracle.test_zero(K::as_elem(diff)) {
                        OracleOutcome::Zero => {
                            return Decision {
                                evidence_only: true,
                                ..Decision::new(Verdict::Equal, s)
                            }
                        }
                        OracleOutcome::NonZero { witness } => {
                            return Decision {
                                witness: Some(witness),
                                ..Decision::new(Verdict::NotEqual, s)
                            }
                        }
                        OracleOutcome::Failed(msg) => last_witness = Some(msg),
                    }
                }
            }
        }
        Decision {
            verdict: Verdict::Undecided,
            strategy: None,
            witness: last_witness,
            evidence_only: false,
        }
    }
}

/// Symbols of kind `V` in an element.
pub fn arrow_symbols(x: &AlgElem) -> Vec<Sym> {
    x.symbols()
        .into_iter()
        .filter(|s| s.kind == Kind::V)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;
    use crate::rewrite::Rule;

    fn cancel(s: u32) -> RuleSet {
        let g = Sym::gamma(0, s);
        let gi = Sym::gamma_inv(0, s);
        let mut rs = RuleSet::new();
        rs.push(Rule::Subword {
            lhs: Word::from_letters([g, gi]).unwrap(),
            rhs: AlgElem::idempotent(s),
        })
        .unwrap();
        rs.push(Rule::Subword {
            lhs: Word::from_letters([gi, g]).unwrap(),
            rhs: AlgElem::idempotent(s),
        })
        .unwrap();
        rs
    }

    #[test]
    fn structurally_equal() {
        let empty = RuleSet::new();
        let ctx = EqualityContext::free(&empty);
        let x = AlgElem::sym(Sym::v(0, 1, 2));
        assert_eq!(ctx.equal(&x, &x).verdict, Verdict::Equal);
    }

    #[test]
    fn distinct_words_differ() {
        let empty = RuleSet::new();
        let ctx = EqualityContext::free(&empty);
        let x = AlgElem::sym(Sym::v(0, 1, 2)).mul(&AlgElem::sym(Sym::v(0, 2, 1)));
        let y = AlgElem::sym(Sym::v(0, 1, 3)).mul(&AlgElem::sym(Sym::v(0, 3, 1)));
        let d = ctx.equal(&x, &y);
        assert_eq!(d.verdict, Verdict::NotEqual);
        assert!(d.witness.is_some());
    }

    #[test]
    fn loops_without_completeness_are_undecided() {
        let rs = cancel(1);
        let ctx = EqualityContext {
            structural: &rs,
            expanded: None,
            expanded_complete: false,
            oracle: None,
            chain: vec![Strategy::Structural],
            step_cap: 100,
            names: Names::default(),
        };
        let g = AlgElem::sym(Sym::gamma(0, 1));
        let e = AlgElem::idempotent(1);
        assert_eq!(ctx.equal(&g, &e).verdict, Verdict::Undecided);
        let gg = g.mul(&AlgElem::sym(Sym::gamma_inv(0, 1)));
        assert_eq!(ctx.equal(&gg, &e).verdict, Verdict::Equal);
    }

    struct AlwaysNonZero;
    impl Oracle for AlwaysNonZero {
        fn test_zero(&self, _: ElemRef<'_>) -> OracleOutcome {
            OracleOutcome::NonZero {
                witness: "sample 0".into(),
            }
        }
    }

    #[test]
    fn oracle_fallback_is_used_last() {
        let rs = cancel(1);
        let oracle = AlwaysNonZero;
        let ctx = EqualityContext {
            structural: &rs,
            expanded: None,
            expanded_complete: false,
            oracle: Some(&oracle),
            chain: Strategy::default_chain(),
            step_cap: 100,
            names: Names::default(),
        };
        let d = ctx.equal(
            &AlgElem::sym(Sym::gamma(0, 1)),
            &AlgElem::idempotent(1).scale(&rat(2, 1)),
        );
        assert_eq!(d.verdict, Verdict::NotEqual);
        assert_eq!(d.strategy, Some(Strategy::Oracle));
    }

    #[test]
    fn verdict_conjunction() {
        use Verdict::*;
        assert_eq!(Equal.and(Equal), Equal);
        assert_eq!(Equal.and(Undecided), Undecided);
        assert_eq!(Undecided.and(NotEqual), NotEqual);
    }

    #[test]
    fn strategy_names_parse() {
        assert_eq!("expanded".parse::<Strategy>().unwrap(), Strategy::Expanded);
        assert!("fuzzy".parse::<Strategy>().is_err());
    }
}
