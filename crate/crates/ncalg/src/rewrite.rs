//! Word rewriting: rule sets, deterministic normalization, randomized
//! normalization and a critical-pair (local confluence) checker.
//!
//! A rule either replaces a contiguous subword by an algebra element or
//! expands a defined symbol.  Normalization processes a word left to right,
//! keeping the already-processed prefix in normal form, so every redex found
//! ends at the most recently appended letter.  Among the redexes ending there
//! the shortest one (the innermost) fires first, with rule order breaking
//! ties.  This is the leftmost-innermost strategy for string rewriting.

use std::collections::HashMap;

use rand::Rng;

use crate::error::NcError;
use crate::lin::{AlgElem, Lin};
use crate::symbol::Sym;
use crate::word::Word;

/// Default per-word cap on rewrite steps.
pub const DEFAULT_STEP_CAP: usize = 10_000;

/// A single rewrite rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    /// Replace the contiguous subword `lhs` by `rhs`.
    Subword { lhs: Word, rhs: AlgElem },
    /// Replace every occurrence of the symbol `sym` by `rhs`.
    Expand { sym: Sym, rhs: AlgElem },
}

impl Rule {
    /// The pattern as a word.
    pub fn lhs_word(&self) -> Word {
        match self {
            Rule::Subword { lhs, .. } => lhs.clone(),
            Rule::Expand { sym, .. } => Word::letter(*sym),
        }
    }

    pub fn rhs(&self) -> &AlgElem {
        match self {
            Rule::Subword { rhs, .. } | Rule::Expand { rhs, .. } => rhs,
        }
    }

    /// Checks that the replacement has the endpoints of the pattern.
    pub fn check_types(&self) -> Result<(), NcError> {
        let lhs = self.lhs_word();
        if lhs.is_idempotent() {
            return Err(NcError::Type(
                "rule pattern must be a non-empty word".into(),
            ));
        }
        for w in self.rhs().keys() {
            if w.target() != lhs.target() || w.source() != lhs.source() {
                return Err(NcError::Type(format!(
                    "rule replacement term has endpoints ({}, {}) but the pattern has ({}, {})",
                    w.target(),
                    w.source(),
                    lhs.target(),
                    lhs.source()
                )));
            }
        }
        Ok(())
    }
}

/// An ordered list of rules with lookup indices.
#[derive(Clone, Debug, Default)]
pub struct RuleSet {
    rules: Vec<Rule>,
    expansions: HashMap<Sym, usize>,
    by_last_letter: HashMap<Sym, Vec<usize>>,
}

impl RuleSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a rule after type-checking it.  A second expansion for an
    /// already-expanded symbol is rejected.
    pub fn push(&mut self, rule: Rule) -> Result<(), NcError> {
        rule.check_types()?;
        let idx = self.rules.len();
        match &rule {
            Rule::Expand { sym, .. } => {
                if self.expansions.insert(*sym, idx).is_some() {
                    return Err(NcError::Type(format!("duplicate expansion for {sym}")));
                }
            }
            Rule::Subword { lhs, .. } => {
                let last = *lhs.letters().last().expect("non-empty pattern");
                self.by_last_letter.entry(last).or_default().push(idx);
            }
        }
        self.rules.push(rule);
        Ok(())
    }

    /// Appends every rule of `other`.
    pub fn extend_from(&mut self, other: &RuleSet) -> Result<(), NcError> {
        for r in other.rules() {
            self.push(r.clone())?;
        }
        Ok(())
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// The registered expansion of a symbol.
    pub fn expansion(&self, sym: &Sym) -> Option<&AlgElem> {
        self.expansions.get(sym).map(|&i| self.rules[i].rhs())
    }

    /// The innermost redex ending at the last letter of `letters`, as
    /// `(start, rule index)`.
    fn redex_at_end(&self, letters: &[Sym]) -> Option<(usize, usize)> {
        let last = *letters.last()?;
        let n = letters.len();
        let mut best: Option<(usize, usize)> = self.expansions.get(&last).map(|&i| (n - 1, i));
        if let Some(cands) = self.by_last_letter.get(&last) {
            for &i in cands {
                let Rule::Subword { lhs, .. } = &self.rules[i] else {
                    continue;
                };
                let k = lhs.len();
                if k > n || &letters[n - k..] != lhs.letters() {
                    continue;
                }
                let start = n - k;
                // Prefer the shortest match (largest start), then rule order.
                let better = match best {
                    None => true,
                    Some((s, j)) => start > s || (start == s && i < j),
                };
                if better {
                    best = Some((start, i));
                }
            }
        }
        best
    }

    /// Every redex `(start, end, rule index)` inside a word.
    pub fn all_redexes(&self, w: &Word) -> Vec<(usize, usize, usize)> {
        let letters = w.letters();
        let mut out = Vec::new();
        for (end, x) in letters.iter().enumerate() {
            if let Some(&i) = self.expansions.get(x) {
                out.push((end, end + 1, i));
            }
            if let Some(cands) = self.by_last_letter.get(x) {
                for &i in cands {
                    let Rule::Subword { lhs, .. } = &self.rules[i] else {
                        continue;
                    };
                    let k = lhs.len();
                    if k <= end + 1 && &letters[end + 1 - k..=end] == lhs.letters() {
                        out.push((end + 1 - k, end + 1, i));
                    }
                }
            }
        }
        out
    }
}

/// Result of a normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized<K: Ord> {
    pub value: Lin<K>,
    /// True when no rule applies to any word of `value`.
    pub fixpoint: bool,
    /// Number of rewrite steps performed.
    pub steps: usize,
}

/// A memoizing normalizer bound to a rule set.
pub struct Normalizer<'a> {
    rules: &'a RuleSet,
    cap: usize,
    cache: HashMap<(Word, Sym), AlgElem>,
    word_cache: HashMap<Word, AlgElem>,
    budget: usize,
    exhausted: bool,
    steps: usize,
}

impl<'a> Normalizer<'a> {
    pub fn new(rules: &'a RuleSet, cap: usize) -> Self {
        Normalizer {
            rules,
            cap,
            cache: HashMap::new(),
            word_cache: HashMap::new(),
            budget: cap,
            exhausted: false,
            steps: 0,
        }
    }

    /// Normal form of a word, with a fixpoint flag.
    pub fn word(&mut self, w: &Word) -> (AlgElem, bool) {
        if let Some(hit) = self.word_cache.get(w) {
            return (hit.clone(), true);
        }
        self.budget = self.cap;
        self.exhausted = false;
        let mut acc = AlgElem::idempotent(w.target());
        for &x in w.letters() {
            acc = self.append_elem(&acc, x);
        }
        let ok = !self.exhausted;
        if ok {
            self.word_cache.insert(w.clone(), acc.clone());
        }
        (acc, ok)
    }

    /// Normal form of an algebra element.
    pub fn elem(&mut self, x: &AlgElem) -> Normalized<Word> {
        let start = self.steps;
        let mut fixpoint = true;
        let mut value = AlgElem::zero();
        for (w, c) in x.iter() {
            let (nf, ok) = self.word(w);
            fixpoint &= ok;
            value.add_scaled(&nf, c);
        }
        Normalized {
            value,
            fixpoint,
            steps: self.steps - start,
        }
    }

    fn append_elem(&mut self, acc: &AlgElem, x: Sym) -> AlgElem {
        let mut out = AlgElem::zero();
        for (u, c) in acc.iter() {
            if u.source() != x.target {
                continue;
            }
            let r = self.append(u, x);
            out.add_scaled(&r, c);
        }
        out
    }

    /// Normal form of `u·x` where `u` is already normal.
    fn append(&mut self, u: &Word, x: Sym) -> AlgElem {
        let key = (u.clone(), x);
        if let Some(hit) = self.cache.get(&key) {
            return hit.clone();
        }
        let mut ux = u.clone();
        if !ux.push(x) {
            return AlgElem::zero();
        }
        let Some((start, rule_idx)) = self.rules.redex_at_end(ux.letters()) else {
            let out = AlgElem::basis(ux);
            self.cache.insert(key, out.clone());
            return out;
        };
        if self.budget == 0 {
            self.exhausted = true;
            return AlgElem::basis(ux);
        }
        self.budget -= 1;
        self.steps += 1;
        let was_exhausted = self.exhausted;
        self.exhausted = false;
        let prefix = ux.slice(0..start);
        let rhs = self.rules.rules[rule_idx].rhs().clone();
        let mut out = AlgElem::zero();
        for (w, c) in rhs.iter() {
            let mut acc = AlgElem::basis(prefix.clone());
            for &y in w.letters() {
                acc = self.append_elem(&acc, y);
            }
            out.add_scaled(&acc, c);
        }
        if !self.exhausted {
            self.cache.insert(key, out.clone());
        }
        self.exhausted |= was_exhausted;
        out
    }
}

/// Normalizes `x` with `rules` (leftmost-innermost), capping each word at
/// `step_cap` rewrite steps.
pub fn normalize(x: &AlgElem, rules: &RuleSet, step_cap: usize) -> Normalized<Word> {
    Normalizer::new(rules, step_cap).elem(x)
}

/// Normalizes by firing a uniformly random redex at every step.  Used to test
/// that results do not depend on the application order.
pub fn normalize_random<R: Rng + ?Sized>(
    x: &AlgElem,
    rules: &RuleSet,
    rng: &mut R,
    step_cap: usize,
) -> Normalized<Word> {
    let mut pending = x.clone();
    let mut done = AlgElem::zero();
    let mut steps = 0usize;
    while !pending.is_zero() {
        let idx = rng.gen_range(0..pending.len());
        let (w, c) = pending
            .iter()
            .nth(idx)
            .map(|(w, c)| (w.clone(), c.clone()))
            .unwrap();
        pending.add_term(w.clone(), -c.clone());
        let redexes = rules.all_redexes(&w);
        if redexes.is_empty() {
            done.add_term(w, c);
            continue;
        }
        if steps >= step_cap {
            done.add_term(w, c);
            done += &pending;
            return Normalized {
                value: done,
                fixpoint: false,
                steps,
            };
        }
        steps += 1;
        let (start, end, rule_idx) = redexes[rng.gen_range(0..redexes.len())];
        let prefix = AlgElem::basis(w.slice(0..start));
        let suffix = AlgElem::basis(w.slice(end..w.len()));
        let replaced = prefix.mul(rules.rules()[rule_idx].rhs()).mul(&suffix);
        pending.add_scaled(&replaced, &c);
    }
    Normalized {
        value: done,
        fixpoint: true,
        steps,
    }
}

/// An ambiguity whose two reducts do not join.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unjoinable {
    pub word: Word,
    pub left: AlgElem,
    pub right: AlgElem,
}

/// Outcome of the critical-pair check.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CriticalPairReport {
    /// Number of ambiguities examined.
    pub checked: usize,
    /// Ambiguities whose reducts have different normal forms.
    pub unjoinable: Vec<Unjoinable>,
    /// True if some normalization hit the step cap.
    pub capped: bool,
}

impl CriticalPairReport {
    /// Locally confluent: every ambiguity joins.
    pub fn is_locally_confluent(&self) -> bool {
        self.unjoinable.is_empty() && !self.capped
    }
}

/// Examines every overlap and inclusion ambiguity between rule patterns and
/// checks that both one-step reducts normalize to the same element.  Together
/// with termination this certifies confluence (Newman's lemma).
pub fn critical_pairs(rules: &RuleSet, step_cap: usize) -> CriticalPairReport {
    let mut report = CriticalPairReport::default();
    let mut nf = Normalizer::new(rules, step_cap);
    let pats: Vec<Word> = rules.rules().iter().map(Rule::lhs_word).collect();
    let mut check = |word: Word, left: AlgElem, right: AlgElem, report: &mut CriticalPairReport| {
        report.checked += 1;
        let l = nf.elem(&left);
        let r = nf.elem(&right);
        if !l.fixpoint || !r.fixpoint {
            report.capped = true;
        }
        if l.value != r.value {
            report.unjoinable.push(Unjoinable {
                word,
                left: l.value,
                right: r.value,
            });
        }
    };
    for (i, p) in pats.iter().enumerate() {
        for (j, q) in pats.iter().enumerate() {
            let (pl, ql) = (p.letters(), q.letters());
            // Overlaps: a proper suffix of p equals a proper prefix of q.
            for k in 1..pl.len().min(ql.len()) {
                if pl[pl.len() - k..] != ql[..k] {
                    continue;
                }
                let word = p
                    .concat(&q.slice(k..ql.len()))
                    .expect("overlap is composable");
                let left = rules.rules()[i]
                    .rhs()
                    .mul(&AlgElem::basis(q.slice(k..ql.len())));
                let right = AlgElem::basis(p.slice(0..pl.len() - k)).mul(rules.rules()[j].rhs());
                check(word, left, right, &mut report);
            }
            // Inclusions: q occurs inside p (distinct rules only).
            if i != j && ql.len() <= pl.len() {
                for start in p.occurrences(ql) {
                    let left = rules.rules()[i].rhs().clone();
                    let right = AlgElem::basis(p.slice(0..start))
                        .mul(rules.rules()[j].rhs())
                        .mul(&AlgElem::basis(p.slice(start + ql.len()..pl.len())));
                    check(p.clone(), left, right, &mut report);
                }
            }
        }
    }
    report
}
