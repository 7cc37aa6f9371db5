//! Re-expressing normal forms in the derived generators.
//!
//! Brackets computed with expansions come out over arrows and inverse loops
//! only.  For display, [`fold`] searches for a short combination of tensor
//! words over the full alphabet (arrows, `w`, `γ`, and in a second pass
//! `γ⁻¹`) with the same normal form, preferring short words and the plain
//! generators.  If no such combination exists the normal form is returned.

use std::collections::BTreeSet;

use ncalg::equality::normalize_slots;
use ncalg::{Kind, Lin, Normalizer, RuleSet, Sym, Tensor2, Word, DEFAULT_STEP_CAP, Q};
use num::Zero;

/// Words of length at most two from `t` to `s` (reading right to left).
fn short_words(alphabet: &[Sym], t: u32, s: u32) -> Vec<Word> {
    let mut out = Vec::new();
    if t == s {
        out.push(Word::idempotent(t));
    }
    for x in alphabet {
        if x.target == t && x.source == s {
            out.push(Word::letter(*x));
        }
    }
    for x in alphabet.iter().filter(|x| x.target == t) {
        for y in alphabet
            .iter()
            .filter(|y| y.source == s && y.target == x.source)
        {
            if x.inverse() == Some(*y) {
                continue;
            }
            if let Some(w) = Word::from_letters([*x, *y]) {
                out.push(w);
            }
        }
    }
    out
}

fn kind_rank(k: Kind) -> u8 {
    match k {
        Kind::Idempotent => 0,
        Kind::V => 1,
        Kind::W => 2,
        Kind::Gamma => 3,
        Kind::GammaInv => 4,
    }
}

fn preference(w: &Word) -> (usize, Vec<u8>) {
    (
        w.len(),
        w.letters().iter().map(|x| kind_rank(x.kind)).collect(),
    )
}

/// Incremental row reduction of vectors indexed by tensor words, tracking
/// each basis row as a combination of the inserted candidates.
struct Span {
    rows: Vec<((Word, Word), Tensor2, Lin<usize>)>,
}

impl Span {
    fn reduce(&self, v: &Tensor2) -> (Tensor2, Lin<usize>) {
        let mut v = v.clone();
        let mut combo = Lin::zero();
        for (pivot, row, rc) in &self.rows {
            let c = v.coeff(pivot);
            if !c.is_zero() {
                let neg = -c;
                v.add_scaled(row, &neg);
                combo.add_scaled(rc, &neg);
            }
        }
        (v, combo)
    }

    /// Adds the vector of candidate `idx`; returns false if dependent.
    fn insert(&mut self, idx: usize, v: &Tensor2) -> bool {
        let (r, combo) = self.reduce(v);
        let Some((pivot, c)) = r.leading().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = Q::from_integer(1.into()) / c;
        let mut rc = combo;
        rc.add_term(idx, Q::from_integer(1.into()));
        let row = r.scale(&inv);
        let rc = rc.scale(&inv);
        // Keep rows fully reduced so later reductions stay consistent.
        for (_, other, oc) in self.rows.iter_mut() {
            let k = other.coeff(&pivot);
            if !k.is_zero() {
                let neg = -k;
                other.add_scaled(&row, &neg);
                oc.add_scaled(&rc, &neg);
            }
        }
        self.rows.push((pivot, row, rc));
        true
    }
}

fn slot_support(r: &Tensor2) -> (BTreeSet<Word>, BTreeSet<Word>) {
    (
        r.keys().map(|(x, _)| x.clone()).collect(),
        r.keys().map(|(_, y)| y.clone()).collect(),
    )
}

/// A candidate tensor word, its normal form and its preference key.
type Candidate = ((Word, Word), Tensor2, (usize, usize));

fn try_fold(r: &Tensor2, alphabet: &[Sym], rules: &RuleSet) -> Option<Tensor2> {
    let ((x0, y0), _) = r.leading()?;
    let (sup1, sup2) = slot_support(r);
    let mut nf = Normalizer::new(rules, DEFAULT_STEP_CAP);
    let mut keep = |words: Vec<Word>, sup: &BTreeSet<Word>| -> Vec<(Word, ncalg::AlgElem)> {
        let mut out: Vec<(Word, ncalg::AlgElem)> = words
            .into_iter()
            .filter_map(|w| {
                let (n, fix) = nf.word(&w);
                (fix && !n.is_zero() && n.keys().all(|u| sup.contains(u))).then_some((w, n))
            })
            .collect();
        out.sort_by(|a, b| preference(&a.0).cmp(&preference(&b.0)).then(a.0.cmp(&b.0)));
        out
    };
    let c1 = keep(short_words(alphabet, x0.target(), x0.source()), &sup1);
    let c2 = keep(short_words(alphabet, y0.target(), y0.source()), &sup2);
    let mut cands: Vec<Candidate> = Vec::new();
    for (u, nu) in &c1 {
        for (w, nw) in &c2 {
            let pref = (u.len() + w.len(), u.len().max(w.len()));
            cands.push(((u.clone(), w.clone()), nu.tensor(nw), pref));
        }
    }
    cands.sort_by_key(|c| c.2);
    let mut span = Span { rows: Vec::new() };
    for (i, (_, v, _)) in cands.iter().enumerate() {
        span.insert(i, v);
    }
    let (rest, combo) = span.reduce(r);
    if !rest.is_zero() {
        return None;
    }
    let mut out = Tensor2::zero();
    for (i, c) in combo.iter() {
        out.add_term(cands[*i].0.clone(), -c.clone());
    }
    Some(out)
}

/// Rewrites `r` (a tensor in normal form under `rules`) as a combination of
/// short tensor words over `alphabet` with the same normal form, or returns
/// `r` unchanged.
pub fn fold(r: &Tensor2, alphabet: &[Sym], rules: &RuleSet) -> Tensor2 {
    if r.is_zero() {
        return Tensor2::zero();
    }
    let plain: Vec<Sym> = alphabet
        .iter()
        .copied()
        .filter(|x| x.kind != Kind::GammaInv)
        .collect();
    if let Some(t) = try_fold(r, &plain, rules) {
        return t;
    }
    try_fold(r, alphabet, rules).unwrap_or_else(|| r.clone())
}

/// Normal form of `r` under `rules`, slot by slot.
pub fn normal_form(r: &Tensor2, rules: &RuleSet) -> Tensor2 {
    normalize_slots(r, &mut Normalizer::new(rules, DEFAULT_STEP_CAP)).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use ncalg::{parse_t2, AlgElem, ParseCtx, Rule};

    #[test]
    fn free_algebra_folds_to_itself() {
        let ctx = ParseCtx::single(3);
        let rules = RuleSet::new();
        let r = parse_t2("1/2 v12 (x) v13 - e2 (x) v12 v23", &ctx).unwrap();
        let alphabet = [Sym::v(0, 1, 2), Sym::v(0, 2, 3), Sym::v(0, 1, 3)];
        assert_eq!(fold(&r, &alphabet, &rules), r);
    }

    #[test]
    fn expansion_is_folded_back() {
        // w12 := v12 v21 v12 as a toy definition.
        let ctx = ParseCtx::single(2);
        let mut rules = RuleSet::new();
        let w12 = Sym::w(0, 1, 2);
        let v = |t, s| AlgElem::sym(Sym::v(0, t, s));
        rules
            .push(Rule::Expand {
                sym: w12,
                rhs: v(1, 2).mul(&v(2, 1)).mul(&v(1, 2)),
            })
            .unwrap();
        let r = parse_t2("2 v12 v21 v12 (x) e1", &ctx).unwrap();
        let alphabet = [Sym::v(0, 1, 2), Sym::v(0, 2, 1), w12];
        assert_eq!(
            fold(&r, &alphabet, &rules),
            parse_t2("2 w12 (x) e1", &ctx).unwrap()
        );
    }
}
