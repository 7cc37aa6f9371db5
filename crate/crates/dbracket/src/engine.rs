//! Extension of a generator table to arbitrary elements.
//!
//! On words `u = y₁⋯y_m` and `w = x₁⋯x_n` the two Leibniz rules combine to
//!
//! ```text
//! ⟪u, w⟫ = Σ_{j,k} Σ_{p⊗q ∈ ⟪y_j, x_k⟫} x_{<k} p y_{>j} ⊗ y_{<j} q x_{>k}
//! ```
//!
//! Symbol pairs are resolved in this order: a table entry; the inverse rule
//! `⟪a, γ⁻¹⟫ = −Σ γ⁻¹p ⊗ qγ⁻¹` (from `⟪a, γγ⁻¹⟫ = 0`); expansion of the
//! second symbol; the inverse rule `⟪γ⁻¹, a⟫ = −Σ pγ⁻¹ ⊗ γ⁻¹q`; expansion
//! of the first symbol; the mirrored table entry `−τ₁₂⟪b, a⟫`.  Symbol-pair
//! results are memoized behind a lock, so one engine can serve many threads.

use std::collections::HashMap;
use std::sync::RwLock;

use ncalg::equality::normalize_slots;
use ncalg::render::sym_name;
use ncalg::{
    AlgElem, Kind, Names, Normalizer, RuleSet, Sym, Tensor2, Tensor3, Word, DEFAULT_STEP_CAP,
};

use crate::error::BracketError;
use crate::table::BracketTable;

const MAX_DEPTH: usize = 64;

/// A double bracket determined by a generator table and, optionally, the
/// expansions of defined symbols.
pub struct Engine<'a> {
    table: &'a BracketTable,
    rules: Option<&'a RuleSet>,
    names: Names,
    cache: RwLock<HashMap<(Sym, Sym), Tensor2>>,
}

impl<'a> Engine<'a> {
    /// An engine using only the table.
    pub fn new(table: &'a BracketTable) -> Self {
        Engine {
            table,
            rules: None,
            names: Names::default(),
            cache: RwLock::new(HashMap::new()),
        }
    }

    /// An engine that expands defined symbols with `rules` and keeps
    /// symbol-pair results in normal form.
    pub fn with_rules(table: &'a BracketTable, rules: &'a RuleSet) -> Self {
        Engine {
            table,
            rules: Some(rules),
            names: Names::default(),
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn names(mut self, names: Names) -> Self {
        self.names = names;
        self
    }

    pub fn table(&self) -> &BracketTable {
        self.table
    }

    fn expansion(&self, x: &Sym) -> Option<&AlgElem> {
        self.rules.and_then(|r| r.expansion(x))
    }

    /// True if brackets with `x` can be resolved through the table or an
    /// expansion.
    fn defined(&self, x: &Sym) -> bool {
        self.expansion(x).is_some() || self.table.generators().contains(x)
    }

    /// `⟪a, b⟫` for algebra elements.
    pub fn dbl(&self, a: &AlgElem, b: &AlgElem) -> Result<Tensor2, BracketError> {
        self.dbl_at(a, b, 0)
    }

    fn dbl_at(&self, a: &AlgElem, b: &AlgElem, depth: usize) -> Result<Tensor2, BracketError> {
        let mut out = Tensor2::zero();
        for (u, cu) in a.iter() {
            for (w, cw) in b.iter() {
                let t = self.word_bracket(u, w, depth)?;
                out.add_scaled(&t, &(cu * cw));
            }
        }
        Ok(out)
    }

    /// `⟪u, w⟫` for words.
    pub fn word_bracket(&self, u: &Word, w: &Word, depth: usize) -> Result<Tensor2, BracketError> {
        let mut out = Tensor2::zero();
        let (ys, xs) = (u.letters(), w.letters());
        for (j, y) in ys.iter().enumerate() {
            let y_before = AlgElem::basis(u.slice(0..j));
            let y_after = AlgElem::basis(u.slice(j + 1..ys.len()));
            for (k, x) in xs.iter().enumerate() {
                let t = self.sym_bracket(y, x, depth)?;
                if t.is_zero() {
                    continue;
                }
                let x_before = AlgElem::basis(w.slice(0..k));
                let x_after = AlgElem::basis(w.slice(k + 1..xs.len()));
                let placed = t
                    .outer_left(&x_before)
                    .outer_right(&x_after)
                    .inner_right(&y_after)
                    .inner_left(&y_before);
                out += &placed;
            }
        }
        Ok(out)
    }

    /// `⟪x, y⟫` for generator symbols, memoized.
    pub fn sym_bracket(&self, x: &Sym, y: &Sym, depth: usize) -> Result<Tensor2, BracketError> {
        if x.kind == Kind::Idempotent || y.kind == Kind::Idempotent {
            return Ok(Tensor2::zero());
        }
        if let Some(hit) = self.cache.read().expect("cache lock").get(&(*x, *y)) {
            return Ok(hit.clone());
        }
        if depth > MAX_DEPTH {
            return Err(BracketError::Depth(MAX_DEPTH));
        }
        let raw = self.resolve(x, y, depth + 1)?;
        let value = match self.rules {
            Some(rules) => normalize_slots(&raw, &mut Normalizer::new(rules, DEFAULT_STEP_CAP)).0,
            None => raw,
        };
        self.cache
            .write()
            .expect("cache lock")
            .insert((*x, *y), value.clone());
        Ok(value)
    }

    fn resolve(&self, x: &Sym, y: &Sym, depth: usize) -> Result<Tensor2, BracketError> {
        if let Some(v) = self.table.get(x, y) {
            return Ok(v.clone());
        }
        if y.kind == Kind::GammaInv {
            let g = y.inverse().expect("inverse loops invert");
            if self.defined(&g) {
                let inner = self.dbl_at(&AlgElem::sym(*x), &AlgElem::sym(g), depth)?;
                let gi = AlgElem::sym(*y);
                return Ok(-inner.outer_left(&gi).outer_right(&gi));
            }
        }
        if let Some(e) = self.expansion(y) {
            return self.dbl_at(&AlgElem::sym(*x), e, depth);
        }
        if x.kind == Kind::GammaInv {
            let g = x.inverse().expect("inverse loops invert");
            if self.defined(&g) {
                let inner = self.dbl_at(&AlgElem::sym(g), &AlgElem::sym(*y), depth)?;
                let gi = AlgElem::sym(*x);
                return Ok(-inner.inner_right(&gi).inner_left(&gi));
            }
        }
        if let Some(e) = self.expansion(x) {
            return self.dbl_at(e, &AlgElem::sym(*y), depth);
        }
        if let Some(v) = self.table.get(y, x) {
            return Ok(-v.tau12());
        }
        Err(BracketError::MissingEntry(
            sym_name(x, &self.names),
            sym_name(y, &self.names),
        ))
    }

    /// `⟪a, x ⊗ y⟫_L = ⟪a, x⟫ ⊗ y`.
    fn left_nested(&self, a: &AlgElem, t: &Tensor2) -> Result<Tensor3, BracketError> {
        let mut out = Tensor3::zero();
        for ((x, y), c) in t.iter() {
            let inner = self.dbl(a, &AlgElem::basis(x.clone()))?;
            let z = AlgElem::term(y.clone(), c.clone());
            out += &inner.append(&z);
        }
        Ok(out)
    }

    /// The triple bracket
    /// `⟪a,⟪b,c⟫⟫_L + τ₍₁₂₃₎⟪b,⟪c,a⟫⟫_L + τ₍₁₃₂₎⟪c,⟪a,b⟫⟫_L`.
    pub fn triple(&self, a: &AlgElem, b: &AlgElem, c: &AlgElem) -> Result<Tensor3, BracketError> {
        let t1 = self.left_nested(a, &self.dbl(b, c)?)?;
        let t2 = self.left_nested(b, &self.dbl(c, a)?)?.tau123();
        let t3 = self.left_nested(c, &self.dbl(a, b)?)?.tau132();
        Ok(t1 + t2 + t3)
    }

    /// The associated bracket `{a, b} = m(⟪a, b⟫)`.
    pub fn associated_bracket(&self, a: &AlgElem, b: &AlgElem) -> Result<AlgElem, BracketError> {
        Ok(self.dbl(a, b)?.multiply())
    }
}
