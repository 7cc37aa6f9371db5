//! Generator tables of double brackets.
//!
//! Entries are projected onto the idempotent window of their generator pair
//! when registered; anything outside the window is forced to vanish by
//! bilinearity over the vertex algebra, so it is dropped and recorded as a
//! correction.

use std::collections::{BTreeMap, BTreeSet};

use ncalg::render::{self, sym_name};
use ncalg::{parse_t2, Kind, Names, ParseCtx, Sym, Tensor2};
use serde::{Deserialize, Serialize};

use crate::error::BracketError;

/// The idempotent window of the pair `(a, b)`: for `a = e_p a e_q` and
/// `b = e_r b e_s`, keeps the part of `t` in `(e_r A e_q) ⊗ (e_p A e_s)`.
pub fn window_for(a: &Sym, b: &Sym, t: &Tensor2) -> Tensor2 {
    t.window(a.source, a.target, b.source, b.target)
}

/// A literal entry that had terms outside its window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowCorrection {
    pub a: Sym,
    pub b: Sym,
    pub literal: Tensor2,
    pub corrected: Tensor2,
}

impl WindowCorrection {
    /// The dropped terms.
    pub fn dropped(&self) -> Tensor2 {
        &self.literal - &self.corrected
    }
}

/// A table `(a, b) ↦ ⟪a, b⟫` on generator pairs.
#[derive(Clone, Debug, Default)]
pub struct BracketTable {
    entries: BTreeMap<(Sym, Sym), Tensor2>,
    corrections: Vec<WindowCorrection>,
}

impl BracketTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers `⟪a, b⟫ = value`, projecting onto the idempotent window.
    /// Entries involving an idempotent must be zero.
    pub fn insert(&mut self, a: Sym, b: Sym, value: Tensor2) -> Result<(), BracketError> {
        if (a.kind == Kind::Idempotent || b.kind == Kind::Idempotent) && !value.is_zero() {
            return Err(BracketError::IdempotentEntry(a.to_string(), b.to_string()));
        }
        let corrected = window_for(&a, &b, &value);
        if corrected != value {
            self.corrections.push(WindowCorrection {
                a,
                b,
                literal: value,
                corrected: corrected.clone(),
            });
        }
        self.entries.insert((a, b), corrected);
        Ok(())
    }

    /// Adds `⟪b, a⟫ = −τ₁₂⟪a, b⟫` for every entry whose mirror is missing,
    /// and checks antisymmetry of pairs given in both orders.
    pub fn complete_antisymmetric(&mut self) -> Result<(), BracketError> {
        let keys: Vec<(Sym, Sym)> = self.entries.keys().copied().collect();
        for (a, b) in keys {
            let v = self.entries[&(a, b)].clone();
            match self.entries.get(&(b, a)) {
                Some(w) => {
                    if *w != -v.tau12() {
                        return Err(BracketError::NotAntisymmetric(a.to_string(), b.to_string()));
                    }
                }
                None => {
                    self.entries.insert((b, a), -v.tau12());
                }
            }
        }
        Ok(())
    }

    /// Pairs whose mirrored entries violate cyclic antisymmetry.
    pub fn antisymmetry_violations(&self) -> Vec<(Sym, Sym)> {
        self.entries
            .iter()
            .filter(|((a, b), v)| {
                a <= b
                    && self
                        .entries
                        .get(&(*b, *a))
                        .is_some_and(|w| *w != -v.tau12())
            })
            .map(|(k, _)| *k)
            .collect()
    }

    /// Pairs whose entry leaves the idempotent window (never true after
    /// `insert`, kept as a structural check).
    pub fn window_violations(&self) -> Vec<(Sym, Sym)> {
        self.entries
            .iter()
            .filter(|((a, b), v)| window_for(a, b, v) != **v)
            .map(|(k, _)| *k)
            .collect()
    }

    pub fn get(&self, a: &Sym, b: &Sym) -> Option<&Tensor2> {
        self.entries.get(&(*a, *b))
    }

    pub fn contains(&self, a: &Sym, b: &Sym) -> bool {
        self.entries.contains_key(&(*a, *b))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(Sym, Sym), &Tensor2)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Symbols appearing as arguments.
    pub fn generators(&self) -> BTreeSet<Sym> {
        self.entries.keys().flat_map(|(a, b)| [*a, *b]).collect()
    }

    /// Window corrections applied at registration.
    pub fn corrections(&self) -> &[WindowCorrection] {
        &self.corrections
    }

    /// Maps every entry value (used to perturb tables in tests and search).
    pub fn set(&mut self, a: Sym, b: Sym, value: Tensor2) -> Result<(), BracketError> {
        self.insert(a, b, value)
    }

    /// Reads a table from JSON: `{"entries": [{"a": "v12", "b": "v13",
    /// "value": "1/2 v12 (x) v13"}, ...]}`.  Missing mirrors are completed by
    /// antisymmetry.
    pub fn from_json(s: &str, ctx: &ParseCtx) -> Result<Self, BracketError> {
        let file: TableFile = serde_json::from_str(s)?;
        let mut t = BracketTable::new();
        for e in file.entries {
            let a = single_symbol(&e.a, ctx)?;
            let b = single_symbol(&e.b, ctx)?;
            let v = if e.value.trim() == "0" {
                Tensor2::zero()
            } else {
                parse_t2(&e.value, ctx)?
            };
            t.insert(a, b, v)?;
        }
        t.complete_antisymmetric()?;
        Ok(t)
    }

    /// Writes the table as JSON (every stored entry, including completions).
    pub fn to_json(&self, names: &Names) -> String {
        let entries = self
            .entries
            .iter()
            .map(|((a, b), v)| TableEntry {
                a: sym_name(a, names),
                b: sym_name(b, names),
                value: render::lin(v, names),
            })
            .collect();
        serde_json::to_string_pretty(&TableFile { entries }).expect("table serializes")
    }
}

fn single_symbol(s: &str, ctx: &ParseCtx) -> Result<Sym, BracketError> {
    let x = ncalg::parse_alg(s, ctx)?;
    let mut it = x.iter();
    match (it.next(), it.next()) {
        (Some((w, c)), None) if w.len() == 1 && *c == ncalg::rat(1, 1) => Ok(w.letters()[0]),
        _ => Err(BracketError::Format(format!(
            "'{s}' is not a single generator"
        ))),
    }
}

#[derive(Serialize, Deserialize)]
struct TableFile {
    entries: Vec<TableEntry>,
}

#[derive(Serialize, Deserialize)]
struct TableEntry {
    a: String,
    b: String,
    value: String,
}
