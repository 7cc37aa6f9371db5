//! Finite rational linear combinations and the path-algebra operations on
//! them.
//!
//! [`Lin<K>`] is a sparse map from basis keys to nonzero exact rationals.
//! The algebra (`AlgElem`), its tensor square (`Tensor2`) and tensor cube
//! (`Tensor3`) are instances keyed by words, pairs and triples of words.

use std::collections::btree_map::{self, BTreeMap};
use std::collections::BTreeSet;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num::{One, Zero};

use crate::symbol::Sym;
use crate::word::Word;
use crate::Q;

/// A finite linear combination with nonzero rational coefficients, stored in
/// the canonical order of its keys.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lin<K: Ord> {
    terms: BTreeMap<K, Q>,
}

/// Element of the path algebra (with adjoined inverse symbols).
pub type AlgElem = Lin<Word>;
/// Element of `A ⊗ A`.
pub type Tensor2 = Lin<(Word, Word)>;
/// Element of `A ⊗ A ⊗ A`.
pub type Tensor3 = Lin<(Word, Word, Word)>;

impl<K: Ord> Default for Lin<K> {
    fn default() -> Self {
        Lin {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> Lin<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The single term `c·k` (zero if `c = 0`).
    pub fn term(k: K, c: Q) -> Self {
        let mut out = Self::zero();
        out.add_term(k, c);
        out
    }

    /// The basis element `k` with coefficient one.
    pub fn basis(k: K) -> Self {
        Self::term(k, Q::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending canonical order.
    pub fn iter(&self) -> btree_map::Iter<'_, K, Q> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, Q> {
        self.terms.keys()
    }

    pub fn coeff(&self, k: &K) -> Q {
        self.terms.get(k).cloned().unwrap_or_else(Q::zero)
    }

    /// Adds `c·k`, dropping the key if the coefficient cancels.
    pub fn add_term(&mut self, k: K, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Adds `c·other`.
    pub fn add_scaled(&mut self, other: &Self, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (k, v) in other.iter() {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Lin {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Applies a linear map given on basis keys.
    pub fn map_linear<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> Lin<L>) -> Lin<L> {
        let mut out = Lin::zero();
        for (k, c) in self.iter() {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Relabels keys; keys mapped to `None` are dropped.
    pub fn filter_map_keys<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> Option<L>) -> Lin<L> {
        let mut out = Lin::zero();
        for (k, c) in self.iter() {
            if let Some(l) = f(k) {
                out.add_term(l, c.clone());
            }
        }
        out
    }

    /// The term with the largest key, if any.
    pub fn leading(&self) -> Option<(&K, &Q)> {
        self.terms.iter().next_back()
    }
}

impl<K: Ord + Clone> FromIterator<(K, Q)> for Lin<K> {
    fn from_iter<I: IntoIterator<Item = (K, Q)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<K: Ord + Clone> AddAssign<&Lin<K>> for Lin<K> {
    fn add_assign(&mut self, rhs: &Lin<K>) {
        for (k, c) in rhs.iter() {
            self.add_term(k.clone(), c.clone());
        }
    }
}

impl<K: Ord + Clone> SubAssign<&Lin<K>> for Lin<K> {
    fn sub_assign(&mut self, rhs: &Lin<K>) {
        for (k, c) in rhs.iter() {
            self.add_term(k.clone(), -c.clone());
        }
    }
}

impl<K: Ord + Clone> Add<&Lin<K>> for &Lin<K> {
    type Output = Lin<K>;
    fn add(self, rhs: &Lin<K>) -> Lin<K> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<K: Ord + Clone> Sub<&Lin<K>> for &Lin<K> {
    type Output = Lin<K>;
    fn sub(self, rhs: &Lin<K>) -> Lin<K> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<K: Ord + Clone> Add for Lin<K> {
    type Output = Lin<K>;
    fn add(mut self, rhs: Lin<K>) -> Lin<K> {
        self += &rhs;
        self
    }
}

impl<K: Ord + Clone> Sub for Lin<K> {
    type Output = Lin<K>;
    fn sub(mut self, rhs: Lin<K>) -> Lin<K> {
        self -= &rhs;
        self
    }
}

impl<K: Ord + Clone> Neg for &Lin<K> {
    type Output = Lin<K>;
    fn neg(self) -> Lin<K> {
        Lin {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), -v.clone()))
                .collect(),
        }
    }
}

impl<K: Ord + Clone> Neg for Lin<K> {
    type Output = Lin<K>;
    fn neg(self) -> Lin<K> {
        -&self
    }
}

fn mul_words(a: &Word, b: &Word) -> Option<Word> {
    a.concat(b)
}

impl AlgElem {
    /// The idempotent `e_s`.
    pub fn idempotent(s: u32) -> AlgElem {
        AlgElem::basis(Word::idempotent(s))
    }

    /// The one-letter element `x`.
    pub fn sym(x: Sym) -> AlgElem {
        AlgElem::basis(Word::letter(x))
    }

    /// `c · Σ_{s=1}^{n} e_s`, i.e. the scalar `c` in an algebra over `n` vertices.
    pub fn scalar(n: u32, c: Q) -> AlgElem {
        (1..=n).map(|s| (Word::idempotent(s), c.clone())).collect()
    }

    /// Product in the path algebra; non-composable words multiply to zero.
    pub fn mul(&self, rhs: &AlgElem) -> AlgElem {
        let mut out = AlgElem::zero();
        for (a, ca) in self.iter() {
            for (b, cb) in rhs.iter() {
                if let Some(ab) = mul_words(a, b) {
                    out.add_term(ab, ca * cb);
                }
            }
        }
        out
    }

    /// `e_t · self · e_s`.
    pub fn project(&self, t: u32, s: u32) -> AlgElem {
        self.filter_map_keys(|w| (w.target() == t && w.source() == s).then(|| w.clone()))
    }

    /// `self ⊗ rhs`.
    pub fn tensor(&self, rhs: &AlgElem) -> Tensor2 {
        let mut out = Tensor2::zero();
        for (a, ca) in self.iter() {
            for (b, cb) in rhs.iter() {
                out.add_term((a.clone(), b.clone()), ca * cb);
            }
        }
        out
    }

    /// Every symbol occurring in some word.
    pub fn symbols(&self) -> BTreeSet<Sym> {
        self.keys()
            .flat_map(|w| w.letters().iter().copied())
            .collect()
    }
}

impl Tensor2 {
    /// Outer left action `b · (x ⊗ y) = bx ⊗ y`.
    pub fn outer_left(&self, b: &AlgElem) -> Tensor2 {
        let mut out = Tensor2::zero();
        for ((x, y), c) in self.iter() {
            for (u, cu) in b.iter() {
                if let Some(ux) = u.concat(x) {
                    out.add_term((ux, y.clone()), c * cu);
                }
            }
        }
        out
    }

    /// Outer right action `(x ⊗ y) · b = x ⊗ yb`.
    pub fn outer_right(&self, b: &AlgElem) -> Tensor2 {
        let mut out = Tensor2::zero();
        for ((x, y), c) in self.iter() {
            for (u, cu) in b.iter() {
                if let Some(yu) = y.concat(u) {
                    out.add_term((x.clone(), yu), c * cu);
                }
            }
        }
        out
    }

    /// Inner left action `a ∗ (x ⊗ y) = x ⊗ ay`.
    pub fn inner_left(&self, a: &AlgElem) -> Tensor2 {
        let mut out = Tensor2::zero();
        for ((x, y), c) in self.iter() {
            for (u, cu) in a.iter() {
                if let Some(uy) = u.concat(y) {
                    out.add_term((x.clone(), uy), c * cu);
                }
            }
        }
        out
    }

    /// Inner right action `(x ⊗ y) ∗ a = xa ⊗ y`.
    pub fn inner_right(&self, a: &AlgElem) -> Tensor2 {
        let mut out = Tensor2::zero();
        for ((x, y), c) in self.iter() {
            for (u, cu) in a.iter() {
                if let Some(xu) = x.concat(u) {
                    out.add_term((xu, y.clone()), c * cu);
                }
            }
        }
        out
    }

    /// The flip `τ_(12)(x ⊗ y) = y ⊗ x`.
    pub fn tau12(&self) -> Tensor2 {
        self.filter_map_keys(|(x, y)| Some((y.clone(), x.clone())))
    }

    /// Multiplication map `x ⊗ y ↦ xy`.
    pub fn multiply(&self) -> AlgElem {
        let mut out = AlgElem::zero();
        for ((x, y), c) in self.iter() {
            if let Some(xy) = x.concat(y) {
                out.add_term(xy, c.clone());
            }
        }
        out
    }

    /// `self ⊗ z` as an element of the tensor cube.
    pub fn append(&self, z: &AlgElem) -> Tensor3 {
        let mut out = Tensor3::zero();
        for ((x, y), c) in self.iter() {
            for (w, cw) in z.iter() {
                out.add_term((x.clone(), y.clone(), w.clone()), c * cw);
            }
        }
        out
    }

    /// Projects each term `x ⊗ y` to `(e_{b_tgt} x e_{a_src}) ⊗ (e_{a_tgt} y e_{b_src})`.
    ///
    /// For `a = e_p a e_q` and `b = e_r b e_s` the bracket `⟪a,b⟫` lies in
    /// `(e_r A e_q) ⊗ (e_p A e_s)`; terms outside this window vanish.
    pub fn window(&self, a_src: u32, a_tgt: u32, b_src: u32, b_tgt: u32) -> Tensor2 {
        self.filter_map_keys(|(x, y)| {
            let keep = x.target() == b_tgt
                && x.source() == a_src
                && y.target() == a_tgt
                && y.source() == b_src;
            keep.then(|| (x.clone(), y.clone()))
        })
    }

    /// Every symbol occurring in some slot.
    pub fn symbols(&self) -> BTreeSet<Sym> {
        self.keys()
            .flat_map(|(x, y)| x.letters().iter().chain(y.letters()).copied())
            .collect()
    }
}

impl Tensor3 {
    /// `τ_(123)(x ⊗ y ⊗ z) = z ⊗ x ⊗ y`.
    pub fn tau123(&self) -> Tensor3 {
        self.filter_map_keys(|(x, y, z)| Some((z.clone(), x.clone(), y.clone())))
    }

    /// `τ_(132)(x ⊗ y ⊗ z) = y ⊗ z ⊗ x`.
    pub fn tau132(&self) -> Tensor3 {
        self.filter_map_keys(|(x, y, z)| Some((y.clone(), z.clone(), x.clone())))
    }

    /// `τ_(12)(x ⊗ y ⊗ z) = y ⊗ x ⊗ z`.
    pub fn tau12(&self) -> Tensor3 {
        self.filter_map_keys(|(x, y, z)| Some((y.clone(), x.clone(), z.clone())))
    }

    /// Builds `Σ a_i ⊗ b_i ⊗ c_i` from three algebra elements, multilinearly.
    pub fn from_factors(a: &AlgElem, b: &AlgElem, c: &AlgElem) -> Tensor3 {
        a.tensor(b).append(c)
    }

    /// Every symbol occurring in some slot.
    pub fn symbols(&self) -> BTreeSet<Sym> {
        self.keys()
            .flat_map(|(x, y, z)| {
                x.letters()
                    .iter()
                    .chain(y.letters())
                    .chain(z.letters())
                    .copied()
            })
            .collect()
    }
}
