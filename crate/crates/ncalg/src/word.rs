//! Composable words (paths) in a quiver.
//!
//! A word `x1 x2 ... xn` is composable when the source of each letter equals
//! the target of the letter to its right.  The empty word at vertex `s` is the
//! idempotent `e_s`.

use std::cmp::Ordering;
use std::ops::Range;

use smallvec::SmallVec;

use crate::symbol::{Kind, Sym};

/// Inline storage for the letters of a word.
pub type Letters = SmallVec<[Sym; 8]>;

/// A composable path.  Equality and ordering are structural; the canonical
/// order compares length first, then letters lexicographically, then the
/// endpoints (which only matters for idempotents).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Letters,
    target: u32,
    source: u32,
}

impl Word {
    /// The idempotent `e_s`.
    pub fn idempotent(s: u32) -> Word {
        Word {
            letters: Letters::new(),
            target: s,
            source: s,
        }
    }

    /// A one-letter word.
    pub fn letter(x: Sym) -> Word {
        debug_assert!(x.kind != Kind::Idempotent);
        let mut letters = Letters::new();
        letters.push(x);
        Word {
            target: x.target,
            source: x.source,
            letters,
        }
    }

    /// Builds a word from letters; `None` when the sequence is empty, contains
    /// an idempotent symbol, or is not composable.
    pub fn from_letters<I: IntoIterator<Item = Sym>>(letters: I) -> Option<Word> {
        let letters: Letters = letters.into_iter().collect();
        let first = letters.first()?;
        let last = letters.last()?;
        if letters.iter().any(|x| x.kind == Kind::Idempotent) {
            return None;
        }
        if letters.windows(2).any(|p| p[0].source != p[1].target) {
            return None;
        }
        Some(Word {
            target: first.target,
            source: last.source,
            letters,
        })
    }

    pub fn target(&self) -> u32 {
        self.target
    }

    pub fn source(&self) -> u32 {
        self.source
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// True for the empty word `e_s`.
    pub fn is_idempotent(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Sym] {
        &self.letters
    }

    /// Concatenation `self · other`; `None` when not composable.
    pub fn concat(&self, other: &Word) -> Option<Word> {
        if self.source != other.target {
            return None;
        }
        if self.is_idempotent() {
            return Some(other.clone());
        }
        if other.is_idempotent() {
            return Some(self.clone());
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Some(Word {
            letters,
            target: self.target,
            source: other.source,
        })
    }

    /// Appends a letter in place; returns false (and leaves the word
    /// unchanged) when the letter is not composable.
    pub fn push(&mut self, x: Sym) -> bool {
        if x.target != self.source {
            return false;
        }
        if self.letters.is_empty() {
            self.target = x.target;
        }
        self.letters.push(x);
        self.source = x.source;
        true
    }

    /// The vertex sitting just before letter `i` (reading left to right).
    /// Position 0 is the target of the word, position `len` its source.
    pub fn vertex_at(&self, i: usize) -> u32 {
        if i == 0 {
            self.target
        } else {
            self.letters[i - 1].source
        }
    }

    /// The subword on the letter range `r`; an empty range gives the
    /// idempotent at the corresponding vertex.
    pub fn slice(&self, r: Range<usize>) -> Word {
        if r.start >= r.end {
            return Word::idempotent(self.vertex_at(r.start));
        }
        let letters: Letters = self.letters[r.clone()].iter().copied().collect();
        Word {
            target: letters[0].target,
            source: letters[letters.len() - 1].source,
            letters,
        }
    }

    /// Start positions at which `pattern` occurs as a contiguous subword.
    pub fn occurrences(&self, pattern: &[Sym]) -> Vec<usize> {
        if pattern.is_empty() || pattern.len() > self.letters.len() {
            return Vec::new();
        }
        (0..=self.letters.len() - pattern.len())
            .filter(|&i| &self.letters[i..i + pattern.len()] == pattern)
            .collect()
    }

    /// True if every letter has the given kind (vacuously true for `e_s`).
    pub fn all_of_kind(&self, kind: Kind) -> bool {
        self.letters.iter().all(|x| x.kind == kind)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.as_slice().cmp(other.letters.as_slice()))
            .then_with(|| self.target.cmp(&other.target))
            .then_with(|| self.source.cmp(&other.source))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(t: u32, s: u32) -> Sym {
        Sym::v(0, t, s)
    }

    #[test]
    fn composable_concatenation() {
        let a = Word::letter(v(1, 2));
        let b = Word::letter(v(2, 3));
        let ab = a.concat(&b).unwrap();
        assert_eq!(ab.target(), 1);
        assert_eq!(ab.source(), 3);
        assert_eq!(ab.len(), 2);
    }

    #[test]
    fn non_composable_concatenation_fails() {
        let a = Word::letter(v(1, 2));
        let b = Word::letter(v(1, 3));
        assert!(a.concat(&b).is_none());
    }

    #[test]
    fn idempotents_act_as_units() {
        let a = Word::letter(v(1, 2));
        assert_eq!(Word::idempotent(1).concat(&a), Some(a.clone()));
        assert_eq!(a.concat(&Word::idempotent(2)), Some(a.clone()));
        assert!(Word::idempotent(2).concat(&a).is_none());
    }

    #[test]
    fn slices_keep_endpoints() {
        let w = Word::from_letters([v(1, 2), v(2, 3), v(3, 1)]).unwrap();
        assert_eq!(
            w.slice(1..3),
            Word::from_letters([v(2, 3), v(3, 1)]).unwrap()
        );
        assert_eq!(w.slice(2..2), Word::idempotent(3));
        assert_eq!(w.slice(0..0), Word::idempotent(1));
        assert_eq!(w.slice(3..3), Word::idempotent(1));
    }

    #[test]
    fn canonical_order_is_length_first() {
        let long = Word::from_letters([v(1, 2), v(2, 1)]).unwrap();
        let short = Word::letter(Sym::gamma_inv(0, 3));
        assert!(short < long);
        assert!(Word::idempotent(5) < short);
        assert!(Word::idempotent(1) < Word::idempotent(2));
    }

    #[test]
    fn occurrences_finds_all_positions() {
        let w = Word::from_letters([v(1, 2), v(2, 1), v(1, 2), v(2, 1)]).unwrap();
        assert_eq!(w.occurrences(&[v(1, 2), v(2, 1)]), vec![0, 2]);
        assert_eq!(w.occurrences(&[v(2, 1), v(1, 2)]), vec![1]);
    }
}
