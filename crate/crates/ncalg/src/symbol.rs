//! Generator symbols of an extended double quiver.
//!
//! Every symbol carries its kind, the index of its color class and its
//! target and source vertices.  Paths are read right to left, so the symbol
//! `v12` has target 1 and source 2 and satisfies `v12 = e1 v12 e2`.

use std::fmt;

/// Kind of a generator symbol.
///
/// The declaration order is the canonical order used for words:
/// `V < W < Gamma < GammaInv < Idempotent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    /// An arrow of the double quiver.
    V,
    /// An auxiliary arrow of the extended double.
    W,
    /// A loop of the extended double.
    Gamma,
    /// The adjoined inverse of a loop.
    GammaInv,
    /// An idempotent; never stored inside a non-empty word.
    Idempotent,
}

impl Kind {
    /// Short prefix used by the expression language.
    pub fn prefix(self) -> &'static str {
        match self {
            Kind::V => "v",
            Kind::W => "w",
            Kind::Gamma | Kind::GammaInv => "g",
            Kind::Idempotent => "e",
        }
    }
}

/// A generator symbol.  Field order gives the canonical ordering
/// `(kind, color, target, source)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sym {
    pub kind: Kind,
    pub color: u16,
    pub target: u32,
    pub source: u32,
}

impl Sym {
    /// Arrow `v_{target,source}` of the double quiver.
    pub fn v(color: u16, target: u32, source: u32) -> Sym {
        assert_ne!(target, source, "arrows have distinct endpoints");
        Sym {
            kind: Kind::V,
            color,
            target,
            source,
        }
    }

    /// Auxiliary arrow `w_{target,source}`.
    pub fn w(color: u16, target: u32, source: u32) -> Sym {
        assert_ne!(target, source, "arrows have distinct endpoints");
        Sym {
            kind: Kind::W,
            color,
            target,
            source,
        }
    }

    /// Loop `γ_vertex`.
    pub fn gamma(color: u16, vertex: u32) -> Sym {
        Sym {
            kind: Kind::Gamma,
            color,
            target: vertex,
            source: vertex,
        }
    }

    /// Inverse loop `γ_vertex^{-1}`.
    pub fn gamma_inv(color: u16, vertex: u32) -> Sym {
        Sym {
            kind: Kind::GammaInv,
            color,
            target: vertex,
            source: vertex,
        }
    }

    /// The formal inverse of a loop symbol, if any.
    pub fn inverse(&self) -> Option<Sym> {
        match self.kind {
            Kind::Gamma => Some(Sym {
                kind: Kind::GammaInv,
                ..*self
            }),
            Kind::GammaInv => Some(Sym {
                kind: Kind::Gamma,
                ..*self
            }),
            _ => None,
        }
    }

    /// True for loops and inverse loops.
    pub fn is_loop(&self) -> bool {
        matches!(self.kind, Kind::Gamma | Kind::GammaInv)
    }

    /// Structural well-formedness: arrows join distinct vertices, loops
    /// and idempotents do not, and vertices are 1-based.
    pub fn is_well_formed(&self) -> bool {
        if self.target == 0 || self.source == 0 {
            return false;
        }
        match self.kind {
            Kind::V | Kind::W => self.target != self.source,
            Kind::Gamma | Kind::GammaInv | Kind::Idempotent => self.target == self.source,
        }
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::render::sym_name(
            self,
            &crate::render::Names::default(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_follows_kind_then_color_then_endpoints() {
        let a = Sym::v(0, 1, 2);
        let b = Sym::v(0, 2, 1);
        let c = Sym::w(0, 1, 2);
        let d = Sym::gamma(0, 1);
        let e = Sym::gamma_inv(0, 1);
        let mut all = vec![e, d, c, b, a];
        all.sort();
        assert_eq!(all, vec![a, b, c, d, e]);
    }

    #[test]
    fn loop_inverse_round_trips() {
        let g = Sym::gamma(2, 3);
        assert_eq!(g.inverse().unwrap().inverse().unwrap(), g);
        assert!(Sym::v(0, 1, 2).inverse().is_none());
    }

    #[test]
    fn well_formedness() {
        assert!(Sym::v(0, 1, 2).is_well_formed());
        assert!(Sym::gamma(0, 4).is_well_formed());
        let bad = Sym {
            kind: Kind::Gamma,
            color: 0,
            target: 1,
            source: 2,
        };
        assert!(!bad.is_well_formed());
    }
}
