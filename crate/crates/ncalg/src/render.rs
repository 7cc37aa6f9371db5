//! Rendering of symbols, words and linear combinations in the expression
//! language.  Terms are printed leading term first (descending canonical
//! order); tensor slots are joined by ` (x) `.

use num::{One, Signed};

use crate::lin::Lin;
use crate::symbol::{Kind, Sym};
use crate::word::Word;
use crate::Q;

/// Color names used for prefixes; prefixes are printed only when there is
/// more than one color.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Names {
    pub colors: Vec<String>,
}

impl Names {
    pub fn new(colors: Vec<String>) -> Self {
        Names { colors }
    }

    fn prefix(&self, color: u16) -> String {
        if self.colors.len() > 1 {
            let name = self
                .colors
                .get(color as usize)
                .cloned()
                .unwrap_or_else(|| format!("c{color}"));
            format!("{name}:")
        } else {
            String::new()
        }
    }
}

fn pair(t: u32, s: u32) -> String {
    if t < 10 && s < 10 {
        format!("{t}{s}")
    } else {
        format!("{t}_{s}")
    }
}

/// Name of a symbol, e.g. `v12`, `w10_2`, `g3`, `g3inv`.
pub fn sym_name(x: &Sym, names: &Names) -> String {
    let p = names.prefix(x.color);
    match x.kind {
        Kind::V => format!("{p}v{}", pair(x.target, x.source)),
        Kind::W => format!("{p}w{}", pair(x.target, x.source)),
        Kind::Gamma => format!("{p}g{}", x.target),
        Kind::GammaInv => format!("{p}g{}inv", x.target),
        Kind::Idempotent => format!("e{}", x.target),
    }
}

/// A word with letters joined by `*`; idempotents print as `e<s>`.
pub fn word(w: &Word, names: &Names) -> String {
    if w.is_idempotent() {
        return format!("e{}", w.target());
    }
    w.letters()
        .iter()
        .map(|x| sym_name(x, names))
        .collect::<Vec<_>>()
        .join("*")
}

/// Formats a rational as `p` or `p/q`.
pub fn rational(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Keys that can be printed as one basis element.
pub trait RenderKey {
    fn render_key(&self, names: &Names) -> String;
}

impl RenderKey for Word {
    fn render_key(&self, names: &Names) -> String {
        word(self, names)
    }
}

impl RenderKey for (Word, Word) {
    fn render_key(&self, names: &Names) -> String {
        format!("{} (x) {}", word(&self.0, names), word(&self.1, names))
    }
}

impl RenderKey for (Word, Word, Word) {
    fn render_key(&self, names: &Names) -> String {
        format!(
            "{} (x) {} (x) {}",
            word(&self.0, names),
            word(&self.1, names),
            word(&self.2, names)
        )
    }
}

/// Renders a linear combination, leading term first; zero prints as `0`.
pub fn lin<K: Ord + Clone + RenderKey>(x: &Lin<K>, names: &Names) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (k, c)) in x.iter().rev().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !mag.is_one() {
            out.push_str(&rational(&mag));
            out.push(' ');
        }
        out.push_str(&k.render_key(names));
    }
    out
}

/// Renders with the default (single-color) names.
pub fn plain<K: Ord + Clone + RenderKey>(x: &Lin<K>) -> String {
    lin(x, &Names::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lin::AlgElem;
    use crate::parse::{parse_t2, ParseCtx};
    use crate::rat;

    #[test]
    fn renders_leading_term_first() {
        let ctx = ParseCtx::single(3);
        let t = parse_t2("-w23 (x) e1 + 1/2 v21 w13 (x) e1", &ctx).unwrap();
        assert_eq!(plain(&t), "1/2 v21*w13 (x) e1 - w23 (x) e1");
    }

    #[test]
    fn negative_leading_coefficient() {
        let x = AlgElem::sym(Sym::v(0, 1, 2)).scale(&rat(-1, 1));
        assert_eq!(plain(&x), "-v12");
        let y = AlgElem::sym(Sym::gamma_inv(0, 3)).scale(&rat(-5, 3));
        assert_eq!(plain(&y), "-5/3 g3inv");
    }

    #[test]
    fn zero_and_long_indices() {
        assert_eq!(plain(&AlgElem::zero()), "0");
        let names = Names::new(vec!["a".into(), "b".into()]);
        assert_eq!(sym_name(&Sym::v(1, 12, 3), &names), "b:v12_3");
    }
}
