//! The coefficient family of double brackets on the complete quiver.
//!
//! On `n` vertices with arrows `v_ij : j → i` (`i ≠ j`), a family consists
//! of matrices `α^(i), β^(i)` (skew, with zero `i`-th row and column),
//! `μ^(i), ν^(i)` (zero diagonal, zero `i`-th row and column) and scalars
//! `κ_j^(i,k)` for `i > j > k` (zero for every other index pattern).  The
//! bracket on arrows is
//!
//! ```text
//! ⟪v_ij, v_ij⟫ = 0,   ⟪v_ij, v_kl⟫ = 0 if {i,j} ∩ {k,l} = ∅,
//! ⟪v_ij, v_kj⟫ = α^(j)_ik v_kj ⊗ v_ij,
//! ⟪v_ij, v_il⟫ = β^(i)_jl v_ij ⊗ v_il,
//! ⟪v_ij, v_jl⟫ = μ^(j)_il e_j ⊗ v_ij v_jl + ν^(j)_il e_j ⊗ v_il          (i ≠ l),
//! ⟪v_ij, v_ki⟫ = −μ^(i)_kj v_ki v_ij ⊗ e_i − ν^(i)_kj v_kj ⊗ e_i          (k ≠ j),
//! ⟪v_ij, v_ji⟫ = sgn(i−j) (e_j ⊗ e_i + ½ v_ji v_ij ⊗ e_i + ½ e_j ⊗ v_ij v_ji)
//!              + Σ_{i>a>j} κ_a^(i,j) e_j ⊗ v_ia v_ai − Σ_{i<b<j} κ_b^(j,i) v_jb v_bj ⊗ e_i.
//! ```

use std::collections::BTreeMap;
use std::fmt;

use dbracket::BracketTable;
use ncalg::{parse_rational, rat, render, AlgElem, Sym, Tensor2, Q};
use num::{Signed, Zero};
use serde_json::{json, Value};

use crate::error::FamilyError;

/// The five coefficient classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Class {
    Alpha,
    Beta,
    Mu,
    Nu,
    Kappa,
}

impl Class {
    pub const ALL: [Class; 5] = [
        Class::Alpha,
        Class::Beta,
        Class::Mu,
        Class::Nu,
        Class::Kappa,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Class::Alpha => "alpha",
            Class::Beta => "beta",
            Class::Mu => "mu",
            Class::Nu => "nu",
            Class::Kappa => "kappa",
        }
    }

    pub fn from_name(s: &str) -> Option<Class> {
        Class::ALL.into_iter().find(|c| c.as_str() == s)
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One coefficient, written as in the condition language: `alpha[i](j,k)`
/// is `α^(i)_jk` and `kappa[j](i,k)` is `κ_j^(i,k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coeff {
    pub class: Class,
    pub head: u32,
    pub a: u32,
    pub b: u32,
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]({},{})", self.class, self.head, self.a, self.b)
    }
}

/// A coefficient family on `n` vertices.  Matrices are stored 0-based
/// (`alpha[i-1][j-1][k-1] = α^(i)_jk`); `kappa` maps `(i, j, k)` with
/// `i > j > k` to `κ_j^(i,k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientFamily {
    pub n: u32,
    pub alpha: Vec<Vec<Vec<Q>>>,
    pub beta: Vec<Vec<Vec<Q>>>,
    pub mu: Vec<Vec<Vec<Q>>>,
    pub nu: Vec<Vec<Vec<Q>>>,
    pub kappa: BTreeMap<(u32, u32, u32), Q>,
}

fn zero_cube(n: u32) -> Vec<Vec<Vec<Q>>> {
    let n = n as usize;
    vec![vec![vec![Q::zero(); n]; n]; n]
}

impl CoefficientFamily {
    /// The family with every free coefficient zero.
    pub fn zero(n: u32) -> Self {
        CoefficientFamily {
            n,
            alpha: zero_cube(n),
            beta: zero_cube(n),
            mu: zero_cube(n),
            nu: zero_cube(n),
            kappa: BTreeMap::new(),
        }
    }

    /// The admissible family on three vertices whose bracket is the
    /// triangle arrow table.
    pub fn table1() -> Self {
        let mut f = CoefficientFamily::zero(3);
        let h = rat(1, 2);
        f.set_skew(Class::Alpha, 2, 1, 3, h.clone());
        f.set_skew(Class::Alpha, 3, 1, 2, h.clone());
        f.set_skew(Class::Alpha, 1, 2, 3, -h.clone());
        f.set_skew(Class::Beta, 2, 1, 3, -h.clone());
        f.set_skew(Class::Beta, 3, 1, 2, -h.clone());
        f.set_skew(Class::Beta, 1, 2, 3, h.clone());
        for (i, j, k, v) in [
            (2, 1, 3, -1),
            (2, 3, 1, -1),
            (3, 1, 2, -1),
            (3, 2, 1, -1),
            (1, 2, 3, 1),
            (1, 3, 2, 1),
        ] {
            f.set(Class::Mu, i, j, k, rat(v, 2));
        }
        for (i, j, k) in [(2, 1, 3), (2, 3, 1), (1, 2, 3), (1, 3, 2)] {
            f.set(Class::Nu, i, j, k, rat(1, 1));
        }
        f.kappa.insert((3, 2, 1), rat(1, 1));
        f
    }

    fn cube(&self, c: Class) -> &Vec<Vec<Vec<Q>>> {
        match c {
            Class::Alpha => &self.alpha,
            Class::Beta => &self.beta,
            Class::Mu => &self.mu,
            Class::Nu => &self.nu,
            Class::Kappa => unreachable!("kappa is not a matrix class"),
        }
    }

    fn cube_mut(&mut self, c: Class) -> &mut Vec<Vec<Vec<Q>>> {
        match c {
            Class::Alpha => &mut self.alpha,
            Class::Beta => &mut self.beta,
            Class::Mu => &mut self.mu,
            Class::Nu => &mut self.nu,
            Class::Kappa => unreachable!("kappa is not a matrix class"),
        }
    }

    fn in_range(&self, x: u32) -> bool {
        (1..=self.n).contains(&x)
    }

    /// `class^(i)_jk` for a matrix class, `κ_i^(j,k)` for `Class::Kappa`
    /// (1-based; zero outside the stored range).
    pub fn get(&self, class: Class, i: u32, j: u32, k: u32) -> Q {
        if !(self.in_range(i) && self.in_range(j) && self.in_range(k)) {
            return Q::zero();
        }
        match class {
            Class::Kappa => self.kappa.get(&(j, i, k)).cloned().unwrap_or_else(Q::zero),
            c => self.cube(c)[i as usize - 1][j as usize - 1][k as usize - 1].clone(),
        }
    }

    pub fn coeff(&self, c: &Coeff) -> Q {
        self.get(c.class, c.head, c.a, c.b)
    }

    /// Sets one matrix entry `class^(i)_jk` (no symmetry is imposed).
    pub fn set(&mut self, class: Class, i: u32, j: u32, k: u32, v: Q) {
        match class {
            Class::Kappa => {
                self.kappa.insert((j, i, k), v);
            }
            c => self.cube_mut(c)[i as usize - 1][j as usize - 1][k as usize - 1] = v,
        }
    }

    /// Sets `class^(i)_jk = v` and `class^(i)_kj = −v`.
    pub fn set_skew(&mut self, class: Class, i: u32, j: u32, k: u32, v: Q) {
        self.set(class, i, k, j, -v.clone());
        self.set(class, i, j, k, v);
    }

    pub fn alpha(&self, i: u32, j: u32, k: u32) -> Q {
        self.get(Class::Alpha, i, j, k)
    }

    pub fn beta(&self, i: u32, j: u32, k: u32) -> Q {
        self.get(Class::Beta, i, j, k)
    }

    pub fn mu(&self, i: u32, j: u32, k: u32) -> Q {
        self.get(Class::Mu, i, j, k)
    }

    pub fn nu(&self, i: u32, j: u32, k: u32) -> Q {
        self.get(Class::Nu, i, j, k)
    }

    /// `κ_j^(i,k)`, zero unless `i > j > k`.
    pub fn kappa(&self, j: u32, i: u32, k: u32) -> Q {
        self.get(Class::Kappa, j, i, k)
    }

    /// Every violated structural invariant, named.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let n = self.n as usize;
        if self.n < 2 {
            out.push(format!(
                "n = {} but at least two vertices are needed",
                self.n
            ));
        }
        for c in [Class::Alpha, Class::Beta, Class::Mu, Class::Nu] {
            let m = self.cube(c);
            if m.len() != n
                || m.iter()
                    .any(|r| r.len() != n || r.iter().any(|x| x.len() != n))
            {
                out.push(format!("{c} must consist of {n} matrices of size {n}x{n}"));
                continue;
            }
            for i in 1..=self.n {
                for j in 1..=self.n {
                    for k in 1..=self.n {
                        let x = self.get(c, i, j, k);
                        if x.is_zero() {
                            continue;
                        }
                        if j == i || k == i {
                            out.push(format!(
                                "{c}^({i})_{j}{k} = {} lies in row or column {i}",
                                render::rational(&x)
                            ));
                        } else if j == k && matches!(c, Class::Mu | Class::Nu) {
                            out.push(format!(
                                "{c}^({i})_{j}{k} = {} lies on the diagonal",
                                render::rational(&x)
                            ));
                        }
                        if matches!(c, Class::Alpha | Class::Beta)
                            && j <= k
                            && self.get(c, i, k, j) != -x.clone()
                        {
                            out.push(format!("{c}^({i}) is not skew at ({j},{k})"));
                        }
                    }
                }
            }
        }
        for ((i, j, k), v) in &self.kappa {
            if !(*i > *j && *j > *k && *i <= self.n && *k >= 1) && !v.is_zero() {
                out.push(format!(
                    "kappa_{j}^({i},{k}) is only defined for {} >= i > j > k >= 1",
                    self.n
                ));
            }
        }
        out
    }

    /// Checks the structural invariants, naming the first violation.
    pub fn validate(&self) -> Result<(), FamilyError> {
        match self.violations().into_iter().next() {
            None => Ok(()),
            Some(v) => Err(FamilyError::Invariant(v)),
        }
    }

    /// `⟪v_ij, v_kl⟫` from the family formulas.
    pub fn arrow_bracket(&self, (i, j): (u32, u32), (k, l): (u32, u32)) -> Tensor2 {
        let v = |a: u32, b: u32| AlgElem::sym(Sym::v(0, a, b));
        let e = AlgElem::idempotent;
        let mut t = Tensor2::zero();
        if (i, j) == (k, l) || (i != k && i != l && j != k && j != l) {
            return t;
        }
        if j == l {
            t.add_scaled(&v(k, j).tensor(&v(i, j)), &self.alpha(j, i, k));
        } else if i == k {
            t.add_scaled(&v(i, j).tensor(&v(i, l)), &self.beta(i, j, l));
        } else if j == k && i == l {
            let sgn = if i > j { rat(1, 1) } else { rat(-1, 1) };
            let half = rat(1, 2);
            let mut base = e(j).tensor(&e(i));
            base.add_scaled(&v(j, i).mul(&v(i, j)).tensor(&e(i)), &half);
            base.add_scaled(&e(j).tensor(&v(i, j).mul(&v(j, i))), &half);
            t.add_scaled(&base, &sgn);
            for a in (j + 1)..i {
                t.add_scaled(&e(j).tensor(&v(i, a).mul(&v(a, i))), &self.kappa(a, i, j));
            }
            for b in (i + 1)..j {
                t.add_scaled(&v(j, b).mul(&v(b, j)).tensor(&e(i)), &-self.kappa(b, j, i));
            }
        } else if j == k {
            t.add_scaled(&e(j).tensor(&v(i, j).mul(&v(j, l))), &self.mu(j, i, l));
            t.add_scaled(&e(j).tensor(&v(i, l)), &self.nu(j, i, l));
        } else {
            // i == l, k ≠ j
            t.add_scaled(&v(k, i).mul(&v(i, j)).tensor(&e(i)), &-self.mu(i, k, j));
            t.add_scaled(&v(k, j).tensor(&e(i)), &-self.nu(i, k, j));
        }
        t
    }

    /// The arrows `v_ij`, `i ≠ j`, in lexicographic order of `(i, j)`.
    pub fn arrows(&self) -> Vec<Sym> {
        let mut out = Vec::new();
        for i in 1..=self.n {
            for j in 1..=self.n {
                if i != j {
                    out.push(Sym::v(0, i, j));
                }
            }
        }
        out
    }

    /// Reads the JSON form `{"n", "alpha", "beta", "mu", "nu", "kappa"}`
    /// (matrices as nested or flat row-major arrays of rational strings;
    /// `kappa` as `[{"i","j","k","value"}]` for `κ_j^(i,k)`).
    pub fn from_json(s: &str) -> Result<Self, FamilyError> {
        let v: Value = serde_json::from_str(s)?;
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| FamilyError::Format("missing integer field 'n'".into()))?
            as u32;
        let mut f = CoefficientFamily::zero(n);
        for c in [Class::Alpha, Class::Beta, Class::Mu, Class::Nu] {
            let Some(arr) = v.get(c.as_str()) else {
                continue;
            };
            *f.cube_mut(c) = read_cube(arr, n, c)?;
        }
        if let Some(ks) = v.get("kappa") {
            let ks = ks
                .as_array()
                .ok_or_else(|| FamilyError::Format("'kappa' must be an array".into()))?;
            for k in ks {
                let idx = |name: &str| {
                    k.get(name)
                        .and_then(Value::as_u64)
                        .map(|x| x as u32)
                        .ok_or_else(|| {
                            FamilyError::Format(format!("kappa entry lacks integer '{name}'"))
                        })
                };
                let value = k.get("value").and_then(rational_value).ok_or_else(|| {
                    FamilyError::Format("kappa entry lacks a rational 'value'".into())
                })?;
                f.kappa.insert((idx("i")?, idx("j")?, idx("k")?), value);
            }
        }
        f.validate()?;
        Ok(f)
    }

    /// The JSON form, with nested row-major matrices and nonzero `κ` only.
    pub fn to_json(&self) -> String {
        let cube = |c: Class| -> Value {
            Value::Array(
                self.cube(c)
                    .iter()
                    .map(|m| {
                        Value::Array(
                            m.iter()
                                .map(|r| {
                                    Value::Array(
                                        r.iter()
                                            .map(|x| Value::String(render::rational(x)))
                                            .collect(),
                                    )
                                })
                                .collect(),
                        )
                    })
                    .collect(),
            )
        };
        let kappa: Vec<Value> = self
            .kappa
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|((i, j, k), v)| json!({"i": i, "j": j, "k": k, "value": render::rational(v)}))
            .collect();
        let v = json!({
            "n": self.n,
            "alpha": cube(Class::Alpha),
            "beta": cube(Class::Beta),
            "mu": cube(Class::Mu),
            "nu": cube(Class::Nu),
            "kappa": kappa,
        });
        serde_json::to_string_pretty(&v).expect("family serializes")
    }

    /// Nonzero coefficients, for compact display: `alpha[2](1,3) = 1/2`.
    pub fn nonzero(&self) -> Vec<(Coeff, Q)> {
        let mut out = Vec::new();
        for c in [Class::Alpha, Class::Beta, Class::Mu, Class::Nu] {
            for i in 1..=self.n {
                for j in 1..=self.n {
                    for k in 1..=self.n {
                        let x = self.get(c, i, j, k);
                        if !x.is_zero() {
                            out.push((
                                Coeff {
                                    class: c,
                                    head: i,
                                    a: j,
                                    b: k,
                                },
                                x,
                            ));
                        }
                    }
                }
            }
        }
        for ((i, j, k), v) in &self.kappa {
            if !v.is_zero() {
                out.push((
                    Coeff {
                        class: Class::Kappa,
                        head: *j,
                        a: *i,
                        b: *k,
                    },
                    v.clone(),
                ));
            }
        }
        out
    }

    /// Largest absolute coefficient value (used to bound search grids).
    pub fn max_abs(&self) -> Q {
        self.nonzero()
            .into_iter()
            .map(|(_, v)| v.abs())
            .max()
            .unwrap_or_else(Q::zero)
    }
}

fn rational_value(x: &Value) -> Option<Q> {
    match x {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => n.as_i64().map(|i| rat(i, 1)),
        _ => None,
    }
}

fn read_cube(arr: &Value, n: u32, c: Class) -> Result<Vec<Vec<Vec<Q>>>, FamilyError> {
    let n = n as usize;
    let bad = |what: &str| FamilyError::Format(format!("'{c}': {what}"));
    let mats = arr
        .as_array()
        .ok_or_else(|| bad("expected an array of matrices"))?;
    if mats.len() != n {
        return Err(bad(&format!("expected {n} matrices, found {}", mats.len())));
    }
    let mut out = Vec::with_capacity(n);
    for m in mats {
        let m = m.as_array().ok_or_else(|| bad("expected a matrix"))?;
        // Either n rows of n entries or one flat row-major list of n² entries.
        let flat: Vec<&Value> = if m.len() == n && m.iter().all(Value::is_array) {
            m.iter()
                .flat_map(|r| r.as_array().into_iter().flatten())
                .collect()
        } else {
            m.iter().collect()
        };
        if flat.len() != n * n {
            return Err(bad(&format!(
                "expected {n}x{n} entries, found {}",
                flat.len()
            )));
        }
        let vals = flat
            .iter()
            .map(|x| rational_value(x).ok_or_else(|| bad("entries must be rationals")))
            .collect::<Result<Vec<_>, _>>()?;
        out.push(vals.chunks(n).map(|r| r.to_vec()).collect());
    }
    Ok(out)
}

/// The bracket table of the family on all arrows of the complete quiver on
/// `n` vertices, every ordered pair given explicitly and checked for cyclic
/// antisymmetry.
pub fn family_bracket_table(n: u32, cf: &CoefficientFamily) -> Result<BracketTable, FamilyError> {
    if cf.n != n {
        return Err(FamilyError::Invariant(format!(
            "family is for {} vertices, not {n}",
            cf.n
        )));
    }
    cf.validate()?;
    let mut t = BracketTable::new();
    let arrows = cf.arrows();
    for a in &arrows {
        for b in &arrows {
            t.insert(
                *a,
                *b,
                cf.arrow_bracket((a.target, a.source), (b.target, b.source)),
            )?;
        }
    }
    if let Some((a, b)) = t.antisymmetry_violations().into_iter().next() {
        return Err(FamilyError::Invariant(format!(
            "formulas are not antisymmetric on ({a}, {b})"
        )));
    }
    if let Some(c) = t.corrections().first() {
        return Err(FamilyError::Invariant(format!(
            "formula for ({}, {}) leaves its window",
            c.a, c.b
        )));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ncalg::{parse_t2, ParseCtx};

    #[test]
    fn builtin_family_is_valid_and_round_trips() {
        let f = CoefficientFamily::table1();
        assert!(f.violations().is_empty(), "{:?}", f.violations());
        assert_eq!(CoefficientFamily::from_json(&f.to_json()).unwrap(), f);
        assert_eq!(f.kappa(2, 3, 1), rat(1, 1));
        assert!(f.kappa(2, 1, 3).is_zero());
    }

    #[test]
    fn invariant_violations_are_named() {
        let mut f = CoefficientFamily::zero(3);
        f.set(Class::Alpha, 2, 1, 3, rat(1, 2));
        assert_eq!(
            f.validate().unwrap_err().to_string(),
            "coefficient family violates an invariant: alpha^(2) is not skew at (1,3)"
        );
        let mut f = CoefficientFamily::zero(3);
        f.set(Class::Mu, 1, 2, 2, rat(1, 1));
        assert!(f.violations()[0].contains("diagonal"));
        let mut f = CoefficientFamily::zero(3);
        f.set(Class::Nu, 1, 1, 2, rat(1, 1));
        assert!(f.violations()[0].contains("row or column 1"));
        let mut f = CoefficientFamily::zero(3);
        f.kappa.insert((1, 2, 3), rat(1, 1));
        assert!(f.violations()[0].starts_with("kappa_2^(1,3)"));
    }

    #[test]
    fn flat_matrices_are_accepted() {
        let s = r#"{"n":2,"alpha":[["0","0","0","0"],["0","0","0","0"]],"kappa":[]}"#;
        assert_eq!(
            CoefficientFamily::from_json(s).unwrap(),
            CoefficientFamily::zero(2)
        );
        assert!(CoefficientFamily::from_json(r#"{"n":2,"alpha":[["0"]]}"#).is_err());
    }

    #[test]
    fn displayed_builtin_family_entries() {
        let f = CoefficientFamily::table1();
        let ctx = ParseCtx::single(3);
        assert_eq!(
            f.arrow_bracket((1, 2), (2, 3)),
            parse_t2("-1/2 e2 (x) v12 v23 + e2 (x) v13", &ctx).unwrap()
        );
        assert_eq!(
            f.arrow_bracket((1, 3), (3, 1)),
            parse_t2(
                "-e3 (x) e1 - 1/2 v31 v13 (x) e1 - 1/2 e3 (x) v13 v31 - v32 v23 (x) e1",
                &ctx
            )
            .unwrap()
        );
    }

    #[test]
    fn zero_family_keeps_the_forced_terms() {
        let f = CoefficientFamily::zero(4);
        let ctx = ParseCtx::single(4);
        assert_eq!(
            f.arrow_bracket((4, 2), (2, 4)),
            parse_t2("e2 (x) e4 + 1/2 v24 v42 (x) e4 + 1/2 e2 (x) v42 v24", &ctx).unwrap()
        );
        let t = family_bracket_table(4, &f).unwrap();
        assert_eq!(t.len(), 144);
    }
}
