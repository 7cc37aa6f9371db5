//! Matrix representations of Boalch algebras.
//!
//! A representation of dimension vector `d` assigns a `d_i × d_j` block to
//! every arrow `v_ij`.  The remaining generators are computed from the
//! derived-generator definitions: loops bottom-up in each color's order,
//! inverting each loop as soon as it is known, and the `w` arrows from
//! them.  The Boalch relations then hold exactly.

use std::collections::BTreeMap;

use ncalg::render::sym_name;
use ncalg::{AlgElem, Kind, Names, Sym, Word};
use quiver_core::{boalch_relations, derived_generators, double_quiver, ColoredQuiver};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::RepError;
use crate::matrix::RMat;

/// Resampling budget of [`random_rep`].
pub const MAX_ATTEMPTS: usize = 100;

/// An exact rational representation of a Boalch algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixRep {
    pub dims: Vec<usize>,
    /// Seed and entry range of a sampled representation.
    pub seed: Option<u64>,
    pub range: Option<(i64, i64)>,
    blocks: BTreeMap<Sym, RMat>,
    offsets: Vec<usize>,
    names: Names,
}

fn check_dims(q: &ColoredQuiver, dims: &[usize]) -> Result<(), RepError> {
    q.ensure_valid()?;
    if dims.len() != q.n as usize {
        return Err(RepError::DimensionCount {
            expected: q.n as usize,
            got: dims.len(),
        });
    }
    if dims.iter().all(|&d| d == 0) {
        return Err(RepError::ZeroDimension);
    }
    Ok(())
}

enum BuildFailure {
    Singular(Sym),
    Error(RepError),
}

impl From<RepError> for BuildFailure {
    fn from(e: RepError) -> Self {
        BuildFailure::Error(e)
    }
}

impl MatrixRep {
    fn empty(q: &ColoredQuiver, dims: &[usize]) -> Self {
        let mut offsets = Vec::with_capacity(dims.len());
        let mut acc = 0;
        for &d in dims {
            offsets.push(acc);
            acc += d;
        }
        MatrixRep {
            dims: dims.to_vec(),
            seed: None,
            range: None,
            blocks: BTreeMap::new(),
            offsets,
            names: q.names(),
        }
    }

    /// Completes arrow blocks to a full representation.
    fn build(
        q: &ColoredQuiver,
        dims: &[usize],
        arrows: BTreeMap<Sym, RMat>,
    ) -> Result<Self, BuildFailure> {
        let mut rep = MatrixRep::empty(q, dims);
        rep.blocks = arrows;
        for def in derived_generators(q).map_err(RepError::from)? {
            let value = rep.eval_block(&def.literal, def.sym.target, def.sym.source)?;
            match def.sym.kind {
                Kind::Gamma => {
                    let inv = value.inverse().ok_or(BuildFailure::Singular(def.sym))?;
                    rep.blocks
                        .insert(def.sym.inverse().expect("loops invert"), inv);
                    rep.blocks.insert(def.sym, value);
                }
                Kind::GammaInv => match rep.blocks.get(&def.sym) {
                    Some(known) if *known != value => {
                        return Err(RepError::Inconsistent(sym_name(&def.sym, &rep.names)).into())
                    }
                    Some(_) => {}
                    None => {
                        let inv = value.inverse().ok_or(BuildFailure::Singular(def.sym))?;
                        rep.blocks
                            .insert(def.sym.inverse().expect("loops invert"), inv);
                        rep.blocks.insert(def.sym, value);
                    }
                },
                _ => {
                    rep.blocks.insert(def.sym, value);
                }
            }
        }
        Ok(rep)
    }

    /// Total dimension `N = Σ d_s`.
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn dim(&self, s: u32) -> usize {
        self.dims[s as usize - 1]
    }

    /// Row/column offset of vertex `s` in the `N × N` embedding.
    pub fn offset(&self, s: u32) -> usize {
        self.offsets[s as usize - 1]
    }

    pub fn block(&self, x: &Sym) -> Option<&RMat> {
        self.blocks.get(x)
    }

    pub fn blocks(&self) -> impl Iterator<Item = (&Sym, &RMat)> {
        self.blocks.iter()
    }

    pub fn names(&self) -> &Names {
        &self.names
    }

    /// Number of sampled entries (all arrow blocks).
    pub fn free_parameters(&self) -> usize {
        self.blocks
            .iter()
            .filter(|(s, _)| s.kind == Kind::V)
            .map(|(_, m)| m.rows() * m.cols())
            .sum()
    }

    /// The `d_t × d_s` block of a word from `s` to `t`.
    pub fn eval_word(&self, w: &Word) -> Result<RMat, RepError> {
        let mut acc = RMat::identity(self.dim(w.target()));
        for x in w.letters() {
            let b = self
                .blocks
                .get(x)
                .ok_or_else(|| RepError::UnknownSymbol(sym_name(x, &self.names)))?;
            acc = acc.mul(b);
        }
        Ok(acc)
    }

    /// The `e_t x e_s` block of an algebra element.
    pub fn eval_block(&self, x: &AlgElem, t: u32, s: u32) -> Result<RMat, RepError> {
        let mut out = RMat::zeros(self.dim(t), self.dim(s));
        for (w, c) in x.iter() {
            if w.target() == t && w.source() == s {
                out.add_scaled(&self.eval_word(w)?, c);
            }
        }
        Ok(out)
    }

    /// The `N × N` matrix of an algebra element.
    pub fn eval(&self, x: &AlgElem) -> Result<RMat, RepError> {
        let n = self.total_dim();
        let mut out = RMat::zeros(n, n);
        for (w, c) in x.iter() {
            let b = self.eval_word(w)?;
            let (ot, os) = (self.offset(w.target()), self.offset(w.source()));
            for (i, j, v) in b.nonzero() {
                out[(ot + i, os + j)] += v * c;
            }
        }
        Ok(out)
    }

    /// SHA-256 of the canonical JSON of the dimension vector and blocks.
    pub fn digest(&self) -> String {
        let body =
            serde_json::to_string(&(&self.dims, self.block_entries())).expect("blocks serialize");
        hex::encode(Sha256::digest(body.as_bytes()))
    }

    fn block_entries(&self) -> Vec<BlockEntry> {
        self.blocks
            .iter()
            .map(|(s, m)| BlockEntry {
                symbol: sym_name(s, &self.names),
                rows: m.rows(),
                cols: m.cols(),
                entries: (0..m.rows())
                    .map(|i| {
                        (0..m.cols())
                            .map(|j| ncalg::render::rational(&m[(i, j)]))
                            .collect()
                    })
                    .collect(),
            })
            .collect()
    }

    /// Short label for reports.
    pub fn label(&self) -> String {
        let d: Vec<String> = self.dims.iter().map(|x| x.to_string()).collect();
        let seed = self.seed.map(|s| format!(", seed {s}")).unwrap_or_default();
        format!("d=({}){seed} [{}]", d.join(","), &self.digest()[..12])
    }

    pub fn to_json(&self) -> String {
        let file = RepFile {
            dims: self.dims.clone(),
            seed: self.seed,
            range: self.range.map(|(a, b)| [a, b]),
            blocks: self.block_entries(),
            digest: self.digest(),
        };
        serde_json::to_string_pretty(&file).expect("representation serializes")
    }

    /// Reads a representation written by [`MatrixRep::to_json`]; the digest
    /// must match and the derived blocks must agree with the arrows.
    pub fn from_json(s: &str, q: &ColoredQuiver) -> Result<Self, RepError> {
        let file: RepFile = serde_json::from_str(s)?;
        check_dims(q, &file.dims)?;
        let ctx = q.parse_ctx();
        let mut arrows = BTreeMap::new();
        let mut all = BTreeMap::new();
        for b in &file.blocks {
            let x = ncalg::parse_alg(&b.symbol, &ctx)?;
            let sym = match x.iter().next() {
                Some((w, _)) if x.len() == 1 && w.len() == 1 => w.letters()[0],
                _ => {
                    return Err(RepError::Format(format!(
                        "'{}' is not a generator",
                        b.symbol
                    )))
                }
            };
            if b.entries.len() != b.rows || b.entries.iter().any(|r| r.len() != b.cols) {
                return Err(RepError::Format(format!(
                    "block {} has the wrong shape",
                    b.symbol
                )));
            }
            let mut m = RMat::zeros(b.rows, b.cols);
            for (i, row) in b.entries.iter().enumerate() {
                for (j, e) in row.iter().enumerate() {
                    m[(i, j)] = ncalg::parse_rational(e).ok_or_else(|| {
                        RepError::Format(format!("bad entry '{e}' in {}", b.symbol))
                    })?;
                }
            }
            if sym.kind == Kind::V {
                arrows.insert(sym, m.clone());
            }
            all.insert(sym, m);
        }
        let mut rep = match MatrixRep::build(q, &file.dims, arrows) {
            Ok(r) => r,
            Err(BuildFailure::Singular(s)) => {
                return Err(RepError::Singular {
                    symbol: sym_name(&s, &q.names()),
                    attempts: 1,
                })
            }
            Err(BuildFailure::Error(e)) => return Err(e),
        };
        if rep.blocks != all {
            return Err(RepError::Format(
                "stored derived blocks do not match the arrows".into(),
            ));
        }
        rep.seed = file.seed;
        rep.range = file.range.map(|[a, b]| (a, b));
        let computed = rep.digest();
        if computed != file.digest {
            return Err(RepError::Digest {
                stored: file.digest,
                computed,
            });
        }
        Ok(rep)
    }
}

#[derive(Serialize, Deserialize)]
struct BlockEntry {
    symbol: String,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct RepFile {
    dims: Vec<usize>,
    seed: Option<u64>,
    range: Option<[i64; 2]>,
    blocks: Vec<BlockEntry>,
    digest: String,
}

/// The representation with all arrows zero (every loop is the identity).
pub fn trivial_rep(q: &ColoredQuiver, dims: &[usize]) -> Result<MatrixRep, RepError> {
    check_dims(q, dims)?;
    let arrows = double_quiver(q)?
        .into_iter()
        .map(|x| {
            (
                x,
                RMat::zeros(dims[x.target as usize - 1], dims[x.source as usize - 1]),
            )
        })
        .collect();
    match MatrixRep::build(q, dims, arrows) {
        Ok(r) => Ok(r),
        Err(BuildFailure::Singular(s)) => Err(RepError::Singular {
            symbol: sym_name(&s, &q.names()),
            attempts: 1,
        }),
        Err(BuildFailure::Error(e)) => Err(e),
    }
}

/// A representation with arrow entries drawn uniformly from the integers in
/// `[lo, hi]`, resampled until every loop is invertible.
pub fn random_rep(
    q: &ColoredQuiver,
    dims: &[usize],
    seed: u64,
    (lo, hi): (i64, i64),
) -> Result<MatrixRep, RepError> {
    check_dims(q, dims)?;
    if lo > hi {
        return Err(RepError::EmptyRange(lo, hi));
    }
    let arrows = double_quiver(q)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = None;
    for _ in 0..MAX_ATTEMPTS {
        let blocks = arrows
            .iter()
            .map(|x| {
                let (r, c) = (dims[x.target as usize - 1], dims[x.source as usize - 1]);
                (
                    *x,
                    RMat::from_fn(r, c, |_, _| ncalg::rat(rng.gen_range(lo..=hi), 1)),
                )
            })
            .collect();
        match MatrixRep::build(q, dims, blocks) {
            Ok(mut r) => {
                r.seed = Some(seed);
                r.range = Some((lo, hi));
                return Ok(r);
            }
            Err(BuildFailure::Singular(s)) => last = Some(s),
            Err(BuildFailure::Error(e)) => return Err(e),
        }
    }
    let symbol = last.map(|s| sym_name(&s, &q.names())).unwrap_or_default();
    Err(RepError::Singular {
        symbol,
        attempts: MAX_ATTEMPTS,
    })
}

/// `2 Σ_a d_{t(a)} d_{h(a)}` over the arrows of the quiver.
pub fn dimension_count(q: &ColoredQuiver, dims: &[usize]) -> Result<usize, RepError> {
    check_dims(q, dims)?;
    Ok(2 * q
        .arrows()
        .iter()
        .map(|a| dims[a.target as usize - 1] * dims[a.source as usize - 1])
        .sum::<usize>())
}

/// Residual matrices of the decomposed Boalch relations and of the loop
/// inverse relations, labelled.
pub fn relation_residuals(
    q: &ColoredQuiver,
    rep: &MatrixRep,
) -> Result<Vec<(String, RMat)>, RepError> {
    let names = q.names();
    let mut out = Vec::new();
    for rel in boalch_relations(q)?.decomposed {
        let (i, j) = rel
            .component
            .expect("decomposed relations carry their component");
        out.push((format!("Boalch e{i}(.)e{j}"), rep.eval(&rel.difference())?));
    }
    for (ci, c) in q.colors.iter().enumerate() {
        for &s in &c.vertices {
            let g = AlgElem::sym(Sym::gamma(ci as u16, s));
            let gi = AlgElem::sym(Sym::gamma_inv(ci as u16, s));
            let e = AlgElem::idempotent(s);
            let label = sym_name(&Sym::gamma(ci as u16, s), &names);
            out.push((
                format!("{label} inverse (right)"),
                rep.eval(&(&g.mul(&gi) - &e))?,
            ));
            out.push((
                format!("{label} inverse (left)"),
                rep.eval(&(&gi.mul(&g) - &e))?,
            ));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ncalg::rat;
    use quiver_core::{interval, triangle};

    #[test]
    fn trivial_rep_has_identity_loops() {
        let r = trivial_rep(&interval(), &[2, 3]).unwrap();
        assert_eq!(r.block(&Sym::gamma(0, 2)), Some(&RMat::identity(3)));
        assert_eq!(r.block(&Sym::v(0, 1, 2)), Some(&RMat::zeros(2, 3)));
        assert!(relation_residuals(&interval(), &r)
            .unwrap()
            .iter()
            .all(|(_, m)| m.is_zero()));
        assert!(matches!(
            trivial_rep(&interval(), &[0, 0]),
            Err(RepError::ZeroDimension)
        ));
    }

    #[test]
    fn zero_range_gives_the_trivial_rep() {
        let t = triangle();
        let a = random_rep(&t, &[1, 2, 1], 5, (0, 0)).unwrap();
        let b = trivial_rep(&t, &[1, 2, 1]).unwrap();
        assert_eq!(a.blocks, b.blocks);
    }

    #[test]
    fn scalar_loop_at_the_top_vertex() {
        // γ3 = 1 + v31 v13 + v32 v23 as a scalar.
        let t = triangle();
        let r = random_rep(&t, &[1, 1, 1], 2, (-3, 3)).unwrap();
        let x = |i, j| r.block(&Sym::v(0, i, j)).unwrap()[(0, 0)].clone();
        let g3 = rat(1, 1) + x(3, 1) * x(1, 3) + x(3, 2) * x(2, 3);
        assert_eq!(r.block(&Sym::gamma(0, 3)).unwrap()[(0, 0)], g3);
    }

    #[test]
    fn dimension_counts() {
        assert_eq!(dimension_count(&triangle(), &[1, 1, 1]).unwrap(), 6);
        assert_eq!(dimension_count(&interval(), &[2, 3]).unwrap(), 12);
        assert_eq!(dimension_count(&quiver_core::complete(1), &[4]).unwrap(), 0);
    }

    #[test]
    fn json_round_trip_checks_the_digest() {
        let t = triangle();
        let r = random_rep(&t, &[2, 1, 2], 7, (-2, 2)).unwrap();
        let s = r.to_json();
        assert_eq!(MatrixRep::from_json(&s, &t).unwrap(), r);
        let tampered = s.replacen(&r.digest(), &"0".repeat(64), 1);
        assert!(matches!(
            MatrixRep::from_json(&tampered, &t),
            Err(RepError::Digest { .. })
        ));
    }
}
