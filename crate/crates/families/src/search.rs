//! Enumeration of admissible coefficient families over a finite value grid.
//!
//! The free parameters of a family on `n` vertices are one entry per skew
//! pair of each `α^(i)`, `β^(i)`, every off-diagonal entry of `μ^(i)`,
//! `ν^(i)` outside row and column `i`, and `κ_j^(i,k)` for `i > j > k`.
//! The search assigns them one at a time and evaluates every condition as
//! soon as all of its coefficients are known, so failing branches are cut
//! early.  Every family that passes the conditions is checked once more
//! against the brute-force triple bracket.
//!
//! Only the complete quiver with singleton parts is searched; quivers with
//! multi-vertex parts are outside the family formulas.

use std::collections::BTreeMap;

use ncalg::{parse_rational, render, Q};
use num::Zero;
use rand::Rng;
use serde::Serialize;

use crate::brute::brute_force_holds;
use crate::conditions::instances;
use crate::error::FamilyError;
use crate::expr::{parse_condition, Env, Expr};
use crate::family::{Class, Coeff, CoefficientFamily};

/// Admissible values for each coefficient class.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValueGrid {
    pub values: BTreeMap<Class, Vec<Q>>,
}

impl ValueGrid {
    /// The grid with no admissible values.
    pub fn empty() -> Self {
        ValueGrid::default()
    }

    /// The same values for every class.
    pub fn uniform(values: &[Q]) -> Self {
        let mut g = ValueGrid::empty();
        for c in Class::ALL {
            g.set(c, values);
        }
        g
    }

    /// Replaces the values of one class (duplicates are dropped, order kept).
    pub fn set(&mut self, class: Class, values: &[Q]) -> &mut Self {
        let mut vs: Vec<Q> = Vec::new();
        for v in values {
            if !vs.contains(v) {
                vs.push(v.clone());
            }
        }
        self.values.insert(class, vs);
        self
    }

    pub fn get(&self, class: Class) -> &[Q] {
        self.values.get(&class).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn is_empty(&self) -> bool {
        self.values.values().all(Vec::is_empty)
    }

    /// Parses `class=v,v,...` groups separated by `;`, e.g.
    /// `alpha,beta,mu=1/2,-1/2;nu,kappa=0,1`.  The class `all` sets every
    /// class; unmentioned classes have no values.
    pub fn parse(text: &str) -> Result<Self, FamilyError> {
        let mut g = ValueGrid::empty();
        for group in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            let (names, vals) = group
                .split_once('=')
                .ok_or_else(|| FamilyError::Format(format!("grid group '{group}' has no '='")))?;
            let vals = vals
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| {
                    parse_rational(s)
                        .ok_or_else(|| FamilyError::Format(format!("bad grid value '{s}'")))
                })
                .collect::<Result<Vec<Q>, _>>()?;
            for name in names.split(',').map(str::trim) {
                if name == "all" {
                    for c in Class::ALL {
                        g.set(c, &vals);
                    }
                } else {
                    let c = Class::from_name(name).ok_or_else(|| {
                        FamilyError::Format(format!("unknown coefficient class '{name}'"))
                    })?;
                    g.set(c, &vals);
                }
            }
        }
        Ok(g)
    }
}

impl std::fmt::Display for ValueGrid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let groups: Vec<String> = Class::ALL
            .iter()
            .map(|c| {
                let vs: Vec<String> = self.get(*c).iter().map(render::rational).collect();
                format!("{c}={}", vs.join(","))
            })
            .collect();
        write!(f, "{}", groups.join(";"))
    }
}

/// The free parameters of a family on `n` vertices, in canonical order.
pub fn free_parameters(n: u32) -> Vec<Coeff> {
    let mut out = Vec::new();
    for class in Class::ALL {
        for head in 1..=n {
            for a in 1..=n {
                for b in 1..=n {
                    let c = Coeff { class, head, a, b };
                    if let Some((p, true)) = canonical(c) {
                        if p == c {
                            out.push(c);
                        }
                    }
                }
            }
        }
    }
    out
}

/// The free parameter a coefficient is tied to and whether it equals it
/// (`true`) or its negative (`false`); `None` for coefficients forced to
/// vanish.
fn canonical(c: Coeff) -> Option<(Coeff, bool)> {
    let Coeff { class, head, a, b } = c;
    match class {
        Class::Kappa => (a > head && head > b).then_some((c, true)),
        Class::Alpha | Class::Beta => {
            if a == b || a == head || b == head {
                None
            } else if a < b {
                Some((c, true))
            } else {
                Some((
                    Coeff {
                        class,
                        head,
                        a: b,
                        b: a,
                    },
                    false,
                ))
            }
        }
        Class::Mu | Class::Nu => (a != b && a != head && b != head).then_some((c, true)),
    }
}

/// Writes the value of a free parameter into a family.
fn assign(f: &mut CoefficientFamily, p: Coeff, v: Q) {
    match p.class {
        Class::Alpha | Class::Beta => f.set_skew(p.class, p.head, p.a, p.b, v),
        Class::Kappa => {
            if !v.is_zero() {
                f.set(p.class, p.head, p.a, p.b, v);
            }
        }
        _ => f.set(p.class, p.head, p.a, p.b, v),
    }
}

/// One instantiated identity `lhs = rhs` in the search.
struct Check {
    lhs: Expr,
    rhs: Expr,
    env: Env,
}

/// The result of a search.
#[derive(Clone, Debug, Default, Serialize)]
pub struct SearchOutcome {
    pub n: u32,
    pub parameters: usize,
    /// Families passing every condition and the brute-force check, in
    /// enumeration order.
    #[serde(skip)]
    pub families: Vec<CoefficientFamily>,
    /// Families passing every condition.
    pub condition_passes: usize,
    /// Condition-passing families the brute-force check rejected.
    pub brute_force_rejections: usize,
    /// Partial assignments visited.
    pub nodes: u64,
    /// True if the limit was reached, so the enumeration may be incomplete.
    pub truncated: bool,
}

impl SearchOutcome {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "n={} parameters={} nodes={} condition_passes={} brute_force_rejections={} truncated={}\n",
            self.n,
            self.parameters,
            self.nodes,
            self.condition_passes,
            self.brute_force_rejections,
            self.truncated
        );
        for (k, f) in self.families.iter().enumerate() {
            let vals: Vec<String> = f
                .nonzero()
                .iter()
                .map(|(c, q)| format!("{c}={}", render::rational(q)))
                .collect();
            out.push_str(&format!("family {}: {}\n", k + 1, vals.join(" ")));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let fams: Vec<serde_json::Value> = self
            .families
            .iter()
            .map(|f| serde_json::from_str(&f.to_json()).expect("family JSON parses"))
            .collect();
        let mut v = serde_json::to_value(self).expect("outcome serializes");
        v["families"] = serde_json::Value::Array(fams);
        serde_json::to_string_pretty(&v).expect("outcome serializes")
    }
}

/// Enumerates families on `n` vertices with every free parameter drawn
/// from `grid` that satisfy every condition; at most `limit` families are
/// collected (`None` for all).  Each collected family is re-checked by
/// brute force and dropped (and counted) if that check fails.
pub fn search_admissible(
    n: u32,
    grid: &ValueGrid,
    limit: Option<usize>,
) -> Result<SearchOutcome, FamilyError> {
    if n < 2 {
        return Err(FamilyError::Invariant(format!(
            "n = {n} but at least two vertices are needed"
        )));
    }
    let params = free_parameters(n);
    let mut outcome = SearchOutcome {
        n,
        parameters: params.len(),
        ..SearchOutcome::default()
    };
    if limit == Some(0) || params.iter().any(|p| grid.get(p.class).is_empty()) {
        return Ok(outcome);
    }

    // Instantiate every identity and record the parameters it reads.
    let mut checks: Vec<(Check, Vec<usize>)> = Vec::new();
    let index: BTreeMap<Coeff, usize> = params.iter().enumerate().map(|(k, p)| (*p, k)).collect();
    for inst in instances(n)? {
        for text in inst.subcase.conditions {
            let cond = parse_condition(text)?;
            for env in cond.instances(&inst.env, n) {
                let mut cs = Vec::new();
                cond.lhs.coeffs(&env, &mut cs);
                cond.rhs.coeffs(&env, &mut cs);
                let mut used: Vec<usize> = cs
                    .into_iter()
                    .filter_map(canonical)
                    .map(|(p, _)| index[&p])
                    .collect();
                used.sort_unstable();
                used.dedup();
                checks.push((
                    Check {
                        lhs: cond.lhs.clone(),
                        rhs: cond.rhs.clone(),
                        env,
                    },
                    used,
                ));
            }
        }
    }

    // Greedy order: next the parameter that completes the most checks.
    let mut order: Vec<usize> = Vec::new();
    let mut placed = vec![false; params.len()];
    let mut missing: Vec<usize> = checks.iter().map(|(_, u)| u.len()).collect();
    while order.len() < params.len() {
        let best = (0..params.len())
            .filter(|&p| !placed[p])
            .max_by_key(|&p| {
                let closes = checks
                    .iter()
                    .zip(&missing)
                    .filter(|((_, u), m)| **m == 1 && u.contains(&p))
                    .count();
                let touches = checks.iter().filter(|(_, u)| u.contains(&p)).count();
                (closes, touches, std::cmp::Reverse(p))
            })
            .expect("an unplaced parameter remains");
        placed[best] = true;
        order.push(best);
        for ((_, u), m) in checks.iter().zip(missing.iter_mut()) {
            if u.contains(&best) {
                *m -= 1;
            }
        }
    }
    let depth_of: Vec<usize> = {
        let mut pos = vec![0; params.len()];
        for (d, p) in order.iter().enumerate() {
            pos[*p] = d;
        }
        pos
    };
    let mut at_depth: Vec<Vec<usize>> = vec![Vec::new(); params.len() + 1];
    for (k, (_, used)) in checks.iter().enumerate() {
        let d = used.iter().map(|p| depth_of[*p] + 1).max().unwrap_or(0);
        at_depth[d].push(k);
    }
    let mut state = State {
        n,
        params: &params,
        index: &index,
        order: &order,
        grid,
        checks: checks.into_iter().map(|(c, _)| c).collect(),
        at_depth,
        values: vec![None; params.len()],
        found: Vec::new(),
        limit,
        nodes: 0,
    };
    // Identities without free parameters are decided before the search.
    if state.holds_at(0) {
        state.descend(0);
    }
    outcome.nodes = state.nodes;
    outcome.truncated = limit.is_some_and(|l| state.found.len() >= l);
    outcome.condition_passes = state.found.len();
    for f in state.found {
        if brute_force_holds(&f)? {
            outcome.families.push(f);
        } else {
            outcome.brute_force_rejections += 1;
        }
    }
    Ok(outcome)
}

struct State<'a> {
    n: u32,
    params: &'a [Coeff],
    index: &'a BTreeMap<Coeff, usize>,
    order: &'a [usize],
    grid: &'a ValueGrid,
    checks: Vec<Check>,
    at_depth: Vec<Vec<usize>>,
    values: Vec<Option<Q>>,
    found: Vec<CoefficientFamily>,
    limit: Option<usize>,
    nodes: u64,
}

impl State<'_> {
    fn lookup(&self, c: Coeff) -> Q {
        match canonical(c) {
            None => Q::zero(),
            Some((p, sign)) => {
                let v = self.values[self.index[&p]]
                    .clone()
                    .expect("parameter assigned");
                if sign {
                    v
                } else {
                    -v
                }
            }
        }
    }

    fn holds_at(&self, depth: usize) -> bool {
        let lookup = |c: Coeff| self.lookup(c);
        self.at_depth[depth].iter().all(|&k| {
            let ch = &self.checks[k];
            ch.lhs.eval(&ch.env, &lookup) == ch.rhs.eval(&ch.env, &lookup)
        })
    }

    fn full(&self) -> bool {
        self.limit.is_some_and(|l| self.found.len() >= l)
    }

    fn descend(&mut self, depth: usize) {
        if depth == self.order.len() {
            let mut f = CoefficientFamily::zero(self.n);
            for (p, v) in self.params.iter().zip(&self.values) {
                assign(&mut f, *p, v.clone().expect("parameter assigned"));
            }
            self.found.push(f);
            return;
        }
        let p = self.order[depth];
        for v in self.grid.get(self.params[p].class).to_vec() {
            if self.full() {
                return;
            }
            self.nodes += 1;
            self.values[p] = Some(v);
            if self.holds_at(depth + 1) {
                self.descend(depth + 1);
            }
        }
        self.values[p] = None;
    }
}

/// A family with every free parameter drawn uniformly from `values`.
pub fn random_family(n: u32, values: &[Q], rng: &mut impl Rng) -> CoefficientFamily {
    let mut f = CoefficientFamily::zero(n);
    if values.is_empty() {
        return f;
    }
    for p in free_parameters(n) {
        let v = values[rng.gen_range(0..values.len())].clone();
        assign(&mut f, p, v);
    }
    f
}
