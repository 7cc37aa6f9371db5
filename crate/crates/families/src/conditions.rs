//! The quasi-Poisson conditions on the coefficients, stored as data.
//!
//! The triple bracket of a family on three arrows is checked by a finite
//! list of identities between the coefficients.  Up to cyclic rotation,
//! every triple of arrows matches the index pattern of one of the lemmas
//! below; each lemma splits into subcases by the order of the indices and
//! lists the identities of its subcase.  A subcase with no identities
//! holds for every family.

use ncalg::{render, Q};
use serde::Serialize;

use crate::error::FamilyError;
use crate::expr::{parse_condition, parse_pred, Env};
use crate::family::{Coeff, CoefficientFamily};

/// One subcase of a lemma: when it applies and what it requires.
#[derive(Clone, Copy, Debug)]
pub struct Subcase {
    pub label: &'static str,
    pub when: &'static str,
    pub conditions: &'static [&'static str],
}

/// An index pattern for triples of arrows `(v_xy, v_zw, v_st)` together
/// with the constraints on the indices and the subcases.
#[derive(Clone, Copy, Debug)]
pub struct Lemma {
    pub id: &'static str,
    pub pattern: [&'static str; 3],
    pub requires: &'static str,
    pub subcases: &'static [Subcase],
}

const fn sub(
    label: &'static str,
    when: &'static str,
    conditions: &'static [&'static str],
) -> Subcase {
    Subcase {
        label,
        when,
        conditions,
    }
}

/// All lemmas.  Conditions use the notation of [`crate::expr`].
pub const LEMMAS: &[Lemma] = &[
    Lemma {
        id: "1",
        pattern: ["ij", "kl", "pq"],
        requires: "i!=j & i!=l & i!=q & k!=j & k!=l & k!=q & p!=j & p!=l & p!=q",
        subcases: &[
            sub(
                "i",
                "i=k & k=p & (j!=l | l!=q)",
                &["beta[i](j,l)*beta[i](l,q) + beta[i](l,q)*beta[i](q,j) + beta[i](q,j)*beta[i](j,l) = -1/4"],
            ),
            sub(
                "ii",
                "j=l & l=q & (i!=k | k!=p)",
                &["alpha[j](i,k)*alpha[j](k,p) + alpha[j](k,p)*alpha[j](p,i) + alpha[j](p,i)*alpha[j](i,k) = -1/4"],
            ),
            sub("iii", "!(i=k & k=p & (j!=l | l!=q)) & !(j=l & l=q & (i!=k | k!=p))", &[]),
        ],
    },
    Lemma {
        id: "2.1.a",
        pattern: ["ik", "kl", "pq"],
        requires: "i!=k & k!=l & p!=q & p!=k & l!=i & l!=p & q!=i & q!=k & q!=p",
        subcases: &[sub("", "true", &[])],
    },
    Lemma {
        id: "2.1.b",
        pattern: ["ip", "kl", "pq"],
        requires: "i!=p & k!=l & p!=q & k!=p & l!=i & l!=k & l!=p & q!=i & q!=k",
        subcases: &[sub(
            "",
            "true",
            &["nu[p](i,q)*(delta(l,q)*(alpha[l](k,p) - alpha[l](k,i)) + delta(i,k)*(beta[i](q,l) + beta[i](l,p))) = 0"],
        )],
    },
    Lemma {
        id: "2.2",
        pattern: ["ij", "ki", "pi"],
        requires: "i!=j & k!=i & p!=i & j!=k & j!=p",
        subcases: &[sub(
            "",
            "true",
            &[
                "nu[i](p,j)*(alpha[i](k,p) + mu[i](k,j) + delta(k,p)*beta[k](i,j)) = 0",
                "alpha[i](k,p)*mu[i](k,j) - alpha[i](k,p)*mu[i](p,j) - mu[i](p,j)*mu[i](k,j) = -1/4",
            ],
        )],
    },
    Lemma {
        id: "2.3",
        pattern: ["ij", "jl", "jq"],
        requires: "i!=j & j!=l & j!=q & i!=l & i!=q",
        subcases: &[sub(
            "",
            "true",
            &[
                "nu[j](i,l)*(beta[j](l,q) + mu[j](i,q) + delta(l,q)*alpha[l](i,j)) = 0",
                "beta[j](l,q)*mu[j](i,l) - beta[j](l,q)*mu[j](i,q) + mu[j](i,q)*mu[j](i,l) = 1/4",
            ],
        )],
    },
    Lemma {
        id: "3.1.a",
        pattern: ["ij", "ji", "pq"],
        requires: "distinct",
        subcases: &[sub(
            "",
            "true",
            &[
                "kappa[p](j,i)*(mu[p](j,q) - beta[p](q,j)) = 0",
                "kappa[q](j,i)*(mu[q](p,j) + alpha[q](p,j)) = 0",
                "kappa[p](j,i)*nu[p](j,q) - kappa[q](j,i)*nu[q](p,j) = 0",
            ],
        )],
    },
    Lemma {
        id: "3.1.b",
        pattern: ["ij", "ki", "jq"],
        requires: "distinct",
        subcases: &[sub(
            "",
            "true",
            &[
                "nu[j](i,q)*(mu[i](k,j) - mu[i](k,q)) = 0",
                "nu[i](k,j)*(mu[j](k,q) - mu[j](i,q)) = 0",
                "nu[i](k,j)*nu[j](k,q) - nu[i](k,q)*nu[j](i,q) = 0",
            ],
        )],
    },
    Lemma { id: "3.1.c", pattern: ["ij", "jl", "pi"], requires: "distinct", subcases: &[sub("", "true", &[])] },
    Lemma {
        id: "3.2.a",
        pattern: ["ij", "ik", "ji"],
        requires: "distinct",
        subcases: &[
            sub(
                "i",
                "i<j",
                &[
                    "forall b with i<b<j: kappa[b](j,i)*(mu[i](j,k) + beta[i](j,k)) = 0",
                    "1/2*(mu[i](j,k) + beta[i](j,k)) - mu[i](j,k)*beta[i](j,k) = 1/4",
                    "nu[i](j,k)*(mu[j](i,k) + 1/2) = 0",
                    "mu[i](j,k) + beta[i](j,k) - nu[i](j,k)*nu[j](i,k) = 0",
                ],
            ),
            sub(
                "ii",
                "k<j<i | j<i<k",
                &[
                    "forall a with j<a<i: kappa[a](i,j)*(mu[i](j,k) + mu[i](a,k)) = 0",
                    "forall a with j<a<i: kappa[a](i,j)*(beta[i](j,k) + beta[i](k,a)) = 0",
                    "forall a with j<a<i: kappa[a](i,j)*nu[i](a,k) = 0",
                    "1/2*(mu[i](j,k) + beta[i](j,k)) + mu[i](j,k)*beta[i](j,k) = -1/4",
                    "nu[i](j,k)*(mu[j](i,k) - 1/2) = 0",
                    "mu[i](j,k) + beta[i](j,k) + nu[i](j,k)*nu[j](i,k) = 0",
                ],
            ),
            sub(
                "iii",
                "j<k<i",
                &[
                    "forall a with j<a<i: kappa[a](i,j)*(mu[i](j,k) + mu[i](a,k) + 1/2*delta(a,k)) = 0",
                    "forall a with j<a<=k: kappa[a](i,j)*(beta[i](j,k) + beta[i](k,a) + 1/2*delta(a,k)) = 0",
                    "forall a with k<a<i: kappa[a](i,j)*(beta[i](j,k) + beta[i](k,a)) + kappa[a](i,k)*kappa[k](i,j) = 0",
                    "forall a with j<a<i: kappa[a](i,j)*nu[i](a,k) = 0",
                    "1/2*(mu[i](j,k) + beta[i](j,k)) + mu[i](j,k)*beta[i](j,k) = -1/4",
                    "nu[i](j,k)*(mu[j](i,k) - 1/2) = 0",
                    "mu[i](j,k) + beta[i](j,k) + nu[i](j,k)*nu[j](i,k) + kappa[k](i,j) = 0",
                ],
            ),
        ],
    },
    Lemma {
        id: "3.2.b",
        pattern: ["ij", "ji", "ik"],
        requires: "distinct",
        subcases: &[
            sub(
                "i",
                "i>j",
                &[
                    "1/2*(mu[i](j,k) + beta[i](j,k)) + mu[i](j,k)*beta[i](j,k) = -1/4",
                    "nu[i](j,k)*(beta[i](j,k) + 1/2) = 0",
                ],
            ),
            sub(
                "ii",
                "k<i<j | i<j<k",
                &[
                    "1/2*(mu[i](j,k) + beta[i](j,k)) - mu[i](j,k)*beta[i](j,k) = 1/4",
                    "nu[i](j,k)*(beta[i](j,k) - 1/2) = 0",
                ],
            ),
            sub(
                "iii",
                "i<k<j",
                &[
                    "1/2*(mu[i](j,k) + beta[i](j,k)) - mu[i](j,k)*beta[i](j,k) = 1/4",
                    "nu[i](j,k)*(beta[i](j,k) - 1/2) + kappa[k](j,i)*nu[k](i,j) = 0",
                    "kappa[k](j,i)*(alpha[k](i,j) + mu[k](i,j)) = 0",
                ],
            ),
        ],
    },
    Lemma {
        id: "3.3.a",
        pattern: ["ij", "kj", "ji"],
        requires: "distinct",
        subcases: &[
            sub(
                "i",
                "j>i",
                &[
                    "1/2*(mu[j](k,i) + alpha[j](k,i)) + mu[j](k,i)*alpha[j](k,i) = -1/4",
                    "nu[j](k,i)*(alpha[j](k,i) + 1/2) = 0",
                ],
            ),
            sub(
                "ii",
                "k<j<i | j<i<k",
                &[
                    "1/2*(mu[j](k,i) + alpha[j](k,i)) - mu[j](k,i)*alpha[j](k,i) = 1/4",
                    "nu[j](k,i)*(alpha[j](k,i) - 1/2) = 0",
                ],
            ),
            sub(
                "iii",
                "j<k<i",
                &[
                    "1/2*(mu[j](k,i) + alpha[j](k,i)) - mu[j](k,i)*alpha[j](k,i) = 1/4",
                    "nu[j](k,i)*(alpha[j](k,i) - 1/2) + kappa[k](i,j)*nu[k](i,j) = 0",
                    "kappa[k](i,j)*(beta[k](i,j) + mu[k](i,j)) = 0",
                ],
            ),
        ],
    },
    Lemma {
        id: "3.3.b",
        pattern: ["ij", "ji", "kj"],
        requires: "distinct",
        subcases: &[
            sub(
                "i",
                "i>j",
                &[
                    "forall a with j<a<i: kappa[a](i,j)*(mu[j](k,i) + alpha[j](k,i)) = 0",
                    "1/2*(mu[j](k,i) + alpha[j](k,i)) - mu[j](k,i)*alpha[j](k,i) = 1/4",
                    "nu[j](k,i)*(mu[i](k,j) + 1/2) = 0",
                    "mu[j](k,i) + alpha[j](k,i) - nu[j](k,i)*nu[i](k,j) = 0",
                ],
            ),
            sub(
                "ii",
                "k<i<j | i<j<k",
                &[
                    "forall b with i<b<j: kappa[b](j,i)*(mu[j](k,i) - mu[j](k,b)) = 0",
                    "forall b with i<b<j: kappa[b](j,i)*(alpha[j](k,i) - alpha[j](k,b)) = 0",
                    "forall b with i<b<j: kappa[b](j,i)*nu[j](k,b) = 0",
                    "1/2*(mu[j](k,i) + alpha[j](k,i)) + mu[j](k,i)*alpha[j](k,i) = -1/4",
                    "nu[j](k,i)*(mu[i](k,j) - 1/2) = 0",
                    "mu[j](k,i) + alpha[j](k,i) + nu[j](k,i)*nu[i](k,j) = 0",
                ],
            ),
            sub(
                "iii",
                "i<k<j",
                &[
                    "forall b with i<b<j: kappa[b](j,i)*(mu[j](k,i) - mu[j](k,b) + 1/2*delta(k,b)) = 0",
                    "forall b with i<b<=k: kappa[b](j,i)*(alpha[j](k,i) - alpha[j](k,b) + 1/2*delta(k,b)) = 0",
                    "forall b with k<b<j: kappa[b](j,i)*(alpha[j](k,i) - alpha[j](k,b)) + kappa[b](j,k)*kappa[k](j,i) = 0",
                    "forall b with i<b<j: kappa[b](j,i)*nu[j](k,b) = 0",
                    "1/2*(mu[j](k,i) + alpha[j](k,i)) + mu[j](k,i)*alpha[j](k,i) = -1/4",
                    "nu[j](k,i)*(mu[i](k,j) - 1/2) = 0",
                    "mu[j](k,i) + alpha[j](k,i) + nu[j](k,i)*nu[i](k,j) + kappa[k](j,i) = 0",
                ],
            ),
        ],
    },
    Lemma {
        id: "3.4",
        pattern: ["ij", "ij", "ji"],
        requires: "distinct",
        subcases: &[
            sub(
                "i",
                "i<j",
                &[
                    "forall b with i<b<j: kappa[b](j,i)*(alpha[j](i,b) - 1/2) = 0",
                    "forall b with i<b<j: kappa[b](j,i)*(mu[j](i,b) + 1/2) = 0",
                    "forall b with i<b<j: kappa[b](j,i)*nu[j](i,b) = 0",
                ],
            ),
            sub(
                "ii",
                "i>j",
                &[
                    "forall a with j<a<i: kappa[a](i,j)*(beta[i](a,j) - 1/2) = 0",
                    "forall a with j<a<i: kappa[a](i,j)*(mu[i](a,j) + 1/2) = 0",
                    "forall a with j<a<i: kappa[a](i,j)*nu[i](a,j) = 0",
                ],
            ),
        ],
    },
    Lemma { id: "4.1", pattern: ["ik", "kp", "pi"], requires: "distinct", subcases: &[sub("", "true", &[])] },
    Lemma {
        id: "4.2",
        pattern: ["ip", "ki", "pk"],
        requires: "distinct & i<k & i<p",
        subcases: &[
            sub(
                "i",
                "i<k<p",
                &[
                    "nu[p](i,k) + nu[i](k,p) - nu[k](p,i) = 0",
                    "nu[p](i,k)*(mu[k](p,i) + 1/2) = 0",
                    "nu[k](p,i)*(mu[i](k,p) - 1/2) = 0",
                    "nu[p](i,k)*(mu[i](k,p) - 1/2) = 0",
                    "nu[k](p,i)*(mu[p](i,k) + 1/2) = 0",
                    "nu[i](k,p)*(mu[p](i,k) + 1/2) = 0",
                    "nu[i](k,p)*(mu[k](p,i) - 1/2) + nu[k](p,i)*kappa[k](p,i) = 0",
                    "forall a with i<a<k: nu[k](p,i)*kappa[a](p,i) = 0",
                    "forall a with i<a<k: nu[p](i,k)*kappa[a](k,i) = 0",
                    "forall c with k<c<p: nu[k](p,i)*kappa[c](p,i) - nu[i](k,p)*kappa[c](p,k) = 0",
                ],
            ),
            sub(
                "ii",
                "i<p<k",
                &[
                    "nu[p](i,k) - nu[i](k,p) - nu[k](p,i) = 0",
                    "nu[k](p,i)*(mu[p](i,k) + 1/2) = 0",
                    "nu[k](p,i)*(mu[i](k,p) - 1/2) = 0",
                    "nu[p](i,k)*(mu[i](k,p) - 1/2) = 0",
                    "nu[p](i,k)*(mu[k](p,i) + 1/2) = 0",
                    "nu[i](k,p)*(mu[k](p,i) + 1/2) = 0",
                    "nu[i](k,p)*(mu[p](i,k) - 1/2) + nu[p](i,k)*kappa[p](k,i) = 0",
                    "forall b with i<b<p: nu[k](p,i)*kappa[b](p,i) = 0",
                    "forall b with i<b<p: nu[p](i,k)*kappa[b](k,i) = 0",
                    "forall d with p<d<k: nu[p](i,k)*kappa[d](k,i) - nu[i](k,p)*kappa[d](k,p) = 0",
                ],
            ),
        ],
    },
];

/// The text shown for a subcase without identities.
pub const VACUOUS: &str = "always holds";

/// One instantiated identity and its evaluation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConditionEntry {
    pub lemma: String,
    pub subcase: String,
    /// Index values, in pattern order followed by any bound variable.
    pub indices: Vec<(char, u32)>,
    /// The arrow triple `(v_xy, v_zw, v_st)` of the instance.
    pub triple: [(u32, u32); 3],
    pub condition: String,
    #[serde(serialize_with = "ser_q")]
    pub lhs: Q,
    #[serde(serialize_with = "ser_q")]
    pub rhs: Q,
    pub satisfied: bool,
}

fn ser_q<S: serde::Serializer>(q: &Q, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&render::rational(q))
}

impl ConditionEntry {
    pub fn label(&self) -> String {
        let sub = if self.subcase.is_empty() {
            String::new()
        } else {
            format!("({})", self.subcase)
        };
        let idx: Vec<String> = self
            .indices
            .iter()
            .map(|(v, x)| format!("{v}={x}"))
            .collect();
        format!("{}{} [{}]", self.lemma, sub, idx.join(","))
    }
}

/// Evaluation of every instantiated identity.
#[derive(Clone, Debug, Default, Serialize)]
#[serde(transparent)]
pub struct ConditionReport {
    pub entries: Vec<ConditionEntry>,
}

impl ConditionReport {
    pub fn satisfied(&self) -> bool {
        self.entries.iter().all(|e| e.satisfied)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ConditionEntry> {
        self.entries.iter().filter(|e| !e.satisfied)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per entry followed by a summary line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let status = if e.satisfied { "HOLDS" } else { "FAILS" };
            out.push_str(&format!("{} {}: {}", e.label(), status, e.condition));
            if !e.satisfied {
                out.push_str(&format!(
                    "  (lhs = {}, rhs = {})",
                    render::rational(&e.lhs),
                    render::rational(&e.rhs)
                ));
            }
            out.push('\n');
        }
        let bad = self.failures().count();
        out.push_str(&format!(
            "{}/{} conditions hold, {} fail\n",
            self.entries.len() - bad,
            self.entries.len(),
            bad
        ));
        out
    }
}

/// Pattern variables in order of first appearance.
fn pattern_vars(pattern: &[&str; 3]) -> Vec<char> {
    let mut out = Vec::new();
    for c in pattern.iter().flat_map(|p| p.chars()) {
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

fn arrow(p: &str, env: &Env) -> (u32, u32) {
    let mut cs = p.chars();
    let (t, s) = (
        cs.next().expect("two indices"),
        cs.next().expect("two indices"),
    );
    (env[&t], env[&s])
}

/// One index assignment of a lemma's pattern and its matching subcase.
#[derive(Clone, Debug)]
pub struct Instance {
    pub lemma: &'static Lemma,
    pub subcase: &'static Subcase,
    pub env: Env,
    pub vars: Vec<char>,
}

impl Instance {
    /// The arrow triple, each arrow as `(target, source)`.
    pub fn triple(&self) -> [(u32, u32); 3] {
        [
            arrow(self.lemma.pattern[0], &self.env),
            arrow(self.lemma.pattern[1], &self.env),
            arrow(self.lemma.pattern[2], &self.env),
        ]
    }
}

/// Every instance of every lemma on `n` vertices, with its subcase.
///
/// Fails if a condition does not parse or an assignment matches no subcase
/// or more than one.
pub fn instances(n: u32) -> Result<Vec<Instance>, FamilyError> {
    let mut out = Vec::new();
    for lemma in LEMMAS {
        let vars = pattern_vars(&lemma.pattern);
        let requires = parse_pred(lemma.requires)?;
        let whens = lemma
            .subcases
            .iter()
            .map(|s| parse_pred(s.when))
            .collect::<Result<Vec<_>, _>>()?;
        let mut vals = vec![1u32; vars.len()];
        'assign: loop {
            let env: Env = vars.iter().copied().zip(vals.iter().copied()).collect();
            let arrows_ok = lemma.pattern.iter().all(|p| {
                let (t, s) = arrow(p, &env);
                t != s
            });
            if arrows_ok && requires.holds(&env) {
                let hits: Vec<usize> = (0..whens.len()).filter(|&k| whens[k].holds(&env)).collect();
                if hits.len() != 1 {
                    return Err(FamilyError::Condition {
                        text: format!("lemma {} at {:?}", lemma.id, env),
                        reason: format!("{} subcases apply, expected exactly one", hits.len()),
                    });
                }
                out.push(Instance {
                    lemma,
                    subcase: &lemma.subcases[hits[0]],
                    env,
                    vars: vars.clone(),
                });
            }
            // Odometer over 1..=n.
            let mut k = 0;
            loop {
                if k == vals.len() {
                    break 'assign;
                }
                vals[k] += 1;
                if vals[k] <= n {
                    break;
                }
                vals[k] = 1;
                k += 1;
            }
        }
    }
    Ok(out)
}

/// Evaluates the identities of one instance, reading coefficients through
/// `lookup`.
pub fn evaluate_instance(
    inst: &Instance,
    n: u32,
    lookup: &dyn Fn(Coeff) -> Q,
) -> Result<Vec<ConditionEntry>, FamilyError> {
    let base: Vec<(char, u32)> = inst.vars.iter().map(|v| (*v, inst.env[v])).collect();
    let triple = inst.triple();
    let mut out = Vec::new();
    if inst.subcase.conditions.is_empty() {
        out.push(ConditionEntry {
            lemma: inst.lemma.id.to_string(),
            subcase: inst.subcase.label.to_string(),
            indices: base.clone(),
            triple,
            condition: VACUOUS.to_string(),
            lhs: Q::default(),
            rhs: Q::default(),
            satisfied: true,
        });
    }
    for text in inst.subcase.conditions {
        let cond = parse_condition(text)?;
        for env in cond.instances(&inst.env, n) {
            let lhs = cond.lhs.eval(&env, lookup);
            let rhs = cond.rhs.eval(&env, lookup);
            let mut indices = base.clone();
            if let Some((v, _)) = &cond.forall {
                indices.push((*v, env[v]));
            }
            out.push(ConditionEntry {
                lemma: inst.lemma.id.to_string(),
                subcase: inst.subcase.label.to_string(),
                indices,
                triple,
                condition: cond.render(&env),
                satisfied: lhs == rhs,
                lhs,
                rhs,
            });
        }
    }
    Ok(out)
}

/// Evaluates every quasi-Poisson condition on the family.
pub fn check_conditions(cf: &CoefficientFamily) -> Result<ConditionReport, FamilyError> {
    cf.validate()?;
    let lookup = |c: Coeff| cf.coeff(&c);
    let mut entries = Vec::new();
    for inst in instances(cf.n)? {
        entries.extend(evaluate_instance(&inst, cf.n, &lookup)?);
    }
    Ok(ConditionReport { entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_condition_parses() {
        for l in LEMMAS {
            parse_pred(l.requires).unwrap();
            for s in l.subcases {
                parse_pred(s.when).unwrap();
                for c in s.conditions {
                    parse_condition(c).unwrap();
                }
            }
        }
    }

    #[test]
    fn subcases_partition_every_pattern() {
        for n in 2..=5 {
            instances(n).unwrap();
        }
    }
}
