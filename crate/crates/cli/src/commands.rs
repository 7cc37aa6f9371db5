//! The subcommands.  Each returns its output in both formats together with
//! an outcome that decides the exit code.

use anyhow::{bail, Result};
use dbracket::{
    check_moment_map, check_quasi_poisson, fold, qp_rhs, Engine, MomentComponent, Report,
};
use families::{
    check_conditions, fixture_by_name, search_admissible, verify_fixture, ValueGrid, FIXTURES,
};
use ncalg::render::{self, sym_name};
use ncalg::{AlgElem, Kind, Names, Strategy, Sym, Verdict};
use quiver_core::{
    boalch_relations, double_quiver, extended_double, validate, ColoredQuiver, Presentation,
    Relation,
};
use repscheme::{
    dimension_count, random_rep, relation_residuals, trace_bracket_check, trivial_rep, MatrixRep,
    RepOracle,
};
use serde_json::{json, Value};

use crate::input;

/// How a command ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Outcome {
    Ok,
    Violation,
    Undecided,
}

impl Outcome {
    pub fn from_verdict(v: Verdict) -> Self {
        match v {
            Verdict::Equal => Outcome::Ok,
            Verdict::NotEqual => Outcome::Violation,
            Verdict::Undecided => Outcome::Undecided,
        }
    }

    /// Exit code: any violation outranks any undecided case.
    pub fn code(self) -> i32 {
        match self {
            Outcome::Ok => 0,
            Outcome::Violation => 1,
            Outcome::Undecided => 2,
        }
    }

    pub fn and(self, other: Outcome) -> Outcome {
        match (self, other) {
            (Outcome::Violation, _) | (_, Outcome::Violation) => Outcome::Violation,
            (Outcome::Undecided, _) | (_, Outcome::Undecided) => Outcome::Undecided,
            _ => Outcome::Ok,
        }
    }
}

/// A command's output in both formats.
pub struct Output {
    pub text: String,
    pub json: Value,
    pub outcome: Outcome,
}

/// Options shared by the verification commands.
pub struct Verify {
    pub chain: Vec<Strategy>,
    pub dims: Option<Vec<usize>>,
    pub seed: Option<u64>,
    pub range: Option<(i64, i64)>,
}

impl Verify {
    /// The representation oracle, built only if the chain uses it.
    pub fn oracle(&self, q: &ColoredQuiver) -> Result<Option<RepOracle>> {
        if !self.chain.contains(&Strategy::Oracle) {
            return Ok(None);
        }
        if self.dims.is_none() && self.seed.is_none() && self.range.is_none() {
            return Ok(Some(RepOracle::default_suite(q)?));
        }
        let dims = match &self.dims {
            Some(d) => vec![d.clone()],
            None => repscheme::default_dims(q.n as usize),
        };
        let seeds = match self.seed {
            Some(s) => vec![s],
            None => repscheme::DEFAULT_SEEDS.to_vec(),
        };
        let range = self.range.unwrap_or(repscheme::DEFAULT_RANGE);
        Ok(Some(RepOracle::suite(q, &dims, &seeds, range)?))
    }
}

fn report_output(r: &Report) -> Output {
    Output {
        text: r.to_text(),
        json: serde_json::from_str(&r.to_json()).expect("report JSON parses"),
        outcome: report_outcome(r),
    }
}

fn report_outcome(r: &Report) -> Outcome {
    Outcome::from_verdict(r.verdict())
}

fn names_of(syms: &[Sym], names: &Names) -> Vec<String> {
    syms.iter().map(|s| sym_name(s, names)).collect()
}

pub fn validate_quiver(source: &str) -> Result<Output> {
    let q = input::raw_quiver(source)?;
    let violations = validate(&q);
    let mut text = String::new();
    for v in &violations {
        text.push_str(&format!("{}: {}\n", v.kind.as_str(), v.message));
    }
    let json = if violations.is_empty() {
        let arrows = q.arrows();
        text.push_str(&format!(
            "valid: {} vertices, {} colors, {} arrows\n",
            q.n,
            q.colors.len(),
            arrows.len()
        ));
        json!({"valid": true, "n": q.n, "colors": q.colors.len(), "arrows": names_of(&arrows, &q.names())})
    } else {
        let k = violations.len();
        text.push_str(&format!(
            "invalid: {k} violation{}\n",
            if k == 1 { "" } else { "s" }
        ));
        json!({"valid": false, "violations": violations})
    };
    Ok(Output {
        text,
        json,
        outcome: if violations.is_empty() {
            Outcome::Ok
        } else {
            Outcome::Violation
        },
    })
}

fn relation_json(r: &Relation, names: &Names) -> Value {
    json!({
        "color": r.color.map(|c| names.colors[c as usize].clone()),
        "component": r.component.map(|(i, j)| [i, j]),
        "lhs": render::lin(&r.lhs, names),
        "rhs": render::lin(&r.rhs, names),
    })
}

/// The presentation data of a quiver; with `dump`, a self-contained JSON
/// document that can be read back wherever a quiver, table or family is
/// expected.
pub fn build_boalch(
    q: &ColoredQuiver,
    table: Option<(&str, &dbracket::BracketTable)>,
    family: Option<&families::CoefficientFamily>,
) -> Result<(Output, Value)> {
    let p = Presentation::new(q)?;
    let names = p.names();
    let double = double_quiver(q)?;
    let extended = extended_double(q)?;
    let rels = boalch_relations(q)?;
    let full: Vec<Value> = rels.full.iter().map(|r| relation_json(r, &names)).collect();
    let decomposed: Vec<Value> = rels
        .decomposed
        .iter()
        .map(|r| relation_json(r, &names))
        .collect();
    let derived: Vec<Value> = p
        .definitions
        .iter()
        .map(|d| json!({"symbol": sym_name(&d.sym, &names), "definition": render::lin(&d.literal, &names)}))
        .collect();
    let mut text = format!(
        "quiver: {} vertices, colors {}\n",
        q.n,
        q.colors
            .iter()
            .map(|c| c.id.as_str())
            .collect::<Vec<_>>()
            .join(", ")
    );
    text.push_str(&format!(
        "double quiver ({}): {}\n",
        double.len(),
        names_of(&double, &names).join(" ")
    ));
    text.push_str(&format!(
        "extended double ({}): {}\n",
        extended.len(),
        names_of(&extended, &names).join(" ")
    ));
    text.push_str("relations:\n");
    for r in &rels.full {
        text.push_str(&format!(
            "  {} = {}\n",
            render::lin(&r.lhs, &names),
            render::lin(&r.rhs, &names)
        ));
    }
    text.push_str("decomposed relations:\n");
    for r in &rels.decomposed {
        let (i, j) = r.component.unwrap_or_default();
        text.push_str(&format!(
            "  e{i}(.)e{j}: {} = {}\n",
            render::lin(&r.lhs, &names),
            render::lin(&r.rhs, &names)
        ));
    }
    text.push_str("derived generators:\n");
    for d in &p.definitions {
        text.push_str(&format!(
            "  {} = {}\n",
            sym_name(&d.sym, &names),
            render::lin(&d.literal, &names)
        ));
    }
    text.push_str(&format!(
        "expanded presentation: {} ({} critical pairs checked)\n",
        if p.expanded_complete {
            "complete"
        } else {
            "not certified complete"
        },
        p.critical_pairs_checked
    ));
    let json = json!({
        "n": q.n,
        "double": names_of(&double, &names),
        "extended": names_of(&extended, &names),
        "relations": full,
        "decomposed": decomposed,
        "derived": derived,
        "expanded_complete": p.expanded_complete,
    });
    let mut dump = json!({
        "dump": 1,
        "quiver": serde_json::from_str::<Value>(&q.to_json())?,
        "presentation": json.clone(),
    });
    if let Some((source, t)) = table {
        dump["table_source"] = json!(source);
        dump["table"] = serde_json::from_str::<Value>(&t.to_json(&names))?;
    }
    if let Some(f) = family {
        dump["family"] = serde_json::from_str::<Value>(&f.to_json())?;
    }
    Ok((
        Output {
            text,
            json,
            outcome: Outcome::Ok,
        },
        dump,
    ))
}

fn engine_parts(q: &ColoredQuiver) -> Result<Presentation> {
    Ok(Presentation::new(q)?)
}

/// `⟪a, b⟫`, folded back onto short words of the extended alphabet; with
/// `expect`, compared against an expected value.
pub fn bracket(
    q: &ColoredQuiver,
    t: &dbracket::BracketTable,
    a: &str,
    b: &str,
    expect: Option<&str>,
    v: &Verify,
) -> Result<Output> {
    let p = engine_parts(q)?;
    let names = p.names();
    let (x, y) = (input::expr(a, q)?, input::expr(b, q)?);
    let engine = Engine::with_rules(t, &p.expanded).names(names.clone());
    let r = engine.dbl(&x, &y)?;
    let folded = fold(&r, &extended_double(q)?, &p.expanded);
    let value = render::lin(&folded, &names);
    let mut text = format!("{value}\n");
    let mut json = json!({
        "a": render::lin(&x, &names),
        "b": render::lin(&y, &names),
        "value": value,
        "unfolded": render::lin(&r, &names),
    });
    let mut outcome = Outcome::Ok;
    if let Some(e) = expect {
        let want = ncalg::parse_t2(e, &q.parse_ctx())?;
        let oracle = v.oracle(q)?;
        let ctx = p.equality_context(
            oracle.as_ref().map(|o| o as &dyn ncalg::Oracle),
            v.chain.clone(),
        );
        let d = ctx.equal(&r, &want);
        let how = d.strategy.map(|s| s.as_str()).unwrap_or("-");
        text.push_str(&format!(
            "expected {}: {} [{how}]\n",
            render::lin(&want, &names),
            d.verdict
        ));
        if let (Some(w), true) = (&d.witness, d.verdict != Verdict::Equal) {
            text.push_str(&format!("  witness: {w}\n"));
        }
        json["expected"] = json!(render::lin(&want, &names));
        json["verdict"] = json!(d.verdict.as_str());
        json["strategy_used"] = json!(d.strategy.map(|s| s.as_str()));
        json["witness"] = json!(d.witness);
        outcome = Outcome::from_verdict(d.verdict);
    }
    Ok(Output {
        text,
        json,
        outcome,
    })
}

/// `⟪a, b, c⟫` against the quasi-Poisson target.
pub fn triple(
    q: &ColoredQuiver,
    t: &dbracket::BracketTable,
    args: [&str; 3],
    v: &Verify,
) -> Result<Output> {
    let p = engine_parts(q)?;
    let names = p.names();
    let [a, b, c] = args;
    let (x, y, z) = (input::expr(a, q)?, input::expr(b, q)?, input::expr(c, q)?);
    let engine = Engine::with_rules(t, &p.expanded).names(names.clone());
    let lhs = engine.triple(&x, &y, &z)?;
    let vertices: Vec<u32> = (1..=q.n).collect();
    let rhs = qp_rhs(&x, &y, &z, &vertices);
    let oracle = v.oracle(q)?;
    let ctx = p.equality_context(
        oracle.as_ref().map(|o| o as &dyn ncalg::Oracle),
        v.chain.clone(),
    );
    let d = ctx.equal(&lhs, &rhs);
    let entry = dbracket::ReportEntry::new(
        format!(
            "({}, {}, {})",
            render::lin(&x, &names),
            render::lin(&y, &names),
            render::lin(&z, &names)
        ),
        render::lin(&lhs, &names),
        render::lin(&rhs, &names),
        d,
    );
    let mut text = format!("triple: {}\ntarget: {}\n", entry.lhs, entry.rhs);
    let r = Report::new(vec![entry]);
    text.push_str(&r.to_text());
    Ok(Output {
        text,
        json: serde_json::from_str(&r.to_json())?,
        outcome: report_outcome(&r),
    })
}

fn arrows_of(t: &dbracket::BracketTable) -> Vec<Sym> {
    let mut v: Vec<Sym> = t
        .generators()
        .into_iter()
        .filter(|s| s.kind == Kind::V)
        .collect();
    v.sort();
    v
}

/// The quasi-Poisson identity on every ordered triple of arrows.
pub fn check_qp(q: &ColoredQuiver, t: &dbracket::BracketTable, v: &Verify) -> Result<Output> {
    let p = engine_parts(q)?;
    let names = p.names();
    let engine = Engine::new(t).names(names);
    let oracle = v.oracle(q)?;
    let ctx = p.equality_context(
        oracle.as_ref().map(|o| o as &dyn ncalg::Oracle),
        v.chain.clone(),
    );
    let vertices: Vec<u32> = (1..=q.n).collect();
    let r = check_quasi_poisson(&engine, &ctx, &arrows_of(t), &vertices)?;
    Ok(report_output(&r))
}

/// The moment map `Φ = Σ_s Φ_s`, where `Φ_s` is the product of the loops
/// at `s` in color order.
pub fn moment_components(q: &ColoredQuiver) -> Vec<MomentComponent> {
    (1..=q.n)
        .filter_map(|s| {
            let colors: Vec<u16> = q
                .colors
                .iter()
                .enumerate()
                .filter(|(_, c)| c.vertices.contains(&s))
                .map(|(i, _)| i as u16)
                .collect();
            if colors.is_empty() {
                return None;
            }
            let phi = colors.iter().fold(AlgElem::idempotent(s), |acc, &c| {
                acc.mul(&AlgElem::sym(Sym::gamma(c, s)))
            });
            let inverse = colors.iter().rev().fold(AlgElem::idempotent(s), |acc, &c| {
                acc.mul(&AlgElem::sym(Sym::gamma_inv(c, s)))
            });
            Some(MomentComponent {
                vertex: s,
                phi,
                inverse: Some(inverse),
            })
        })
        .collect()
}

pub fn check_moment(q: &ColoredQuiver, t: &dbracket::BracketTable, v: &Verify) -> Result<Output> {
    let p = engine_parts(q)?;
    let names = p.names();
    let engine = Engine::with_rules(t, &p.expanded).names(names);
    let oracle = v.oracle(q)?;
    let ctx = p.equality_context(
        oracle.as_ref().map(|o| o as &dyn ncalg::Oracle),
        v.chain.clone(),
    );
    let r = check_moment_map(&engine, &ctx, &moment_components(q), &arrows_of(t))?;
    Ok(report_output(&r))
}

pub fn check_family(f: &families::CoefficientFamily) -> Result<Output> {
    let r = check_conditions(f)?;
    Ok(Output {
        text: r.to_text(),
        json: serde_json::from_str(&r.to_json())?,
        outcome: if r.satisfied() {
            Outcome::Ok
        } else {
            Outcome::Violation
        },
    })
}

pub fn verify_fixtures(names: &[String], v: &Verify) -> Result<Output> {
    let names: Vec<String> = if names.is_empty() {
        FIXTURES.iter().map(|s| s.to_string()).collect()
    } else {
        names.to_vec()
    };
    let mut text = String::new();
    let mut json = serde_json::Map::new();
    let mut outcome = Outcome::Ok;
    for name in &names {
        let f = fixture_by_name(name)?;
        let oracle = v.oracle(&f.quiver)?;
        let r = verify_fixture(&f, oracle.as_ref(), v.chain.clone())?;
        text.push_str(&format!("# fixture {name}\n"));
        text.push_str(&r.to_text());
        json.insert(name.clone(), serde_json::to_value(&r)?);
        outcome = outcome.and(Outcome::from_verdict(r.verdict()));
    }
    Ok(Output {
        text,
        json: Value::Object(json),
        outcome,
    })
}

pub fn search(n: u32, grid: &str, limit: Option<usize>) -> Result<Output> {
    let g = ValueGrid::parse(grid)?;
    let o = search_admissible(n, &g, limit)?;
    let mut text = format!("grid: {g}\n");
    text.push_str(&o.to_text());
    Ok(Output {
        text,
        json: serde_json::from_str(&o.to_json())?,
        outcome: if o.brute_force_rejections == 0 {
            Outcome::Ok
        } else {
            Outcome::Violation
        },
    })
}

/// Where the representation of `rep-verify` comes from.
pub enum RepSource {
    File(String),
    Trivial(Vec<usize>),
    Random {
        dims: Vec<usize>,
        seed: u64,
        range: (i64, i64),
    },
}

pub fn load_rep(q: &ColoredQuiver, src: &RepSource) -> Result<MatrixRep> {
    Ok(match src {
        RepSource::File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| anyhow::anyhow!("cannot read '{path}': {e}"))?;
            MatrixRep::from_json(&text, q)?
        }
        RepSource::Trivial(d) => trivial_rep(q, d)?,
        RepSource::Random { dims, seed, range } => random_rep(q, dims, *seed, *range)?,
    })
}

/// Checks a representation: relation residuals, the free-parameter count
/// and, with a table, the trace-bracket identity on arrow pairs.
pub fn rep_verify(
    q: &ColoredQuiver,
    rep: &MatrixRep,
    table: Option<&dbracket::BracketTable>,
) -> Result<Output> {
    let names = q.names();
    let mut text = format!("representation {}\n", rep.label());
    let mut checks = Vec::new();
    let mut outcome = Outcome::Ok;
    for (label, m) in relation_residuals(q, rep)? {
        let ok = m.is_zero();
        text.push_str(&format!(
            "{label}: {}\n",
            if ok { "zero" } else { "NONZERO" }
        ));
        checks.push(json!({"check": label, "ok": ok}));
        if !ok {
            outcome = Outcome::Violation;
        }
    }
    let count = dimension_count(q, &rep.dims)?;
    let sampled = rep.free_parameters();
    let ok = count == sampled;
    text.push_str(&format!(
        "free parameters: {sampled}, dimension count: {count}: {}\n",
        if ok { "agree" } else { "DISAGREE" }
    ));
    checks.push(json!({"check": "dimension count", "ok": ok, "count": count, "sampled": sampled}));
    if !ok {
        outcome = Outcome::Violation;
    }
    if let Some(t) = table {
        let p = engine_parts(q)?;
        let engine = Engine::with_rules(t, &p.expanded).names(names.clone());
        // Arrows between distinct vertices have zero trace, so the cycles
        // of length two are included to make the comparison non-trivial.
        let arrows = arrows_of(t);
        let mut probes: Vec<AlgElem> = arrows.iter().map(|a| AlgElem::sym(*a)).collect();
        for a in &arrows {
            for b in arrows
                .iter()
                .filter(|b| b.target == a.source && b.source == a.target)
            {
                probes.push(AlgElem::sym(*a).mul(&AlgElem::sym(*b)));
            }
        }
        for x in &probes {
            for y in &probes {
                let c = trace_bracket_check(&engine, rep, x, y)?;
                let label = format!(
                    "trace bracket ({}, {})",
                    render::lin(x, &names),
                    render::lin(y, &names)
                );
                text.push_str(&format!(
                    "{label}: {} = {} {}\n",
                    render::rational(&c.lhs),
                    render::rational(&c.rhs),
                    c.verdict
                ));
                checks.push(json!({"check": label, "ok": c.verdict == Verdict::Equal}));
                outcome = outcome.and(Outcome::from_verdict(c.verdict));
            }
        }
    }
    let json = json!({
        "representation": rep.label(),
        "digest": rep.digest(),
        "dims": rep.dims,
        "checks": checks,
    });
    Ok(Output {
        text,
        json,
        outcome,
    })
}

/// Rejects chains that are empty.
pub fn check_chain(chain: &[Strategy]) -> Result<()> {
    if chain.is_empty() {
        bail!("--strategy needs at least one strategy");
    }
    Ok(())
}
