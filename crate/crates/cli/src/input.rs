//! Loading quivers, tables and families from files or builtins.
//!
//! A source is either a path to a JSON file or `builtin:NAME` with `NAME`
//! one of `interval`, `triangle`, `table1`.  A file written by
//! `build-boalch --dump` can be given wherever a quiver, table or family is
//! expected; the matching part of the dump is used.

use std::fs;

use anyhow::{anyhow, bail, Context, Result};
use dbracket::BracketTable;
use families::{family_bracket_table, interval_fixture, triangle_fixture, CoefficientFamily};
use ncalg::{parse_alg, AlgElem, Strategy, Sym};
use quiver_core::{interval, triangle, ColoredQuiver};
use serde_json::Value;

pub const BUILTINS: [&str; 3] = ["interval", "triangle", "table1"];

fn builtin(source: &str) -> Result<Option<&str>> {
    match source.strip_prefix("builtin:") {
        None => Ok(None),
        Some(name) if BUILTINS.contains(&name) => Ok(Some(name)),
        Some(name) => bail!(
            "unknown builtin '{name}' (expected one of: {})",
            BUILTINS.join(", ")
        ),
    }
}

fn read(path: &str) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read '{path}'"))
}

/// The part `key` of a dump, or the whole document if it is not a dump.
fn section(text: &str, key: &str, path: &str) -> Result<String> {
    let v: Value =
        serde_json::from_str(text).with_context(|| format!("'{path}' is not valid JSON"))?;
    match v.get("dump").and_then(|_| v.get(key)) {
        Some(part) => Ok(part.to_string()),
        None if v.get("dump").is_some() => bail!("the dump '{path}' has no '{key}' section"),
        None => Ok(text.to_string()),
    }
}

pub fn builtin_quiver(name: &str) -> ColoredQuiver {
    match name {
        "interval" => interval(),
        _ => triangle(),
    }
}

/// Reads a quiver without validating it.
pub fn raw_quiver(source: &str) -> Result<ColoredQuiver> {
    if let Some(name) = builtin(source)? {
        return Ok(builtin_quiver(name));
    }
    let text = section(&read(source)?, "quiver", source)?;
    serde_json::from_str(&text).with_context(|| format!("'{source}' is not a quiver"))
}

/// The quiver from `--quiver`, or else the one belonging to a builtin or
/// dumped table.
pub fn quiver(source: Option<&str>, table: Option<&str>) -> Result<ColoredQuiver> {
    let source = match (source, table) {
        (Some(s), _) => s,
        (None, Some(t)) if t.starts_with("builtin:") => t,
        (None, Some(t)) => {
            let text = read(t)?;
            let v: Value =
                serde_json::from_str(&text).with_context(|| format!("'{t}' is not valid JSON"))?;
            if v.get("dump").is_none() {
                bail!("--quiver is required with a table file");
            }
            t
        }
        (None, None) => bail!("--quiver is required"),
    };
    let q = raw_quiver(source)?;
    q.ensure_valid()
        .with_context(|| format!("quiver '{source}' is invalid"))?;
    Ok(q)
}

pub fn builtin_table(name: &str) -> Result<BracketTable> {
    Ok(match name {
        "interval" => interval_fixture()?.table,
        "triangle" => triangle_fixture()?.table,
        _ => family_bracket_table(3, &CoefficientFamily::table1())?,
    })
}

/// The generator table from `--table`, checked against the quiver.
/// Where a table came from: the recorded source of a dump, else `source`.
pub fn table_source(source: &str) -> Result<String> {
    if builtin(source)?.is_some() {
        return Ok(source.to_string());
    }
    let v: Value = serde_json::from_str(&read(source)?)
        .with_context(|| format!("'{source}' is not valid JSON"))?;
    Ok(
        match (v.get("dump"), v.get("table_source").and_then(Value::as_str)) {
            (Some(_), Some(src)) => src.to_string(),
            _ => source.to_string(),
        },
    )
}

pub fn table(source: &str, q: &ColoredQuiver) -> Result<BracketTable> {
    let t = match builtin(source)? {
        Some(name) => builtin_table(name)?,
        None => {
            let text = section(&read(source)?, "table", source)?;
            BracketTable::from_json(&text, &q.parse_ctx())
                .with_context(|| format!("cannot load table '{source}'"))?
        }
    };
    q.check_symbols(&t.generators())
        .with_context(|| format!("table '{source}' does not fit the quiver"))?;
    Ok(t)
}

/// The coefficient family from `--family`.
pub fn family(source: &str) -> Result<CoefficientFamily> {
    match builtin(source)? {
        Some("table1") => Ok(CoefficientFamily::table1()),
        Some(name) => bail!("builtin '{name}' is not a coefficient family (use builtin:table1)"),
        None => {
            let text = section(&read(source)?, "family", source)?;
            Ok(CoefficientFamily::from_json(&text)
                .with_context(|| format!("cannot load family '{source}'"))?)
        }
    }
}

/// An expression over the quiver's alphabet.
pub fn expr(text: &str, q: &ColoredQuiver) -> Result<AlgElem> {
    let x = parse_alg(text, &q.parse_ctx()).with_context(|| format!("in expression '{text}'"))?;
    let syms: Vec<Sym> = x.symbols().into_iter().collect();
    q.check_symbols(&syms)
        .with_context(|| format!("in expression '{text}'"))?;
    Ok(x)
}

pub fn dims(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| anyhow!("bad dimension '{}' in --dims", s.trim()))
        })
        .collect()
}

pub fn range(text: &str) -> Result<(i64, i64)> {
    let (lo, hi) = text
        .split_once(',')
        .ok_or_else(|| anyhow!("--range expects LO,HI"))?;
    let p = |s: &str| {
        s.trim()
            .parse::<i64>()
            .map_err(|_| anyhow!("bad bound '{}' in --range", s.trim()))
    };
    let (lo, hi) = (p(lo)?, p(hi)?);
    if lo > hi {
        bail!("--range {lo},{hi} is empty");
    }
    Ok((lo, hi))
}

pub fn strategies(text: &str) -> Result<Vec<Strategy>> {
    text.split(',')
        .map(|s| {
            s.trim().parse::<Strategy>().map_err(|_| {
                anyhow!(
                    "unknown strategy '{}' (structural, expanded, oracle)",
                    s.trim()
                )
            })
        })
        .collect()
}
