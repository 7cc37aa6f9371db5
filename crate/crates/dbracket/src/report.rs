//! Per-case verification reports.

use ncalg::{Decision, Strategy, Verdict};
use serde::{Serialize, Serializer};

fn ser_verdict<S: Serializer>(v: &Verdict, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(v.as_str())
}

fn ser_strategy<S: Serializer>(v: &Option<Strategy>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_str(x.as_str()),
        None => s.serialize_none(),
    }
}

/// One checked identity `lhs = rhs`.
#[derive(Clone, Debug, Serialize)]
pub struct ReportEntry {
    /// Human-readable label of the case, e.g. `(v12, v21, v13)`.
    pub case: String,
    pub lhs: String,
    pub rhs: String,
    #[serde(serialize_with = "ser_verdict")]
    pub verdict: Verdict,
    #[serde(serialize_with = "ser_strategy")]
    pub strategy_used: Option<Strategy>,
    pub witness: Option<String>,
    /// True when `EQUAL` rests on representation evidence only.
    pub evidence_only: bool,
}

impl ReportEntry {
    pub fn new(case: String, lhs: String, rhs: String, d: Decision) -> Self {
        ReportEntry {
            case,
            lhs,
            rhs,
            verdict: d.verdict,
            strategy_used: d.strategy,
            witness: d.witness,
            evidence_only: d.evidence_only,
        }
    }
}

/// A list of checked identities.
#[derive(Clone, Debug, Default, Serialize)]
#[serde(transparent)]
pub struct Report {
    pub entries: Vec<ReportEntry>,
}

impl Report {
    pub fn new(entries: Vec<ReportEntry>) -> Self {
        Report { entries }
    }

    /// Conjunction of all verdicts (`EQUAL` for an empty report).
    pub fn verdict(&self) -> Verdict {
        self.entries
            .iter()
            .fold(Verdict::Equal, |acc, e| acc.and(e.verdict))
    }

    pub fn count(&self, v: Verdict) -> usize {
        self.entries.iter().filter(|e| e.verdict == v).count()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn extend(&mut self, other: Report) {
        self.entries.extend(other.entries);
    }

    /// Entries whose verdict is not `EQUAL`.
    pub fn failures(&self) -> impl Iterator<Item = &ReportEntry> {
        self.entries.iter().filter(|e| e.verdict != Verdict::Equal)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per entry followed by a summary line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let how = e.strategy_used.map(|s| s.as_str()).unwrap_or("-");
            let flag = if e.evidence_only { " (evidence)" } else { "" };
            out.push_str(&format!("{} {} [{}{}]\n", e.case, e.verdict, how, flag));
            if let Some(w) = &e.witness {
                if e.verdict != Verdict::Equal {
                    out.push_str(&format!("  witness: {w}\n"));
                }
            }
        }
        out.push_str(&format!(
            "{}/{} EQUAL, {} NOT_EQUAL, {} UNDECIDED\n",
            self.count(Verdict::Equal),
            self.len(),
            self.count(Verdict::NotEqual),
            self.count(Verdict::Undecided)
        ));
        out
    }
}
