use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::curveconfig::Census;
use crate::json::SCHEMA_VERSION;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    ReportOnly,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::ReportOnly => "report-only",
        }
    }
}

/// The first disagreement between a computed value and the printed one.
/// Coordinates are one-based; empty for scalars.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub key: String,
    pub coords: Vec<usize>,
    pub expected: Value,
    pub got: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub result_id: String,
    pub status: Status,
    /// Where the expected values are printed.
    pub anchor: String,
    pub witnesses: Value,
    pub expected: Value,
    pub notes: Vec<String>,
    pub mismatch: Option<Mismatch>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: u32,
    /// Tier at which the 24-curve reconstruction was taken.
    pub tier: Option<u8>,
    pub census: Option<Census>,
    pub entries: Vec<Entry>,
}

impl VerificationReport {
    pub fn new(tier: Option<u8>, census: Option<Census>, entries: Vec<Entry>) -> Self {
        VerificationReport {
            schema: SCHEMA_VERSION,
            tier,
            census,
            entries,
        }
    }

    pub fn entry(&self, id: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.result_id == id)
    }

    pub fn has_failures(&self) -> bool {
        self.entries.iter().any(|e| e.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::from("# Verification report\n\n");
        match self.tier {
            Some(t) => writeln!(s, "Reconstruction tier: {t}").unwrap(),
            None => writeln!(s, "Reconstruction tier: unavailable").unwrap(),
        }
        if let Some(c) = &self.census {
            writeln!(
                s,
                "\nCensus: {} candidates, {} after tier 1, {} after tier 2, {} after tier 3.",
                c.candidates, c.tier1, c.tier2, c.tier3
            )
            .unwrap();
        }
        s.push_str("\n| result | status | anchor |\n|---|---|---|\n");
        for e in &self.entries {
            writeln!(
                s,
                "| {} | {} | {} |",
                e.result_id,
                e.status.as_str(),
                e.anchor
            )
            .unwrap();
        }
        for e in &self.entries {
            writeln!(
                s,
                "\n## {}\n\nStatus: **{}**. {}",
                e.result_id,
                e.status.as_str(),
                e.anchor
            )
            .unwrap();
            if let Some(m) = &e.mismatch {
                writeln!(
                    s,
                    "\nMismatch in `{}` at {:?}: expected `{}`, got `{}`.",
                    m.key, m.coords, m.expected, m.got
                )
                .unwrap();
            }
            for n in &e.notes {
                writeln!(s, "\n- {n}").unwrap();
            }
            for (title, v) in [("Expected", &e.expected), ("Witnesses", &e.witnesses)] {
                if v.as_object().is_some_and(|o| !o.is_empty()) {
                    let body = serde_json::to_string_pretty(v).expect("value serializes");
                    writeln!(s, "\n{title}:\n\n```json\n{body}\n```").unwrap();
                }
            }
        }
        s
    }
}

/// Builds an entry check by check. Only the first mismatch is kept, but
/// every witness is recorded.
pub(crate) struct Check {
    entry: Entry,
}

impl Check {
    pub fn new(id: &str, anchor: &str) -> Self {
        Check {
            entry: Entry {
                result_id: id.into(),
                status: Status::Pass,
                anchor: anchor.into(),
                witnesses: json!({}),
                expected: json!({}),
                notes: Vec::new(),
                mismatch: None,
            },
        }
    }

    pub fn report_only(id: &str, anchor: &str) -> Self {
        let mut c = Self::new(id, anchor);
        c.entry.status = Status::ReportOnly;
        c
    }

    pub fn witness(&mut self, key: &str, v: impl Serialize) {
        self.entry.witnesses[key] = serde_json::to_value(v).expect("witness serializes");
    }

    fn expected(&mut self, key: &str, v: Value) {
        self.entry.expected[key] = v;
    }

    pub fn note(&mut self, n: impl Into<String>) {
        self.entry.notes.push(n.into());
    }

    fn mismatch(&mut self, key: &str, coords: Vec<usize>, expected: Value, got: Value) {
        if self.entry.status != Status::ReportOnly {
            self.entry.status = Status::Fail;
        }
        if self.entry.mismatch.is_none() {
            self.entry.mismatch = Some(Mismatch {
                key: key.into(),
                coords,
                expected,
                got,
            });
        }
    }

    pub fn eq<T: Serialize + PartialEq>(&mut self, key: &str, expected: &T, got: &T) -> bool {
        let (e, g) = (to_value(expected), to_value(got));
        self.expected(key, e.clone());
        self.entry.witnesses[key] = g.clone();
        let ok = expected == got;
        if !ok {
            self.mismatch(key, Vec::new(), e, g);
        }
        ok
    }

    /// Entrywise comparison; reports the first differing entry in row-major
    /// order, or the first row whose length differs.
    pub fn matrix<T: Serialize + PartialEq>(
        &mut self,
        key: &str,
        expected: &[Vec<T>],
        got: &[Vec<T>],
    ) -> bool {
        self.expected(key, to_value(expected));
        self.entry.witnesses[key] = to_value(got);
        for i in 0..expected.len().max(got.len()) {
            match (expected.get(i), got.get(i)) {
                (Some(er), Some(gr)) => {
                    for j in 0..er.len().max(gr.len()) {
                        if er.get(j) != gr.get(j) {
                            let (e, g) = (to_value(&er.get(j)), to_value(&gr.get(j)));
                            self.mismatch(key, vec![i + 1, j + 1], e, g);
                            return false;
                        }
                    }
                }
                (e, g) => {
                    self.mismatch(key, vec![i + 1], to_value(&e), to_value(&g));
                    return false;
                }
            }
        }
        true
    }

    /// An asserted condition, recorded with the value that decides it.
    pub fn holds(&mut self, key: &str, ok: bool, got: impl Serialize) -> bool {
        self.expected(key, json!(true));
        let g = to_value(&got);
        self.entry.witnesses[key] = g.clone();
        if !ok {
            self.mismatch(key, Vec::new(), json!(true), g);
        }
        ok
    }

    /// A computation that could not be carried out.
    pub fn error(&mut self, key: &str, err: impl std::fmt::Display) {
        let msg = err.to_string();
        self.note(format!("{key}: {msg}"));
        self.mismatch(key, Vec::new(), Value::Null, json!({ "error": msg }));
    }

    pub fn finish(self) -> Entry {
        self.entry
    }
}

fn to_value<T: Serialize + ?Sized>(v: &T) -> Value {
    serde_json::to_value(v).expect("value serializes")
}
