//! Pass/fail records and their JSON and text renderings.

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub params: Map<String, Value>,
    pub status: Status,
    /// Printed terms of the residual; empty iff the check passed.
    pub residual: Vec<String>,
    pub elapsed_ms: u64,
}

impl CheckRecord {
    /// The status is derived from the residual: a check passes iff nothing
    /// is left over.
    pub fn new(name: impl Into<String>, params: Value, residual: Vec<String>, elapsed_ms: u64) -> Self {
        let params = match params {
            Value::Object(m) => m,
            Value::Null => Map::new(),
            other => {
                let mut m = Map::new();
                m.insert("value".into(), other);
                m
            }
        };
        let status = if residual.is_empty() { Status::Pass } else { Status::Fail };
        CheckRecord {
            name: name.into(),
            params,
            status,
            residual,
            elapsed_ms,
        }
    }

    /// Runs `f`, which returns the residual terms, and times it.
    pub fn timed(name: impl Into<String>, params: Value, f: impl FnOnce() -> Vec<String>) -> Self {
        let start = Instant::now();
        let residual = f();
        let ms = start.elapsed().as_millis() as u64;
        CheckRecord::new(name, params, residual, ms)
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Copy, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Summary {
    pub total: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub command: String,
    pub rank: Option<usize>,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(command: impl Into<String>, rank: Option<usize>) -> Self {
        VerificationReport {
            command: command.into(),
            rank,
            checks: Vec::new(),
            summary: Summary::default(),
        }
    }

    pub fn push(&mut self, rec: CheckRecord) {
        self.summary.total += 1;
        if !rec.passed() {
            self.summary.failed += 1;
        }
        self.checks.push(rec);
    }

    pub fn extend(&mut self, recs: impl IntoIterator<Item = CheckRecord>) {
        for r in recs {
            self.push(r);
        }
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.extend(other.checks);
    }

    /// Stable sort by check name; records of one name keep generation order.
    pub fn sort(&mut self) {
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    /// Zeroes all timings, for byte-identical output across runs.
    pub fn strip_timing(&mut self) {
        for c in &mut self.checks {
            c.elapsed_ms = 0;
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per check name with counts, then every failure in full.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut groups: Vec<(&str, usize, usize, u64)> = Vec::new();
        for c in &self.checks {
            match groups.last_mut() {
                Some(g) if g.0 == c.name => {
                    g.1 += 1;
                    g.2 += usize::from(!c.passed());
                    g.3 += c.elapsed_ms;
                }
                _ => groups.push((&c.name, 1, usize::from(!c.passed()), c.elapsed_ms)),
            }
        }
        match self.rank {
            Some(n) => writeln!(out, "{} (rank {n})", self.command).unwrap(),
            None => writeln!(out, "{}", self.command).unwrap(),
        }
        for (name, total, failed, ms) in groups {
            let tag = if failed == 0 { "PASS" } else { "FAIL" };
            writeln!(out, "  {tag} {name}: {} of {total} checks passed ({ms} ms)", total - failed).unwrap();
        }
        for c in self.failures() {
            writeln!(out, "  failure {} {}", c.name, Value::Object(c.params.clone())).unwrap();
            for r in c.residual.iter().take(8) {
                writeln!(out, "    residual {r}").unwrap();
            }
            if c.residual.len() > 8 {
                writeln!(out, "    ... {} more terms", c.residual.len() - 8).unwrap();
            }
        }
        writeln!(out, "total {}, failed {}", self.summary.total, self.summary.failed).unwrap();
        out
    }
}
