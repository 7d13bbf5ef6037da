use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    fn tag(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Case {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

/// Accumulates check outcomes under unique names. Repeated names are merged,
/// so each case appears once however many checks it covers.
#[derive(Debug, Default)]
pub struct Cases {
    map: BTreeMap<String, Tally>,
}

#[derive(Debug, Default)]
struct Tally {
    checks: usize,
    failed: usize,
    skipped: bool,
    first_failure: Option<String>,
    note: Option<String>,
}

impl Cases {
    pub fn record(&mut self, name: impl Into<String>, pass: bool, detail: Option<String>) {
        let t = self.map.entry(name.into()).or_default();
        t.checks += 1;
        if !pass {
            t.failed += 1;
            if t.first_failure.is_none() {
                t.first_failure = detail;
            }
        }
    }

    /// A passing case whose detail is `note` instead of a check count.
    pub fn note(&mut self, name: impl Into<String>, note: impl Into<String>) {
        let t = self.map.entry(name.into()).or_default();
        t.checks += 1;
        t.note = Some(note.into());
    }

    pub fn skip(&mut self, name: impl Into<String>, why: impl Into<String>) {
        let t = self.map.entry(name.into()).or_default();
        t.skipped = true;
        t.note = Some(why.into());
    }

    /// Adds every record of a library report under `scope/`.
    pub fn absorb(&mut self, scope: &str, report: vvhecke::vvalgebra::Report) {
        for r in report.records {
            let name = format!("{scope}/{}@{}", r.relation, r.tuple);
            self.record(name, r.pass, r.detail);
        }
    }

    /// Records `result` as a single case, or an error case when it failed.
    pub fn fallible<E: std::fmt::Display>(&mut self, name: &str, result: Result<(), E>) {
        match result {
            Ok(()) => self.record(name, true, None),
            Err(e) => self.record(name, false, Some(e.to_string())),
        }
    }

    pub fn merge(&mut self, other: Cases) {
        for (name, t) in other.map {
            let mine = self.map.entry(name).or_default();
            mine.checks += t.checks;
            mine.failed += t.failed;
            mine.skipped |= t.skipped;
            if mine.first_failure.is_none() {
                mine.first_failure = t.first_failure;
            }
            if mine.note.is_none() {
                mine.note = t.note;
            }
        }
    }

    pub fn into_cases(self) -> Vec<Case> {
        self.map
            .into_iter()
            .map(|(name, t)| {
                let (status, detail) = if t.failed > 0 {
                    let why = t.first_failure.unwrap_or_default();
                    (Status::Fail, format!("{} of {} checks failed: {why}", t.failed, t.checks))
                } else if t.skipped && t.checks == 0 {
                    (Status::Skip, t.note.unwrap_or_default())
                } else if let Some(note) = t.note {
                    (Status::Pass, note)
                } else {
                    (Status::Pass, format!("{} checks", t.checks))
                };
                Case { name, status, detail }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: String,
    pub parameters: BTreeMap<String, Value>,
    pub cases: Vec<Case>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl Report {
    pub fn new(suite: &str, parameters: BTreeMap<String, Value>, cases: Cases) -> Report {
        let cases = cases.into_cases();
        let status = if cases.iter().any(|c| c.status == Status::Fail) { Status::Fail } else { Status::Pass };
        Report { suite: suite.to_string(), parameters, cases, status, timing_ms: None }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "suite {}", self.suite);
        for (k, v) in &self.parameters {
            let _ = writeln!(s, "  {k} = {v}");
        }
        for c in &self.cases {
            let _ = writeln!(s, "{}  {}  ({})", c.status.tag(), c.name, c.detail);
        }
        let count = |st| self.cases.iter().filter(|c| c.status == st).count();
        let _ = writeln!(
            s,
            "{} cases: {} passed, {} failed, {} skipped => {}",
            self.cases.len(),
            count(Status::Pass),
            count(Status::Fail),
            count(Status::Skip),
            self.status.tag()
        );
        if let Some(ms) = self.timing_ms {
            let _ = writeln!(s, "time {ms} ms");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn repeated_names_merge_into_one_case() {
        let mut cases = Cases::default();
        cases.record("b", true, None);
        cases.record("a", true, None);
        cases.record("b", false, Some("first".into()));
        cases.record("b", false, Some("second".into()));
        cases.skip("c", "empty");
        cases.note("d", "4 tuples");
        let got = cases.into_cases();
        let names: Vec<&str> = got.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, ["a", "b", "c", "d"]);
        assert_eq!(got[0].detail, "1 checks");
        assert_eq!((got[1].status, got[1].detail.as_str()), (Status::Fail, "2 of 3 checks failed: first"));
        assert_eq!((got[2].status, got[2].detail.as_str()), (Status::Skip, "empty"));
        assert_eq!((got[3].status, got[3].detail.as_str()), (Status::Pass, "4 tuples"));
    }

    #[test]
    fn merge_keeps_counts_and_first_failure() {
        let mut left = Cases::default();
        left.record("x", true, None);
        let mut right = Cases::default();
        right.record("x", false, Some("boom".into()));
        right.record("y", true, None);
        left.merge(right);
        let got = left.into_cases();
        assert_eq!(got[0].detail, "1 of 2 checks failed: boom");
        assert_eq!(got[1].status, Status::Pass);
    }

    #[test]
    fn a_single_failure_fails_the_report() {
        let mut cases = Cases::default();
        cases.record("ok", true, None);
        cases.skip("later", "not applicable");
        let report = Report::new("demo", BTreeMap::new(), cases);
        assert!(report.passed());
        assert!(report.to_text().ends_with("2 cases: 1 passed, 0 failed, 1 skipped => PASS\n"));

        let mut cases = Cases::default();
        cases.record("ok", true, None);
        cases.fallible("bad", Err::<(), _>("no inverse"));
        let report = Report::new("demo", BTreeMap::new(), cases);
        assert!(!report.passed());
        assert_eq!(report.failures().count(), 1);
        let json: Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(json["status"], "fail");
        assert_eq!(json["cases"][0]["name"], "bad");
        assert!(json.get("timing_ms").is_none());
        assert!(report.to_text().contains("FAIL  bad  (1 of 1 checks failed: no inverse)"));
    }
}
