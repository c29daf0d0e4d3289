//! Reports printed by `check`, `apply homology` and `corpus run`.

use std::fmt::Write as _;

use serde::Serialize;

use segalkit::lifting::Certificate;
use segalkit::{Status, Verdict};

#[derive(Clone, Debug, Serialize)]
pub struct VerdictRecord {
    pub check: String,
    pub status: Status,
    pub strategy: String,
    pub bound: usize,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub replayed: Option<bool>,
}

impl VerdictRecord {
    pub fn new(check: &str, v: &Verdict) -> Self {
        VerdictRecord {
            check: check.to_string(),
            status: v.status,
            strategy: v.strategy.clone(),
            bound: v.bound,
            detail: v.detail.clone(),
            certificate: v.certificate.as_ref().map(describe),
            replayed: v.certificate.as_ref().map(|_| v.replay()),
        }
    }
}

pub fn describe(c: &Certificate) -> String {
    match c {
        Certificate::Solved { problems } => format!("{problems} lifting problems solved"),
        Certificate::Lift { .. } => "explicit lift".into(),
        Certificate::Counterexample { generator, .. } => format!("unliftable square against {generator}"),
        Certificate::Isomorphism { .. } => "isomorphism with inverse".into(),
        Certificate::Homology { degrees } => format!("homology agrees below degree {degrees} (necessary only)"),
        Certificate::HomotopyEquivalence { left, right, .. } => {
            format!("homotopy inverse, zigzags of length {} and {}", left.len(), right.len())
        }
        Certificate::Structural(s) => s.clone(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteRecord {
    pub suite: String,
    pub passed: bool,
    pub checked: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub verdicts: Vec<VerdictRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub values: Vec<(String, String)>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub suites: Vec<SuiteRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl Report {
    pub fn new(command: String) -> Self {
        Report { command, ..Default::default() }
    }

    /// 1 if anything fails, else 2 if anything is unknown, else 0.
    pub fn exit_code(&self) -> i32 {
        let statuses = self.verdicts.iter().map(|v| v.status);
        let suites_failed = self.suites.iter().any(|s| !s.passed);
        let mut code = 0;
        for s in statuses {
            match s {
                Status::Fails => return 1,
                Status::UnknownAtBound => code = 2,
                Status::Holds => {}
            }
        }
        if suites_failed {
            1
        } else {
            code
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("command  {}\n", self.command);
        for v in &self.verdicts {
            let _ = writeln!(out, "check    {}", v.check);
            let _ = writeln!(out, "status   {}", v.status.as_str());
            let _ = writeln!(out, "strategy {}", v.strategy);
            let _ = writeln!(out, "bound    {}", v.bound);
            let _ = writeln!(out, "detail   {}", v.detail);
            if let Some(c) = &v.certificate {
                let _ = writeln!(out, "evidence {c}");
            }
            if let Some(r) = v.replayed {
                let _ = writeln!(out, "replayed {r}");
            }
        }
        for (k, v) in &self.values {
            let _ = writeln!(out, "{k} {v}");
        }
        for s in &self.suites {
            let _ = writeln!(
                out,
                "{} {} ({} checks)",
                if s.passed { "PASS" } else { "FAIL" },
                s.suite,
                s.checked
            );
            for n in &s.notes {
                let _ = writeln!(out, "  note: {n}");
            }
            for f in &s.failures {
                let _ = writeln!(out, "  failure: {f}");
            }
        }
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(out, "elapsed  {ms} ms");
        }
        out
    }

    pub fn render_machine(&self) -> String {
        let mut s = serde_json::to_string(self).expect("reports serialize");
        s.push('\n');
        s
    }
}
