//! Line-oriented, machine-re-verifiable reports.  Every witness references
//! cells by their vertex-name labels; output ordering is deterministic.

use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// A structured result document, assembled sequentially.
pub struct Report {
    out: String,
    failed: bool,
}

impl Report {
    pub fn new(name: &str, input: &str) -> Self {
        let mut out = String::new();
        let _ = writeln!(out, "report {name}");
        let _ = writeln!(out, "input {input}");
        Report { out, failed: false }
    }

    pub fn check(&mut self, name: &str, status: Status) {
        if status == Status::Fail {
            self.failed = true;
        }
        let _ = writeln!(self.out, "check {name} {}", status.as_str());
    }

    pub fn check_with(&mut self, name: &str, status: Status, detail: &str) {
        if status == Status::Fail {
            self.failed = true;
        }
        let _ = writeln!(self.out, "check {name} {} {detail}", status.as_str());
    }

    pub fn count(&mut self, key: &str, value: impl std::fmt::Display) {
        let _ = writeln!(self.out, "count {key} {value}");
    }

    pub fn info(&mut self, key: &str, value: impl std::fmt::Display) {
        let _ = writeln!(self.out, "{key} {value}");
    }

    pub fn witness(&mut self, detail: &str) {
        let _ = writeln!(self.out, "witness {detail}");
    }

    pub fn failed(&self) -> bool {
        self.failed
    }

    pub fn finish(mut self) -> (String, bool) {
        self.out.push_str("end\n");
        (self.out, self.failed)
    }
}
