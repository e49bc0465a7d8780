use std::fmt::Write as _;
use std::time::Duration;

use crate::qlin::{format_rational, RatMatrix, Rational};

use super::format::format_row;

pub const REPORT_HEADER: &str = "kanext-report v1";

/// An ordered key-value report. Keys are dotted paths, values are single
/// lines; verdicts are collected separately and rendered last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    command: String,
    fields: Vec<(String, String)>,
    verdicts: Vec<(String, bool)>,
    timing: Option<Duration>,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report {
            command: command.to_string(),
            fields: Vec::new(),
            verdicts: Vec::new(),
            timing: None,
        }
    }

    pub fn field(&mut self, key: impl Into<String>, value: impl ToString) {
        self.fields.push((key.into(), value.to_string()));
    }

    pub fn matrix(&mut self, key: impl Into<String>, m: &RatMatrix) {
        self.field(key, format_matrix(m));
    }

    pub fn vector(&mut self, key: impl Into<String>, v: &[Rational]) {
        self.field(key, format!("[{}]", v.iter().map(format_rational).collect::<Vec<_>>().join(" ")));
    }

    pub fn verdict(&mut self, name: impl Into<String>, pass: bool) {
        self.verdicts.push((name.into(), pass));
    }

    pub fn set_timing(&mut self, elapsed: Duration) {
        self.timing = Some(elapsed);
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|(_, ok)| *ok)
    }

    /// Value of the first field with this key.
    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{REPORT_HEADER}");
        let _ = writeln!(out, "command: {}", self.command);
        for (k, v) in &self.fields {
            let _ = writeln!(out, "{k}: {v}");
        }
        for (name, ok) in &self.verdicts {
            let _ = writeln!(out, "verdict.{name}: {}", if *ok { "pass" } else { "fail" });
        }
        if let Some(t) = self.timing {
            let _ = writeln!(out, "timing.seconds: {:.6}", t.as_secs_f64());
        }
        let _ = writeln!(out, "status: {}", if self.passed() { "pass" } else { "fail" });
        out
    }
}

/// `RxC [r1; r2; ...]` with rows as in the input grammar.
pub fn format_matrix(m: &RatMatrix) -> String {
    let rows: Vec<String> = (0..m.rows()).map(|r| format_row(m.row(r))).collect();
    format!("{}x{} [{}]", m.rows(), m.cols(), rows.join("; "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_in_order_with_status_last() {
        let mut r = Report::new("demo");
        r.field("apex.dim", 1);
        r.matrix("apex.basis", &RatMatrix::from_i64(1, 2, &[1, 1]));
        r.verdict("ok", true);
        assert_eq!(
            r.render(),
            "kanext-report v1\ncommand: demo\napex.dim: 1\napex.basis: 1x2 [1 1]\nverdict.ok: pass\nstatus: pass\n"
        );
        r.verdict("bad", false);
        assert!(!r.passed());
        assert_eq!(format_matrix(&RatMatrix::zeros(2, 0)), "2x0 [(); ()]");
    }
}
