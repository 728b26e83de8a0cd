use std::fmt::Write as _;

use spectra::format::format_number;

/// One pass/fail judgement with the value and bound it was made from.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    pub value: f64,
    pub threshold: f64,
}

/// Everything a subcommand produced, ready to print in either output mode.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunReport {
    pub command: String,
    /// Echo of the files and flags the command consumed.
    pub inputs: Vec<(String, String)>,
    pub metrics: Vec<(String, f64)>,
    /// Non-numeric listings, such as character indices or a verdict label.
    pub entries: Vec<(String, String)>,
    pub verdicts: Vec<Verdict>,
    /// Module error name, set when the command failed.
    pub error: Option<String>,
    pub message: Option<String>,
    pub exit_code: i32,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            ..Self::default()
        }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) {
        self.inputs.push((key.to_string(), value.to_string()));
    }

    /// Records a metric; non-finite values are left out of the report.
    pub fn metric(&mut self, name: impl Into<String>, value: f64) {
        if value.is_finite() {
            self.metrics.push((name.into(), value));
        }
    }

    pub fn complex(&mut self, name: &str, z: spectra::C64) {
        self.metric(format!("{name}.re"), z.re);
        self.metric(format!("{name}.im"), z.im);
    }

    pub fn entry(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.entries.push((key.into(), value.into()));
    }

    /// Adds a verdict that passes when `value <= threshold`.
    pub fn at_most(&mut self, name: impl Into<String>, value: f64, threshold: f64) {
        self.verdicts.push(Verdict {
            name: name.into(),
            passed: value <= threshold,
            value,
            threshold,
        });
    }

    /// Adds a verdict that passes when `value > threshold`.
    pub fn exceeds(&mut self, name: impl Into<String>, value: f64, threshold: f64) {
        self.verdicts.push(Verdict {
            name: name.into(),
            passed: value > threshold,
            value,
            threshold,
        });
    }

    pub fn all_passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    /// Sets the exit code from the verdicts: 0 iff every verdict passed.
    pub fn settle(mut self) -> Self {
        self.exit_code = if self.all_passed() { 0 } else { 1 };
        self
    }

    pub fn failed(command: &str, error: &str, message: String, exit_code: i32) -> Self {
        Self {
            command: command.to_string(),
            error: Some(error.to_string()),
            message: Some(message),
            exit_code,
            ..Self::default()
        }
    }

    /// `key=value` lines, one fact per line, stable across runs.
    pub fn porcelain(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command={}", self.command);
        for (k, v) in &self.inputs {
            let _ = writeln!(out, "input.{k}={v}");
        }
        for (k, v) in &self.metrics {
            let _ = writeln!(out, "metric.{k}={}", format_number(*v));
        }
        for (k, v) in &self.entries {
            let _ = writeln!(out, "entry.{k}={v}");
        }
        for v in &self.verdicts {
            let status = if v.passed { "pass" } else { "fail" };
            let _ = writeln!(out, "verdict.{}={status}", v.name);
            let _ = writeln!(out, "verdict.{}.value={}", v.name, format_number(v.value));
            let _ = writeln!(out, "verdict.{}.threshold={}", v.name, format_number(v.threshold));
        }
        if let Some(e) = &self.error {
            let _ = writeln!(out, "error={e}");
        }
        if let Some(m) = &self.message {
            let _ = writeln!(out, "message={}", m.replace('\n', " "));
        }
        let _ = writeln!(out, "exit_code={}", self.exit_code);
        out
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "spectra {}", self.command);
        let width = self
            .metrics
            .iter()
            .map(|(k, _)| k.len())
            .chain(self.entries.iter().map(|(k, _)| k.len()))
            .chain(self.inputs.iter().map(|(k, _)| k.len()))
            .max()
            .unwrap_or(0);
        for (k, v) in &self.inputs {
            let _ = writeln!(out, "  {k:<width$}  {v}");
        }
        if !self.entries.is_empty() {
            out.push('\n');
            for (k, v) in &self.entries {
                let _ = writeln!(out, "  {k:<width$}  {v}");
            }
        }
        if !self.metrics.is_empty() {
            out.push('\n');
            for (k, v) in &self.metrics {
                let _ = writeln!(out, "  {k:<width$}  {}", format_number(*v));
            }
        }
        if !self.verdicts.is_empty() {
            out.push('\n');
            let vw = self.verdicts.iter().map(|v| v.name.len()).max().unwrap_or(0);
            for v in &self.verdicts {
                let status = if v.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(
                    out,
                    "  [{status}] {:<vw$}  value {}  bound {}",
                    v.name,
                    format_number(v.value),
                    format_number(v.threshold)
                );
            }
        }
        if let Some(e) = &self.error {
            let _ = writeln!(out, "\nerror: {e}");
        }
        if let Some(m) = &self.message {
            let _ = writeln!(out, "{m}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_code_follows_verdicts() {
        let mut r = RunReport::new("x");
        r.at_most("a", 1.0, 2.0);
        assert_eq!(r.clone().settle().exit_code, 0);
        r.at_most("b", 3.0, 2.0);
        assert_eq!(r.settle().exit_code, 1);
    }

    #[test]
    fn nan_verdict_fails() {
        let mut r = RunReport::new("x");
        r.at_most("a", f64::NAN, 1.0);
        assert_eq!(r.settle().exit_code, 1);
    }

    #[test]
    fn non_finite_metrics_are_dropped() {
        let mut r = RunReport::new("x");
        r.metric("inf", f64::INFINITY);
        r.metric("one", 1.0);
        assert_eq!(r.metrics, vec![("one".to_string(), 1.0)]);
    }

    #[test]
    fn porcelain_layout() {
        let mut r = RunReport::new("demo");
        r.input("file", "a.mat");
        r.metric("residual", 0.5);
        r.at_most("residual", 0.5, 1.0);
        let text = r.settle().porcelain();
        assert_eq!(
            text,
            "command=demo\ninput.file=a.mat\nmetric.residual=5.0000000000000000e-1\n\
             verdict.residual=pass\nverdict.residual.value=5.0000000000000000e-1\n\
             verdict.residual.threshold=1.0000000000000000e0\nexit_code=0\n"
        );
    }
}
