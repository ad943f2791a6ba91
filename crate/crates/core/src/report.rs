//! Reports: named results, pass/fail checks and warnings, rendered as JSON or
//! plain text.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::abelian::{GradedGroup, GroupDescriptor, Z2Graded};

/// A named comparison. A failing check always carries both sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub expected: String,
    pub actual: String,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Self {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        Self {
            name: name.into(),
            pass: expected == actual,
            expected,
            actual,
            detail: String::new(),
        }
    }

    /// A check whose outcome is decided by the caller.
    pub fn with_outcome(name: impl Into<String>, pass: bool, expected: impl ToString, actual: impl ToString) -> Self {
        Self {
            name: name.into(),
            pass,
            expected: expected.to_string(),
            actual: actual.to_string(),
            detail: String::new(),
        }
    }

    pub fn detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "name": self.name,
            "pass": self.pass,
            "expected": self.expected,
            "actual": self.actual,
        });
        if !self.detail.is_empty() {
            v["detail"] = json!(self.detail);
        }
        v
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReportValue {
    Graded(GradedGroup),
    Pair(Z2Graded),
    Group(GroupDescriptor),
    Flag(bool),
    Count(u64),
    Text(String),
    Json(Value),
}

impl ReportValue {
    pub fn to_json(&self) -> Value {
        match self {
            Self::Graded(g) => g.to_json(),
            Self::Pair(p) => p.to_json(),
            Self::Group(g) => g.to_json(),
            Self::Flag(b) => json!(b),
            Self::Count(n) => json!(n),
            Self::Text(s) => json!(s),
            Self::Json(v) => v.clone(),
        }
    }

    fn inline(&self) -> Option<String> {
        match self {
            Self::Group(g) => Some(g.to_string()),
            Self::Flag(b) => Some(b.to_string()),
            Self::Count(n) => Some(n.to_string()),
            Self::Text(s) => Some(s.clone()),
            Self::Json(v) => inline(v),
            Self::Graded(_) | Self::Pair(_) => None,
        }
    }

    fn render(&self, out: &mut String, indent: &str) {
        match self {
            Self::Graded(g) => {
                let lo = g.min_degree().map_or(0, |m| m.min(0));
                let hi = g.computed_through().or(g.max_degree()).unwrap_or(0);
                for n in lo..=hi {
                    let _ = writeln!(out, "{indent}H_{n} = {}", g.group(n));
                }
                if g.computed_through().is_none() {
                    let _ = writeln!(out, "{indent}H_n = 0 for n > {hi}");
                }
            }
            Self::Pair(p) => {
                let _ = writeln!(out, "{indent}K_0 = {}", p.even);
                let _ = writeln!(out, "{indent}K_1 = {}", p.odd);
            }
            Self::Group(g) => {
                let _ = writeln!(out, "{indent}{g}");
            }
            Self::Flag(b) => {
                let _ = writeln!(out, "{indent}{b}");
            }
            Self::Count(n) => {
                let _ = writeln!(out, "{indent}{n}");
            }
            Self::Text(s) => {
                let _ = writeln!(out, "{indent}{s}");
            }
            Self::Json(v) => render_value(v, out, indent),
        }
    }
}

fn inline(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Object(o) if o.contains_key("free_rank") && o.contains_key("torsion") => {
            GroupDescriptor::from_json(v).ok().map(|g| g.to_string())
        }
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            Some(items.iter().filter_map(inline).collect::<Vec<_>>().join(", "))
        }
        _ => None,
    }
}

fn render_value(v: &Value, out: &mut String, indent: &str) {
    if let Some(s) = inline(v) {
        let _ = writeln!(out, "{indent}{s}");
        return;
    }
    let deeper = format!("{indent}  ");
    match v {
        Value::Object(o) => {
            for (k, item) in o {
                match inline(item) {
                    Some(s) => {
                        let _ = writeln!(out, "{indent}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{indent}{k}:");
                        render_value(item, out, &deeper);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                let graded = item
                    .get("degree")
                    .zip(item.get("group"))
                    .and_then(|(d, g)| Some((d.as_i64()?, inline(g)?)));
                match graded {
                    Some((d, g)) => {
                        let _ = writeln!(out, "{indent}H_{d} = {g}");
                    }
                    None => render_value(item, out, indent),
                }
            }
        }
        _ => unreachable!("scalars render inline"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub input: Value,
    pub results: Vec<(String, ReportValue)>,
    pub checks: Vec<Check>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(input: Value) -> Self {
        Self {
            input,
            results: Vec::new(),
            checks: Vec::new(),
            warnings: Vec::new(),
        }
    }

    pub fn result(&mut self, name: impl Into<String>, value: ReportValue) {
        self.results.push((name.into(), value));
    }

    pub fn check(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn checks(&mut self, checks: impl IntoIterator<Item = Check>) {
        self.checks.extend(checks);
    }

    pub fn warn(&mut self, warning: impl Into<String>) {
        self.warnings.push(warning.into());
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> Value {
        let results: Map<String, Value> = self.results.iter().map(|(k, v)| (k.clone(), v.to_json())).collect();
        json!({
            "input": self.input,
            "results": results,
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
            "warnings": self.warnings,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (name, value) in &self.results {
            match value.inline() {
                Some(v) => {
                    let _ = writeln!(out, "{name}: {v}");
                }
                None => {
                    let _ = writeln!(out, "{name}:");
                    value.render(&mut out, "  ");
                }
            }
        }
        if !self.checks.is_empty() {
            let passed = self.checks.iter().filter(|c| c.pass).count();
            let _ = writeln!(out, "checks: {passed}/{} passed", self.checks.len());
            for c in &self.checks {
                let mark = if c.pass { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "  [{mark}] {}", c.name);
                if !c.pass {
                    let _ = writeln!(out, "         expected: {}", c.expected);
                    let _ = writeln!(out, "         actual:   {}", c.actual);
                }
                if !c.pass && !c.detail.is_empty() {
                    let _ = writeln!(out, "         {}", c.detail);
                }
            }
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        out
    }
}

pub fn serialize(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.to_json()).expect("JSON values serialize");
            s.push('\n');
            s
        }
        Format::Text => report.to_text(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::FgAbGroup;

    #[test]
    fn check_outcomes() {
        assert!(Check::new("same", "Z/2", "Z/2").pass);
        let c = Check::new("different", "Z/2", "0");
        assert!(!c.pass);
        assert_eq!(
            c.to_json(),
            json!({"name": "different", "pass": false, "expected": "Z/2", "actual": "0"})
        );
    }

    #[test]
    fn exit_code_follows_checks() {
        let mut r = Report::new(json!({"cmd": "x"}));
        assert_eq!(r.exit_code(), 0);
        r.check(Check::new("a", 1, 1));
        assert_eq!(r.exit_code(), 0);
        r.check(Check::new("b", 1, 2));
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn json_layout_is_ordered() {
        let mut r = Report::new(json!("in"));
        r.result("z_first", ReportValue::Group(FgAbGroup::cyclic(4).into()));
        r.result("a_second", ReportValue::Flag(true));
        let s = serialize(&r, Format::Json);
        assert!(s.find("z_first").unwrap() < s.find("a_second").unwrap());
        let v: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(
            v["results"]["z_first"],
            json!({"free_rank": 0, "torsion": [{"order": 4, "mult": 1}]})
        );
        assert_eq!(v["checks"], json!([]));
    }

    #[test]
    fn text_rendering() {
        let mut r = Report::new(Value::Null);
        let mut g = GradedGroup::truncated(2);
        g.insert(1, FgAbGroup::cyclic(2));
        r.result("homology", ReportValue::Graded(g));
        r.check(Check::new("bad", "Z", "0"));
        r.warn("careful");
        let t = r.to_text();
        assert!(t.contains("  H_0 = 0\n  H_1 = Z/2\n  H_2 = 0\n"));
        assert!(t.contains("[FAIL] bad"));
        assert!(t.contains("expected: Z"));
        assert!(t.contains("warning: careful"));
    }

    #[test]
    fn scalar_results_stay_on_one_line() {
        let mut r = Report::new(Value::Null);
        r.result("count", ReportValue::Count(11));
        r.result("ring", ReportValue::Text("Z".into()));
        r.result("euler", ReportValue::Json(json!(-2)));
        assert_eq!(r.to_text(), "count: 11\nring: Z\neuler: -2\n");
    }

    #[test]
    fn json_records_render_as_text() {
        let mut r = Report::new(Value::Null);
        let g = GroupDescriptor::from(FgAbGroup::cyclic(2));
        r.result(
            "record",
            ReportValue::Json(json!({
                "degree": 2,
                "simple": true,
                "group": g.to_json(),
                "homology": [{"degree": 1, "group": g.to_json()}],
                "primes": [3, 5],
            })),
        );
        let t = r.to_text();
        assert!(
            t.contains("  degree: 2\n  simple: true\n  group: Z/2\n  homology:\n    H_1 = Z/2\n  primes: 3, 5\n"),
            "{t}"
        );
    }
}
