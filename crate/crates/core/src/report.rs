//! Check reports and their JSON / Markdown forms.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Quoted formulas a report can point to.
pub const ANCHORS: &[&str] = &[
    "S_{12}S_{23}S_{12}",
    "S^2-(q-q^{-1})S",
    "S L_2S L_2- L_2S L_2S",
    "\\mathrm{Tr}_q(A)=\\mathrm{Tr}(DA)",
    "\\hat m=\\frac{1-q^{-2m}}{1-q^{-2}}",
    "L^n - \\sigma_1 L^{n-1}",
    "\\hat m \\sigma_m - s_1\\sigma_{m-1}",
    "x_{m}- \\sigma_1(\\mu) x_{m-1}",
    "generates the ideal",
    "(1-q^{-2})^{\\ell-1}",
    "\\sum_{j=1}^k C_j({\\bf n},q^{-2},\\mu)\\mu_j^m",
    "\\mu+\\frac{t}{1-q^{-2}}",
    "returns \\hat n",
    "\\lambda_{j,i}=\\mu_j q^{-2(i-1)}",
    "\\chi^\\lambda(s_m)=\\vartheta_m",
    "\\chi_{t,h}({\\bf n})(s_m)",
    "the shift $L\\mapsto L-\\frac{t}{1-q^{-2}}$",
    "f_a(L)=L^m+a_{m-1}L^{m-1}",
    "quotient algebra … is flat",
    "relations (PR)/(TrR)",
    "the q=1 KKS corollary",
    "\\hat n_1\\mu_1+\\hat n_2\\mu_2+t \\hat n_1\\hat n_2",
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub params: Value,
    pub ok: bool,
    #[serde(default)]
    pub witnesses: Vec<String>,
    #[serde(default)]
    pub data: Value,
    pub anchor: String,
    pub seed: u64,
    /// Wall time; ignored by [`CheckReport::without_timing`].
    pub elapsed_ms: u64,
}

impl CheckReport {
    pub fn new(check: &str, params: Value, anchor: &str, seed: u64) -> Self {
        CheckReport {
            check: check.into(),
            params,
            ok: false,
            witnesses: Vec::new(),
            data: Value::Null,
            anchor: anchor.into(),
            seed,
            elapsed_ms: 0,
        }
    }

    pub fn without_timing(&self) -> Self {
        CheckReport {
            elapsed_ms: 0,
            ..self.clone()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Markdown,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "markdown" | "md" => Ok(Format::Markdown),
            _ => Err(format!("unknown format {s:?}")),
        }
    }
}

pub fn emit(reports: &[CheckReport], format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(reports).expect("reports serialize"),
        Format::Markdown => markdown(reports),
    }
}

pub fn parse_json(text: &str) -> serde_json::Result<Vec<CheckReport>> {
    serde_json::from_str(text)
}

fn compact(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Object(m) => m
            .iter()
            .map(|(k, x)| match x {
                Value::String(s) => format!("{k}={s}"),
                other => format!("{k}={other}"),
            })
            .collect::<Vec<_>>()
            .join(" "),
        other => other.to_string(),
    }
}

fn cell(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}

fn markdown(reports: &[CheckReport]) -> String {
    let mut out = String::new();
    out.push_str("| check | params | ok | ms |\n|---|---|---|---|\n");
    for r in reports {
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} |",
            cell(&r.check),
            cell(&compact(&r.params)),
            if r.ok { "✓" } else { "✗" },
            r.elapsed_ms
        );
    }
    for r in reports {
        if let (Some(qp), Some(cp)) = (
            r.data.get("quantum_profile").and_then(Value::as_array),
            r.data.get("classical_profile").and_then(Value::as_array),
        ) {
            let _ = writeln!(out, "\n### {} {}\n", r.check, cell(&compact(&r.params)));
            out.push_str("| degree | quantum | classical | |\n|---|---|---|---|\n");
            for e in 0..qp.len().max(cp.len()) {
                let (a, b) = (qp.get(e), cp.get(e));
                let show = |x: Option<&Value>| x.map_or("-".to_string(), |v| v.to_string());
                let _ = writeln!(out, "| {e} | {} | {} | {} |", show(a), show(b), if a == b { "✓" } else { "✗" });
            }
        }
        if let Some(rows) = r.data.get("table").and_then(Value::as_array) {
            let _ = writeln!(out, "\n### {} {}\n", r.check, cell(&compact(&r.params)));
            out.push_str("| m | value |\n|---|---|\n");
            for row in rows {
                let m = row.get("m").map(Value::to_string).unwrap_or_default();
                let v = row.get("value").and_then(Value::as_str).unwrap_or_default();
                let _ = writeln!(out, "| {m} | {} |", cell(v));
            }
        }
        if !r.witnesses.is_empty() {
            let _ = writeln!(out, "\n{} witnesses:\n", r.check);
            for w in &r.witnesses {
                let _ = writeln!(out, "- `{w}`");
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> CheckReport {
        let mut r = CheckReport::new("ybe", json!({"n": 2}), ANCHORS[0], 7);
        r.ok = true;
        r.elapsed_ms = 12;
        r
    }

    #[test]
    fn json_round_trip() {
        let mut flat = CheckReport::new("orbit-flatness", json!({"n": 2}), ANCHORS[18], 7);
        flat.data = json!({"quantum_profile": [1, 4, 9], "classical_profile": [1, 4, 9]});
        flat.witnesses.push("none".into());
        let reports = vec![sample(), flat];
        let text = emit(&reports, Format::Json);
        assert_eq!(parse_json(&text).unwrap(), reports);
    }

    #[test]
    fn single_report_is_one_row() {
        let md = emit(&[sample()], Format::Markdown);
        assert_eq!(md.lines().filter(|l| l.starts_with("| ybe")).count(), 1);
        assert!(md.contains("✓"));
    }

    #[test]
    fn profile_table() {
        let mut r = CheckReport::new("orbit-flatness", json!({}), ANCHORS[18], 0);
        r.data = json!({"quantum_profile": [1, 4, 9], "classical_profile": [1, 4, 8]});
        let md = emit(&[r], Format::Markdown);
        assert!(md.contains("| 1 | 4 | 4 | ✓ |"));
        assert!(md.contains("| 2 | 9 | 8 | ✗ |"));
    }

    #[test]
    fn timing_is_ignored() {
        let mut a = sample();
        let b = sample();
        a.elapsed_ms = 999;
        assert_ne!(a, b);
        assert_eq!(a.without_timing(), b.without_timing());
    }
}
