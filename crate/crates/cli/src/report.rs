//! Report model shared by all commands and its text/JSON/CSV renderings.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;

use obtsim_core::primitives::ResourceCounts;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Rounds to 10 significant digits, the precision every number is reported at.
pub fn sig10(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.9e}").parse().unwrap_or(x)
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub experiment: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub protocol: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<Vec<f64>>,
}

/// One reported value. Rows are built through [`ResultRow::exact`] or
/// [`ResultRow::estimated`], so each carries either the exact flag or an interval.
#[derive(Debug, Clone, Serialize)]
pub struct ResultRow {
    pub label: String,
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ci95: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub passed: Option<bool>,
}

impl ResultRow {
    pub fn exact(label: impl Into<String>, value: f64) -> Self {
        Self {
            label: label.into(),
            value: sig10(value),
            exact: Some(true),
            ci95: None,
            reference: None,
            theta: None,
            passed: None,
        }
    }

    pub fn estimated(label: impl Into<String>, value: f64, low: f64, high: f64) -> Self {
        Self {
            label: label.into(),
            value: sig10(value),
            exact: None,
            ci95: Some([sig10(low), sig10(high)]),
            reference: None,
            theta: None,
            passed: None,
        }
    }

    pub fn with_reference(mut self, reference: f64) -> Self {
        self.reference = Some(sig10(reference));
        self
    }

    pub fn with_theta(mut self, theta: f64) -> Self {
        self.theta = Some(sig10(theta));
        self
    }

    pub fn with_passed(mut self, passed: bool) -> Self {
        self.passed = Some(passed);
        self
    }

    pub fn is_exact(&self) -> bool {
        self.exact == Some(true)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Reference {
    pub label: String,
    pub value: f64,
}

impl Reference {
    pub fn new(label: impl Into<String>, value: f64) -> Self {
        Self {
            label: label.into(),
            value: sig10(value),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub params: Params,
    pub results: Vec<ResultRow>,
    /// Resources consumed by a single protocol run.
    pub transcript: Option<ResourceCounts>,
    pub references: Vec<Reference>,
}

impl RunReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report is serializable");
                s.push('\n');
                s
            }
            Format::Csv => self.to_csv(),
            Format::Text => self.to_text(),
        }
    }

    fn to_csv(&self) -> String {
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        let mut out = String::from("label,theta,value,exact,ci95_low,ci95_high,reference\n");
        for r in &self.results {
            let [lo, hi] = r.ci95.map_or([None, None], |[l, h]| [Some(l), Some(h)]);
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                r.label,
                opt(r.theta),
                r.value,
                r.is_exact(),
                opt(lo),
                opt(hi),
                opt(r.reference)
            );
        }
        out
    }

    fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "obtsim {}", self.command);
        let p = &self.params;
        let mut params = Vec::new();
        if let Some(e) = &p.experiment {
            params.push(format!("experiment={e}"));
        }
        if let Some(e) = &p.protocol {
            params.push(format!("protocol={e}"));
        }
        if let Some(n) = p.trials {
            params.push(format!("trials={n}"));
        }
        if let Some(s) = p.seed {
            params.push(format!("seed={s}"));
        }
        if let Some(t) = p.theta {
            params.push(format!("theta={t}"));
        }
        if let Some(g) = &p.grid {
            params.push(format!("points={}", g.len()));
        }
        if !params.is_empty() {
            let _ = writeln!(out, "  {}", params.join("  "));
        }
        let _ = writeln!(out);

        let width = self
            .results
            .iter()
            .map(|r| r.label.len())
            .max()
            .unwrap_or(5)
            .max(5);
        for r in &self.results {
            let status = match r.passed {
                Some(true) => "PASS ",
                Some(false) => "FAIL ",
                None => "",
            };
            let precision = match r.ci95 {
                Some([lo, hi]) => format!("95% CI [{lo}, {hi}]"),
                None => "exact".to_string(),
            };
            let reference = r
                .reference
                .map(|x| format!("  reference {x}"))
                .unwrap_or_default();
            let _ = writeln!(
                out,
                "{status}{:<width$}  {:<14}  {precision}{reference}",
                r.label, r.value
            );
        }

        if let Some(t) = &self.transcript {
            let _ = writeln!(
                out,
                "\nper run: nlbox_uses={} ot_uses={} classical_bits={} qubits_sent={}",
                t.nlbox_uses, t.ot_uses, t.classical_bits, t.qubits_sent
            );
        }
        if !self.references.is_empty() {
            let _ = writeln!(out, "\nreference values:");
            for r in &self.references {
                let _ = writeln!(out, "  {:<width$}  {}", r.label, r.value);
            }
        }
        out
    }
}
