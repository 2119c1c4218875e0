//! Machine-readable verification report.
//!
//! One record per step: `{name, computed, expected, tolerance, pass, note}`,
//! all values as strings. `overall` is `"PASS"` iff every step passes.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub name: String,
    pub computed: String,
    pub expected: Option<String>,
    pub tolerance: Option<String>,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// A step that misses its target, with whatever diagnosis could be computed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Deviation {
    pub step: String,
    pub expected: String,
    pub computed: String,
    pub diagnosis: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub example: String,
    pub steps: Vec<Step>,
    pub deviations: Vec<Deviation>,
    pub notes: Vec<String>,
    pub overall: String,
    pub first_failure: Option<String>,
    #[serde(default)]
    pub details: serde_json::Value,
}

impl Report {
    pub fn new(example: impl Into<String>) -> Self {
        Report {
            example: example.into(),
            steps: Vec::new(),
            deviations: Vec::new(),
            notes: Vec::new(),
            overall: "PASS".into(),
            first_failure: None,
            details: serde_json::Value::Null,
        }
    }

    pub fn push(&mut self, step: Step) {
        if !step.pass {
            if self.first_failure.is_none() {
                self.first_failure = Some(step.name.clone());
            }
            self.overall = "FAIL".into();
        }
        self.steps.push(step);
    }

    /// Record a step with no expected value.
    pub fn info(&mut self, name: &str, computed: impl Into<String>) {
        self.push(Step {
            name: name.into(),
            computed: computed.into(),
            expected: None,
            tolerance: None,
            pass: true,
            note: None,
        });
    }

    pub fn exact(&mut self, name: &str, computed: impl ToString, expected: Option<&str>) -> bool {
        let computed = computed.to_string();
        let pass = expected.is_none_or(|e| e == computed);
        self.push(Step {
            name: name.into(),
            computed,
            expected: expected.map(str::to_string),
            tolerance: expected.map(|_| "exact".into()),
            pass,
            note: None,
        });
        pass
    }

    /// Compare decimals: |computed - expected| <= tol.
    pub fn approx(&mut self, name: &str, computed: f64, digits: usize, expected: Option<f64>, tol: f64) -> bool {
        let pass = expected.is_none_or(|e| (computed - e).abs() <= tol);
        self.push(Step {
            name: name.into(),
            computed: format!("{computed:.digits$}"),
            expected: expected.map(|e| e.to_string()),
            tolerance: expected.map(|_| tol.to_string()),
            pass,
            note: expected.map(|e| format!("delta {:+.2e}", computed - e)),
        });
        pass
    }

    pub fn fail(&mut self, name: &str, msg: impl Into<String>) {
        self.push(Step {
            name: name.into(),
            computed: msg.into(),
            expected: None,
            tolerance: None,
            pass: false,
            note: None,
        });
    }

    pub fn step(&self, name: &str) -> Option<&Step> {
        self.steps.iter().find(|s| s.name == name)
    }

    pub fn passed(&self) -> bool {
        self.overall == "PASS"
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn render(&self) -> String {
        let mut out = format!("{}\n", self.example);
        for s in &self.steps {
            let mut line = format!("  [{}] {}: {}", if s.pass { "ok" } else { "FAIL" }, s.name, s.computed);
            if let Some(e) = &s.expected {
                line += &format!(" (expected {e}");
                if let Some(t) = s.tolerance.as_deref().filter(|t| *t != "exact") {
                    line += &format!(" +/- {t}");
                }
                line += ")";
            }
            if let Some(n) = &s.note {
                line += &format!("  {n}");
            }
            out += &line;
            out.push('\n');
        }
        for n in &self.notes {
            out += &format!("  note: {n}\n");
        }
        for d in &self.deviations {
            out += &format!("  deviation in {}: computed {}, expected {}\n", d.step, d.computed, d.expected);
            for x in &d.diagnosis {
                out += &format!("    {x}\n");
            }
        }
        out += &format!("overall: {}", self.overall);
        if let Some(f) = &self.first_failure {
            out += &format!(" (first failing step: {f})");
        }
        out.push('\n');
        out
    }
}
