use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Recorded for information; never affects the overall status.
    Info,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    /// The statement the check tests, in a few words.
    pub anchor: String,
    pub status: Status,
    pub witness: Value,
    /// Schwartz-Zippel failure bound for probabilistic checks.
    pub bound: Option<String>,
    pub seed: u64,
    pub runtime_ms: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfigRecord {
    pub suite: String,
    pub algebra: Option<String>,
    pub family: Option<String>,
    pub rank: Option<usize>,
    pub composition: Option<Vec<usize>>,
    pub central: Option<usize>,
    pub levi: Option<String>,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub status: Status,
    pub passed: usize,
    pub failed: usize,
    pub runtime_ms: Option<u64>,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub config: ConfigRecord,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.summary.status == Status::Pass
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per check, then the overall status.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let c = &self.config;
        out.push_str(&format!("suite {}", c.suite));
        if let Some(a) = &c.algebra {
            out.push_str(&format!(" on {a}"));
        }
        if let Some(l) = &c.levi {
            out.push_str(&format!(" (levi {l})"));
        }
        out.push_str(&format!(", trials {}, seed {}\n", c.trials, c.seed));
        let w = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for ch in &self.checks {
            let tag = match ch.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Info => "info",
            };
            out.push_str(&format!("  [{tag}] {:<w$}  {}\n", ch.name, ch.anchor));
            if ch.status != Status::Pass {
                out.push_str(&format!("         {}\n", compact(&ch.witness)));
            }
        }
        let s = &self.summary;
        out.push_str(&format!(
            "{}: {} passed, {} failed\n",
            if self.passed() { "PASS" } else { "FAIL" },
            s.passed,
            s.failed
        ));
        out
    }
}

fn compact(v: &Value) -> String {
    let s = v.to_string();
    if s.chars().count() > 300 {
        format!("{}...", s.chars().take(300).collect::<String>())
    } else {
        s
    }
}
