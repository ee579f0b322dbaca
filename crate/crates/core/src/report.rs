//! Structured pass/fail reporting. A checker never prints or aborts; it
//! returns a `Report` whose items carry machine-readable witnesses, and the
//! caller decides what a failure means. Serialization is deterministic:
//! items keep insertion order and witnesses are built from ordered maps.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckItem {
    pub check: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub title: String,
    pub checks: Vec<CheckItem>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Report {
        Report {
            title: title.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(
        &mut self,
        check: impl Into<String>,
        status: Status,
        witness: Option<serde_json::Value>,
    ) {
        self.checks.push(CheckItem {
            check: check.into(),
            status,
            witness,
        });
    }

    pub fn push_pass(&mut self, check: impl Into<String>) {
        self.push(check, Status::Pass, None);
    }

    pub fn push_fail(&mut self, check: impl Into<String>, witness: serde_json::Value) {
        self.push(check, Status::Fail, Some(witness));
    }

    /// Records an identity check: pass when no violations were collected,
    /// fail with the (capped) violation list otherwise.
    pub fn push_violations(
        &mut self,
        check: impl Into<String>,
        violations: Vec<serde_json::Value>,
    ) {
        if violations.is_empty() {
            self.push_pass(check);
        } else {
            let total = violations.len();
            let shown: Vec<_> = violations.into_iter().take(5).collect();
            self.push_fail(
                check,
                serde_json::json!({ "violations": shown, "total_violations": total }),
            );
        }
    }

    /// Appends every item of `other`, prefixing its check names.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for item in other.checks {
            self.checks.push(CheckItem {
                check: format!("{prefix}{}", item.check),
                status: item.status,
                witness: item.witness,
            });
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn first_failure(&self) -> Option<&CheckItem> {
        self.checks.iter().find(|c| c.status == Status::Fail)
    }

    pub fn n_failed(&self) -> usize {
        self.checks
            .iter()
            .filter(|c| c.status == Status::Fail)
            .count()
    }
}

impl std::fmt::Display for Report {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{}", self.title)?;
        for item in &self.checks {
            let tag = match item.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            match (&item.witness, item.status) {
                (Some(w), Status::Fail) => writeln!(f, "  {tag}  {}  witness: {w}", item.check)?,
                _ => writeln!(f, "  {tag}  {}", item.check)?,
            }
        }
        let failed = self.n_failed();
        if failed == 0 {
            write!(f, "  => all {} checks passed", self.checks.len())
        } else {
            write!(f, "  => {failed} of {} checks FAILED", self.checks.len())
        }
    }
}

/// Knobs for the randomized layers of the checkers. Every randomized probe
/// set is derived deterministically from `seed`, so a report is a pure
/// function of (input, config).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckConfig {
    pub seed: u64,
    /// Number of random tuples drawn per identity.
    pub trials: usize,
    /// Total-degree cap for random polynomial coefficients.
    pub max_degree: u32,
    /// Largest cochain degree exercised by differential batteries.
    pub max_cochain_degree: usize,
    /// Inclusive range of the twist parameter s.
    pub s_min: i64,
    pub s_max: i64,
}

impl Default for CheckConfig {
    fn default() -> CheckConfig {
        CheckConfig {
            seed: 7,
            trials: 8,
            max_degree: 2,
            max_cochain_degree: 2,
            s_min: 0,
            s_max: 2,
        }
    }
}

impl CheckConfig {
    pub fn with_seed(seed: u64) -> CheckConfig {
        CheckConfig {
            seed,
            ..CheckConfig::default()
        }
    }

    pub fn s_range(&self) -> impl Iterator<Item = i64> + Clone {
        self.s_min..=self.s_max
    }
}
