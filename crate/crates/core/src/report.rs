use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Compared values fell within tolerance where a strict inequality was claimed.
    Indistinguishable,
}

/// One named claim evaluated by a verifier.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub margin: Option<f64>,
}

impl Check {
    pub fn new(name: impl Into<String>, status: CheckStatus, margin: Option<f64>) -> Self {
        Self {
            name: name.into(),
            status,
            margin,
        }
    }

    pub fn from_bool(name: impl Into<String>, ok: bool, margin: Option<f64>) -> Self {
        let status = if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        Self::new(name, status, margin)
    }

    /// Strict claim `margin > 0`, with `|margin| <= tol` reported as indistinguishable.
    pub fn strict(name: impl Into<String>, margin: f64, tol: f64) -> Self {
        let status = if margin > tol {
            CheckStatus::Pass
        } else if margin.abs() <= tol {
            CheckStatus::Indistinguishable
        } else {
            CheckStatus::Fail
        };
        Self::new(name, status, Some(margin))
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(Check::passed)
}
