//! Verification reports: named check, echoed parameters, verdict, and the
//! first mismatch witness when a check fails.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use crate::series::{QMismatch, XQMismatch};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Minimal-degree mismatch for a failing check. For univariate series the
/// x-degree is 0; for set comparisons the strings describe the offending
/// element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub x_deg: i64,
    pub q_deg: i64,
    pub lhs: String,
    pub rhs: String,
}

impl From<QMismatch> for Witness {
    fn from(m: QMismatch) -> Self {
        Witness {
            x_deg: 0,
            q_deg: m.q_deg,
            lhs: m.lhs.to_string(),
            rhs: m.rhs.to_string(),
        }
    }
}

impl From<XQMismatch> for Witness {
    fn from(m: XQMismatch) -> Self {
        Witness {
            x_deg: m.x_deg as i64,
            q_deg: m.q_deg,
            lhs: m.lhs.to_string(),
            rhs: m.rhs.to_string(),
        }
    }
}

pub type Params = BTreeMap<String, serde_json::Value>;

/// Outcome of one named verification.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub params: Params,
    pub status: Status,
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convention: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl VerificationReport {
    /// Build a report from an optional witness: no witness means pass.
    pub fn from_witness(
        check: &str,
        params: Params,
        witness: Option<Witness>,
        started: Instant,
    ) -> Self {
        VerificationReport {
            check: check.to_string(),
            params,
            status: if witness.is_none() {
                Status::Pass
            } else {
                Status::Fail
            },
            witness,
            convention: None,
            elapsed_ms: Some(started.elapsed().as_millis() as u64),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn with_convention(mut self, convention: serde_json::Value) -> Self {
        self.convention = Some(convention);
        self
    }

    /// Drop the timing field (used by deterministic output modes).
    pub fn strip_timing(&mut self) {
        self.elapsed_ms = None;
    }
}

/// Assemble a parameter map from key/value pairs.
pub fn params(kv: &[(&str, serde_json::Value)]) -> Params {
    kv.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}
