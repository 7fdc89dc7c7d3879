//! Verification findings shared by the lemma, sequence and Cousin verifiers.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Reported quantity with nothing asserted.
    Info,
}

#[derive(Clone, Debug, Serialize)]
pub struct Finding {
    pub claim: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<u32>,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Finding {
    pub fn new(claim: impl Into<String>, status: Status, detail: impl Into<String>) -> Finding {
        Finding { claim: claim.into(), status, level: None, detail: detail.into(), witness: None }
    }

    pub fn check(claim: impl Into<String>, ok: bool, detail: impl Into<String>) -> Finding {
        Finding::new(claim, if ok { Status::Pass } else { Status::Fail }, detail)
    }

    pub fn info(claim: impl Into<String>, detail: impl Into<String>) -> Finding {
        Finding::new(claim, Status::Info, detail)
    }

    pub fn at(mut self, p: u32) -> Finding {
        self.level = Some(p);
        self
    }

    pub fn with_witness(mut self, w: Option<String>) -> Finding {
        self.witness = w;
        self
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

pub fn any_failed(findings: &[Finding]) -> bool {
    findings.iter().any(Finding::failed)
}
