//! JSON documents exchanged by the command-line tool.

use crate::engine::{
    Certificate, ConditionReport, Existence, HomogenizationRecord, Mode, SumCheck,
    WitnessVerification,
};
use crate::partition::Partition;
use crate::sd::{DecisionTraceEntry, DerivedTables};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDetail {
    /// The padded union witness before flattening (exact mode) or the witness itself (weak mode).
    pub weak_witness: Partition,
    pub homogenization: Option<HomogenizationRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDocument {
    pub mode: Mode,
    pub verdict: Existence,
    pub witness: Option<Partition>,
    #[serde(rename = "S")]
    pub s_set: Vec<usize>,
    #[serde(rename = "Delta")]
    pub delta: Vec<usize>,
    pub tables: DerivedTables,
    pub condition_reports: Vec<ConditionReport>,
    pub sum_check: Option<SumCheck>,
    pub verification: Option<WitnessVerification>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_detail: Option<WitnessDetail>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<DecisionTraceEntry>>,
}

impl CertificateDocument {
    pub fn from_certificate(cert: &Certificate, with_trace: bool, with_detail: bool) -> Self {
        let witness_detail = if with_detail {
            cert.weak_witness
                .clone()
                .or_else(|| cert.witness.clone())
                .map(|weak_witness| WitnessDetail {
                    weak_witness,
                    homogenization: cert.homogenization.clone(),
                })
        } else {
            None
        };
        CertificateDocument {
            mode: cert.mode,
            verdict: cert.verdict,
            witness: cert.witness.clone(),
            s_set: cert.sd.s_set.clone(),
            delta: cert.sd.delta.clone(),
            tables: cert.tables.clone(),
            condition_reports: cert.reports.clone(),
            sum_check: cert.sum_check,
            verification: cert.witness_verification.clone(),
            witness_detail,
            trace: with_trace.then(|| cert.sd.trace.clone()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }
}
