//! Verification report types and their JSON projections.

use crate::kernel::Scalar;
use serde::Serialize;

/// One determined q-coefficient identity: the assembled coefficient at `q`
/// must equal the basis-predicted combination of the leading coefficients.
#[derive(Clone, Debug)]
pub struct IdentityRow {
    pub q: i64,
    /// Combination coefficients over the leading q^0..q^{d-1} coefficients.
    pub coefficients: Vec<Scalar>,
    pub display: String,
    pub matched: bool,
}

/// Per-case outcome.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub case: String,
    pub theorem: String,
    pub weight_used: u32,
    pub lambdas: Vec<String>,
    pub residual_zero: bool,
    pub identity_table: Vec<IdentityRow>,
    pub negative_control_failed_as_expected: bool,
    pub q_order: u32,
    pub degree_cap: u16,
    pub elapsed_ms: u128,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn pass(&self) -> bool {
        self.residual_zero
            && self.negative_control_failed_as_expected
            && !self.identity_table.is_empty()
            && self.identity_table.iter().all(|r| r.matched)
    }

    pub fn to_json(&self) -> JsonReport {
        JsonReport {
            case: self.case.clone(),
            weight: self.weight_used,
            lambdas: self.lambdas.clone(),
            residual_zero: self.residual_zero,
            identity_table: self
                .identity_table
                .iter()
                .map(|r| JsonIdentityRow {
                    q: r.q,
                    paper_coefficient: r.display.clone(),
                    matched: r.matched,
                })
                .collect(),
            negative_control_failed_as_expected: self.negative_control_failed_as_expected,
            q_order: self.q_order,
            degree_cap: self.degree_cap,
            elapsed_ms: self.elapsed_ms,
            notes: self.notes.clone(),
        }
    }
}

/// Stable JSON schema for one case.
#[derive(Serialize)]
pub struct JsonReport {
    pub case: String,
    pub weight: u32,
    pub lambdas: Vec<String>,
    pub residual_zero: bool,
    pub identity_table: Vec<JsonIdentityRow>,
    pub negative_control_failed_as_expected: bool,
    pub q_order: u32,
    pub degree_cap: u16,
    pub elapsed_ms: u128,
    pub notes: Vec<String>,
}

#[derive(Serialize)]
pub struct JsonIdentityRow {
    pub q: i64,
    pub paper_coefficient: String,
    pub matched: bool,
}

/// Aggregated suite outcome.
pub struct SuiteReport {
    pub profile: String,
    pub reports: Vec<VerificationReport>,
    pub crosschecks: Vec<(u32, bool)>,
    pub agw_pass: bool,
    pub eisenstein_golden_pass: bool,
    pub numeric_laws_pass: bool,
    pub all_pass: bool,
    pub elapsed_ms: u128,
}

impl SuiteReport {
    pub fn to_json(&self) -> SuiteJson {
        SuiteJson {
            profile: self.profile.clone(),
            reports: self.reports.iter().map(|r| r.to_json()).collect(),
            crosschecks: self
                .crosschecks
                .iter()
                .map(|(k, p)| CrosscheckJson { k: *k, pass: *p })
                .collect(),
            agw_pass: self.agw_pass,
            eisenstein_golden_pass: self.eisenstein_golden_pass,
            numeric_laws_pass: self.numeric_laws_pass,
            all_pass: self.all_pass,
            elapsed_ms: self.elapsed_ms,
        }
    }
}

#[derive(Serialize)]
pub struct SuiteJson {
    pub profile: String,
    pub reports: Vec<JsonReport>,
    pub crosschecks: Vec<CrosscheckJson>,
    pub agw_pass: bool,
    pub eisenstein_golden_pass: bool,
    pub numeric_laws_pass: bool,
    pub all_pass: bool,
    pub elapsed_ms: u128,
}

#[derive(Serialize)]
pub struct CrosscheckJson {
    pub k: u32,
    pub pass: bool,
}
