//! JSON reports. Rationals are written exactly as `"num/den"` strings.

use serde::Serialize;

use connpres_core::approx::Rational;
use connpres_core::{CriticalCut, EdgeId, Instance};

use crate::dispatch::{Certificate, Outcome};

pub const REPORT_VERSION: u32 = 1;

pub fn rational_string(r: &Rational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertifiedBound {
    pub bound: String,
    /// Largest integer cost the bound allows.
    pub bound_floor: String,
    pub per_phase_duals: Vec<String>,
    pub denominator: String,
}

impl From<&Certificate> for CertifiedBound {
    fn from(c: &Certificate) -> Self {
        CertifiedBound {
            bound: rational_string(&c.bound),
            bound_floor: c.bound.floor().to_integer().to_string(),
            per_phase_duals: c.per_phase_duals.iter().map(rational_string).collect(),
            denominator: c.denominator.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Solved,
    Feasible,
    Infeasible,
    Unsupported,
    Error,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport {
    pub report_version: u32,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algorithm: Option<String>,
    pub variant: String,
    pub p: usize,
    pub q: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cost: Option<u64>,
    pub protected: Vec<EdgeId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certified_bound: Option<CertifiedBound>,
    pub feasibility_check: Check,
    pub wall_time_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl SolveReport {
    pub fn failed(inst: &Instance, status: Status, error: String, wall_time_ms: f64) -> Self {
        SolveReport {
            report_version: REPORT_VERSION,
            status,
            algorithm: None,
            variant: inst.terminals().keyword().into(),
            p: inst.p(),
            q: inst.q(),
            cost: None,
            protected: Vec::new(),
            certified_bound: None,
            feasibility_check: Check::Skipped,
            error: Some(error),
            wall_time_ms,
        }
    }

    pub fn solved(inst: &Instance, out: &Outcome, check: Check, wall_time_ms: f64) -> Self {
        SolveReport {
            report_version: REPORT_VERSION,
            status: Status::Solved,
            algorithm: Some(out.algorithm.name().into()),
            variant: inst.terminals().keyword().into(),
            p: inst.p(),
            q: inst.q(),
            cost: Some(out.solution.total_cost()),
            protected: out.solution.ids(),
            certified_bound: out.certificate.as_ref().map(CertifiedBound::from),
            feasibility_check: check,
            wall_time_ms,
            error: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub side_s: Vec<usize>,
    pub crossing: Vec<EdgeId>,
    pub cut_size: usize,
    pub protected_count: usize,
    pub separated_pair: (usize, usize),
}

impl From<&CriticalCut> for Witness {
    fn from(c: &CriticalCut) -> Self {
        Witness {
            side_s: c.cut.side_s.clone(),
            crossing: c.cut.crossing.clone(),
            cut_size: c.cut.crossing.len(),
            protected_count: c.protected_count,
            separated_pair: c.separated_pair,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub report_version: u32,
    pub status: Status,
    /// `exact` or `oracle`.
    pub method: String,
    pub cost: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}
