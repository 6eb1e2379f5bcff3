//! Versioned JSON envelopes for everything the command-line tool prints.

use std::fmt::Display;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::chabauty::{run_case, CaseLabel, CaseReport, PrecisionPlan, Status};
use crate::descent::{descent_report, DescentReport};
use crate::error::FormalError;
use crate::lucas::{family_root, search_square_terms, theorem2_family, FamilyKind, LucasParams, SearchResult};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Serialize any `Display` value as a JSON string (big integers, rationals).
pub fn as_string<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Clone, Debug, Serialize)]
pub struct Envelope<T: Serialize> {
    pub schema_version: u32,
    pub tool: &'static str,
    pub tool_version: &'static str,
    pub command: &'static str,
    pub status: Status,
    pub result: T,
}

impl<T: Serialize> Envelope<T> {
    pub fn new(command: &'static str, status: Status, result: T) -> Self {
        Envelope {
            schema_version: REPORT_SCHEMA_VERSION,
            tool: "lucas-squares",
            tool_version: env!("CARGO_PKG_VERSION"),
            command,
            status,
            result,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyCheck {
    pub a: i64,
    pub b: i64,
    pub params: LucasParams,
    #[serde(serialize_with = "opt_string")]
    pub root: Option<num_bigint::BigInt>,
    pub square: bool,
}

pub fn opt_string<S: Serializer>(v: &Option<num_bigint::BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.collect_str(x),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Theorem2Report {
    pub kind: FamilyKind,
    pub seed: u64,
    /// a and b are drawn from 1..=max_ab.
    pub max_ab: i64,
    /// Admissible samples only.
    pub checks: Vec<FamilyCheck>,
    /// Draws rejected as non-coprime or non-integral.
    pub rejected_draws: usize,
    pub all_square: bool,
}

impl Theorem2Report {
    pub fn status(&self) -> Status {
        if self.all_square {
            Status::Complete
        } else {
            Status::Incomplete
        }
    }
}

/// Draw `count` admissible (a, b) from a seeded stream and check each family member.
pub fn verify_theorem2(kind: FamilyKind, count: usize, seed: u64) -> Theorem2Report {
    // Keeps the U_6 coefficients (degree 8 in a, b) inside i64.
    let max_ab = match kind {
        FamilyKind::U3 => 10_000,
        FamilyKind::U6 => 40,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::with_capacity(count);
    let mut rejected_draws = 0;
    while checks.len() < count {
        let a = rng.gen_range(1..=max_ab);
        let b = rng.gen_range(1..=max_ab);
        match theorem2_family(kind, a, b) {
            Ok(params) => {
                let root = family_root(kind, params);
                let expected = match kind {
                    FamilyKind::U3 => root.as_ref().is_some_and(|r| *r == num_bigint::BigInt::from(b)),
                    FamilyKind::U6 => root.is_some(),
                };
                checks.push(FamilyCheck { a, b, params, square: expected, root });
            }
            Err(_) => rejected_draws += 1,
        }
    }
    let all_square = checks.iter().all(|c| c.square);
    Theorem2Report { kind, seed, max_ab, checks, rejected_draws, all_square }
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleAgreement {
    pub case: CaseLabel,
    pub chabauty: Vec<LucasParams>,
    pub search_bound: i64,
    /// Nonzero-square hits of the brute-force search.
    pub search: Vec<LucasParams>,
    pub agrees: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FullReport {
    pub search_u12: SearchResult,
    pub search_u9: SearchResult,
    pub descent: DescentReport,
    pub u12: CaseReport,
    pub u9: CaseReport,
    pub agreement: Vec<OracleAgreement>,
}

impl FullReport {
    pub fn status(&self) -> Status {
        let complete = self.u12.status == Status::Complete
            && self.u9.status == Status::Complete
            && self.agreement.iter().all(|a| a.agrees);
        if complete {
            Status::Complete
        } else {
            Status::Incomplete
        }
    }
}

fn agreement(case: &CaseReport, search: &SearchResult) -> OracleAgreement {
    let mut chabauty = case.solutions();
    chabauty.sort();
    let mut found: Vec<LucasParams> = search.hits.iter().map(|h| h.params).collect();
    found.sort();
    OracleAgreement {
        case: case.case,
        agrees: case.status == Status::Complete && chabauty == found,
        chabauty,
        search_bound: search.bound,
        search: found,
    }
}

/// Search, descent and both Chabauty cases, with the final sets compared to the search.
pub fn full_run(
    bound: i64,
    height: i64,
    plan_u12: Option<PrecisionPlan>,
    plan_u9: Option<PrecisionPlan>,
) -> Result<FullReport, FormalError> {
    let search_u12 = search_square_terms(12, bound);
    let search_u9 = search_square_terms(9, bound);
    let u12 = run_case(CaseLabel::U12, plan_u12)?;
    let u9 = run_case(CaseLabel::U9, plan_u9)?;
    let agreement = vec![agreement(&u12, &search_u12), agreement(&u9, &search_u9)];
    Ok(FullReport { descent: descent_report(height), search_u12, search_u9, u12, u9, agreement })
}
