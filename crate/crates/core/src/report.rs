//! Machine-readable reports shared by the command line tool and the web demo.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cktwo::{BoundReport, ConditionReport, HomologyReport, KTheoryReport};
use crate::transition::StructuralChecks;
use crate::zmat::FinAbGroup;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// SHA-256 of `text`, lowercase hex.
pub fn digest(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Serializes a `BigInt` as a bare JSON number of any size.
pub mod bigint {
    use num_bigint::BigInt;
    use serde::de::Error as _;
    use serde::ser::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        let n: serde_json::Number = v.to_string().parse().map_err(S::Error::custom)?;
        n.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let n = serde_json::Number::deserialize(d)?;
        n.to_string().parse().map_err(D::Error::custom)
    }
}

pub mod bigint_vec {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Wrap(#[serde(with = "super::bigint")] BigInt);

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let w: Vec<Wrap> = v.iter().cloned().map(Wrap).collect();
        w.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let w = Vec::<Wrap>::deserialize(d)?;
        Ok(w.into_iter().map(|Wrap(b)| b).collect())
    }
}

/// A group with both canonical spellings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupReport {
    pub free_rank: usize,
    #[serde(with = "bigint_vec")]
    pub torsion_factors: Vec<BigInt>,
    /// Invariant factor form, e.g. `Z^2 + Z/2 + Z/6`.
    pub text: String,
    /// Primary form, e.g. `(Z/2)^2 + Z/3`.
    pub primary: String,
}

impl From<&FinAbGroup> for GroupReport {
    fn from(g: &FinAbGroup) -> Self {
        GroupReport {
            free_rank: g.free_rank(),
            torsion_factors: g.torsion().to_vec(),
            text: g.to_string(),
            primary: g.primary_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineChecks {
    pub hat: StructuralChecks,
    pub check: StructuralChecks,
    /// Hat and check cokernels agree.
    pub hat_check_agreement: bool,
    pub bounds: BoundReport,
    pub span_membership: Option<bool>,
    pub k0_equals_k1: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub expected_order: u64,
    /// `agrees` or `disagrees`
    pub status: String,
}

/// Machine form of a K-theory run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KTheoryDocument {
    pub version: String,
    pub input_digest: String,
    pub source: String,
    pub q: usize,
    pub alphabet_size: usize,
    pub r: usize,
    #[serde(with = "bigint_vec")]
    pub torsion_factors: Vec<BigInt>,
    pub torsion_primary: String,
    pub k0: GroupReport,
    pub k1: GroupReport,
    #[serde(with = "bigint")]
    pub identity_order: BigInt,
    pub rank_one_ck: bool,
    pub checks: PipelineChecks,
    pub conjecture_agreement: ConjectureReport,
    pub timing_ms: f64,
}

impl KTheoryDocument {
    pub fn new(report: &KTheoryReport, input_text: &str, timing_ms: f64) -> Self {
        KTheoryDocument {
            version: VERSION.to_string(),
            input_digest: digest(input_text),
            source: report.source.clone(),
            q: report.q,
            alphabet_size: report.alphabet_size,
            r: report.r(),
            torsion_factors: report.coker.torsion().to_vec(),
            torsion_primary: report.coker.torsion_part().primary_string(),
            k0: (&report.k0).into(),
            k1: (&report.k1).into(),
            identity_order: report.identity_class_order.clone(),
            rank_one_ck: report.rank_one_ck,
            checks: PipelineChecks {
                hat: report.hat_checks.clone(),
                check: report.check_checks.clone(),
                hat_check_agreement: report.coker == report.check_coker,
                bounds: report.bounds.clone(),
                span_membership: report.span_check,
                k0_equals_k1: report.k0 == report.k1,
            },
            conjecture_agreement: ConjectureReport {
                expected_order: report.conjecture.expected_order,
                status: if report.conjecture.agrees {
                    "agrees"
                } else {
                    "disagrees"
                }
                .to_string(),
            },
            timing_ms,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        let mut lines = vec![
            format!("source: {}", self.source),
            format!("q = {}, |alphabet| = {}", self.q, self.alphabet_size),
            format!(
                "coker(I - M1, I - M2) = {}",
                FinAbGroup::new(self.r, self.torsion_factors.iter().cloned())
            ),
            format!("K0 = K1 = {}", self.k0.text),
            format!("        = {}", self.k0.primary),
            format!("r = {}", self.r),
            format!("order of [id] = {}", self.identity_order),
            format!("K0 torsion free (rank one Cuntz-Krieger): {}", self.rank_one_ck),
            format!(
                "checks: hat {}, check {}, hat/check agreement {}, bounds {}, span {}",
                pass(self.checks.hat.all_passed()),
                pass(self.checks.check.all_passed()),
                pass(self.checks.hat_check_agreement),
                pass(self.checks.bounds.ok()),
                match self.checks.span_membership {
                    Some(b) => pass(b),
                    None => "skipped",
                }
            ),
            format!(
                "conjecture (order = {}): {}",
                self.conjecture_agreement.expected_order, self.conjecture_agreement.status
            ),
        ];
        lines.push(String::new());
        lines.join("\n")
    }
}

fn pass(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

/// Machine form of a run on a raw matrix pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisDocument {
    pub version: String,
    pub input_digest: String,
    pub size: usize,
    pub conditions: ConditionReport,
    pub homology: Option<HomologyReport>,
    pub k0: Option<GroupReport>,
    pub k1: Option<GroupReport>,
    pub notice: Option<String>,
    pub timing_ms: f64,
}

impl AnalysisDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn to_text(&self) -> String {
        let c = &self.conditions;
        let mut lines = vec![
            format!("size n = {}", self.size),
            format!("(H0) {}", pass(c.h0)),
            format!("(H1a) {}", pass(c.h1a)),
            format!("(H1b) {}", pass(c.h1b)),
            format!("(H2) {}", pass(c.h2)),
            format!(
                "(H3) {} (window {})",
                match &c.h3 {
                    crate::cktwo::H3Status::Pass => "pass".to_string(),
                    crate::cktwo::H3Status::Inconclusive { period, .. } =>
                        format!("inconclusive at period {period:?}"),
                },
                c.h3_window
            ),
        ];
        if let Some(h) = &self.homology {
            lines.push(format!("H0 = {}", h.h0));
            lines.push(format!("H1 = {}", h.h1));
            lines.push(format!("H2 = {}", h.h2));
        }
        if let (Some(k0), Some(k1)) = (&self.k0, &self.k1) {
            lines.push(format!("K0 = {}", k0.text));
            lines.push(format!("K1 = {}", k1.text));
        }
        if let Some(n) = &self.notice {
            lines.push(n.clone());
        }
        lines.push(String::new());
        lines.join("\n")
    }
}
