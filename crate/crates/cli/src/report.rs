//! Machine-readable reports. Rationals are rendered as `"p/q"` strings.

use convfan::graded::{TupleCheck, ValuationChain, VerificationReport, Verdict};
use convfan::{ExtRat, Fan, QVector};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub fn digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn vector(v: &QVector) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

#[derive(Serialize)]
pub struct RunReport<T: Serialize> {
    pub command: &'static str,
    pub input_sha256: String,
    pub config: Value,
    pub payload: T,
    pub exit_status: i32,
}

#[derive(Serialize)]
pub struct PhiPayload {
    pub value: String,
    pub witness: Vec<String>,
    pub lp_dual: Vec<String>,
    pub dual_value: String,
    pub dual_maximizer: Vec<String>,
    pub gap_zero: bool,
}

impl PhiPayload {
    pub fn new(phi: &convfan::lp::PhiValue, duality: &convfan::lp::DualityCheck) -> Self {
        PhiPayload {
            value: phi.value.to_string(),
            witness: vector(&phi.witness),
            lp_dual: vector(&phi.dual),
            dual_value: duality.dual_value.to_string(),
            dual_maximizer: vector(&duality.maximizer),
            gap_zero: duality.gap_zero,
        }
    }
}

#[derive(Serialize)]
pub struct FanPayload {
    pub ambient_dim: usize,
    pub rays: Vec<Vec<String>>,
    /// Each maximal cone as indices into `rays`.
    pub maximal_cones: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub linearity_check: Option<bool>,
}

impl FanPayload {
    pub fn new(fan: &Fan, linearity_check: Option<bool>) -> Self {
        let rays = fan.rays();
        let maximal_cones = fan
            .maximal_cones()
            .iter()
            .map(|c| c.rays().iter().map(|r| rays.binary_search(r).expect("ray of the fan")).collect())
            .collect();
        FanPayload {
            ambient_dim: fan.ambient_dim(),
            rays: rays.iter().map(vector).collect(),
            maximal_cones,
            linearity_check,
        }
    }
}

fn ext(v: &ExtRat) -> String {
    v.to_string()
}

#[derive(Serialize)]
pub struct ChainJson {
    pub weight: Vec<String>,
    pub value_dm: String,
    pub sum_of_rays: String,
    pub sum_of_asymptotic: String,
    pub asymptotic_dm: String,
}

impl From<&ValuationChain> for ChainJson {
    fn from(c: &ValuationChain) -> Self {
        ChainJson {
            weight: vector(&c.weight),
            value_dm: ext(&c.value_dm),
            sum_of_rays: ext(&c.sum_of_rays),
            sum_of_asymptotic: ext(&c.sum_of_asymptotic),
            asymptotic_dm: ext(&c.asymptotic_dm),
        }
    }
}

#[derive(Serialize)]
pub struct TupleJson {
    pub p: Vec<u64>,
    pub closure_equal: bool,
    pub passed: bool,
    pub weights_tested: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_weight: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_chain: Option<ChainJson>,
}

impl From<&TupleCheck> for TupleJson {
    fn from(t: &TupleCheck) -> Self {
        TupleJson {
            p: t.p.clone(),
            closure_equal: t.closure_equal,
            passed: t.passed(),
            weights_tested: t.weights_tested,
            witness_weight: t.witness.as_ref().map(vector),
            failed_chain: t.failed_chain.as_ref().map(ChainJson::from),
        }
    }
}

#[derive(Serialize)]
pub struct ConeJson {
    pub rays: Vec<Vec<String>>,
    pub passed: bool,
    pub tuples: Vec<TupleJson>,
}

#[derive(Serialize)]
pub struct RayJson {
    pub ray: Vec<String>,
    pub d: u64,
    pub ideal_level_up_to_l: bool,
}

#[derive(Serialize)]
pub struct VerifyPayload {
    pub verdict: &'static str,
    pub d: u64,
    pub per_ray: Vec<RayJson>,
    pub fan: FanPayload,
    pub cones: Vec<ConeJson>,
}

pub fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Verified => "VERIFIED",
        Verdict::Falsified => "FALSIFIED",
    }
}

impl From<&VerificationReport> for VerifyPayload {
    fn from(r: &VerificationReport) -> Self {
        VerifyPayload {
            verdict: verdict_name(r.verdict),
            d: r.exponents.d,
            per_ray: r
                .exponents
                .per_ray
                .iter()
                .map(|e| RayJson { ray: vector(&e.ray), d: e.d, ideal_level_up_to_l: e.ideal_level })
                .collect(),
            fan: FanPayload::new(&r.fan, None),
            cones: r
                .cones
                .iter()
                .map(|c| ConeJson {
                    rays: c.rays.iter().map(vector).collect(),
                    passed: c.passed(),
                    tuples: c.tuples.iter().map(TupleJson::from).collect(),
                })
                .collect(),
        }
    }
}
