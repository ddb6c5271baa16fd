//! The JSON run report: command echo, input digests, structured results,
//! seed and version. Re-running with the same seed and inputs reproduces
//! every field except the wall time.

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use itphi::module::PdBound;
use itphi::phi::{PhiCertificate, PhiKind, PhiOutcome};
use itphi::phidim::DimensionReport;
use itphi::tilting::{PhidimEstimate, PhidimMethod};

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub seed: u64,
    pub version: String,
    pub result: Value,
    pub wall_ms: u128,
}

impl RunReport {
    pub fn new(command: Vec<String>, seed: u64) -> Self {
        RunReport {
            command,
            inputs: Vec::new(),
            seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            result: Value::Null,
            wall_ms: 0,
        }
    }

    pub fn add_input(&mut self, path: &str, bytes: &[u8]) {
        let mut hasher = Sha256::new();
        hasher.update(bytes);
        self.inputs.push(InputDigest {
            path: path.to_string(),
            sha256: hex::encode(hasher.finalize()),
        });
    }

    /// Canonical rendering: keys sorted, so serialize -> parse -> serialize
    /// is byte-identical.
    pub fn render(&self) -> String {
        let value = serde_json::to_value(self).expect("report serialises");
        serde_json::to_string_pretty(&value).expect("report prints")
    }
}

pub fn digest_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    hex::encode(hasher.finalize())
}

pub fn phi_outcome_json(out: &PhiOutcome) -> Value {
    let kind = match out.kind {
        PhiKind::Exact => "Exact",
        PhiKind::LowerBound => "LowerBound",
    };
    let certificate = match &out.certificate {
        PhiCertificate::RankZero => json!({"type": "RankZero"}),
        PhiCertificate::OmegaClosedFinite {
            classes,
            extra_steps,
        } => json!({
            "type": "OmegaClosedFinite",
            "classes": classes.len(),
            "extra_steps": extra_steps,
        }),
        PhiCertificate::Cutoff(n) => json!({"type": "Cutoff", "n_max": n}),
    };
    json!({
        "kind": kind,
        "value": out.value,
        "trace": out.trace,
        "certificate": certificate,
    })
}

pub fn pd_bound_json(b: &PdBound) -> Value {
    match b {
        PdBound::Finite(d) => json!({"kind": "Finite", "value": d}),
        PdBound::AtLeast(n) => json!({"kind": "AtLeast", "value": n}),
    }
}

pub fn phidim_estimate_json(e: &PhidimEstimate) -> Value {
    json!({
        "phi": phi_outcome_json(&e.outcome),
        "method": match e.method {
            PhidimMethod::CompleteList => "complete-list",
            PhidimMethod::SampledEnumeration => "sampled-enumeration",
        },
        "classes": e.class_count,
    })
}

pub fn dimension_report_json(r: &DimensionReport) -> Value {
    json!({
        "findim_lower_bound": r.findim_lb,
        "phidim": phi_outcome_json(&r.phidim),
        "phidim_exact": r.phidim_exact,
        "gldim": pd_bound_json(&r.gldim),
        "consistent": r.consistent,
    })
}
