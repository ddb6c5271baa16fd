//! Built-in verification battery: a compact version of the acceptance suite
//! run from the CLI, deterministic for a fixed seed.

use serde_json::{json, Value};

use itphi::error::Result;
use itphi::phi::PhiConfig;

use crate::checks::{
    check_ce_duality, check_decomposition_soundness, check_division_oracle, check_ext_probe,
    check_fixture_values, check_phi_laws, check_stable_class_coherence, check_tilting_bounds,
    CheckResult,
};
use crate::corpus::{corpus_digest, generate_corpus, CorpusConfig};

pub struct SelftestOutcome {
    pub checks: Vec<CheckResult>,
    pub corpus_digest: String,
    pub all_pass: bool,
}

pub fn run_selftest(seed: u64) -> Result<SelftestOutcome> {
    let phi_cfg = PhiConfig::default();
    let cfg = CorpusConfig {
        algebra_count: 10,
        modules_per_algebra: 4,
        max_module_dim: 12,
        ..CorpusConfig::default()
    };
    let corpus = generate_corpus(seed, &cfg)?;
    let digest = corpus_digest(&corpus);
    let checks = vec![
        check_fixture_values(&phi_cfg, seed)?,
        check_phi_laws(&corpus, &phi_cfg, 12, 40, seed)?,
        check_stable_class_coherence(&corpus, 80, seed)?,
        check_division_oracle(&corpus, &phi_cfg, 20, seed)?,
        check_ext_probe(&corpus, 40, seed)?,
        check_ce_duality(&corpus, 6, 40)?,
        check_decomposition_soundness(&corpus, 30, seed)?,
        check_tilting_bounds(&phi_cfg, seed)?,
    ];
    let all_pass = checks.iter().all(|c| c.pass);
    Ok(SelftestOutcome {
        checks,
        corpus_digest: digest,
        all_pass,
    })
}

pub fn selftest_json(outcome: &SelftestOutcome) -> Value {
    json!({
        "checks": outcome.checks.iter().map(|c| json!({
            "name": c.name,
            "pass": c.pass,
            "cases": c.cases,
            "violations": c.violations,
            "detail": c.detail,
        })).collect::<Vec<_>>(),
        "corpus_digest": outcome.corpus_digest,
        "all_pass": outcome.all_pass,
    })
}
