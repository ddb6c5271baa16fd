//! Acceptance suite: the full-scale verification battery, one test per
//! criterion, each printing a pass/fail line. Run with
//! `cargo test -p itphi-cli --test acceptance`.

use std::sync::OnceLock;
use std::time::Instant;

use itphi::fixtures;
use itphi::phi::PhiConfig;
use itphi::phidim::enumerate_indecomposables_nakayama;
use itphi::quiver::KupischSeries;

use itphi_cli::checks::{
    check_ce_duality, check_decomposition_soundness, check_division_oracle, check_ext_probe,
    check_fixture_values, check_phi_laws, check_stable_class_coherence, check_tilting_bounds,
    CheckResult,
};
use itphi_cli::corpus::{corpus_digest, generate_corpus, CorpusConfig, CorpusItem};
use itphi_cli::selftest::{run_selftest, selftest_json};

const SEED: u64 = 42;

fn corpus() -> &'static Vec<CorpusItem> {
    static CORPUS: OnceLock<Vec<CorpusItem>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let cfg = CorpusConfig::default(); // 25 algebras, p in {2,3,5}, dim <= 12, module dim <= 20
        generate_corpus(SEED, &cfg).expect("corpus generation")
    })
}

/// The corpus plus the complete indecomposable lists of the fixtures, so the
/// oracle runs over every fixture module as well.
fn corpus_with_fixture_lists() -> &'static Vec<CorpusItem> {
    static AUGMENTED: OnceLock<Vec<CorpusItem>> = OnceLock::new();
    AUGMENTED.get_or_init(|| {
        let mut items: Vec<CorpusItem> = Vec::new();
        let series = [
            ("fix1-complete", KupischSeries::cyclic(vec![2])),
            ("fix2-complete", KupischSeries::linear(vec![3, 2, 1])),
            ("fix3-complete", KupischSeries::linear(vec![2, 2, 1])),
            ("fix4-complete", KupischSeries::cyclic(vec![2, 2])),
        ];
        for (name, s) in series {
            let (a, mods) = enumerate_indecomposables_nakayama(&s, 2).expect("fixture enumeration");
            items.push(CorpusItem {
                name: name.into(),
                algebra: a,
                modules: mods,
            });
        }
        let ope = fixtures::fix5(2);
        items.push(CorpusItem {
            name: "fix5-complete".into(),
            algebra: ope.algebra.clone(),
            modules: fixtures::fix5_indecomposables(&ope),
        });
        for item in corpus() {
            items.push(CorpusItem {
                name: item.name.clone(),
                algebra: item.algebra.clone(),
                modules: item.modules.clone(),
            });
        }
        items
    })
}

fn report(criterion: &str, result: &CheckResult, elapsed_s: f64) {
    println!(
        "[acceptance] {criterion}: {} - {} cases, {} violations ({elapsed_s:.1}s) {}",
        if result.pass { "PASS" } else { "FAIL" },
        result.cases,
        result.violations,
        result.detail
    );
}

#[test]
fn criterion_1_phi_function_laws() {
    let start = Instant::now();
    let corpus = corpus();
    assert!(corpus.len() >= 25, "corpus has {} algebras", corpus.len());
    let module_count: usize = corpus.iter().map(|i| i.modules.len()).sum();
    assert!(module_count >= 200, "corpus has {module_count} modules");
    let result =
        check_phi_laws(corpus, &PhiConfig::default(), 16, 200, SEED).expect("phi laws check");
    let elapsed = start.elapsed().as_secs_f64();
    report("criterion 1 (phi function laws a-f)", &result, elapsed);
    assert!(result.pass, "{}", result.detail);
    assert!(
        elapsed < 600.0,
        "criterion 1 took {elapsed:.0}s, budget is 600s"
    );
}

#[test]
fn criterion_2_stable_iso_matches_class_vectors() {
    let start = Instant::now();
    let result = check_stable_class_coherence(corpus(), 500, SEED).expect("stable class coherence");
    report(
        "criterion 2 (stable iso vs class vectors)",
        &result,
        start.elapsed().as_secs_f64(),
    );
    assert!(result.pass, "{}", result.detail);
}

#[test]
fn criterion_3_division_oracle_agreement() {
    let start = Instant::now();
    let result = check_division_oracle(
        corpus_with_fixture_lists(),
        &PhiConfig::default(),
        150,
        SEED,
    )
    .expect("division oracle");
    report(
        "criterion 3 (phi vs division oracle)",
        &result,
        start.elapsed().as_secs_f64(),
    );
    assert!(result.pass, "{}", result.detail);
}

#[test]
fn criterion_4_ext_functor_probes() {
    let start = Instant::now();
    let result = check_ext_probe(corpus(), 200, SEED).expect("ext probes");
    report(
        "criterion 4 (ext functor probes)",
        &result,
        start.elapsed().as_secs_f64(),
    );
    assert!(result.pass, "{}", result.detail);
}

#[test]
fn criterion_5_fixture_exact_values() {
    let start = Instant::now();
    let result = check_fixture_values(&PhiConfig::default(), SEED).expect("fixture values");
    report(
        "criterion 5 (fixture exact values)",
        &result,
        start.elapsed().as_secs_f64(),
    );
    assert!(result.pass, "{}", result.detail);
}

#[test]
fn criterion_6_tilting_bounds() {
    let start = Instant::now();
    let result = check_tilting_bounds(&PhiConfig::default(), SEED).expect("tilting bounds");
    report(
        "criterion 6 (tilting bounds)",
        &result,
        start.elapsed().as_secs_f64(),
    );
    assert!(result.pass, "{}", result.detail);
}

#[test]
fn criterion_7_tor_ext_duality() {
    let start = Instant::now();
    let result = check_ce_duality(corpus(), 13, 300).expect("tor/ext duality");
    report(
        "criterion 7 (tor/ext duality)",
        &result,
        start.elapsed().as_secs_f64(),
    );
    assert!(result.pass, "{}", result.detail);
}

#[test]
fn criterion_8_determinism() {
    let start = Instant::now();
    let first = run_selftest(SEED).expect("selftest");
    let second = run_selftest(SEED).expect("selftest");
    let j1 = serde_json::to_string_pretty(&selftest_json(&first)).unwrap();
    let j2 = serde_json::to_string_pretty(&selftest_json(&second)).unwrap();
    let same_reports = j1 == j2;
    let cfg = CorpusConfig::default();
    let d1 = corpus_digest(&generate_corpus(SEED, &cfg).unwrap());
    let d2 = corpus_digest(&generate_corpus(SEED, &cfg).unwrap());
    let same_corpus = d1 == d2;
    let result = CheckResult {
        name: "determinism".into(),
        pass: same_reports && same_corpus && first.all_pass,
        cases: 2,
        violations: usize::from(!same_reports) + usize::from(!same_corpus),
        detail: String::new(),
    };
    report(
        "criterion 8 (determinism)",
        &result,
        start.elapsed().as_secs_f64(),
    );
    assert!(same_reports, "selftest reports differ between runs");
    assert!(same_corpus, "corpus digests differ between runs");
    assert!(first.all_pass, "selftest failed");
}

#[test]
fn criterion_9_decomposition_soundness() {
    let start = Instant::now();
    let result = check_decomposition_soundness(corpus(), 200, SEED).expect("decomposition");
    report(
        "criterion 9 (decomposition soundness)",
        &result,
        start.elapsed().as_secs_f64(),
    );
    assert!(result.pass, "{}", result.detail);
}

#[test]
fn dimension_chain_consistent_across_corpus() {
    use itphi::phidim::{inequality_report, InequalityConfig, SamplerConfig};
    let start = Instant::now();
    let mut cases = 0usize;
    let mut violations = Vec::new();
    for item in corpus() {
        let cfg = InequalityConfig {
            sampler: SamplerConfig { count: 6, dim_bound: 12, seed: SEED },
            ..InequalityConfig::default()
        };
        let rep = inequality_report(&item.algebra, &cfg).expect("inequality report");
        cases += 1;
        if !rep.consistent {
            violations.push(item.name.clone());
        }
    }
    let result = CheckResult {
        name: "dimension chain on corpus".into(),
        pass: violations.is_empty(),
        cases,
        violations: violations.len(),
        detail: violations.first().cloned().unwrap_or_default(),
    };
    report("supplementary (findim <= phidim <= gldim on corpus)", &result, start.elapsed().as_secs_f64());
    assert!(result.pass, "violations: {violations:?}");
}

/// Extended stress run over a larger corpus at an alternate seed; not part
/// of the default gate. Run with `cargo test -p itphi-cli --test acceptance -- --ignored`.
#[test]
#[ignore = "extended stress run"]
fn stress_alternate_seed_corpus() {
    let cfg = CorpusConfig {
        algebra_count: 40,
        modules_per_algebra: 10,
        ..CorpusConfig::default()
    };
    let corpus = generate_corpus(2024, &cfg).expect("stress corpus");
    let phi_cfg = PhiConfig::default();
    let checks = vec![
        check_phi_laws(&corpus, &phi_cfg, 16, 300, 2024).unwrap(),
        check_stable_class_coherence(&corpus, 600, 2024).unwrap(),
        check_division_oracle(&corpus, &phi_cfg, 200, 2024).unwrap(),
        check_ce_duality(&corpus, 10, 350).unwrap(),
        check_decomposition_soundness(&corpus, 300, 2024).unwrap(),
    ];
    for c in &checks {
        report(&format!("stress ({})", c.name), c, 0.0);
        assert!(c.pass, "{}", c.detail);
    }
}
