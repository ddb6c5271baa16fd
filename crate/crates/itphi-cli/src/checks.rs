//! The verification battery shared by `selftest` and the acceptance suite:
//! phi function laws, stable-isomorphism/class-vector coherence, the
//! division oracle, Ext-functor probes, Tor/Ext duality, decomposition
//! soundness, fixture values, and the tilting bounds.

use serde::Serialize;

use itphi::decomp::{decompose, indec_isomorphic, IsoRegistry};
use itphi::error::Result;
use itphi::fixtures;
use itphi::module::{
    ext_dim_with, pd_bounded, projective_module, simple_module, syzygy, Module, PdBound, Resolution,
};
use itphi::phi::{
    ce_duality_check, ext_functor_iso, phi_via_divisions, phi_with_registry, register, stable_iso,
    PhiConfig, PhiKind,
};
use itphi::phidim::{
    enumerate_indecomposables_nakayama, inequality_report, phidim_exact, sample_modules,
    InequalityConfig, SamplerConfig,
};
use itphi::quiver::KupischSeries;
use itphi::tilting::{bongartz_bound_check, ope_bound_check, BongartzConfig, OpeConfig};

use crate::corpus::CorpusItem;

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub cases: usize,
    pub violations: usize,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &str, cases: usize, violations: Vec<String>, min_cases: usize) -> Self {
        let mut pass = violations.is_empty();
        let mut detail = violations.first().cloned().unwrap_or_default();
        if cases < min_cases {
            pass = false;
            detail = format!("only {cases} cases, required {min_cases}; {detail}");
        }
        CheckResult {
            name: name.to_string(),
            pass,
            cases,
            violations: violations.len(),
            detail,
        }
    }
}

/// The six laws of the phi function, checked on every corpus module with an
/// exact phi value.
pub fn check_phi_laws(
    corpus: &[CorpusItem],
    phi_cfg: &PhiConfig,
    pd_cutoff: usize,
    min_cases: usize,
    seed: u64,
) -> Result<CheckResult> {
    let mut cases = 0usize;
    let mut violations: Vec<String> = Vec::new();
    for item in corpus {
        let mut reg = IsoRegistry::new(item.algebra.clone())?;
        let mut phis = Vec::new();
        for m in &item.modules {
            phis.push(phi_with_registry(&mut reg, m, phi_cfg, seed)?);
        }
        // (a) phi = pd when pd is finite.
        for (m, out) in item.modules.iter().zip(&phis) {
            if let PdBound::Finite(d) = pd_bounded(m, pd_cutoff)? {
                cases += 1;
                if !out.is_exact() || out.value != d {
                    violations.push(format!(
                        "{}: phi {} (exact {}) but pd {}",
                        item.name,
                        out.value,
                        out.is_exact(),
                        d
                    ));
                }
            }
        }
        // (b) phi = 0 for indecomposables of infinite projective dimension.
        let class_reps: Vec<Module> = reg
            .classes()
            .iter()
            .filter(|c| !c.projective)
            .map(|c| c.rep.clone())
            .collect();
        for rep in &class_reps {
            let out = phi_with_registry(&mut reg, rep, phi_cfg, seed)?;
            if out.is_exact() && *out.trace.last().unwrap() > 0 {
                // trace certifiably never dies: infinite projective dimension
                cases += 1;
                if out.value != 0 {
                    violations.push(format!(
                        "{}: indecomposable with infinite pd has phi {}",
                        item.name, out.value
                    ));
                }
            }
        }
        // (c) monotonicity under extra summands.
        for w in item.modules.windows(2) {
            let sum = Module::direct_sum(&[w[0].clone(), w[1].clone()])?;
            let o1 = phi_with_registry(&mut reg, &w[0], phi_cfg, seed)?;
            let os = phi_with_registry(&mut reg, &sum, phi_cfg, seed)?;
            if o1.is_exact() && os.is_exact() {
                cases += 1;
                if o1.value > os.value {
                    violations.push(format!(
                        "{}: phi(M) = {} exceeds phi(N+M) = {}",
                        item.name, o1.value, os.value
                    ));
                }
            }
        }
        // (d) additive-closure invariance: phi(M) = phi(M + M).
        for (m, out) in item.modules.iter().zip(&phis) {
            if !out.is_exact() {
                continue;
            }
            let doubled = Module::direct_sum(&[m.clone(), m.clone()])?;
            let od = phi_with_registry(&mut reg, &doubled, phi_cfg, seed)?;
            cases += 1;
            if !od.is_exact() || od.value != out.value {
                violations.push(format!("{}: phi changed under doubling", item.name));
            }
        }
        // (e) projective summands are invisible.
        for (k, (m, out)) in item.modules.iter().zip(&phis).enumerate() {
            if !out.is_exact() {
                continue;
            }
            let p = projective_module(&item.algebra, k % item.algebra.idempotent_count())?;
            let padded = Module::direct_sum(&[m.clone(), p])?;
            let op = phi_with_registry(&mut reg, &padded, phi_cfg, seed)?;
            cases += 1;
            if !op.is_exact() || op.value != out.value {
                violations.push(format!(
                    "{}: phi changed under projective padding",
                    item.name
                ));
            }
        }
        // (f) phi(M) <= phi(Omega M) + 1.
        for (m, out) in item.modules.iter().zip(&phis) {
            if !out.is_exact() {
                continue;
            }
            let om = syzygy(m)?;
            let oo = phi_with_registry(&mut reg, &om, phi_cfg, seed)?;
            if oo.is_exact() {
                cases += 1;
                if out.value > oo.value + 1 {
                    violations.push(format!(
                        "{}: phi(M) = {} > phi(Omega M) + 1 = {}",
                        item.name,
                        out.value,
                        oo.value + 1
                    ));
                }
            }
        }
    }
    Ok(CheckResult::new(
        "phi function laws",
        cases,
        violations,
        min_cases,
    ))
}

/// Stable isomorphism must coincide with equality of class vectors.
pub fn check_stable_class_coherence(
    corpus: &[CorpusItem],
    min_pairs: usize,
    seed: u64,
) -> Result<CheckResult> {
    let mut cases = 0usize;
    let mut violations = Vec::new();
    for item in corpus {
        let mut reg = IsoRegistry::new(item.algebra.clone())?;
        let mods = &item.modules;
        let mut pairs: Vec<(Module, Module)> = Vec::new();
        for i in 0..mods.len() {
            for j in i..mods.len() {
                pairs.push((mods[i].clone(), mods[j].clone()));
            }
        }
        // Guaranteed stably-equal pairs: pad one side with a projective.
        for (k, m) in mods.iter().enumerate() {
            let p = projective_module(&item.algebra, k % item.algebra.idempotent_count())?;
            pairs.push((m.clone(), Module::direct_sum(&[m.clone(), p])?));
        }
        for (m, n) in pairs {
            let lhs = stable_iso(&m, &n)?;
            let rhs = register(&mut reg, &m, seed)? == register(&mut reg, &n, seed)?;
            cases += 1;
            if lhs != rhs {
                violations.push(format!(
                    "{}: stable_iso = {lhs} but class vectors {}",
                    item.name,
                    if rhs { "equal" } else { "differ" }
                ));
            }
        }
    }
    Ok(CheckResult::new(
        "stable iso matches class vectors",
        cases,
        violations,
        min_pairs,
    ))
}

/// phi must agree with the division oracle whenever both are exact; the
/// oracle itself verifies every division on explicit modules.
pub fn check_division_oracle(
    corpus: &[CorpusItem],
    phi_cfg: &PhiConfig,
    min_cases: usize,
    seed: u64,
) -> Result<CheckResult> {
    let mut cases = 0usize;
    let mut violations = Vec::new();
    for item in corpus {
        let mut reg = IsoRegistry::new(item.algebra.clone())?;
        for m in &item.modules {
            let direct = phi_with_registry(&mut reg, m, phi_cfg, seed)?;
            let (via, _witnesses) = match phi_via_divisions(&mut reg, m, phi_cfg, seed) {
                Ok(x) => x,
                Err(e) => {
                    violations.push(format!("{}: oracle failed: {e}", item.name));
                    continue;
                }
            };
            if direct.is_exact() && via.is_exact() {
                cases += 1;
                if direct.value != via.value {
                    violations.push(format!(
                        "{}: phi = {} but division oracle = {}",
                        item.name, direct.value, via.value
                    ));
                }
            }
        }
    }
    Ok(CheckResult::new(
        "phi agrees with division oracle",
        cases,
        violations,
        min_cases,
    ))
}

/// Wherever the Ext-functor comparison says "isomorphic", every probe module
/// must see equal Ext dimensions.
pub fn check_ext_probe(
    corpus: &[CorpusItem],
    min_triples: usize,
    seed: u64,
) -> Result<CheckResult> {
    let mut cases = 0usize;
    let mut violations = Vec::new();
    for item in corpus {
        let mut reg = IsoRegistry::new(item.algebra.clone())?;
        let mut probes: Vec<Module> = Vec::new();
        for i in 0..item.algebra.idempotent_count() {
            probes.push(simple_module(&item.algebra, i)?);
            probes.push(projective_module(&item.algebra, i)?);
        }
        let sampler = SamplerConfig {
            count: 5,
            dim_bound: 8,
            seed: seed ^ 0xabcd,
        };
        probes.extend(sample_modules(&item.algebra, &sampler)?);
        for (k, m) in item.modules.iter().enumerate() {
            let p = projective_module(&item.algebra, k % item.algebra.idempotent_count())?;
            let n = Module::direct_sum(&[m.clone(), p])?;
            let mut res_m = Resolution::new(m.clone());
            let mut res_n = Resolution::new(n.clone());
            for i in 1..=3usize {
                let iso = ext_functor_iso(&mut reg, m, &n, i, seed)?;
                if !iso {
                    violations.push(format!(
                        "{}: projective padding changed the Ext functor at degree {i}",
                        item.name
                    ));
                    continue;
                }
                cases += 1;
                for x in &probes {
                    let em = ext_dim_with(&mut res_m, x, i)?;
                    let en = ext_dim_with(&mut res_n, x, i)?;
                    if em != en {
                        violations.push(format!(
                            "{}: probe saw Ext^{i} dims {em} vs {en}",
                            item.name
                        ));
                    }
                }
            }
        }
    }
    Ok(CheckResult::new(
        "ext functor probes",
        cases,
        violations,
        min_triples,
    ))
}

/// Tor_i(D(M), N) = Ext^i(N, M) for i <= 4.
pub fn check_ce_duality(
    corpus: &[CorpusItem],
    pairs_per_algebra: usize,
    min_pairs: usize,
) -> Result<CheckResult> {
    let mut cases = 0usize;
    let mut violations = Vec::new();
    for item in corpus {
        let mods = &item.modules;
        if mods.is_empty() {
            continue;
        }
        let mut taken = 0usize;
        'outer: for i in 0..mods.len() {
            for j in 0..mods.len() {
                if taken >= pairs_per_algebra {
                    break 'outer;
                }
                taken += 1;
                cases += 1;
                let report = ce_duality_check(&mods[i], &mods[j], 4)?;
                if !report.holds() {
                    violations.push(format!(
                        "{}: tor {:?} vs ext {:?}",
                        item.name, report.tor_dims, report.ext_dims
                    ));
                }
            }
        }
    }
    Ok(CheckResult::new(
        "tor/ext duality",
        cases,
        violations,
        min_pairs,
    ))
}

/// Reassembled decompositions are isomorphisms and the class multiset does
/// not depend on the seed.
pub fn check_decomposition_soundness(
    corpus: &[CorpusItem],
    min_modules: usize,
    seed: u64,
) -> Result<CheckResult> {
    let mut cases = 0usize;
    let mut violations = Vec::new();
    for item in corpus {
        for m in &item.modules {
            cases += 1;
            let d1 = decompose(m, seed)?;
            if !d1.reassembly.is_isomorphism() || !d1.reassembly.verify() {
                violations.push(format!("{}: reassembly failed", item.name));
                continue;
            }
            let d2 = decompose(m, seed ^ 0x5555_aaaa)?;
            if d1.pieces.len() != d2.pieces.len() {
                violations.push(format!("{}: seed changed the class count", item.name));
                continue;
            }
            for (piece, mult) in &d1.pieces {
                let matched = d2
                    .pieces
                    .iter()
                    .any(|(q, k)| k == mult && matches!(indec_isomorphic(piece, q), Ok(Some(_))));
                if !matched {
                    violations.push(format!("{}: seed changed the class multiset", item.name));
                    break;
                }
            }
        }
    }
    Ok(CheckResult::new(
        "decomposition soundness",
        cases,
        violations,
        min_modules,
    ))
}

/// Exact fixture values: the phi-dimensions, global dimensions, chain
/// consistency, and the one-point-extension step.
pub fn check_fixture_values(phi_cfg: &PhiConfig, seed: u64) -> Result<CheckResult> {
    let mut cases = 0usize;
    let mut violations = Vec::new();
    let mut expect = |name: &str, got: bool| {
        cases += 1;
        if !got {
            violations.push(format!("fixture expectation failed: {name}"));
        }
    };

    let nakayama_cases: Vec<(&str, KupischSeries, usize, Option<usize>)> = vec![
        ("fix1", KupischSeries::cyclic(vec![2]), 0, None),
        ("fix4", KupischSeries::cyclic(vec![2, 2]), 0, None),
        ("fix2", KupischSeries::linear(vec![3, 2, 1]), 1, Some(1)),
        ("fix3", KupischSeries::linear(vec![2, 2, 1]), 2, Some(2)),
    ];
    for (name, series, want_phidim, want_gldim) in nakayama_cases {
        let (a, list) = enumerate_indecomposables_nakayama(&series, 2)?;
        let out = phidim_exact(&a, &list, phi_cfg, seed)?;
        expect(&format!("{name} phidim exact"), out.kind == PhiKind::Exact);
        expect(
            &format!("{name} phidim = {want_phidim}"),
            out.value == want_phidim,
        );
        let gl = itphi::phidim::gldim_report(&a, 16)?;
        match want_gldim {
            Some(d) => expect(&format!("{name} gldim = {d}"), gl == PdBound::Finite(d)),
            None => expect(
                &format!("{name} gldim infinite at cutoff"),
                matches!(gl, PdBound::AtLeast(_)),
            ),
        }
        let cfg = InequalityConfig {
            complete_list: Some(list),
            phi: *phi_cfg,
            sampler: SamplerConfig {
                count: 6,
                dim_bound: 8,
                seed,
            },
            ..InequalityConfig::default()
        };
        let rep = inequality_report(&a, &cfg)?;
        expect(
            &format!("{name} dimension chain consistent"),
            rep.consistent,
        );
    }

    // fix5: the one-point extension of fix1 by its simple module.
    let a1 = fixtures::fix1(2);
    let s = simple_module(&a1, 0)?;
    let (_, list1) = enumerate_indecomposables_nakayama(&KupischSeries::cyclic(vec![2]), 2)?;
    let ope = fixtures::fix5(2);
    let ext_list = fixtures::fix5_indecomposables(&ope);
    let cfg = OpeConfig {
        phi: *phi_cfg,
        seed,
        complete_list_a: Some(list1),
        complete_list_ext: Some(ext_list),
        dim_bound: None,
    };
    let (_, report) = ope_bound_check(&a1, &s, &cfg)?;
    expect("fix5 base phidim = 0", report.phidim_a.outcome.value == 0);
    expect(
        "fix5 extension phidim = 1",
        report.phidim_ext.outcome.value == 1,
    );
    expect(
        "fix5 extension phidim exact",
        report.phidim_ext.outcome.kind == PhiKind::Exact,
    );
    expect("fix5 step bound holds", report.bound_holds == Some(true));

    Ok(CheckResult::new(
        "fixture exact values",
        cases,
        violations,
        1,
    ))
}

/// The two-sided tilting bound with exact phi-dimensions on both sides:
/// the regular module over every fixture, plus the two nontrivial tilting
/// fixtures.
pub fn check_tilting_bounds(phi_cfg: &PhiConfig, seed: u64) -> Result<CheckResult> {
    let mut cases = 0usize;
    let mut violations = Vec::new();
    let mut run = |name: &str,
                   a: &itphi::algebra::AlgebraRef,
                   t: &Module,
                   list: Option<Vec<Module>>,
                   want_pd: Option<usize>|
     -> Result<()> {
        cases += 1;
        let cfg = BongartzConfig {
            phi: *phi_cfg,
            seed,
            complete_list_a: list,
            ..BongartzConfig::default()
        };
        match bongartz_bound_check(a, t, &cfg) {
            Ok(report) => {
                if let Some(pd) = want_pd {
                    if report.pd_t != pd {
                        violations.push(format!("{name}: pd T = {} expected {pd}", report.pd_t));
                    }
                }
                match report.bound_holds {
                    Some(true) => {}
                    Some(false) => violations.push(format!(
                        "{name}: bound violated (phidim A = {}, phidim B = {}, pd T = {})",
                        report.phidim_a.outcome.value, report.phidim_b.outcome.value, report.pd_t
                    )),
                    None => violations.push(format!("{name}: phi-dimensions not exact")),
                }
            }
            Err(e) => violations.push(format!("{name}: {e}")),
        }
        Ok(())
    };

    // T = A over each fixture.
    let nakayama = vec![
        ("fix1 regular", KupischSeries::cyclic(vec![2])),
        ("fix2 regular", KupischSeries::linear(vec![3, 2, 1])),
        ("fix3 regular", KupischSeries::linear(vec![2, 2, 1])),
        ("fix4 regular", KupischSeries::cyclic(vec![2, 2])),
    ];
    for (name, series) in nakayama {
        let (a, list) = enumerate_indecomposables_nakayama(&series, 2)?;
        let t = Module::regular(&a);
        run(name, &a, &t, Some(list), Some(0))?;
    }
    {
        let ope = fixtures::fix5(2);
        let a = ope.algebra.clone();
        let t = Module::regular(&a);
        let list = fixtures::fix5_indecomposables(&ope);
        run("fix5 regular", &a, &t, Some(list), Some(0))?;
    }
    // Nontrivial tilting fixtures.
    {
        let (a, list) =
            enumerate_indecomposables_nakayama(&KupischSeries::linear(vec![3, 2, 1]), 2)?;
        let t = Module::direct_sum(&[
            projective_module(&a, 0)?,
            fixtures::interval_module_a3(&a, 0, 1)?,
            simple_module(&a, 0)?,
        ])?;
        run("fix2 apr tilt", &a, &t, Some(list), Some(1))?;
    }
    {
        let (a, list) =
            enumerate_indecomposables_nakayama(&KupischSeries::linear(vec![2, 2, 1]), 2)?;
        let t = Module::direct_sum(&[
            projective_module(&a, 0)?,
            projective_module(&a, 1)?,
            simple_module(&a, 1)?,
        ])?;
        run("fix3 tilt", &a, &t, Some(list), Some(1))?;
    }
    Ok(CheckResult::new("tilting bounds", cases, violations, 7))
}
