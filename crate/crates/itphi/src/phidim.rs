//! The phi-dimension and its companions: exact values from complete lists of
//! indecomposables (Nakayama enumeration or caller-supplied), sampled lower
//! bounds, global dimension via the simples, and the consistency report
//! findim <= phidim <= gldim.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::algebra::AlgebraRef;
use crate::decomp::{are_isomorphic, IsoRegistry};
use crate::error::{Error, Result};
use crate::linalg::{FpMatrix, Subspace};
use crate::module::{
    pd_bounded, projective_module, radical_subspace, simple_module, syzygy, Module, PdBound,
};
use crate::phi::{phi_with_registry, PhiConfig, PhiKind, PhiOutcome};
use crate::quiver::{module_from_representation, nakayama_from_kupisch, to_algebra, KupischSeries};

/// phi of the direct sum of a complete irredundant list of indecomposables.
/// Completeness is the caller's responsibility (a trust boundary); duplicate
/// classes in the list are rejected.
pub fn phidim_exact(
    a: &AlgebraRef,
    indecomposables: &[Module],
    config: &PhiConfig,
    seed: u64,
) -> Result<PhiOutcome> {
    for (i, m) in indecomposables.iter().enumerate() {
        for (j, n) in indecomposables.iter().enumerate().skip(i + 1) {
            if are_isomorphic(m, n)? {
                return Err(Error::DuplicateClass(format!("entries {i} and {j}")));
            }
        }
    }
    let mut reg = IsoRegistry::new(a.clone())?;
    if indecomposables.is_empty() {
        return phi_with_registry(&mut reg, &Module::zero(a.clone()), config, seed);
    }
    let total = Module::direct_sum(indecomposables)?;
    phi_with_registry(&mut reg, &total, config, seed)
}

/// All indecomposables of a Nakayama algebra: the quotients P(i)/rad^j P(i)
/// for 1 <= j <= c_i. Returns the algebra they live over together with the
/// modules; the count is the sum of the Kupisch entries.
pub fn enumerate_indecomposables_nakayama(
    series: &KupischSeries,
    p: u64,
) -> Result<(AlgebraRef, Vec<Module>)> {
    let spec = nakayama_from_kupisch(series, p)?;
    let a = to_algebra(&spec)?;
    let mut out = Vec::new();
    for (i, &c) in series.lengths.iter().enumerate() {
        let pi = projective_module(&a, i)?;
        // rad^j chain inside P(i).
        let mut chain: Vec<Subspace> = vec![radical_subspace(&pi)];
        while chain.len() < c {
            let prev = chain.last().unwrap();
            let mut next = Subspace::new(a.p(), pi.dim());
            for r in a.radical_basis() {
                let mat = pi.rho(r);
                for v in prev.basis() {
                    next.insert(&mat.apply(v));
                }
            }
            chain.push(next);
        }
        for j in 1..=c {
            let (q, _) = pi.quotient(&chain[j - 1])?;
            debug_assert_eq!(q.dim(), j);
            out.push(q);
        }
    }
    Ok((a, out))
}

/// Configuration for the random module sampler.
#[derive(Debug, Clone, Copy)]
pub struct SamplerConfig {
    pub count: usize,
    pub dim_bound: usize,
    pub seed: u64,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            count: 16,
            dim_bound: 16,
            seed: 0,
        }
    }
}

/// Samples modules over an algebra. Quiver-derived algebras use random
/// representations with rejection against the relations (sparse matrices
/// keep monomial relations satisfiable; the all-zero representation is the
/// always-valid fallback). Other algebras are sampled through random
/// quotients of random projective sums.
pub fn sample_modules(a: &AlgebraRef, cfg: &SamplerConfig) -> Result<Vec<Module>> {
    let mut rng = ChaCha12Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::new();
    for _ in 0..cfg.count {
        let m = if a.quiver_data().is_some() {
            sample_representation(a, cfg.dim_bound, &mut rng)?
        } else {
            sample_projective_quotient(a, cfg.dim_bound, &mut rng)?
        };
        if !m.is_zero() {
            out.push(m);
        }
    }
    Ok(out)
}

fn sample_representation(
    a: &AlgebraRef,
    dim_bound: usize,
    rng: &mut ChaCha12Rng,
) -> Result<Module> {
    let data = a.quiver_data().expect("quiver-derived");
    let p = a.p();
    let verts = data.vertices;
    for attempt in 0..64 {
        let mut dims = vec![0usize; verts];
        let budget = rng.gen_range(1..=dim_bound.max(1));
        for _ in 0..budget {
            let v = rng.gen_range(0..verts);
            dims[v] += 1;
        }
        // Sparser matrices on later attempts: rejection against monomial
        // relations succeeds more often near zero.
        let density = 1.0 / (1.0 + attempt as f64 / 8.0);
        let mats: Vec<FpMatrix> = data
            .arrows
            .iter()
            .map(|arrow| {
                let (r, c) = (dims[arrow.target], dims[arrow.source]);
                let mut m = FpMatrix::zeros(p, r, c);
                for i in 0..r {
                    for j in 0..c {
                        if rng.gen_bool(density * 0.5) {
                            m.set(i, j, rng.gen_range(1..p));
                        }
                    }
                }
                m
            })
            .collect();
        match module_from_representation(a, &dims, &mats) {
            Ok(m) => return Ok(m),
            Err(Error::RelationViolated(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    // Semisimple fallback: zero maps always satisfy length >= 2 relations.
    let mut dims = vec![0usize; verts];
    dims[rng.gen_range(0..verts)] = 1;
    let mats: Vec<FpMatrix> = data
        .arrows
        .iter()
        .map(|arrow| FpMatrix::zeros(p, dims[arrow.target], dims[arrow.source]))
        .collect();
    module_from_representation(a, &dims, &mats)
}

fn sample_projective_quotient(
    a: &AlgebraRef,
    dim_bound: usize,
    rng: &mut ChaCha12Rng,
) -> Result<Module> {
    let p = a.p();
    let m_idem = a.idempotent_count();
    let mut parts = Vec::new();
    let mut total = 0usize;
    for _ in 0..(m_idem * 2) {
        let i = rng.gen_range(0..m_idem);
        let pi = projective_module(a, i)?;
        if total + pi.dim() > dim_bound.max(1) && !parts.is_empty() {
            break;
        }
        total += pi.dim();
        parts.push(pi);
        if rng.gen_bool(0.4) {
            break;
        }
    }
    if parts.is_empty() {
        parts.push(projective_module(a, rng.gen_range(0..m_idem))?);
    }
    let cover = Module::direct_sum(&parts)?;
    let rad = radical_subspace(&cover);
    if rad.dim() == 0 {
        return Ok(cover);
    }
    // Random submodule of rad P generated by a few random radical vectors.
    let gens = rng.gen_range(0..=2usize);
    let mut sub = Subspace::new(p, cover.dim());
    for _ in 0..gens {
        let mut v = vec![0u64; cover.dim()];
        for b in rad.basis() {
            let c = rng.gen_range(0..p);
            for (vi, &bi) in v.iter_mut().zip(b) {
                *vi = (*vi + c * bi) % p;
            }
        }
        sub.insert(&v);
    }
    // Close under the action.
    loop {
        let mut grew = false;
        for k in 0..a.dim() {
            for v in sub.basis().to_vec() {
                if sub.insert(&cover.action(k).apply(&v)) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    Ok(cover.quotient(&sub)?.0)
}

/// Result of the sampled phi search.
#[derive(Debug, Clone)]
pub struct LowerBoundReport {
    pub value: usize,
    /// True if the maximising module had an exact phi value.
    pub exact_at_witness: bool,
    pub witness: Module,
    pub modules_tried: usize,
}

/// Lower bound for the phi-dimension: the maximum of phi over sampled
/// modules, all simples, and syzygy closures to depth three.
pub fn phidim_lower_bound(
    a: &AlgebraRef,
    sampler: &SamplerConfig,
    config: &PhiConfig,
) -> Result<LowerBoundReport> {
    let mut pool = sample_modules(a, sampler)?;
    for i in 0..a.idempotent_count() {
        pool.push(simple_module(a, i)?);
    }
    let base = pool.clone();
    for m in base {
        let mut cur = m;
        for _ in 0..3 {
            cur = syzygy(&cur)?;
            if cur.is_zero() {
                break;
            }
            pool.push(cur.clone());
        }
    }
    let mut reg = IsoRegistry::new(a.clone())?;
    let mut best: Option<(usize, bool, Module)> = None;
    let tried = pool.len();
    for m in pool {
        let out = phi_with_registry(&mut reg, &m, config, sampler.seed)?;
        let exact = out.kind == PhiKind::Exact;
        if best
            .as_ref()
            .map(|(v, _, _)| out.value > *v)
            .unwrap_or(true)
        {
            best = Some((out.value, exact, m));
        }
    }
    let (value, exact_at_witness, witness) =
        best.ok_or_else(|| Error::Internal("empty sampling pool".into()))?;
    Ok(LowerBoundReport {
        value,
        exact_at_witness,
        witness,
        modules_tried: tried,
    })
}

/// Global dimension via the simple modules.
pub fn gldim_report(a: &AlgebraRef, n_max: usize) -> Result<PdBound> {
    let mut best = 0usize;
    for i in 0..a.idempotent_count() {
        let s = simple_module(a, i)?;
        match pd_bounded(&s, n_max)? {
            PdBound::Finite(d) => best = best.max(d),
            PdBound::AtLeast(n) => return Ok(PdBound::AtLeast(n)),
        }
    }
    Ok(PdBound::Finite(best))
}

#[derive(Debug, Clone)]
pub struct DimensionReport {
    pub findim_lb: usize,
    pub phidim: PhiOutcome,
    pub phidim_exact: bool,
    pub gldim: PdBound,
    pub consistent: bool,
}

#[derive(Debug, Clone)]
pub struct InequalityConfig {
    pub sampler: SamplerConfig,
    pub phi: PhiConfig,
    pub pd_cutoff: usize,
    /// Complete list of indecomposables when available (exact phi-dimension).
    pub complete_list: Option<Vec<Module>>,
}

impl Default for InequalityConfig {
    fn default() -> Self {
        InequalityConfig {
            sampler: SamplerConfig::default(),
            phi: PhiConfig::default(),
            pd_cutoff: 16,
            complete_list: None,
        }
    }
}

/// Assembles the chain findim <= phidim <= gldim with whatever exactness is
/// available; the verdict flags violations only between exact quantities.
pub fn inequality_report(a: &AlgebraRef, cfg: &InequalityConfig) -> Result<DimensionReport> {
    // Finitistic dimension lower bound: max finite pd over a pool.
    let mut pool = sample_modules(a, &cfg.sampler)?;
    for i in 0..a.idempotent_count() {
        pool.push(simple_module(a, i)?);
        pool.push(projective_module(a, i)?);
    }
    let mut findim_lb = 0usize;
    for m in &pool {
        if let PdBound::Finite(d) = pd_bounded(m, cfg.pd_cutoff)? {
            findim_lb = findim_lb.max(d);
        }
    }
    let (phidim, phidim_exact) = match &cfg.complete_list {
        Some(list) => {
            let out = phidim_exact(a, list, &cfg.phi, cfg.sampler.seed)?;
            let exact = out.kind == PhiKind::Exact;
            (out, exact)
        }
        None => {
            let lb = phidim_lower_bound(a, &cfg.sampler, &cfg.phi)?;
            (
                PhiOutcome {
                    kind: PhiKind::LowerBound,
                    value: lb.value,
                    trace: vec![],
                    certificate: crate::phi::PhiCertificate::Cutoff(cfg.phi.n_max),
                },
                false,
            )
        }
    };
    let gldim = gldim_report(a, cfg.pd_cutoff)?;
    let mut consistent = true;
    if phidim_exact {
        if findim_lb > phidim.value {
            consistent = false;
        }
        if let PdBound::Finite(g) = gldim {
            if phidim.value > g {
                consistent = false;
            }
        }
    } else if let PdBound::Finite(g) = gldim {
        // Even a lower bound must not exceed an exact global dimension.
        if phidim.value > g {
            consistent = false;
        }
    }
    if let PdBound::Finite(g) = gldim {
        if findim_lb > g {
            consistent = false;
        }
    }
    Ok(DimensionReport {
        findim_lb,
        phidim,
        phidim_exact,
        gldim,
        consistent,
    })
}

/// Enumerates indecomposable classes by sampled decomposition: random
/// modules of dimension up to the bound are decomposed into the registry
/// until `stable_rounds` consecutive sweeps find nothing new. Completeness
/// is heuristic, reliable for representation-finite algebras at desk scale.
pub fn enumerate_indecomposables_sampled(
    a: &AlgebraRef,
    dim_bound: usize,
    stable_rounds: usize,
    seed: u64,
) -> Result<Vec<Module>> {
    let mut reg = IsoRegistry::new(a.clone())?;
    for i in 0..a.idempotent_count() {
        reg.register_decomposition(&simple_module(a, i)?, seed)?;
        reg.register_decomposition(&projective_module(a, i)?, seed)?;
    }
    let mut quiet = 0usize;
    let mut round = 0u64;
    while quiet < stable_rounds && round < 256 {
        let before = reg.class_count();
        let cfg = SamplerConfig {
            count: 24,
            dim_bound,
            seed: seed ^ (round << 16),
        };
        for m in sample_modules(a, &cfg)? {
            reg.register_decomposition(&m, seed)?;
            // Chase syzygies of the new classes too.
            let s = syzygy(&m)?;
            if !s.is_zero() {
                reg.register_decomposition(&s, seed)?;
            }
        }
        if reg.class_count() == before {
            quiet += 1;
        } else {
            quiet = 0;
        }
        round += 1;
    }
    Ok(reg.classes().iter().map(|c| c.rep.clone()).collect())
}
