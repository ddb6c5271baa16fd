//! K(A) as integer vectors over registered non-projective classes, the
//! syzygy action on classes, the function phi with exactness certificates,
//! d-divisions with module-level verification, and the Ext/Tor dimension
//! bridge.
//!
//! phi(M) is the index after the last strict drop in the rank trace of the
//! stacked syzygy-class matrices. Exactness is only claimed under one of two
//! certificates: the trace reached zero, or the classes reachable from M are
//! finite and closed under the syzygy action (then the kernel chain of the
//! action matrix stabilises within that many steps and the trace is provably
//! constant afterwards).

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::algebra::same_algebra;
use crate::decomp::{sums_isomorphic, ClassId, IsoRegistry};
use crate::error::{Error, Result};
use crate::linalg::{kernel_int, rank_int, IntMatrix};
use crate::module::{
    ext_dim_with, projective_cover, projective_module, syzygy_iter, tor_dim_with, Module,
    Resolution,
};

/// Element of K(A): integer multiplicities over the non-projective classes
/// of one registry. Only comparable within that registry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KVector {
    registry_id: u64,
    coeffs: BTreeMap<ClassId, i64>,
}

impl KVector {
    pub fn zero(registry_id: u64) -> Self {
        KVector {
            registry_id,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn registry_id(&self) -> u64 {
        self.registry_id
    }

    pub fn coeffs(&self) -> &BTreeMap<ClassId, i64> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn insert(&mut self, id: ClassId, mult: i64) {
        if mult != 0 {
            *self.coeffs.entry(id).or_insert(0) += mult;
            if self.coeffs[&id] == 0 {
                self.coeffs.remove(&id);
            }
        }
    }
}

/// Registers a module: decomposes it and returns its class vector in K(A)
/// (projective summands contribute nothing).
pub fn register(reg: &mut IsoRegistry, m: &Module, seed: u64) -> Result<KVector> {
    let full = reg.register_decomposition(m, seed)?;
    let mut kv = KVector::zero(reg.id());
    for (id, mult) in full {
        if !reg.is_projective_class(id) {
            kv.insert(id, mult as i64);
        }
    }
    Ok(kv)
}

/// The syzygy action on one non-projective class, memoised per registry.
pub fn omega_on_classes(reg: &mut IsoRegistry, c: ClassId, seed: u64) -> Result<KVector> {
    let raw = reg.omega_of_class(c, seed)?;
    let mut kv = KVector::zero(reg.id());
    for (id, mult) in raw {
        kv.insert(id, mult);
    }
    Ok(kv)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PhiCertificate {
    /// Some trace entry hit zero; the trace is zero forever after.
    RankZero,
    /// The reachable classes are finite and closed under the syzygy action;
    /// ranks were computed `extra_steps` levels past the reported value and
    /// are provably constant beyond.
    OmegaClosedFinite {
        classes: Vec<ClassId>,
        extra_steps: usize,
    },
    /// Computation stopped at the cutoff; the value is only a lower bound.
    Cutoff(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhiKind {
    Exact,
    LowerBound,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiOutcome {
    pub kind: PhiKind,
    pub value: usize,
    pub trace: Vec<usize>,
    pub certificate: PhiCertificate,
}

impl PhiOutcome {
    pub fn is_exact(&self) -> bool {
        self.kind == PhiKind::Exact
    }
}

#[derive(Debug, Clone, Copy)]
pub struct PhiConfig {
    pub n_max: usize,
    pub max_classes: usize,
    pub max_class_dim: usize,
}

impl Default for PhiConfig {
    fn default() -> Self {
        PhiConfig {
            n_max: 32,
            max_classes: 512,
            max_class_dim: 4096,
        }
    }
}

/// Shared expansion: levels of class vectors [Omega^n g_i], the integer rank
/// trace, and closure bookkeeping.
struct TraceData {
    levels: Vec<Vec<BTreeMap<ClassId, BigInt>>>,
    trace: Vec<usize>,
    seen: BTreeSet<ClassId>,
    closed: bool,
}

fn expand_trace(
    reg: &mut IsoRegistry,
    gens: &[ClassId],
    config: &PhiConfig,
    seed: u64,
) -> Result<TraceData> {
    let mut seen: BTreeSet<ClassId> = gens.iter().copied().collect();
    let row0: Vec<BTreeMap<ClassId, BigInt>> = gens
        .iter()
        .map(|&g| {
            let mut m = BTreeMap::new();
            m.insert(g, BigInt::from(1));
            m
        })
        .collect();
    let mut levels = vec![row0];
    let mut trace = vec![rank_of_rows(&levels[0], &seen)];
    let mut closed;
    loop {
        // A level is closed once every seen class has a memoised syzygy
        // vector whose support is again inside `seen`.
        closed = seen.iter().all(|&c| match reg.omega_memo_get(c) {
            Some(v) => v.iter().all(|&(id, _)| seen.contains(&id)),
            None => false,
        });
        let bound = if closed { seen.len() } else { config.n_max };
        if *trace.last().unwrap() == 0 {
            break;
        }
        if levels.len() > bound {
            break;
        }
        if !closed
            && (seen.len() > config.max_classes
                || seen
                    .iter()
                    .any(|&c| reg.class(c).rep.dim() > config.max_class_dim))
        {
            break;
        }
        // Next level by linearity over the class syzygies.
        let prev = levels.last().unwrap().clone();
        let mut next = Vec::with_capacity(prev.len());
        for row in &prev {
            let mut out: BTreeMap<ClassId, BigInt> = BTreeMap::new();
            for (&c, mult) in row {
                let omega = reg.omega_of_class(c, seed)?;
                for (id, k) in omega {
                    seen.insert(id);
                    let entry = out.entry(id).or_insert_with(BigInt::zero);
                    *entry += mult * BigInt::from(k);
                }
            }
            out.retain(|_, v| !v.is_zero());
            next.push(out);
        }
        trace.push(rank_of_rows(&next, &seen));
        levels.push(next);
    }
    // Trace must be non-increasing.
    for w in trace.windows(2) {
        if w[1] > w[0] {
            return Err(Error::Internal("rank trace increased".into()));
        }
    }
    Ok(TraceData {
        levels,
        trace,
        seen,
        closed,
    })
}

fn rows_to_matrix(rows: &[BTreeMap<ClassId, BigInt>], columns: &[ClassId]) -> IntMatrix {
    let mut m = IntMatrix::zeros(rows.len(), columns.len());
    for (r, row) in rows.iter().enumerate() {
        for (c, id) in columns.iter().enumerate() {
            if let Some(v) = row.get(id) {
                m.set(r, c, v.clone());
            }
        }
    }
    m
}

fn rank_of_rows(rows: &[BTreeMap<ClassId, BigInt>], seen: &BTreeSet<ClassId>) -> usize {
    let columns: Vec<ClassId> = seen.iter().copied().collect();
    rank_int(&rows_to_matrix(rows, &columns))
}

fn last_strict_drop(trace: &[usize]) -> usize {
    let mut last = 0;
    for i in 1..trace.len() {
        if trace[i] < trace[i - 1] {
            last = i;
        }
    }
    last
}

fn outcome_from_trace(data: &TraceData, config: &PhiConfig) -> PhiOutcome {
    let value = last_strict_drop(&data.trace);
    if *data.trace.last().unwrap() == 0 {
        return PhiOutcome {
            kind: PhiKind::Exact,
            value,
            trace: data.trace.clone(),
            certificate: PhiCertificate::RankZero,
        };
    }
    let t_prime = data.seen.len();
    if data.closed && data.trace.len() > t_prime {
        return PhiOutcome {
            kind: PhiKind::Exact,
            value,
            trace: data.trace.clone(),
            certificate: PhiCertificate::OmegaClosedFinite {
                classes: data.seen.iter().copied().collect(),
                extra_steps: t_prime - value,
            },
        };
    }
    PhiOutcome {
        kind: PhiKind::LowerBound,
        value,
        trace: data.trace.clone(),
        certificate: PhiCertificate::Cutoff(config.n_max),
    }
}

/// Distinct non-projective classes of a module, in registry order.
fn base_classes(reg: &mut IsoRegistry, m: &Module, seed: u64) -> Result<Vec<ClassId>> {
    let full = reg.register_decomposition(m, seed)?;
    let mut gens: Vec<ClassId> = full
        .into_iter()
        .filter(|&(id, _)| !reg.is_projective_class(id))
        .map(|(id, _)| id)
        .collect();
    gens.sort_unstable();
    gens.dedup();
    Ok(gens)
}

/// The Igusa-Todorov function phi with a shared registry.
pub fn phi_with_registry(
    reg: &mut IsoRegistry,
    m: &Module,
    config: &PhiConfig,
    seed: u64,
) -> Result<PhiOutcome> {
    if !same_algebra(reg.algebra(), m.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let gens = base_classes(reg, m, seed)?;
    if gens.is_empty() {
        return Ok(PhiOutcome {
            kind: PhiKind::Exact,
            value: 0,
            trace: vec![0],
            certificate: PhiCertificate::RankZero,
        });
    }
    let data = expand_trace(reg, &gens, config, seed)?;
    Ok(outcome_from_trace(&data, config))
}

/// Convenience wrapper with a fresh registry.
pub fn phi(m: &Module, config: &PhiConfig, seed: u64) -> Result<PhiOutcome> {
    let mut reg = IsoRegistry::new(m.algebra().clone())?;
    phi_with_registry(&mut reg, m, config, seed)
}

/// Stable isomorphism: M + P0(N) isomorphic to N + P0(M). The covers enter
/// through their known indecomposable summands, so only M and N themselves
/// are ever decomposed.
pub fn stable_iso(m: &Module, n: &Module) -> Result<bool> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let a = m.algebra();
    let pm = projective_cover(m)?;
    let pn = projective_cover(n)?;
    let mut left: Vec<Module> = vec![m.clone()];
    for &i in &pn.summands {
        left.push(projective_module(a, i)?);
    }
    let mut right: Vec<Module> = vec![n.clone()];
    for &i in &pm.summands {
        right.push(projective_module(a, i)?);
    }
    sums_isomorphic(&left, &right, STABLE_ISO_SEED)
}

const STABLE_ISO_SEED: u64 = 0x5ab1e150;

/// Decides whether Ext^i(M, -) and Ext^i(N, -) are isomorphic functors, via
/// equality of the (i-1)-th syzygy classes in K(A). Cross-checked against
/// the stable isomorphism of those syzygies.
pub fn ext_functor_iso(
    reg: &mut IsoRegistry,
    m: &Module,
    n: &Module,
    i: usize,
    seed: u64,
) -> Result<bool> {
    if i == 0 {
        return Err(Error::InvalidInput("degree must be positive".into()));
    }
    let sm = syzygy_iter(m, i - 1)?;
    let sn = syzygy_iter(n, i - 1)?;
    let km = register(reg, &sm, seed)?;
    let kn = register(reg, &sn, seed)?;
    let eq = km == kn;
    let stable = stable_iso(&sm, &sn)?;
    if stable != eq {
        return Err(Error::Internal(
            "class-vector equality disagrees with stable isomorphism".into(),
        ));
    }
    Ok(eq)
}

/// Tests whether (x, y) is a d-division of m: additively disjoint inside
/// add(m), with Ext-functor agreement from degree d+1 on but disagreement at
/// degree d (decided through syzygy classes).
pub fn is_d_division(
    reg: &mut IsoRegistry,
    x: &Module,
    y: &Module,
    d: usize,
    m: &Module,
    seed: u64,
) -> Result<bool> {
    if d == 0 {
        return Err(Error::InvalidInput(
            "division degree must be positive".into(),
        ));
    }
    let m_classes: BTreeSet<ClassId> = reg
        .register_decomposition(m, seed)?
        .into_iter()
        .map(|(id, _)| id)
        .collect();
    let x_classes: BTreeSet<ClassId> = reg
        .register_decomposition(x, seed)?
        .into_iter()
        .map(|(id, _)| id)
        .collect();
    let y_classes: BTreeSet<ClassId> = reg
        .register_decomposition(y, seed)?
        .into_iter()
        .map(|(id, _)| id)
        .collect();
    if !x_classes.is_subset(&m_classes) || !y_classes.is_subset(&m_classes) {
        return Err(Error::InvalidInput("arguments are not in add(m)".into()));
    }
    // (a) additive disjointness, projective classes included.
    if x_classes.intersection(&y_classes).next().is_some() {
        return Ok(false);
    }
    // (b) disagreement at degree d.
    let xm = register(reg, &syzygy_iter(x, d - 1)?, seed)?;
    let ym = register(reg, &syzygy_iter(y, d - 1)?, seed)?;
    if xm == ym {
        return Ok(false);
    }
    // (c) agreement at degree d+1.
    let xd = register(reg, &syzygy_iter(x, d)?, seed)?;
    let yd = register(reg, &syzygy_iter(y, d)?, seed)?;
    Ok(xd == yd)
}

/// Witnessed division found by the kernel search and confirmed on explicit
/// modules.
#[derive(Debug, Clone)]
pub struct DivisionWitness {
    pub d: usize,
    pub x_classes: Vec<(ClassId, usize)>,
    pub y_classes: Vec<(ClassId, usize)>,
    pub x_dim: usize,
    pub y_dim: usize,
    /// Dimensions of Omega^{d-1} and Omega^d of both sides, as computed
    /// during verification.
    pub syzygy_dims_x: (usize, usize),
    pub syzygy_dims_y: (usize, usize),
}

/// Independent oracle for phi through d-divisions: new integer kernel
/// vectors of the stacked class matrices at each level are split into
/// positive and negative parts and verified on explicit modules by honest
/// syzygy iteration and stable isomorphism. The maximal verified level is
/// phi(M).
pub fn phi_via_divisions(
    reg: &mut IsoRegistry,
    m: &Module,
    config: &PhiConfig,
    seed: u64,
) -> Result<(PhiOutcome, Vec<DivisionWitness>)> {
    if !same_algebra(reg.algebra(), m.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let gens = base_classes(reg, m, seed)?;
    if gens.is_empty() {
        return Ok((
            PhiOutcome {
                kind: PhiKind::Exact,
                value: 0,
                trace: vec![0],
                certificate: PhiCertificate::RankZero,
            },
            Vec::new(),
        ));
    }
    let data = expand_trace(reg, &gens, config, seed)?;
    let columns: Vec<ClassId> = data.seen.iter().copied().collect();
    let t = gens.len();

    let mut witnesses = Vec::new();
    let mut max_verified = 0usize;
    let mut kernel_prev: Vec<Vec<BigInt>> = Vec::new();
    for d in 1..data.levels.len() {
        let v_d = rows_to_matrix(&data.levels[d], &columns);
        let kernel_d = kernel_int(&v_d.transpose());
        for a in &kernel_d {
            if in_span(&kernel_prev, a) {
                continue;
            }
            // Split into positive and negative parts over the generator
            // classes of m.
            let mut x_classes = Vec::new();
            let mut y_classes = Vec::new();
            for (i, coeff) in a.iter().enumerate().take(t) {
                if coeff.is_zero() {
                    continue;
                }
                let mult = coeff
                    .to_i64()
                    .and_then(|v| usize::try_from(v.unsigned_abs()).ok())
                    .ok_or_else(|| Error::Internal("kernel coefficient overflow".into()))?;
                if coeff > &BigInt::zero() {
                    x_classes.push((gens[i], mult));
                } else {
                    y_classes.push((gens[i], mult));
                }
            }
            let build = |classes: &[(ClassId, usize)]| -> Result<Module> {
                let mut parts = Vec::new();
                for &(id, mult) in classes {
                    let rep = reg.class(id).rep.clone();
                    for _ in 0..mult {
                        parts.push(rep.clone());
                    }
                }
                if parts.is_empty() {
                    Ok(Module::zero(reg.algebra().clone()))
                } else {
                    Module::direct_sum(&parts)
                }
            };
            let x = build(&x_classes)?;
            let y = build(&y_classes)?;
            // Honest verification on the whole modules.
            let x_prev = syzygy_iter(&x, d - 1)?;
            let y_prev = syzygy_iter(&y, d - 1)?;
            let x_d = syzygy_iter(&x_prev, 1)?;
            let y_d = syzygy_iter(&y_prev, 1)?;
            if !stable_iso(&x_d, &y_d)? {
                return Err(Error::VerificationMismatch(format!(
                    "predicted agreement at level {d} fails on modules"
                )));
            }
            if stable_iso(&x_prev, &y_prev)? {
                return Err(Error::VerificationMismatch(format!(
                    "predicted disagreement at level {} fails on modules",
                    d - 1
                )));
            }
            witnesses.push(DivisionWitness {
                d,
                x_classes: x_classes.clone(),
                y_classes: y_classes.clone(),
                x_dim: x.dim(),
                y_dim: y.dim(),
                syzygy_dims_x: (x_prev.dim(), x_d.dim()),
                syzygy_dims_y: (y_prev.dim(), y_d.dim()),
            });
            max_verified = max_verified.max(d);
        }
        kernel_prev = kernel_d;
    }

    let outcome = outcome_from_trace(&data, config);
    if outcome.value != max_verified {
        return Err(Error::Internal(format!(
            "division level {} disagrees with trace value {}",
            max_verified, outcome.value
        )));
    }
    Ok((outcome, witnesses))
}

fn in_span(basis: &[Vec<BigInt>], v: &[BigInt]) -> bool {
    if basis.is_empty() {
        return v.iter().all(|x| x.is_zero());
    }
    let base = IntMatrix::from_rows(basis.to_vec()).expect("rectangular");
    let r0 = rank_int(&base);
    let mut rows = basis.to_vec();
    rows.push(v.to_vec());
    let r1 = rank_int(&IntMatrix::from_rows(rows).expect("rectangular"));
    r0 == r1
}

/// Degreewise comparison of Tor_i(D(M), N) against Ext^i(N, M).
#[derive(Debug, Clone)]
pub struct CeReport {
    pub tor_dims: Vec<usize>,
    pub ext_dims: Vec<usize>,
    pub violations: Vec<usize>,
}

impl CeReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn ce_duality_check(m: &Module, n: &Module, i_max: usize) -> Result<CeReport> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let dual_m = m.dual();
    let mut res_tor = Resolution::new(dual_m);
    let mut res_ext = Resolution::new(n.clone());
    let mut tor_dims = Vec::new();
    let mut ext_dims = Vec::new();
    let mut violations = Vec::new();
    for i in 0..=i_max {
        let t = if m.is_zero() || n.is_zero() {
            0
        } else {
            tor_dim_with(&mut res_tor, n, i)?
        };
        let e = if m.is_zero() || n.is_zero() {
            0
        } else {
            ext_dim_with(&mut res_ext, m, i)?
        };
        if t != e {
            violations.push(i);
        }
        tor_dims.push(t);
        ext_dims.push(e);
    }
    Ok(CeReport {
        tor_dims,
        ext_dims,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::module::{projective_module, simple_module};

    fn cfg() -> PhiConfig {
        PhiConfig::default()
    }

    #[test]
    fn omega_on_classes_examples() {
        let a = fixtures::fix3(2);
        let mut reg = IsoRegistry::new(a.clone()).unwrap();
        let s1 = simple_module(&a, 0).unwrap();
        let s2 = simple_module(&a, 1).unwrap();
        let k1 = register(&mut reg, &s1, 1).unwrap();
        let k2 = register(&mut reg, &s2, 1).unwrap();
        let c1 = *k1.coeffs().keys().next().unwrap();
        let c2 = *k2.coeffs().keys().next().unwrap();
        let o1 = omega_on_classes(&mut reg, c1, 1).unwrap();
        assert_eq!(o1.coeffs().len(), 1);
        assert_eq!(o1.coeffs().get(&c2), Some(&1));
        let o2 = omega_on_classes(&mut reg, c2, 1).unwrap();
        assert!(o2.is_zero());
    }

    #[test]
    fn omega_of_periodic_simple() {
        let a = fixtures::fix1(2);
        let mut reg = IsoRegistry::new(a.clone()).unwrap();
        let s = simple_module(&a, 0).unwrap();
        let k = register(&mut reg, &s, 1).unwrap();
        let c = *k.coeffs().keys().next().unwrap();
        let o = omega_on_classes(&mut reg, c, 1).unwrap();
        assert_eq!(o.coeffs().get(&c), Some(&1));
    }

    #[test]
    fn omega_of_projective_class_rejected() {
        let a = fixtures::fix3(2);
        let mut reg = IsoRegistry::new(a.clone()).unwrap();
        let p3 = projective_module(&a, 2).unwrap();
        let full = reg.register_decomposition(&p3, 1).unwrap();
        let id = full[0].0;
        assert!(reg.is_projective_class(id));
        assert!(omega_on_classes(&mut reg, id, 1).is_err());
    }

    #[test]
    fn phi_periodic_simple_is_zero() {
        let a = fixtures::fix1(2);
        let s = simple_module(&a, 0).unwrap();
        let out = phi(&s, &cfg(), 42).unwrap();
        assert_eq!(out.kind, PhiKind::Exact);
        assert_eq!(out.value, 0);
        assert!(matches!(
            out.certificate,
            PhiCertificate::OmegaClosedFinite { .. }
        ));
        assert!(out.trace.iter().all(|&r| r == 1));
    }

    #[test]
    fn phi_fix3_simples_is_two() {
        let a = fixtures::fix3(2);
        let s1 = simple_module(&a, 0).unwrap();
        let s2 = simple_module(&a, 1).unwrap();
        let m = Module::direct_sum(&[s1, s2]).unwrap();
        let out = phi(&m, &cfg(), 42).unwrap();
        assert_eq!(out.kind, PhiKind::Exact);
        assert_eq!(out.value, 2);
        assert_eq!(out.trace, vec![2, 1, 0]);
        assert_eq!(out.certificate, PhiCertificate::RankZero);
    }

    #[test]
    fn phi_of_projectives_is_zero() {
        let a = fixtures::fix2(2);
        let p1 = projective_module(&a, 0).unwrap();
        let p2 = projective_module(&a, 1).unwrap();
        let m = Module::direct_sum(&[p1, p2]).unwrap();
        let out = phi(&m, &cfg(), 42).unwrap();
        assert_eq!(out.kind, PhiKind::Exact);
        assert_eq!(out.value, 0);
        assert_eq!(out.trace, vec![0]);
    }

    #[test]
    fn phi_fix4_swap_is_zero() {
        let a = fixtures::fix4(2);
        let s1 = simple_module(&a, 0).unwrap();
        let s2 = simple_module(&a, 1).unwrap();
        let m = Module::direct_sum(&[s1, s2]).unwrap();
        let out = phi(&m, &cfg(), 42).unwrap();
        assert_eq!(out.kind, PhiKind::Exact);
        assert_eq!(out.value, 0);
        assert!(out.trace.iter().all(|&r| r == 2));
        assert!(matches!(
            out.certificate,
            PhiCertificate::OmegaClosedFinite { .. }
        ));
    }

    #[test]
    fn stable_iso_ignores_projectives() {
        let a = fixtures::fix1(2);
        let s = simple_module(&a, 0).unwrap();
        let reg_mod = Module::regular(&a);
        let m = Module::direct_sum(&[s.clone(), reg_mod]).unwrap();
        assert!(stable_iso(&s, &m).unwrap());
        assert!(stable_iso(&s, &s).unwrap());
    }

    #[test]
    fn stable_iso_distinguishes_classes() {
        let a = fixtures::fix3(2);
        let s1 = simple_module(&a, 0).unwrap();
        let s2 = simple_module(&a, 1).unwrap();
        assert!(!stable_iso(&s1, &s2).unwrap());
    }

    #[test]
    fn ext_functor_iso_examples() {
        let a = fixtures::fix3(2);
        let mut reg = IsoRegistry::new(a.clone()).unwrap();
        let s1 = simple_module(&a, 0).unwrap();
        let s2 = simple_module(&a, 1).unwrap();
        assert!(ext_functor_iso(&mut reg, &s1, &s2, 3, 1).unwrap());
        assert!(!ext_functor_iso(&mut reg, &s1, &s2, 1, 1).unwrap());
        for i in 1..=3 {
            assert!(ext_functor_iso(&mut reg, &s1, &s1, i, 1).unwrap());
        }
    }

    #[test]
    fn d_division_examples() {
        let a = fixtures::fix3(2);
        let mut reg = IsoRegistry::new(a.clone()).unwrap();
        let s1 = simple_module(&a, 0).unwrap();
        let s2 = simple_module(&a, 1).unwrap();
        let m = Module::direct_sum(&[s1.clone(), s2.clone()]).unwrap();
        assert!(is_d_division(&mut reg, &s1, &s2, 2, &m, 1).unwrap());
        assert!(!is_d_division(&mut reg, &s1, &s2, 1, &m, 1).unwrap());
        let zero = Module::zero(a.clone());
        assert!(is_d_division(&mut reg, &s1, &zero, 2, &m, 1).unwrap());
    }

    #[test]
    fn d_division_add_membership_enforced() {
        let a = fixtures::fix3(2);
        let mut reg = IsoRegistry::new(a.clone()).unwrap();
        let s1 = simple_module(&a, 0).unwrap();
        let s2 = simple_module(&a, 1).unwrap();
        let err = is_d_division(&mut reg, &s2, &s1, 1, &s1, 1);
        assert!(err.is_err());
    }

    #[test]
    fn divisions_oracle_on_fix3() {
        let a = fixtures::fix3(2);
        let mut reg = IsoRegistry::new(a.clone()).unwrap();
        let s1 = simple_module(&a, 0).unwrap();
        let s2 = simple_module(&a, 1).unwrap();
        let m = Module::direct_sum(&[s1, s2]).unwrap();
        let (out, witnesses) = phi_via_divisions(&mut reg, &m, &cfg(), 42).unwrap();
        assert_eq!(out.value, 2);
        assert_eq!(out.kind, PhiKind::Exact);
        assert!(witnesses.iter().any(|w| w.d == 2));
    }

    #[test]
    fn divisions_oracle_empty_for_periodic() {
        let a = fixtures::fix1(3);
        let mut reg = IsoRegistry::new(a.clone()).unwrap();
        let s = simple_module(&a, 0).unwrap();
        let (out, witnesses) = phi_via_divisions(&mut reg, &s, &cfg(), 42).unwrap();
        assert_eq!(out.value, 0);
        assert!(witnesses.is_empty());
    }

    #[test]
    fn divisions_oracle_projective_sum() {
        let a = fixtures::fix2(2);
        let mut reg = IsoRegistry::new(a.clone()).unwrap();
        let m = Module::direct_sum(&[
            projective_module(&a, 0).unwrap(),
            projective_module(&a, 1).unwrap(),
        ])
        .unwrap();
        let (out, witnesses) = phi_via_divisions(&mut reg, &m, &cfg(), 42).unwrap();
        assert_eq!(out.value, 0);
        assert!(witnesses.is_empty());
        assert_eq!(out.kind, PhiKind::Exact);
    }

    #[test]
    fn ce_duality_single_extension() {
        let a = fixtures::fix2(2);
        let s1 = simple_module(&a, 0).unwrap();
        let s2 = simple_module(&a, 1).unwrap();
        let report = ce_duality_check(&s2, &s1, 3).unwrap();
        assert!(report.holds(), "{report:?}");
        assert_eq!(report.ext_dims, vec![0, 1, 0, 0]);
    }

    #[test]
    fn ce_duality_projective_case() {
        let a = fixtures::fix3(2);
        let p1 = projective_module(&a, 0).unwrap();
        let s1 = simple_module(&a, 0).unwrap();
        let report = ce_duality_check(&p1, &s1, 3).unwrap();
        assert!(report.holds());
        for i in 1..=3 {
            assert_eq!(report.tor_dims[i], 0);
        }
    }

    #[test]
    fn ce_duality_periodic() {
        let a = fixtures::fix1(2);
        let s = simple_module(&a, 0).unwrap();
        let report = ce_duality_check(&s, &s, 3).unwrap();
        assert!(report.holds());
        assert_eq!(report.ext_dims, vec![1, 1, 1, 1]);
        assert_eq!(report.tor_dims, vec![1, 1, 1, 1]);
    }
}
