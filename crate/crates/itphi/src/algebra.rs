//! Basis-presented finite-dimensional algebras over F_p.
//!
//! An `AlgebraPresentation` stores structure constants, a unit, a complete
//! list of primitive orthogonal idempotents and a basis of the Jacobson
//! radical. Quiver algebras, endomorphism algebras, products, opposites and
//! one-point extensions all compile into this one representation.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use once_cell::sync::OnceCell;

use crate::error::{Error, Result};
use crate::linalg::{check_prime, FpMatrix, Subspace};
use crate::quiver::QuiverData;

pub type AlgebraRef = Arc<AlgebraPresentation>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    QuiverDerived,
    Endomorphism,
    Product,
    OnePointExtension,
    Opposite,
    Raw,
}

pub struct AlgebraPresentation {
    p: u64,
    dim: usize,
    /// mult[i][j] = coordinates of (basis i) * (basis j).
    mult: Vec<Vec<Vec<u64>>>,
    unit: Vec<u64>,
    idempotents: Vec<Vec<u64>>,
    radical: Vec<Vec<u64>>,
    provenance: Provenance,
    /// Path-basis bookkeeping for quiver-derived presentations.
    quiver: Option<QuiverData>,
    fingerprint: u64,
    gens: OnceCell<Vec<usize>>,
    opposite: OnceCell<AlgebraRef>,
    radical_span: OnceCell<Subspace>,
}

impl std::fmt::Debug for AlgebraPresentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "AlgebraPresentation(p={}, dim={}, idempotents={}, radical={}, {:?})",
            self.p,
            self.dim,
            self.idempotents.len(),
            self.radical.len(),
            self.provenance
        )
    }
}

impl PartialEq for AlgebraPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.dim == other.dim
            && self.mult == other.mult
            && self.unit == other.unit
            && self.idempotents == other.idempotents
            && self.radical == other.radical
    }
}

impl Eq for AlgebraPresentation {}

fn content_fingerprint(
    p: u64,
    dim: usize,
    mult: &[Vec<Vec<u64>>],
    unit: &[u64],
    idempotents: &[Vec<u64>],
    radical: &[Vec<u64>],
) -> u64 {
    let mut h = DefaultHasher::new();
    p.hash(&mut h);
    dim.hash(&mut h);
    mult.hash(&mut h);
    unit.hash(&mut h);
    idempotents.hash(&mut h);
    radical.hash(&mut h);
    h.finish()
}

impl AlgebraPresentation {
    /// Builds a presentation after shape checks. Mathematical invariants are
    /// checked separately by [`validate_algebra`].
    pub fn new(
        p: u64,
        mult: Vec<Vec<Vec<u64>>>,
        unit: Vec<u64>,
        idempotents: Vec<Vec<u64>>,
        radical: Vec<Vec<u64>>,
        provenance: Provenance,
    ) -> Result<AlgebraRef> {
        Self::with_quiver(p, mult, unit, idempotents, radical, provenance, None)
    }

    pub(crate) fn with_quiver(
        p: u64,
        mut mult: Vec<Vec<Vec<u64>>>,
        mut unit: Vec<u64>,
        mut idempotents: Vec<Vec<u64>>,
        mut radical: Vec<Vec<u64>>,
        provenance: Provenance,
        quiver: Option<QuiverData>,
    ) -> Result<AlgebraRef> {
        check_prime(p)?;
        let dim = mult.len();
        if dim == 0 {
            return Err(Error::InvalidInput("zero-dimensional algebra".into()));
        }
        for row in &mut mult {
            if row.len() != dim {
                return Err(Error::ShapeMismatch(
                    "structure constant table not square".into(),
                ));
            }
            for coords in row.iter_mut() {
                if coords.len() != dim {
                    return Err(Error::ShapeMismatch(
                        "structure constant vector length".into(),
                    ));
                }
                for c in coords.iter_mut() {
                    *c %= p;
                }
            }
        }
        let fix = |v: &mut Vec<u64>| -> Result<()> {
            if v.len() != dim {
                return Err(Error::ShapeMismatch("coordinate vector length".into()));
            }
            for c in v.iter_mut() {
                *c %= p;
            }
            Ok(())
        };
        fix(&mut unit)?;
        for e in idempotents.iter_mut() {
            fix(e)?;
        }
        for r in radical.iter_mut() {
            fix(r)?;
        }
        if idempotents.is_empty() {
            return Err(Error::InvalidInput("no idempotents supplied".into()));
        }
        let fingerprint = content_fingerprint(p, dim, &mult, &unit, &idempotents, &radical);
        Ok(Arc::new(AlgebraPresentation {
            p,
            dim,
            mult,
            unit,
            idempotents,
            radical,
            provenance,
            quiver,
            fingerprint,
            gens: OnceCell::new(),
            opposite: OnceCell::new(),
            radical_span: OnceCell::new(),
        }))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[u64] {
        &self.unit
    }

    pub fn idempotents(&self) -> &[Vec<u64>] {
        &self.idempotents
    }

    pub fn idempotent_count(&self) -> usize {
        self.idempotents.len()
    }

    pub fn radical_basis(&self) -> &[Vec<u64>] {
        &self.radical
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn quiver_data(&self) -> Option<&QuiverData> {
        self.quiver.as_ref()
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[u64] {
        &self.mult[i][j]
    }

    /// Product of two coordinate vectors.
    pub fn product(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut out = vec![0u64; self.dim];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let c = xi * yj % p;
                for (o, &m) in out.iter_mut().zip(&self.mult[i][j]) {
                    *o = (*o + c * m) % p;
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by `x` on the regular module.
    pub fn left_mult(&self, x: &[u64]) -> FpMatrix {
        let mut m = FpMatrix::zeros(self.p, self.dim, self.dim);
        for j in 0..self.dim {
            let mut ej = vec![0u64; self.dim];
            ej[j] = 1;
            let col = self.product(x, &ej);
            for (r, &v) in col.iter().enumerate() {
                m.set(r, j, v);
            }
        }
        m
    }

    /// Matrix of right multiplication by `x`.
    pub fn right_mult(&self, x: &[u64]) -> FpMatrix {
        let mut m = FpMatrix::zeros(self.p, self.dim, self.dim);
        for j in 0..self.dim {
            let mut ej = vec![0u64; self.dim];
            ej[j] = 1;
            let col = self.product(&ej, x);
            for (r, &v) in col.iter().enumerate() {
                m.set(r, j, v);
            }
        }
        m
    }

    pub fn radical_span(&self) -> &Subspace {
        self.radical_span.get_or_init(|| {
            Subspace::from_vectors(self.p, self.dim, self.radical.iter().map(|v| v.as_slice()))
        })
    }

    /// A small set of basis indices generating the algebra together with the
    /// unit. Used to cut down intertwining systems.
    pub fn generating_indices(&self) -> &[usize] {
        self.gens.get_or_init(|| {
            let mut gens = Vec::new();
            let mut span = Subspace::new(self.p, self.dim);
            span.insert(&self.unit);
            self.close_under_products(&mut span);
            for i in 0..self.dim {
                let mut ei = vec![0u64; self.dim];
                ei[i] = 1;
                if !span.contains(&ei) {
                    gens.push(i);
                    span.insert(&ei);
                    self.close_under_products(&mut span);
                }
            }
            gens
        })
    }

    fn close_under_products(&self, span: &mut Subspace) {
        loop {
            let basis: Vec<Vec<u64>> = span.basis().to_vec();
            let mut grew = false;
            for x in &basis {
                for y in &basis {
                    let prod = self.product(x, y);
                    if span.insert(&prod) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
    }

    /// The opposite algebra: transposed structure constants, identical
    /// idempotents and radical. Cached; the opposite of the opposite is
    /// structurally equal (not pointer-equal) to the original.
    pub fn opposite(self: &Arc<Self>) -> AlgebraRef {
        self.opposite
            .get_or_init(|| {
                let dim = self.dim;
                let mut mult = vec![vec![vec![0u64; dim]; dim]; dim];
                for i in 0..dim {
                    for j in 0..dim {
                        mult[i][j] = self.mult[j][i].clone();
                    }
                }
                AlgebraPresentation::new(
                    self.p,
                    mult,
                    self.unit.clone(),
                    self.idempotents.clone(),
                    self.radical.clone(),
                    Provenance::Opposite,
                )
                .expect("opposite of a valid presentation")
            })
            .clone()
    }
}

/// Pointer or structural equality of algebra presentations.
pub fn same_algebra(a: &AlgebraRef, b: &AlgebraRef) -> bool {
    Arc::ptr_eq(a, b) || (a.fingerprint == b.fingerprint && **a == **b)
}

/// Block-diagonal product of two algebras over the same prime.
pub fn product_algebra(a: &AlgebraRef, b: &AlgebraRef) -> Result<AlgebraRef> {
    if a.p != b.p {
        return Err(Error::PrimeMismatch);
    }
    let (da, db) = (a.dim, b.dim);
    let dim = da + db;
    let p = a.p;
    let embed_a = |v: &[u64]| {
        let mut w = vec![0u64; dim];
        w[..da].copy_from_slice(v);
        w
    };
    let embed_b = |v: &[u64]| {
        let mut w = vec![0u64; dim];
        w[da..].copy_from_slice(v);
        w
    };
    let mut mult = vec![vec![vec![0u64; dim]; dim]; dim];
    for i in 0..da {
        for j in 0..da {
            mult[i][j] = embed_a(&a.mult[i][j]);
        }
    }
    for i in 0..db {
        for j in 0..db {
            mult[da + i][da + j] = embed_b(&b.mult[i][j]);
        }
    }
    let mut unit = embed_a(&a.unit);
    for (k, &v) in b.unit.iter().enumerate() {
        unit[da + k] = v;
    }
    let mut idempotents: Vec<Vec<u64>> = a.idempotents.iter().map(|e| embed_a(e)).collect();
    idempotents.extend(b.idempotents.iter().map(|e| embed_b(e)));
    let mut radical: Vec<Vec<u64>> = a.radical.iter().map(|r| embed_a(r)).collect();
    radical.extend(b.radical.iter().map(|r| embed_b(r)));
    AlgebraPresentation::new(p, mult, unit, idempotents, radical, Provenance::Product)
}

/// Outcome of [`validate_algebra`]: empty `issues` means valid.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub dim: usize,
    pub idempotent_count: usize,
    pub radical_dim: usize,
    pub issues: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

/// Checks every structural invariant of a presentation: associativity, the
/// unit, idempotency/orthogonality/completeness of the idempotents, that the
/// radical basis spans a nilpotent two-sided ideal with semisimple quotient,
/// and primitivity of each idempotent (the corner algebra e.A.e is local).
pub fn validate_algebra(a: &AlgebraRef) -> ValidationReport {
    let mut issues = Vec::new();
    let d = a.dim;
    let p = a.p;

    // Associativity on basis triples. For large presentations a deterministic
    // pseudo-random sample keeps this affordable.
    let full = d <= 64;
    let triples: Vec<(usize, usize, usize)> = if full {
        (0..d)
            .flat_map(|i| (0..d).flat_map(move |j| (0..d).map(move |k| (i, j, k))))
            .collect()
    } else {
        let mut s = a.fingerprint | 1;
        let mut out = Vec::with_capacity(5000);
        for _ in 0..5000 {
            s = s
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            let i = (s >> 16) as usize % d;
            let j = (s >> 32) as usize % d;
            let k = (s >> 48) as usize % d;
            out.push((i, j, k));
        }
        out
    };
    'assoc: for (i, j, k) in triples {
        let ej = unit_vec(d, j);
        let ek = unit_vec(d, k);
        let left = a.product(&a.mult[i][j].clone(), &ek);
        let right = a.product(&unit_vec(d, i), &a.product(&ej, &ek));
        if left != right {
            issues.push(format!(
                "associativity fails on basis triple ({i}, {j}, {k})"
            ));
            break 'assoc;
        }
    }

    // Unit.
    for i in 0..d {
        let ei = unit_vec(d, i);
        if a.product(&a.unit, &ei) != ei || a.product(&ei, &a.unit) != ei {
            issues.push(format!(
                "unit does not act as identity on basis element {i}"
            ));
            break;
        }
    }

    // Idempotents: idempotent, pairwise orthogonal, summing to the unit.
    for (i, e) in a.idempotents.iter().enumerate() {
        if a.product(e, e) != *e {
            issues.push(format!("idempotent {i} is not idempotent"));
        }
    }
    for i in 0..a.idempotents.len() {
        for j in 0..a.idempotents.len() {
            if i != j {
                let prod = a.product(&a.idempotents[i], &a.idempotents[j]);
                if prod.iter().any(|&c| c != 0) {
                    issues.push(format!("idempotents {i} and {j} are not orthogonal"));
                }
            }
        }
    }
    let mut sum = vec![0u64; d];
    for e in &a.idempotents {
        for (s, &c) in sum.iter_mut().zip(e) {
            *s = (*s + c) % p;
        }
    }
    if sum != a.unit {
        issues.push("idempotents do not sum to the unit".into());
    }

    // Radical: two-sided ideal, nilpotent, free of idempotents, semisimple
    // quotient, dim(A/J) >= number of idempotents.
    let rad = a.radical_span();
    let rad_dim = rad.dim();
    let mut is_ideal = true;
    'ideal: for r in rad.basis() {
        for i in 0..d {
            let ei = unit_vec(d, i);
            if !rad.contains(&a.product(&ei, r)) || !rad.contains(&a.product(r, &ei)) {
                issues.push("radical basis does not span a two-sided ideal".into());
                is_ideal = false;
                break 'ideal;
            }
        }
    }
    if is_ideal && rad_dim > 0 {
        // Nilpotency via subspace powers.
        let mut power: Vec<Vec<u64>> = rad.basis().to_vec();
        let mut nilpotent = false;
        for _ in 0..d {
            let mut next = Subspace::new(p, d);
            for x in &power {
                for r in rad.basis() {
                    next.insert(&a.product(x, r));
                }
            }
            if next.dim() == 0 {
                nilpotent = true;
                break;
            }
            power = next.basis().to_vec();
        }
        if !nilpotent {
            issues.push("radical ideal is not nilpotent".into());
        }
        for (i, e) in a.idempotents.iter().enumerate() {
            if e.iter().any(|&c| c != 0) && rad.contains(e) {
                issues.push(format!("idempotent {i} lies in the radical"));
            }
        }
    }
    if d - rad_dim < a.idempotents.len() {
        issues.push("dim(A/J) smaller than the number of idempotents".into());
    }

    // Semisimplicity of A/J: the radical of the quotient must vanish.
    if is_ideal && issues.is_empty() {
        match crate::decomp::quotient_table_algebra(a, rad) {
            Ok(q) => match crate::decomp::table_radical_dim(&q) {
                Ok(0) => {}
                Ok(k) => issues.push(format!(
                    "quotient by supplied radical still has radical of dimension {k}"
                )),
                Err(e) => issues.push(format!("radical computation on quotient failed: {e}")),
            },
            Err(e) => issues.push(format!("could not form quotient algebra: {e}")),
        }
    }

    // Primitivity of each idempotent: the corner algebra is local.
    if issues.is_empty() {
        for (i, e) in a.idempotents.iter().enumerate() {
            match crate::decomp::corner_is_local(a, e) {
                Ok(true) => {}
                Ok(false) => issues.push(format!(
                    "idempotent {i} is not primitive (corner algebra not local)"
                )),
                Err(err) => issues.push(format!(
                    "corner locality test failed for idempotent {i}: {err}"
                )),
            }
        }
    }

    ValidationReport {
        dim: d,
        idempotent_count: a.idempotents.len(),
        radical_dim: rad_dim,
        issues,
    }
}

pub(crate) fn unit_vec(dim: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0u64; dim];
    v[i] = 1;
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fix1_validates() {
        let a = fixtures::fix1(2);
        let report = validate_algebra(&a);
        assert!(report.is_valid(), "issues: {:?}", report.issues);
        assert_eq!(report.idempotent_count, 1);
        assert_eq!(report.radical_dim, 1);
        assert_eq!(report.dim, 2);
    }

    #[test]
    fn fix2_validates() {
        let a = fixtures::fix2(2);
        let report = validate_algebra(&a);
        assert!(report.is_valid(), "issues: {:?}", report.issues);
        assert_eq!(report.idempotent_count, 3);
        assert_eq!(report.radical_dim, 3);
        assert_eq!(report.dim, 6);
    }

    #[test]
    fn broken_associativity_is_reported() {
        let a = fixtures::fix1(2);
        // Tamper with a structure constant to break associativity.
        let mut mult = (0..a.dim())
            .map(|i| {
                (0..a.dim())
                    .map(|j| a.basis_product(i, j).to_vec())
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>();
        mult[1][1] = vec![1, 0]; // x*x = 1 makes (x*x)*x != x*(x*x) with unit checks
        let b = AlgebraPresentation::new(
            2,
            mult,
            vec![1, 0],
            vec![vec![1, 0]],
            vec![vec![0, 1]],
            Provenance::Raw,
        )
        .unwrap();
        let report = validate_algebra(&b);
        assert!(!report.is_valid());
    }

    #[test]
    fn opposite_is_involutive_on_coordinates() {
        let a = fixtures::fix2(3);
        let op = a.opposite();
        let opop = op.opposite();
        assert!(same_algebra(&a, &opop));
        assert!(!Arc::ptr_eq(&a, &opop));
    }

    #[test]
    fn opposite_of_commutative_is_identical() {
        let a = fixtures::fix1(5);
        let op = a.opposite();
        assert_eq!(*a, *op);
    }

    #[test]
    fn product_dims_and_idempotents_add() {
        let a = fixtures::fix1(2);
        let k = fixtures::ground_field(2);
        let prod = product_algebra(&a, &k).unwrap();
        assert_eq!(prod.dim(), 3);
        assert_eq!(prod.idempotent_count(), 2);
        let report = validate_algebra(&prod);
        assert!(report.is_valid(), "issues: {:?}", report.issues);
    }

    #[test]
    fn product_prime_mismatch_rejected() {
        let a = fixtures::fix1(2);
        let b = fixtures::fix1(3);
        assert!(matches!(product_algebra(&a, &b), Err(Error::PrimeMismatch)));
    }

    #[test]
    fn semisimple_product_has_zero_radical() {
        let k1 = fixtures::ground_field(3);
        let k2 = fixtures::ground_field(3);
        let prod = product_algebra(&k1, &k2).unwrap();
        let report = validate_algebra(&prod);
        assert!(report.is_valid());
        assert_eq!(report.radical_dim, 0);
    }

    #[test]
    fn generating_indices_small_for_quiver_algebras() {
        let a = fixtures::fix2(2);
        let gens = a.generating_indices();
        // vertices + arrows suffice; the length-2 path is a product.
        assert!(gens.len() <= 5, "gens: {gens:?}");
    }
}
