//! Bound-quiver input: path bases of kQ/I by degree-truncated reduction,
//! compilation to `AlgebraPresentation`, and Nakayama constructors from
//! Kupisch series.
//!
//! Paths are written in application order: the list `[a, b]` means "apply a
//! first, then b", i.e. the composite b.a. Admissibility of the relation
//! ideal is certified only up to the length bound L: the construction fails
//! unless every path of length L is witnessed inside the ideal.

use crate::algebra::{AlgebraPresentation, AlgebraRef, Provenance};
use crate::error::{Error, Result};
use crate::linalg::{check_prime, FpMatrix};
use crate::module::Module;

const PATH_BUDGET: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub label: String,
}

/// One summand of a relation: coefficient times a path (arrow indices in
/// application order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationTerm {
    pub coeff: u64,
    pub path: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverSpec {
    pub vertices: usize,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Vec<RelationTerm>>,
    pub p: u64,
    pub length_bound: usize,
}

/// A path of the quiver kept with a basis slot: arrow indices in application
/// order (empty list = vertex path).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathInfo {
    pub arrows: Vec<usize>,
    pub source: usize,
    pub target: usize,
}

/// Bookkeeping attached to quiver-derived presentations: the surviving path
/// basis and the arrow table, enough to interpret representations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverData {
    pub vertices: usize,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Vec<RelationTerm>>,
    /// `paths[k]` describes basis element k of the algebra.
    pub paths: Vec<PathInfo>,
}

impl QuiverSpec {
    pub fn validate(&self) -> Result<()> {
        if self.vertices == 0 {
            return Err(Error::EmptyQuiver);
        }
        check_prime(self.p)?;
        if self.length_bound < 2 {
            return Err(Error::InvalidInput(
                "length bound must be at least 2".into(),
            ));
        }
        let mut labels = std::collections::HashSet::new();
        for (i, a) in self.arrows.iter().enumerate() {
            if a.source >= self.vertices || a.target >= self.vertices {
                return Err(Error::IndexOutOfRange(format!("arrow {i} endpoint")));
            }
            if !labels.insert(a.label.clone()) {
                return Err(Error::InvalidInput(format!(
                    "duplicate arrow label {}",
                    a.label
                )));
            }
        }
        for (ri, rel) in self.relations.iter().enumerate() {
            if rel.is_empty() {
                return Err(Error::InvalidInput(format!("relation {ri} is empty")));
            }
            let endpoints = |path: &[usize]| -> Result<(usize, usize)> {
                if path.len() < 2 {
                    return Err(Error::InvalidInput(format!(
                        "relation {ri} contains a path of length {} (must be >= 2)",
                        path.len()
                    )));
                }
                let mut at = None;
                for &ai in path {
                    let a = self.arrows.get(ai).ok_or_else(|| {
                        Error::IndexOutOfRange(format!("relation {ri} arrow index {ai}"))
                    })?;
                    match at {
                        None => at = Some((a.source, a.target)),
                        Some((s, t)) => {
                            if a.source != t {
                                return Err(Error::InvalidInput(format!(
                                    "relation {ri} path is not composable"
                                )));
                            }
                            at = Some((s, a.target));
                        }
                    }
                }
                Ok(at.unwrap())
            };
            let first = endpoints(&rel[0].path)?;
            for term in &rel[1..] {
                if endpoints(&term.path)? != first {
                    return Err(Error::InvalidInput(format!(
                        "relation {ri} mixes paths with different endpoints"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Enumerated path of the free path category, with its global id.
#[derive(Debug, Clone)]
struct EnumPath {
    arrows: Vec<usize>,
    source: usize,
    target: usize,
}

/// Compiles a bound quiver to a basis-presented algebra. The basis consists
/// of the residues of paths of length < L surviving reduction modulo the
/// relation ideal (closed degreewise up to L). Fails with
/// `NotAdmissibleWithinBound` if some path of length L is not witnessed in
/// the ideal.
pub fn to_algebra(spec: &QuiverSpec) -> Result<AlgebraRef> {
    spec.validate()?;
    let l = spec.length_bound;
    let p = spec.p;

    // Enumerate all paths of length <= L, grouped by length.
    let mut paths: Vec<EnumPath> = Vec::new();
    let mut by_length: Vec<Vec<usize>> = vec![Vec::new(); l + 1];
    for v in 0..spec.vertices {
        by_length[0].push(paths.len());
        paths.push(EnumPath {
            arrows: vec![],
            source: v,
            target: v,
        });
    }
    for len in 1..=l {
        let prev: Vec<usize> = by_length[len - 1].clone();
        for pid in prev {
            let (tgt, src, arrows) = {
                let q = &paths[pid];
                (q.target, q.source, q.arrows.clone())
            };
            for (ai, a) in spec.arrows.iter().enumerate() {
                if a.source == tgt {
                    let mut next = arrows.clone();
                    next.push(ai);
                    by_length[len].push(paths.len());
                    paths.push(EnumPath {
                        arrows: next,
                        source: src,
                        target: a.target,
                    });
                    if paths.len() > PATH_BUDGET {
                        return Err(Error::InvalidInput(format!(
                            "path enumeration exceeds {PATH_BUDGET} paths; lower the length bound"
                        )));
                    }
                }
            }
        }
    }
    let total = paths.len();
    let path_id: std::collections::HashMap<Vec<usize>, usize> = paths
        .iter()
        .enumerate()
        .map(|(i, q)| {
            let mut key = vec![q.source];
            key.extend(q.arrows.iter().map(|&a| a + spec.vertices));
            (key, i)
        })
        .collect();
    let lookup = |source: usize, arrows: &[usize]| -> Option<usize> {
        let mut key = vec![source];
        key.extend(arrows.iter().map(|&a| a + spec.vertices));
        path_id.get(&key).copied()
    };

    // Reduction order: prefer eliminating longer paths, so residues skew short.
    // Column c of the echelon is the path with the c-th largest (length, id).
    let mut order: Vec<usize> = (0..total).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(paths[i].arrows.len()), i));
    let col_of: Vec<usize> = {
        let mut v = vec![0usize; total];
        for (c, &pid) in order.iter().enumerate() {
            v[pid] = c;
        }
        v
    };

    // Ideal generators u.r.v with every component of length <= L, collected
    // as vectors over path coordinates.
    let mut echelon = crate::linalg::Subspace::new(p, total);
    for rel in &spec.relations {
        let max_term = rel.iter().map(|t| t.path.len()).max().unwrap();
        // pre ends at the relation source; post starts at the relation target.
        let rel_source = {
            let a = &spec.arrows[rel[0].path[0]];
            a.source
        };
        let rel_target = {
            let a = &spec.arrows[*rel[0].path.last().unwrap()];
            a.target
        };
        for pre in 0..total {
            if paths[pre].target != rel_source {
                continue;
            }
            for post in 0..total {
                if paths[post].source != rel_target {
                    continue;
                }
                if paths[pre].arrows.len() + max_term + paths[post].arrows.len() > l {
                    continue;
                }
                let mut vec = vec![0u64; total];
                for term in rel {
                    let mut arrows = paths[pre].arrows.clone();
                    arrows.extend(&term.path);
                    arrows.extend(&paths[post].arrows);
                    let id = lookup(paths[pre].source, &arrows).expect("composite path enumerated");
                    vec[col_of[id]] = (vec[col_of[id]] + term.coeff) % p;
                }
                echelon.insert(&vec);
            }
        }
    }

    // Admissibility within the bound: every path of length exactly L must be
    // witnessed inside the ideal.
    for &pid in &by_length[l] {
        let mut vec = vec![0u64; total];
        vec[col_of[pid]] = 1;
        if !echelon.contains(&vec) {
            let labels: Vec<&str> = paths[pid]
                .arrows
                .iter()
                .map(|&a| spec.arrows[a].label.as_str())
                .collect();
            return Err(Error::NotAdmissibleWithinBound {
                bound: l,
                detail: format!("path {} not reducible within the bound", labels.join(".")),
            });
        }
    }

    // Surviving basis: short paths whose column is not a pivot.
    let pivot_cols: std::collections::HashSet<usize> = echelon
        .basis()
        .iter()
        .map(|row| row.iter().position(|&x| x != 0).unwrap())
        .collect();
    let mut survivors: Vec<usize> = Vec::new();
    for len in 0..l {
        for &pid in &by_length[len] {
            if !pivot_cols.contains(&col_of[pid]) {
                survivors.push(pid);
            }
        }
    }
    let dim = survivors.len();
    let survivor_slot: std::collections::HashMap<usize, usize> = survivors
        .iter()
        .enumerate()
        .map(|(slot, &pid)| (pid, slot))
        .collect();

    // Reduce a single path to coordinates over the surviving basis.
    let reduce_path = |pid: usize| -> Vec<u64> {
        let mut vec = vec![0u64; total];
        vec[col_of[pid]] = 1;
        let res = echelon.reduce(&vec);
        let mut out = vec![0u64; dim];
        for (c, &v) in res.iter().enumerate() {
            if v != 0 {
                let orig = order[c];
                let slot = survivor_slot
                    .get(&orig)
                    .expect("residual supported on surviving paths");
                out[*slot] = v;
            }
        }
        out
    };

    // Structure constants: product b_i * b_j is "path j then path i".
    let mut mult = vec![vec![vec![0u64; dim]; dim]; dim];
    for (i, &pi) in survivors.iter().enumerate() {
        for (j, &pj) in survivors.iter().enumerate() {
            if paths[pj].target != paths[pi].source {
                continue;
            }
            let len = paths[pi].arrows.len() + paths[pj].arrows.len();
            if len >= l {
                continue; // certified to lie in the ideal
            }
            let mut arrows = paths[pj].arrows.clone();
            arrows.extend(&paths[pi].arrows);
            let id = lookup(paths[pj].source, &arrows).expect("composite enumerated");
            mult[i][j] = reduce_path(id);
        }
    }

    let mut unit = vec![0u64; dim];
    let mut idempotents = Vec::with_capacity(spec.vertices);
    for (slot, &pid) in survivors.iter().enumerate() {
        if paths[pid].arrows.is_empty() {
            unit[slot] = 1;
            let mut e = vec![0u64; dim];
            e[slot] = 1;
            idempotents.push(e);
        }
    }
    let mut radical = Vec::new();
    for (slot, &pid) in survivors.iter().enumerate() {
        if !paths[pid].arrows.is_empty() {
            let mut r = vec![0u64; dim];
            r[slot] = 1;
            radical.push(r);
        }
    }

    let data = QuiverData {
        vertices: spec.vertices,
        arrows: spec.arrows.clone(),
        relations: spec.relations.clone(),
        paths: survivors
            .iter()
            .map(|&pid| PathInfo {
                arrows: paths[pid].arrows.clone(),
                source: paths[pid].source,
                target: paths[pid].target,
            })
            .collect(),
    };
    let algebra = AlgebraPresentation::with_quiver(
        p,
        mult,
        unit,
        idempotents,
        radical,
        Provenance::QuiverDerived,
        Some(data),
    )?;

    // Degree-bounded reduction of mixed-length relations can in principle
    // produce an inconsistent table; associativity is the cheap witness.
    if let Some(bad) = associativity_witness(&algebra) {
        return Err(Error::NotAdmissibleWithinBound {
            bound: l,
            detail: format!("reduced multiplication not associative at triple {bad:?}"),
        });
    }
    Ok(algebra)
}

fn associativity_witness(a: &AlgebraRef) -> Option<(usize, usize, usize)> {
    let d = a.dim();
    let unit = |i: usize| crate::algebra::unit_vec(d, i);
    let limit = if d <= 48 { d } else { 0 };
    if limit == 0 {
        // Sampled check for larger tables.
        let mut s = a.fingerprint() | 1;
        for _ in 0..4000 {
            s = s
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            let i = (s >> 16) as usize % d;
            let j = (s >> 32) as usize % d;
            let k = (s >> 48) as usize % d;
            let left = a.product(a.basis_product(i, j), &unit(k));
            let right = a.product(&unit(i), a.basis_product(j, k));
            if left != right {
                return Some((i, j, k));
            }
        }
        return None;
    }
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let left = a.product(a.basis_product(i, j), &unit(k));
                let right = a.product(&unit(i), a.basis_product(j, k));
                if left != right {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

/// Builds a module over a quiver-derived algebra from per-vertex dimensions
/// and one matrix per arrow (shape `dims[target] x dims[source]`).
pub fn module_from_representation(
    algebra: &AlgebraRef,
    dims: &[usize],
    arrow_matrices: &[FpMatrix],
) -> Result<Module> {
    let data = algebra
        .quiver_data()
        .ok_or_else(|| Error::InvalidInput("algebra is not quiver-derived".into()))?;
    if dims.len() != data.vertices {
        return Err(Error::ShapeMismatch(format!(
            "expected {} vertex dimensions, got {}",
            data.vertices,
            dims.len()
        )));
    }
    if arrow_matrices.len() != data.arrows.len() {
        return Err(Error::ShapeMismatch(format!(
            "expected {} arrow matrices, got {}",
            data.arrows.len(),
            arrow_matrices.len()
        )));
    }
    let p = algebra.p();
    for (ai, (a, m)) in data.arrows.iter().zip(arrow_matrices).enumerate() {
        if m.rows() != dims[a.target] || m.cols() != dims[a.source] {
            return Err(Error::ShapeMismatch(format!(
                "arrow {} ({}) needs a {}x{} matrix, got {}x{}",
                ai,
                a.label,
                dims[a.target],
                dims[a.source],
                m.rows(),
                m.cols()
            )));
        }
        if m.p() != p {
            return Err(Error::PrimeMismatch);
        }
    }
    let offsets: Vec<usize> = {
        let mut off = vec![0usize];
        for &d in dims {
            off.push(off.last().unwrap() + d);
        }
        off
    };
    let dim_total = *offsets.last().unwrap();

    // Composite of a path in application order, embedded in the total space.
    let path_matrix = |info: &PathInfo| -> FpMatrix {
        let mut comp = FpMatrix::identity(p, dims[info.source]);
        for &ai in &info.arrows {
            comp = arrow_matrices[ai].mul(&comp);
        }
        let mut big = FpMatrix::zeros(p, dim_total, dim_total);
        for r in 0..dims[info.target] {
            for c in 0..dims[info.source] {
                big.set(
                    offsets[info.target] + r,
                    offsets[info.source] + c,
                    comp.get(r, c),
                );
            }
        }
        big
    };

    // Relations must act as zero.
    for (ri, rel) in data.relations.iter().enumerate() {
        let mut acc: Option<FpMatrix> = None;
        for term in rel {
            let info = {
                let mut src = data.arrows[term.path[0]].source;
                let tgt = data.arrows[*term.path.last().unwrap()].target;
                let _ = &mut src;
                PathInfo {
                    arrows: term.path.clone(),
                    source: src,
                    target: tgt,
                }
            };
            let m = path_matrix(&info).scale(term.coeff);
            acc = Some(match acc {
                None => m,
                Some(prev) => prev.add(&m),
            });
        }
        let total_mat = acc.unwrap();
        if !total_mat.is_zero() {
            let witness = (0..dim_total)
                .find(|&c| (0..dim_total).any(|r| total_mat.get(r, c) != 0))
                .unwrap_or(0);
            return Err(Error::RelationViolated(format!(
                "relation {ri} acts nontrivially (witness coordinate {witness})"
            )));
        }
    }

    let action: Vec<FpMatrix> = data.paths.iter().map(path_matrix).collect();
    Ok(Module::new_unchecked(algebra.clone(), dim_total, action))
}

/// Reads the arrow action matrices back out of a module over a
/// quiver-derived algebra (inverse of `module_from_representation`).
pub fn representation_of_module(m: &Module) -> Result<(Vec<usize>, Vec<FpMatrix>)> {
    let algebra = m.algebra();
    let data = algebra
        .quiver_data()
        .ok_or_else(|| Error::InvalidInput("algebra is not quiver-derived".into()))?;
    let dims = m.dimension_vector();
    let grading = m.grading();
    let p = algebra.p();
    let mut arrow_mats = Vec::new();
    for (ai, arrow) in data.arrows.iter().enumerate() {
        let slot = data
            .paths
            .iter()
            .position(|info| info.arrows == vec![ai])
            .ok_or_else(|| Error::Internal("arrow path missing from basis".into()))?;
        let act = m.action(slot);
        // Extract the block from the source grading to the target grading.
        let mut block = FpMatrix::zeros(p, dims[arrow.target], dims[arrow.source]);
        let graded = grading.to_graded.mul(&act.mul(&grading.from_graded));
        let roff = grading.offsets[arrow.target];
        let coff = grading.offsets[arrow.source];
        for r in 0..dims[arrow.target] {
            for c in 0..dims[arrow.source] {
                block.set(r, c, graded.get(roff + r, coff + c));
            }
        }
        arrow_mats.push(block);
    }
    Ok((dims, arrow_mats))
}

// ---------------------------------------------------------------------------
// Nakayama algebras from Kupisch series
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KupischSeries {
    pub cyclic: bool,
    pub lengths: Vec<usize>,
}

impl KupischSeries {
    pub fn linear(lengths: Vec<usize>) -> Self {
        KupischSeries {
            cyclic: false,
            lengths,
        }
    }

    pub fn cyclic(lengths: Vec<usize>) -> Self {
        KupischSeries {
            cyclic: true,
            lengths,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.lengths.len();
        if n == 0 {
            return Err(Error::InvalidInput("empty Kupisch series".into()));
        }
        if self.lengths.contains(&0) {
            return Err(Error::InvalidInput(
                "Kupisch entries must be positive".into(),
            ));
        }
        if self.cyclic {
            if self.lengths.iter().any(|&c| c < 2) {
                return Err(Error::InvalidInput(
                    "cyclic Kupisch entries must be >= 2".into(),
                ));
            }
            for i in 0..n {
                let next = self.lengths[(i + 1) % n];
                if next + 1 < self.lengths[i] {
                    return Err(Error::InvalidInput(format!(
                        "Kupisch condition fails at position {i}: {} then {}",
                        self.lengths[i], next
                    )));
                }
            }
        } else {
            for i in 0..n - 1 {
                if self.lengths[i + 1] + 1 < self.lengths[i] {
                    return Err(Error::InvalidInput(format!(
                        "Kupisch condition fails at position {i}"
                    )));
                }
            }
            if *self.lengths.last().unwrap() != 1 {
                return Err(Error::InvalidInput(
                    "linear Kupisch series must end with 1".into(),
                ));
            }
            for (i, &c) in self.lengths.iter().enumerate() {
                if c > n - i {
                    return Err(Error::InvalidInput(format!(
                        "entry {c} at position {i} exceeds the quiver length"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Linear or cyclic Nakayama quiver with the monomial relations dictated by
/// the Kupisch series: the path of length c_i starting at vertex i is zero.
pub fn nakayama_from_kupisch(series: &KupischSeries, p: u64) -> Result<QuiverSpec> {
    series.validate()?;
    check_prime(p)?;
    let n = series.lengths.len();
    let mut arrows = Vec::new();
    if series.cyclic {
        for i in 0..n {
            arrows.push(Arrow {
                source: i,
                target: (i + 1) % n,
                label: format!("a{}", i + 1),
            });
        }
    } else {
        for i in 0..n - 1 {
            if series.lengths[i] >= 2 {
                arrows.push(Arrow {
                    source: i,
                    target: i + 1,
                    label: format!("a{}", i + 1),
                });
            }
        }
    }
    let arrow_from: Vec<Option<usize>> = (0..n)
        .map(|v| arrows.iter().position(|a| a.source == v))
        .collect();
    let mut relations = Vec::new();
    for (i, &c) in series.lengths.iter().enumerate() {
        // Walk c arrows starting at vertex i; if the walk exists it must die.
        let mut path = Vec::new();
        let mut at = i;
        let mut complete = true;
        for _ in 0..c {
            match arrow_from[at] {
                Some(ai) => {
                    path.push(ai);
                    at = arrows[ai].target;
                }
                None => {
                    complete = false;
                    break;
                }
            }
        }
        if complete {
            relations.push(vec![RelationTerm { coeff: 1, path }]);
        } else if !series.cyclic && c != n - i {
            return Err(Error::InvalidInput(format!(
                "projective length {c} at vertex {i} does not fit the linear quiver"
            )));
        }
    }
    let length_bound = series.lengths.iter().max().copied().unwrap_or(1) + 1;
    Ok(QuiverSpec {
        vertices: n,
        arrows,
        relations,
        p,
        length_bound: length_bound.max(2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::validate_algebra;
    use crate::fixtures;

    #[test]
    fn fix1_spec_dim_two() {
        let a = fixtures::fix1(2);
        assert_eq!(a.dim(), 2);
        assert_eq!(a.idempotent_count(), 1);
        assert_eq!(a.radical_basis().len(), 1);
    }

    #[test]
    fn fix2_spec_dim_six() {
        let a = fixtures::fix2(2);
        assert_eq!(a.dim(), 6);
    }

    #[test]
    fn fix3_spec_dim_five() {
        let a = fixtures::fix3(2);
        assert_eq!(a.dim(), 5);
    }

    #[test]
    fn to_algebra_outputs_validate() {
        for p in [2u64, 3, 5] {
            for a in [
                fixtures::fix1(p),
                fixtures::fix2(p),
                fixtures::fix3(p),
                fixtures::fix4(p),
            ] {
                let report = validate_algebra(&a);
                assert!(report.is_valid(), "p={p}: {:?}", report.issues);
            }
        }
    }

    #[test]
    fn relation_free_acyclic_dim_is_path_count() {
        // 1 -> 2 -> 3 without relations: 3 vertices + 2 arrows + 1 long path.
        let spec = QuiverSpec {
            vertices: 3,
            arrows: vec![
                Arrow {
                    source: 0,
                    target: 1,
                    label: "a".into(),
                },
                Arrow {
                    source: 1,
                    target: 2,
                    label: "b".into(),
                },
            ],
            relations: vec![],
            p: 2,
            length_bound: 4,
        };
        let a = to_algebra(&spec).unwrap();
        assert_eq!(a.dim(), 6);
    }

    #[test]
    fn inadmissible_loop_is_rejected() {
        let spec = QuiverSpec {
            vertices: 1,
            arrows: vec![Arrow {
                source: 0,
                target: 0,
                label: "x".into(),
            }],
            relations: vec![],
            p: 2,
            length_bound: 4,
        };
        match to_algebra(&spec) {
            Err(Error::NotAdmissibleWithinBound { .. }) => {}
            other => panic!("expected NotAdmissibleWithinBound, got {other:?}"),
        }
    }

    #[test]
    fn empty_quiver_rejected() {
        let spec = QuiverSpec {
            vertices: 0,
            arrows: vec![],
            relations: vec![],
            p: 2,
            length_bound: 3,
        };
        assert!(matches!(to_algebra(&spec), Err(Error::EmptyQuiver)));
    }

    #[test]
    fn interval_module_accepted() {
        let a = fixtures::fix2(2);
        let m12 = fixtures::interval_module_a3(&a, 0, 1).unwrap();
        assert_eq!(m12.dim(), 2);
        assert_eq!(m12.dimension_vector(), vec![1, 1, 0]);
    }

    #[test]
    fn relation_violation_detected() {
        let a = fixtures::fix3(2);
        // dims (1,1,1) with both arrows = identity violates the zero relation.
        let dims = [1usize, 1, 1];
        let one = FpMatrix::from_rows(2, vec![vec![1]]).unwrap();
        let res = module_from_representation(&a, &dims, &[one.clone(), one]);
        assert!(matches!(res, Err(Error::RelationViolated(_))));
    }

    #[test]
    fn zero_dims_give_zero_module() {
        let a = fixtures::fix2(3);
        let z = module_from_representation(
            &a,
            &[0, 0, 0],
            &[FpMatrix::zeros(3, 0, 0), FpMatrix::zeros(3, 0, 0)],
        )
        .unwrap();
        assert_eq!(z.dim(), 0);
    }

    #[test]
    fn representation_roundtrip() {
        let a = fixtures::fix2(5);
        let mats = vec![
            FpMatrix::from_rows(5, vec![vec![2], vec![0]]).unwrap(),
            FpMatrix::from_rows(5, vec![vec![1, 3]]).unwrap(),
        ];
        let m = module_from_representation(&a, &[1, 2, 1], &mats).unwrap();
        let (dims, back) = representation_of_module(&m).unwrap();
        assert_eq!(dims, vec![1, 2, 1]);
        assert_eq!(back, mats);
    }

    #[test]
    fn kupisch_series_validation() {
        assert!(KupischSeries::linear(vec![2, 2, 1]).validate().is_ok());
        assert!(KupischSeries::linear(vec![3, 1, 1]).validate().is_err());
        assert!(KupischSeries::cyclic(vec![2, 2]).validate().is_ok());
        assert!(KupischSeries::cyclic(vec![1, 2]).validate().is_err());
        assert!(KupischSeries::linear(vec![2, 2]).validate().is_err());
    }

    #[test]
    fn kupisch_221_matches_fix3() {
        let spec = nakayama_from_kupisch(&KupischSeries::linear(vec![2, 2, 1]), 2).unwrap();
        let a = to_algebra(&spec).unwrap();
        assert_eq!(a.dim(), 5);
        assert_eq!(a.idempotent_count(), 3);
    }

    #[test]
    fn kupisch_cyclic_2_matches_fix1() {
        let spec = nakayama_from_kupisch(&KupischSeries::cyclic(vec![2]), 2).unwrap();
        let a = to_algebra(&spec).unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.idempotent_count(), 1);
    }

    #[test]
    fn kupisch_cyclic_22_is_selfinjective_radsquare_zero() {
        let spec = nakayama_from_kupisch(&KupischSeries::cyclic(vec![2, 2]), 3).unwrap();
        let a = to_algebra(&spec).unwrap();
        assert_eq!(a.dim(), 4);
        // rad^2 = 0: product of any two radical basis elements vanishes.
        for r in a.radical_basis() {
            for s in a.radical_basis() {
                assert!(a.product(r, s).iter().all(|&c| c == 0));
            }
        }
    }
}
