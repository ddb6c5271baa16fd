//! The homological calculus: modules by action matrices, hom spaces, tops and
//! radicals, minimal projective covers, syzygies, projective resolutions,
//! Ext and Tor dimensions, and vector-space duality.

use std::sync::Arc;

use once_cell::sync::OnceCell;

use crate::algebra::{same_algebra, unit_vec, AlgebraRef};
use crate::error::{Error, Result};
use crate::linalg::{FpMatrix, Subspace};

/// A left module given by one action matrix per algebra basis element.
/// Cloning is cheap (shared representation); modules are immutable values.
#[derive(Clone)]
pub struct Module(Arc<ModuleInner>);

pub struct ModuleInner {
    algebra: AlgebraRef,
    dim: usize,
    action: Vec<FpMatrix>,
    digest: OnceCell<Vec<u8>>,
    grading: OnceCell<Grading>,
    endo: OnceCell<Arc<Vec<FpMatrix>>>,
}

impl std::fmt::Debug for Module {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Module(dim={}, over {:?})", self.dim(), self.algebra())
    }
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(self.algebra(), other.algebra())
            && self.0.dim == other.0.dim
            && self.0.action == other.0.action
    }
}

impl Eq for Module {}

/// Decomposition of the underlying space into idempotent blocks, with the
/// change of basis to block coordinates.
pub struct Grading {
    pub(crate) blocks: Vec<Subspace>,
    pub(crate) offsets: Vec<usize>,
    pub(crate) dims: Vec<usize>,
    pub(crate) to_graded: FpMatrix,
    pub(crate) from_graded: FpMatrix,
}

impl Module {
    /// Builds a module and checks the axioms: the unit acts as the identity
    /// and the action respects every structure constant.
    pub fn new(algebra: AlgebraRef, dim: usize, action: Vec<FpMatrix>) -> Result<Module> {
        let m = Self::new_unchecked(algebra, dim, action);
        m.check_axioms()?;
        Ok(m)
    }

    /// Internal constructor for actions that are correct by construction.
    pub(crate) fn new_unchecked(algebra: AlgebraRef, dim: usize, action: Vec<FpMatrix>) -> Module {
        assert_eq!(
            action.len(),
            algebra.dim(),
            "one action matrix per basis element"
        );
        for a in &action {
            assert_eq!(a.rows(), dim);
            assert_eq!(a.cols(), dim);
        }
        Module(Arc::new(ModuleInner {
            algebra,
            dim,
            action,
            digest: OnceCell::new(),
            grading: OnceCell::new(),
            endo: OnceCell::new(),
        }))
    }

    fn check_axioms(&self) -> Result<()> {
        let a = self.algebra();
        let unit = self.rho(a.unit());
        if unit != FpMatrix::identity(a.p(), self.dim()) {
            return Err(Error::InvalidInput(
                "unit does not act as the identity".into(),
            ));
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let lhs = self.action(i).mul(self.action(j));
                let rhs = self.rho(a.basis_product(i, j));
                if lhs != rhs {
                    return Err(Error::InvalidInput(format!(
                        "action violates structure constants at basis pair ({i}, {j})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn zero(algebra: AlgebraRef) -> Module {
        let p = algebra.p();
        let action = (0..algebra.dim())
            .map(|_| FpMatrix::zeros(p, 0, 0))
            .collect();
        Module::new_unchecked(algebra, 0, action)
    }

    /// The left regular module.
    pub fn regular(algebra: &AlgebraRef) -> Module {
        let action = (0..algebra.dim())
            .map(|i| algebra.left_mult(&unit_vec(algebra.dim(), i)))
            .collect();
        Module::new_unchecked(algebra.clone(), algebra.dim(), action)
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.0.algebra
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn is_zero(&self) -> bool {
        self.0.dim == 0
    }

    pub fn action(&self, k: usize) -> &FpMatrix {
        &self.0.action[k]
    }

    /// Action matrix of an arbitrary algebra element.
    pub fn rho(&self, coords: &[u64]) -> FpMatrix {
        let p = self.algebra().p();
        let mut out = FpMatrix::zeros(p, self.dim(), self.dim());
        for (k, &c) in coords.iter().enumerate() {
            if c != 0 {
                out = out.add(&self.0.action[k].scale(c));
            }
        }
        out
    }

    pub fn rho_apply(&self, coords: &[u64], v: &[u64]) -> Vec<u64> {
        let p = self.algebra().p();
        let mut out = vec![0u64; self.dim()];
        for (k, &c) in coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let av = self.0.action[k].apply(v);
            for (o, x) in out.iter_mut().zip(av) {
                *o = (*o + c * x) % p;
            }
        }
        out
    }

    /// Content digest used for memoisation; exact, collision-free key.
    pub fn digest(&self) -> &[u8] {
        self.0.digest.get_or_init(|| {
            let mut bytes = Vec::new();
            bytes.extend_from_slice(&self.algebra().p().to_le_bytes());
            bytes.extend_from_slice(&self.algebra().fingerprint().to_le_bytes());
            bytes.extend_from_slice(&(self.dim() as u64).to_le_bytes());
            for m in &self.0.action {
                for r in 0..m.rows() {
                    for &x in m.row(r) {
                        bytes.extend_from_slice(&(x as u32).to_le_bytes());
                    }
                }
            }
            bytes
        })
    }

    pub fn grading(&self) -> &Grading {
        self.0.grading.get_or_init(|| {
            let a = self.algebra();
            let p = a.p();
            let n = self.dim();
            let mut blocks = Vec::new();
            let mut from = FpMatrix::zeros(p, n, n);
            let mut offsets = Vec::new();
            let mut dims = Vec::new();
            let mut col = 0usize;
            for e in a.idempotents() {
                let proj = self.rho(e);
                let block = proj.column_space();
                offsets.push(col);
                dims.push(block.dim());
                for v in block.basis() {
                    for (r, &x) in v.iter().enumerate() {
                        from.set(r, col, x);
                    }
                    col += 1;
                }
                blocks.push(block);
            }
            assert_eq!(col, n, "idempotent blocks must fill the module");
            let to = from.inverse().expect("block basis change invertible");
            Grading {
                blocks,
                offsets,
                dims,
                to_graded: to,
                from_graded: from,
            }
        })
    }

    /// Dimensions of the idempotent blocks e_i M.
    pub fn dimension_vector(&self) -> Vec<usize> {
        self.grading().dims.clone()
    }

    /// Cached basis of the endomorphism algebra as raw matrices.
    pub fn endo_basis(&self) -> Arc<Vec<FpMatrix>> {
        self.0
            .endo
            .get_or_init(|| {
                let maps = hom_basis(self, self).expect("endomorphisms of a module");
                Arc::new(maps.into_iter().map(|m| m.matrix).collect())
            })
            .clone()
    }

    /// Direct sum with block-diagonal action.
    pub fn direct_sum(parts: &[Module]) -> Result<Module> {
        let Some(first) = parts.first() else {
            return Err(Error::InvalidInput(
                "direct sum of an empty list needs an algebra".into(),
            ));
        };
        for m in parts {
            if !same_algebra(first.algebra(), m.algebra()) {
                return Err(Error::AlgebraMismatch);
            }
        }
        let a = first.algebra().clone();
        let dim = parts.iter().map(|m| m.dim()).sum();
        let action = (0..a.dim())
            .map(|k| {
                let blocks: Vec<&FpMatrix> = parts.iter().map(|m| m.action(k)).collect();
                FpMatrix::block_diag(&blocks)
            })
            .collect();
        Ok(Module::new_unchecked(a, dim, action))
    }

    /// Submodule on an action-closed subspace; returns the module and the
    /// inclusion matrix (ambient dim x subspace dim).
    pub fn submodule(&self, space: &Subspace) -> Result<(Module, FpMatrix)> {
        let a = self.algebra().clone();
        let p = a.p();
        let k = space.dim();
        let mut incl = FpMatrix::zeros(p, self.dim(), k);
        for (c, v) in space.basis().iter().enumerate() {
            for (r, &x) in v.iter().enumerate() {
                incl.set(r, c, x);
            }
        }
        let mut action = Vec::with_capacity(a.dim());
        for b in 0..a.dim() {
            let mut sub = FpMatrix::zeros(p, k, k);
            for (c, v) in space.basis().iter().enumerate() {
                let w = self.action(b).apply(v);
                let coords = space.coords(&w).ok_or_else(|| {
                    Error::Internal("subspace not closed under the action".into())
                })?;
                for (r, &x) in coords.iter().enumerate() {
                    sub.set(r, c, x);
                }
            }
            action.push(sub);
        }
        Ok((Module::new_unchecked(a, k, action), incl))
    }

    /// Quotient by an action-closed subspace; returns the module and the
    /// projection matrix (quotient dim x ambient dim).
    pub fn quotient(&self, space: &Subspace) -> Result<(Module, FpMatrix)> {
        let a = self.algebra().clone();
        let p = a.p();
        let free = space.free_columns();
        let q = free.len();
        let mut proj = FpMatrix::zeros(p, q, self.dim());
        for j in 0..self.dim() {
            let coords = space.quotient_coords(&unit_vec_u(self.dim(), j));
            for (r, &x) in coords.iter().enumerate() {
                proj.set(r, j, x);
            }
        }
        let mut action = Vec::with_capacity(a.dim());
        for b in 0..a.dim() {
            let mut qa = FpMatrix::zeros(p, q, q);
            for (c, &col) in free.iter().enumerate() {
                let w = self.action(b).apply(&unit_vec_u(self.dim(), col));
                let coords = space.quotient_coords(&w);
                for (r, &x) in coords.iter().enumerate() {
                    qa.set(r, c, x);
                }
            }
            action.push(qa);
        }
        Ok((Module::new_unchecked(a, q, action), proj))
    }

    /// Vector-space dual as a module over the opposite algebra: transposed
    /// action matrices, dimension preserved.
    pub fn dual(&self) -> Module {
        let op = self.algebra().opposite();
        let action = self.0.action.iter().map(|m| m.transpose()).collect();
        Module::new_unchecked(op, self.dim(), action)
    }
}

fn unit_vec_u(dim: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0u64; dim];
    v[i] = 1;
    v
}

/// A homomorphism of modules kept with its matrix (target dim x source dim).
#[derive(Clone, Debug)]
pub struct ModuleMap {
    pub source: Module,
    pub target: Module,
    pub matrix: FpMatrix,
}

impl ModuleMap {
    pub fn verify(&self) -> bool {
        let a = self.source.algebra();
        if !same_algebra(a, self.target.algebra()) {
            return false;
        }
        a.generating_indices().iter().all(|&g| {
            self.target.action(g).mul(&self.matrix) == self.matrix.mul(self.source.action(g))
        })
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.dim() == self.target.dim() && self.matrix.inverse().is_some()
    }
}

/// Basis of Hom_A(M, N) as explicit matrices, solved blockwise through the
/// idempotent grading and the generator equations.
pub fn hom_basis(m: &Module, n: &Module) -> Result<Vec<ModuleMap>> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    if m.dim() == 0 || n.dim() == 0 {
        return Ok(Vec::new());
    }
    let a = m.algebra();
    let p = a.p();
    let gm = m.grading();
    let gn = n.grading();
    let blocks = a.idempotent_count();

    // Unknowns: one block of size dims_n[i] x dims_m[i] per idempotent.
    let mut unknown_offset = vec![0usize; blocks + 1];
    for i in 0..blocks {
        unknown_offset[i + 1] = unknown_offset[i] + gn.dims[i] * gm.dims[i];
    }
    let unknowns = unknown_offset[blocks];
    if unknowns == 0 {
        return Ok(Vec::new());
    }
    let block_of_n: Vec<usize> = block_index(&gn.dims);
    let block_of_m: Vec<usize> = block_index(&gm.dims);
    let uid = |i: usize, r: usize, c: usize| {
        unknown_offset[i] + (r - gn.offsets[i]) * gm.dims[i] + (c - gm.offsets[i])
    };

    let mut rows: Vec<Vec<u64>> = Vec::new();
    for &g in a.generating_indices() {
        let gn_mat = gn.to_graded.mul(&n.action(g).mul(&gn.from_graded));
        let gm_mat = gm.to_graded.mul(&m.action(g).mul(&gm.from_graded));
        for u in 0..n.dim() {
            for v in 0..m.dim() {
                let mut row = vec![0u64; unknowns];
                let mut nonzero = false;
                // sum_k gn[u,k] F[k,v] with block(k) == block(v)
                let bv = block_of_m[v];
                for k in gn.offsets[bv]..gn.offsets[bv] + gn.dims[bv] {
                    let c = gn_mat.get(u, k);
                    if c != 0 {
                        row[uid(bv, k, v)] = (row[uid(bv, k, v)] + c) % p;
                        nonzero = true;
                    }
                }
                // minus sum_k F[u,k] gm[k,v] with block(k) == block(u)
                let bu = block_of_n[u];
                for k in gm.offsets[bu]..gm.offsets[bu] + gm.dims[bu] {
                    let c = gm_mat.get(k, v);
                    if c != 0 {
                        let idx = uid(bu, u, k);
                        row[idx] = (row[idx] + p - c) % p;
                        nonzero = true;
                    }
                }
                if nonzero {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        // No generator equations (the algebra is spanned by the unit): every
        // block matrix intertwines.
        (0..unknowns)
            .map(|i| unit_vec_u(unknowns, i))
            .collect::<Vec<_>>()
    } else {
        FpMatrix::from_rows(p, rows)?.nullspace()
    };

    let mut out = Vec::new();
    for vec in kernel {
        let mut graded = FpMatrix::zeros(p, n.dim(), m.dim());
        for i in 0..blocks {
            for r in 0..gn.dims[i] {
                for c in 0..gm.dims[i] {
                    let v = vec[unknown_offset[i] + r * gm.dims[i] + c];
                    if v != 0 {
                        graded.set(gn.offsets[i] + r, gm.offsets[i] + c, v);
                    }
                }
            }
        }
        let matrix = gn.from_graded.mul(&graded.mul(&gm.to_graded));
        out.push(ModuleMap {
            source: m.clone(),
            target: n.clone(),
            matrix,
        });
    }
    Ok(out)
}

fn block_index(dims: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    for (i, &d) in dims.iter().enumerate() {
        out.extend(std::iter::repeat_n(i, d));
    }
    out
}

pub fn hom_dim(m: &Module, n: &Module) -> Result<usize> {
    Ok(hom_basis(m, n)?.len())
}

/// The radical submodule J.M as a subspace of the ambient coordinates.
pub fn radical_subspace(m: &Module) -> Subspace {
    let a = m.algebra();
    let mut s = Subspace::new(a.p(), m.dim());
    for r in a.radical_basis() {
        let mat = m.rho(r);
        for c in 0..m.dim() {
            s.insert(&mat.col_vec(c));
        }
    }
    s
}

/// rad M as a module with its inclusion, and the dimensions of the top
/// blocks e_i(M / rad M).
pub fn top_and_radical(m: &Module) -> Result<(Module, FpMatrix, Vec<usize>)> {
    let rad = radical_subspace(m);
    let (rad_mod, incl) = m.submodule(&rad)?;
    let tops = top_block_dims(m, &rad);
    Ok((rad_mod, incl, tops))
}

fn top_block_dims(m: &Module, rad: &Subspace) -> Vec<usize> {
    let a = m.algebra();
    let g = m.grading();
    let mut out = Vec::new();
    for (i, e) in a.idempotents().iter().enumerate() {
        let proj = m.rho(e);
        let mut block_rad = Subspace::new(a.p(), m.dim());
        for v in rad.basis() {
            block_rad.insert(&proj.apply(v));
        }
        let base = block_rad.dim();
        let mut grown = block_rad;
        let mut lifted = 0usize;
        for v in g.blocks[i].basis() {
            if grown.insert(v) {
                lifted += 1;
            }
        }
        debug_assert_eq!(grown.dim(), base + lifted);
        out.push(lifted);
    }
    out
}

/// Minimal projective cover of a module: the cover P0(M) as an explicit
/// direct sum of A.e_i copies, the epimorphism, and the kernel (the syzygy)
/// as a module with its inclusion.
pub struct ProjectivePresentation {
    pub cover: Module,
    /// Idempotent index of each indecomposable copy in the cover.
    pub summands: Vec<usize>,
    pub summand_offsets: Vec<usize>,
    pub summand_dims: Vec<usize>,
    /// Generator of each copy, in cover coordinates.
    pub generators: Vec<Vec<u64>>,
    /// dim M x dim P.
    pub epi: FpMatrix,
    pub kernel: Module,
    /// dim P x dim Omega.
    pub kernel_inclusion: FpMatrix,
}

/// Basis of A.e_i inside A, the projective module it carries, and the
/// coordinates of the generator e_i in that basis.
fn projective_data(a: &AlgebraRef, i: usize) -> Result<(Vec<Vec<u64>>, Module, Vec<u64>)> {
    if i >= a.idempotent_count() {
        return Err(Error::IndexOutOfRange(format!("idempotent {i}")));
    }
    let e = &a.idempotents()[i].clone();
    let mut space = Subspace::new(a.p(), a.dim());
    for k in 0..a.dim() {
        space.insert(&a.product(&unit_vec(a.dim(), k), e));
    }
    let regular = Module::regular(a);
    let (module, _incl) = regular.submodule(&space)?;
    let gen = space
        .coords(e)
        .ok_or_else(|| Error::Internal("idempotent not inside its own left ideal".into()))?;
    Ok((space.basis().to_vec(), module, gen))
}

/// The indecomposable projective P(i) = A.e_i with the left-regular action.
pub fn projective_module(a: &AlgebraRef, i: usize) -> Result<Module> {
    Ok(projective_data(a, i)?.1)
}

/// The simple top of P(i).
pub fn simple_module(a: &AlgebraRef, i: usize) -> Result<Module> {
    let pi = projective_module(a, i)?;
    let rad = radical_subspace(&pi);
    Ok(pi.quotient(&rad)?.0)
}

pub fn projective_cover(m: &Module) -> Result<ProjectivePresentation> {
    let a = m.algebra().clone();
    let p = a.p();
    if m.dim() == 0 {
        let zero = Module::zero(a.clone());
        return Ok(ProjectivePresentation {
            cover: zero.clone(),
            summands: vec![],
            summand_offsets: vec![],
            summand_dims: vec![],
            generators: vec![],
            epi: FpMatrix::zeros(p, 0, 0),
            kernel: zero,
            kernel_inclusion: FpMatrix::zeros(p, 0, 0),
        });
    }
    let rad = radical_subspace(m);
    let grading = m.grading();

    // Lift a basis of each top block e_i(M/JM).
    let mut lifts: Vec<(usize, Vec<u64>)> = Vec::new();
    for (i, e) in a.idempotents().iter().enumerate() {
        let proj = m.rho(e);
        let mut grown = Subspace::new(p, m.dim());
        for v in rad.basis() {
            grown.insert(&proj.apply(v));
        }
        for v in grading.blocks[i].basis() {
            if grown.insert(v) {
                lifts.push((i, v.clone()));
            }
        }
    }

    // Candidate copies; prune any copy whose removal keeps the map onto.
    let mut copies: Vec<(usize, Vec<u64>)> = lifts;
    let build = |cop: &[(usize, Vec<u64>)]| -> Result<(Vec<Module>, Vec<Vec<Vec<u64>>>, Vec<Vec<u64>>, FpMatrix)> {
        let mut mods = Vec::new();
        let mut bases = Vec::new();
        let mut gens = Vec::new();
        let mut cols: Vec<Vec<u64>> = Vec::new();
        for (i, m0) in cop {
            let (basis, module, gen) = projective_data(&a, *i)?;
            for x in &basis {
                cols.push(m.rho_apply(x, m0));
            }
            mods.push(module);
            bases.push(basis);
            gens.push(gen);
        }
        let total: usize = mods.iter().map(|x| x.dim()).sum();
        let mut epi = FpMatrix::zeros(p, m.dim(), total);
        for (c, col) in cols.iter().enumerate() {
            for (r, &x) in col.iter().enumerate() {
                epi.set(r, c, x);
            }
        }
        Ok((mods, bases, gens, epi))
    };

    let (_, _, _, full_epi) = build(&copies)?;
    if full_epi.rank() != m.dim() {
        return Err(Error::Internal(
            "top lifts do not generate the module".into(),
        ));
    }
    let mut idx = 0;
    while idx < copies.len() {
        if copies.len() == 1 {
            break;
        }
        let mut trial = copies.clone();
        trial.remove(idx);
        let (_, _, _, epi) = build(&trial)?;
        if epi.rank() == m.dim() {
            copies = trial;
        } else {
            idx += 1;
        }
    }

    let (mods, _bases, gens, epi) = build(&copies)?;
    let cover = Module::direct_sum(&mods).unwrap_or_else(|_| Module::zero(a.clone()));
    let mut offsets = Vec::new();
    let mut dims = Vec::new();
    let mut off = 0usize;
    for md in &mods {
        offsets.push(off);
        dims.push(md.dim());
        off += md.dim();
    }
    let mut generators = Vec::new();
    for ((g, &o), d) in gens.iter().zip(&offsets).zip(&dims) {
        let mut v = vec![0u64; cover.dim()];
        for (k, &x) in g.iter().enumerate() {
            debug_assert!(k < *d);
            v[o + k] = x;
        }
        generators.push(v);
    }

    let kernel_space = {
        let mut s = Subspace::new(p, cover.dim());
        for v in epi.nullspace() {
            s.insert(&v);
        }
        s
    };
    let (kernel, kernel_inclusion) = if cover.dim() == 0 {
        (Module::zero(a.clone()), FpMatrix::zeros(p, 0, 0))
    } else {
        cover.submodule(&kernel_space)?
    };

    // Minimality: the kernel must lie inside rad P.
    if kernel.dim() > 0 {
        let rad_p = radical_subspace(&cover);
        for v in kernel_space.basis() {
            if !rad_p.contains(v) {
                return Err(Error::Internal(
                    "projective cover kernel escapes rad P".into(),
                ));
            }
        }
    }

    Ok(ProjectivePresentation {
        cover,
        summands: copies.iter().map(|(i, _)| *i).collect(),
        summand_offsets: offsets,
        summand_dims: dims,
        generators,
        epi,
        kernel,
        kernel_inclusion,
    })
}

/// The syzygy: kernel of the projective cover map.
pub fn syzygy(m: &Module) -> Result<Module> {
    Ok(projective_cover(m)?.kernel)
}

pub fn syzygy_iter(m: &Module, n: usize) -> Result<Module> {
    let mut cur = m.clone();
    for _ in 0..n {
        if cur.is_zero() {
            return Ok(cur);
        }
        cur = syzygy(&cur)?;
    }
    Ok(cur)
}

/// A module is projective iff its minimal cover has the same dimension.
pub fn is_projective(m: &Module) -> Result<bool> {
    if m.is_zero() {
        return Ok(true);
    }
    Ok(projective_cover(m)?.cover.dim() == m.dim())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PdBound {
    Finite(usize),
    AtLeast(usize),
}

impl PdBound {
    pub fn finite_value(&self) -> Option<usize> {
        match self {
            PdBound::Finite(d) => Some(*d),
            PdBound::AtLeast(_) => None,
        }
    }
}

/// Projective dimension with cutoff: Finite(d) iff Omega^d M is projective
/// with d minimal and d <= n_max.
pub fn pd_bounded(m: &Module, n_max: usize) -> Result<PdBound> {
    let mut cur = m.clone();
    for d in 0..=n_max {
        if is_projective(&cur)? {
            return Ok(PdBound::Finite(d));
        }
        cur = syzygy(&cur)?;
    }
    Ok(PdBound::AtLeast(n_max))
}

// ---------------------------------------------------------------------------
// Resolutions, Ext and Tor
// ---------------------------------------------------------------------------

/// Minimal projective resolution built step by step: `steps[k]` covers
/// Omega^k(base).
pub struct Resolution {
    base: Module,
    steps: Vec<ProjectivePresentation>,
}

impl Resolution {
    pub fn new(base: Module) -> Self {
        Resolution {
            base,
            steps: Vec::new(),
        }
    }

    /// Ensures covers are available for Omega^0 .. Omega^depth (stopping
    /// early once the syzygy vanishes).
    pub fn extend_to(&mut self, depth: usize) -> Result<()> {
        while self.steps.len() <= depth {
            let target = match self.steps.last() {
                None => self.base.clone(),
                Some(step) => step.kernel.clone(),
            };
            if target.is_zero() && !self.steps.is_empty() {
                break;
            }
            self.steps.push(projective_cover(&target)?);
        }
        Ok(())
    }

    /// The k-th projective term (zero module once the resolution has ended).
    pub fn term(&self, k: usize) -> Option<&ProjectivePresentation> {
        self.steps.get(k)
    }

    /// d_k : P_k -> P_{k-1} for k >= 1, as a matrix.
    pub fn differential(&self, k: usize) -> Option<FpMatrix> {
        let cur = self.steps.get(k)?;
        let prev = self.steps.get(k - 1)?;
        Some(prev.kernel_inclusion.mul(&cur.epi))
    }
}

/// Hom(P, N) for a cover term P = sum of A.e_i copies is coordinatised by
/// the blocks e_i N. This captures those blocks for one module N.
struct HomBlocks {
    per_idempotent: Vec<Subspace>,
}

impl HomBlocks {
    fn new(n: &Module) -> Self {
        let g = n.grading();
        HomBlocks {
            per_idempotent: g.blocks.clone(),
        }
    }

    fn block(&self, i: usize) -> &Subspace {
        &self.per_idempotent[i]
    }
}

/// The cochain map Hom(P_k, N) -> Hom(P_{k+1}, N) induced by d_{k+1}.
fn hom_induced(
    res: &Resolution,
    k: usize,
    n: &Module,
    blocks: &HomBlocks,
) -> Result<Option<FpMatrix>> {
    let p = n.algebra().p();
    let Some(cur) = res.term(k) else {
        return Ok(None);
    };
    let Some(next) = res.term(k + 1) else {
        // Resolution ended: target space is zero.
        let rows = 0;
        let cols: usize = cur.summands.iter().map(|&i| blocks.block(i).dim()).sum();
        return Ok(Some(FpMatrix::zeros(p, rows, cols)));
    };
    let d = res.differential(k + 1).expect("differential exists");
    let col_dims: Vec<usize> = cur
        .summands
        .iter()
        .map(|&i| blocks.block(i).dim())
        .collect();
    let row_dims: Vec<usize> = next
        .summands
        .iter()
        .map(|&j| blocks.block(j).dim())
        .collect();
    let col_off = offsets_of(&col_dims);
    let row_off = offsets_of(&row_dims);
    let mut out = FpMatrix::zeros(p, row_dims.iter().sum(), col_dims.iter().sum());
    for (t, gen) in next.generators.iter().enumerate() {
        let image = d.apply(gen); // element of P_k in cover coordinates
        for (s, &i_s) in cur.summands.iter().enumerate() {
            // Component of the image in summand s, as an algebra element.
            let v_ts = summand_component(cur, s, &image, n.algebra())?;
            if v_ts.iter().all(|&x| x == 0) {
                continue;
            }
            let rho = n.rho(&v_ts);
            let src = blocks.block(i_s);
            let dst = blocks.block(next.summands[t]);
            for (c, base_vec) in src.basis().iter().enumerate() {
                let w = rho.apply(base_vec);
                let coords = dst
                    .coords(&w)
                    .ok_or_else(|| Error::Internal("hom block image escapes its block".into()))?;
                for (r, &x) in coords.iter().enumerate() {
                    if x != 0 {
                        let rr = row_off[t] + r;
                        let cc = col_off[s] + c;
                        let cur_v = out.get(rr, cc);
                        out.set(rr, cc, (cur_v + x) % p);
                    }
                }
            }
        }
    }
    Ok(Some(out))
}

fn offsets_of(dims: &[usize]) -> Vec<usize> {
    let mut off = Vec::with_capacity(dims.len());
    let mut acc = 0;
    for &d in dims {
        off.push(acc);
        acc += d;
    }
    off
}

/// Component of a cover element in summand `s`, expanded to algebra
/// coordinates via the summand's basis of A.e_i.
fn summand_component(
    step: &ProjectivePresentation,
    s: usize,
    cover_elt: &[u64],
    a: &AlgebraRef,
) -> Result<Vec<u64>> {
    let (basis, _, _) = projective_data(a, step.summands[s])?;
    let off = step.summand_offsets[s];
    let d = step.summand_dims[s];
    let p = a.p();
    let mut out = vec![0u64; a.dim()];
    for (k, bvec) in basis.iter().enumerate().take(d) {
        let c = cover_elt[off + k];
        if c != 0 {
            for (o, &x) in out.iter_mut().zip(bvec) {
                *o = (*o + c * x) % p;
            }
        }
    }
    Ok(out)
}

/// dim Ext^i_A(M, N), from a minimal projective resolution of M.
pub fn ext_dim(m: &Module, n: &Module, i: usize) -> Result<usize> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    if m.is_zero() || n.is_zero() {
        return Ok(0);
    }
    let mut res = Resolution::new(m.clone());
    res.extend_to(i + 1)?;
    ext_dim_with(&mut res, n, i)
}

/// Ext via an already-built resolution (reused across degrees).
pub fn ext_dim_with(res: &mut Resolution, n: &Module, i: usize) -> Result<usize> {
    res.extend_to(i + 1)?;
    let blocks = HomBlocks::new(n);
    let Some(cur) = res.term(i) else { return Ok(0) };
    if cur.cover.is_zero() {
        return Ok(0);
    }
    let d_out = hom_induced(res, i, n, &blocks)?.expect("current term exists");
    let ker = d_out.cols() - d_out.rank();
    if i == 0 {
        return Ok(ker);
    }
    let d_in = hom_induced(res, i - 1, n, &blocks)?.expect("previous term exists");
    Ok(ker - d_in.rank())
}

/// dim Tor_i^A(X, N) for X a module over the opposite algebra (a right
/// A-module) and N a left A-module. Computed from a minimal projective
/// resolution of X over A^op tensored with N.
pub fn tor_dim(x: &Module, n: &Module, i: usize) -> Result<usize> {
    let expected = n.algebra().opposite();
    if !same_algebra(x.algebra(), &expected) {
        return Err(Error::AlgebraMismatch);
    }
    if x.is_zero() || n.is_zero() {
        return Ok(0);
    }
    let mut res = Resolution::new(x.clone());
    res.extend_to(i + 1)?;
    tor_dim_with(&mut res, n, i)
}

pub fn tor_dim_with(res: &mut Resolution, n: &Module, i: usize) -> Result<usize> {
    res.extend_to(i + 1)?;
    let blocks = HomBlocks::new(n);
    let Some(cur) = res.term(i) else { return Ok(0) };
    if cur.cover.is_zero() {
        return Ok(0);
    }
    // Chain map C_{k} -> C_{k-1}: same block recipe as the Hom complex, but
    // the tensor identification sends (A^op e_j) (x) N to e_j N, so the map
    // induced by d_k runs from the C_k blocks to the C_{k-1} blocks.
    let t_in = tensor_induced(res, i, n, &blocks)?; // C_i -> C_{i-1}
    let dim_ci: usize = cur.summands.iter().map(|&j| blocks.block(j).dim()).sum();
    let ker = match &t_in {
        Some(t) => dim_ci - t.rank(),
        None => dim_ci,
    };
    let t_next = tensor_induced(res, i + 1, n, &blocks)?; // C_{i+1} -> C_i
    let im = t_next.map(|t| t.rank()).unwrap_or(0);
    Ok(ker - im)
}

/// The map (Q_k (x) N) -> (Q_{k-1} (x) N) in block coordinates; None if k = 0
/// or the resolution has no k-th term.
fn tensor_induced(
    res: &Resolution,
    k: usize,
    n: &Module,
    blocks: &HomBlocks,
) -> Result<Option<FpMatrix>> {
    if k == 0 {
        return Ok(None);
    }
    let p = n.algebra().p();
    let Some(cur) = res.term(k) else {
        return Ok(None);
    };
    let Some(prev) = res.term(k - 1) else {
        return Ok(None);
    };
    let d = res.differential(k).expect("differential exists");
    let opposite = cur.cover.algebra().clone();
    let col_dims: Vec<usize> = cur
        .summands
        .iter()
        .map(|&j| blocks.block(j).dim())
        .collect();
    let row_dims: Vec<usize> = prev
        .summands
        .iter()
        .map(|&i| blocks.block(i).dim())
        .collect();
    let col_off = offsets_of(&col_dims);
    let row_off = offsets_of(&row_dims);
    let mut out = FpMatrix::zeros(p, row_dims.iter().sum(), col_dims.iter().sum());
    for (t, gen) in cur.generators.iter().enumerate() {
        let image = d.apply(gen);
        for (s, &i_s) in prev.summands.iter().enumerate() {
            // The resolution lives over the opposite algebra; expand the
            // component there. Coordinates are shared with the base algebra.
            let v_ts = summand_component(prev, s, &image, &opposite)?;
            if v_ts.iter().all(|&x| x == 0) {
                continue;
            }
            // v_ts is an element of A^op; as an A-element it acts on N
            // through the same coordinates.
            let rho = n.rho(&v_ts);
            let src = blocks.block(cur.summands[t]);
            let dst = blocks.block(i_s);
            for (c, base_vec) in src.basis().iter().enumerate() {
                let w = rho.apply(base_vec);
                let coords = dst.coords(&w).ok_or_else(|| {
                    Error::Internal("tensor block image escapes its block".into())
                })?;
                for (r, &x) in coords.iter().enumerate() {
                    if x != 0 {
                        let rr = row_off[s] + r;
                        let cc = col_off[t] + c;
                        let cur_v = out.get(rr, cc);
                        out.set(rr, cc, (cur_v + x) % p);
                    }
                }
            }
        }
    }
    Ok(Some(out))
}

/// Balanced-tensor dimension dim (X (x)_A N) computed directly from the
/// bilinear relations x.a (x) n - x (x) a.n. Used as an independent
/// cross-check of the resolution route in degree zero.
pub fn tensor_dim_direct(x: &Module, n: &Module) -> Result<usize> {
    let expected = n.algebra().opposite();
    if !same_algebra(x.algebra(), &expected) {
        return Err(Error::AlgebraMismatch);
    }
    if x.is_zero() || n.is_zero() {
        return Ok(0);
    }
    let a = n.algebra();
    let p = a.p();
    let (dx, dn) = (x.dim(), n.dim());
    let mut rel = Subspace::new(p, dx * dn);
    for k in 0..a.dim() {
        // right action of basis element k on X is the A^op action
        let xa = x.action(k);
        let an = n.action(k);
        for r in 0..dx {
            for c in 0..dn {
                // (x_r . a) (x) n_c - x_r (x) (a . n_c)
                let mut v = vec![0u64; dx * dn];
                for rr in 0..dx {
                    let coeff = xa.get(rr, r);
                    if coeff != 0 {
                        v[rr * dn + c] = (v[rr * dn + c] + coeff) % p;
                    }
                }
                for cc in 0..dn {
                    let coeff = an.get(cc, c);
                    if coeff != 0 {
                        v[r * dn + cc] = (v[r * dn + cc] + p - coeff) % p;
                    }
                }
                rel.insert(&v);
            }
        }
    }
    Ok(dx * dn - rel.dim())
}
