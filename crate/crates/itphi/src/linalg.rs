//! Exact linear algebra over prime fields F_p and over the integers.
//!
//! Everything downstream (hom spaces, syzygies, rank traces) reduces to the
//! routines here: row reduction mod p, solving with kernel bases, and
//! fraction-free integer rank / lattice kernel computations.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Primes are restricted below 2^16 so that a product of two residues plus a
/// carry always fits in a u64.
pub const MAX_PRIME: u64 = 1 << 16;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Checks that `p` is usable as a field characteristic.
pub fn check_prime(p: u64) -> Result<()> {
    if p >= MAX_PRIME {
        return Err(Error::InvalidInput(format!("prime {p} exceeds 2^16")));
    }
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    Ok(())
}

#[inline]
pub fn fp_add(p: u64, a: u64, b: u64) -> u64 {
    (a + b) % p
}

#[inline]
pub fn fp_sub(p: u64, a: u64, b: u64) -> u64 {
    (a + p - b % p) % p
}

#[inline]
pub fn fp_mul(p: u64, a: u64, b: u64) -> u64 {
    (a * b) % p
}

pub fn fp_pow(p: u64, mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Multiplicative inverse mod p, for a not divisible by p.
pub fn fp_inv(p: u64, a: u64) -> u64 {
    debug_assert!(a % p != 0, "inverse of zero mod {p}");
    fp_pow(p, a, p - 2)
}

// ---------------------------------------------------------------------------
// Matrices over F_p
// ---------------------------------------------------------------------------

/// Dense row-major matrix over F_p. Entries are kept reduced to [0, p).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix {}x{} mod {}", self.rows, self.cols, self.p)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl FpMatrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u64, rows: Vec<Vec<u64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|v| v.len()).unwrap_or(0);
        if rows.iter().any(|v| v.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            data.extend(row.into_iter().map(|x| x % p));
        }
        Ok(FpMatrix {
            p,
            rows: r,
            cols: c,
            data,
        })
    }

    /// Column vector from a slice.
    pub fn column(p: u64, v: &[u64]) -> Self {
        let mut m = Self::zeros(p, v.len(), 1);
        for (i, &x) in v.iter().enumerate() {
            m.set(i, 0, x);
        }
        m
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v % self.p;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col_vec(&self, c: usize) -> Vec<u64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, rhs: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        assert_eq!(self.p, rhs.p);
        let p = self.p;
        let mut out = FpMatrix::zeros(p, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                let lhs_row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let out_row = &mut out.data[r * rhs.cols..(r + 1) * rhs.cols];
                for (o, &b) in out_row.iter_mut().zip(lhs_row) {
                    *o = (*o + a * b) % p;
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let p = self.p;
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| (a + b) % p)
            .collect();
        FpMatrix {
            p,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, rhs: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let p = self.p;
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| (a + p - b) % p)
            .collect();
        FpMatrix {
            p,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, s: u64) -> FpMatrix {
        let p = self.p;
        let s = s % p;
        let data = self.data.iter().map(|&a| a * s % p).collect();
        FpMatrix {
            p,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, v.len());
        let p = self.p;
        (0..self.rows)
            .map(|r| {
                let mut acc = 0u64;
                for (c, &x) in v.iter().enumerate() {
                    acc = (acc + self.get(r, c) * x) % p;
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, mut e: usize) -> FpMatrix {
        assert_eq!(self.rows, self.cols);
        let mut acc = FpMatrix::identity(self.p, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        FpMatrix {
            p: self.p,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Place `other` to the right of `self`.
    pub fn hstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.rows, other.rows);
        let mut out = FpMatrix::zeros(self.p, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c));
            }
        }
        out
    }

    /// Block-diagonal sum.
    pub fn block_diag(blocks: &[&FpMatrix]) -> FpMatrix {
        let p = blocks.first().map(|b| b.p).unwrap_or(2);
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = FpMatrix::zeros(p, rows, cols);
        let (mut ro, mut co) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    out.set(ro + r, co + c, b.get(r, c));
                }
            }
            ro += b.rows;
            co += b.cols;
        }
        out
    }

    /// In-place reduced row echelon form; returns pivot column indices.
    pub fn rref(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut lead = 0usize;
        for col in 0..self.cols {
            if lead >= self.rows {
                break;
            }
            let mut pivot_row = None;
            for r in lead..self.rows {
                if self.get(r, col) != 0 {
                    pivot_row = Some(r);
                    break;
                }
            }
            let Some(pr) = pivot_row else { continue };
            if pr != lead {
                for c in 0..self.cols {
                    self.data.swap(pr * self.cols + c, lead * self.cols + c);
                }
            }
            let inv = fp_inv(p, self.get(lead, col));
            for c in col..self.cols {
                let v = self.get(lead, c) * inv % p;
                self.data[lead * self.cols + c] = v;
            }
            for r in 0..self.rows {
                if r == lead {
                    continue;
                }
                let f = self.get(r, col);
                if f == 0 {
                    continue;
                }
                let f = p - f;
                for c in col..self.cols {
                    let v =
                        (self.data[r * self.cols + c] + f * self.data[lead * self.cols + c]) % p;
                    self.data[r * self.cols + c] = v;
                }
            }
            pivots.push(col);
            lead += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel { x : self * x = 0 }, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<u64>> {
        let p = self.p;
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = Some(i);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut vec = vec![0u64; self.cols];
            vec[free] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                let coeff = m.get(row, free);
                if coeff != 0 {
                    vec[pc] = p - coeff;
                }
            }
            basis.push(vec);
        }
        basis
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = self.hstack(&FpMatrix::identity(self.p, n));
        let pivots = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        let mut inv = FpMatrix::zeros(self.p, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, aug.get(r, n + c));
            }
        }
        Some(inv)
    }

    /// Column span as a subspace of F_p^rows.
    pub fn column_space(&self) -> Subspace {
        let mut s = Subspace::new(self.p, self.rows);
        for c in 0..self.cols {
            s.insert(&self.col_vec(c));
        }
        s
    }
}

/// Rank of a matrix over F_p by exact row reduction.
pub fn rank_fp(m: &FpMatrix) -> usize {
    m.rank()
}

/// Output of `solve_fp`: one particular solution per requested column (absent
/// for inconsistent columns), plus a basis of the kernel of the coefficient
/// matrix.
#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub particulars: Vec<Option<Vec<u64>>>,
    pub kernel: Vec<Vec<u64>>,
}

/// Solves a * x = b column-by-column over F_p.
pub fn solve_fp(a: &FpMatrix, b: &FpMatrix) -> Result<SolveOutcome> {
    if a.rows() != b.rows() {
        return Err(Error::ShapeMismatch(format!(
            "coefficient matrix has {} rows, right-hand side has {}",
            a.rows(),
            b.rows()
        )));
    }
    if a.p() != b.p() {
        return Err(Error::PrimeMismatch);
    }
    let p = a.p();
    let mut aug = a.hstack(b);
    let pivots = aug.rref();
    let a_pivots: Vec<usize> = pivots.iter().copied().filter(|&c| c < a.cols()).collect();
    let mut particulars = Vec::with_capacity(b.cols());
    for j in 0..b.cols() {
        // Inconsistent iff some pivot sits in this b-column.
        let col = a.cols() + j;
        let inconsistent = pivots.contains(&col);
        if inconsistent {
            particulars.push(None);
            continue;
        }
        let mut x = vec![0u64; a.cols()];
        for (row, &pc) in a_pivots.iter().enumerate() {
            x[pc] = aug.get(row, col);
        }
        particulars.push(Some(x));
    }
    let _ = p;
    Ok(SolveOutcome {
        particulars,
        kernel: a.nullspace(),
    })
}

// ---------------------------------------------------------------------------
// Subspaces of F_p^n (reduced echelon bases)
// ---------------------------------------------------------------------------

/// Subspace of F_p^n maintained as a reduced row-echelon basis. Supports
/// membership, residual reduction and quotient coordinates (the non-pivot
/// columns parametrise F_p^n / W).
#[derive(Clone, Debug)]
pub struct Subspace {
    p: u64,
    ambient: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(p: u64, ambient: usize) -> Self {
        Subspace {
            p,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_vectors<'a, I: IntoIterator<Item = &'a [u64]>>(
        p: u64,
        ambient: usize,
        vecs: I,
    ) -> Self {
        let mut s = Self::new(p, ambient);
        for v in vecs {
            s.insert(v);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.rows
    }

    /// Residual of `v` after reduction against the stored basis.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.ambient);
        let p = self.p;
        let mut w: Vec<u64> = v.iter().map(|&x| x % p).collect();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = w[pc];
            if c != 0 {
                let f = p - c;
                for (wi, ri) in w.iter_mut().zip(row) {
                    *wi = (*wi + f * ri) % p;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Inserts `v`; returns true if the subspace grew.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        let mut w = self.reduce(v);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = fp_inv(self.p, w[pc]);
        for x in w.iter_mut() {
            *x = *x * inv % self.p;
        }
        // Back-substitute into existing rows to keep the basis reduced.
        let p = self.p;
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c != 0 {
                let f = p - c;
                for (ri, wi) in row.iter_mut().zip(&w) {
                    *ri = (*ri + f * wi) % p;
                }
            }
        }
        let pos = self
            .pivots
            .iter()
            .position(|&q| q > pc)
            .unwrap_or(self.pivots.len());
        self.pivots.insert(pos, pc);
        self.rows.insert(pos, w);
        true
    }

    /// Coordinates of a member with respect to the echelon basis (the basis
    /// is reduced, so coordinates are read off at the pivot columns).
    pub fn coords(&self, v: &[u64]) -> Option<Vec<u64>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&c| v[c] % self.p).collect())
    }

    /// Columns that are not pivots; these coordinates parametrise the quotient.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|c| !self.pivots.contains(c))
            .collect()
    }

    /// Coordinates of `v + W` in the quotient basis given by free columns.
    pub fn quotient_coords(&self, v: &[u64]) -> Vec<u64> {
        let r = self.reduce(v);
        self.free_columns().into_iter().map(|c| r[c]).collect()
    }

    /// Canonical representative with the given quotient coordinates.
    pub fn lift_quotient(&self, q: &[u64]) -> Vec<u64> {
        let free = self.free_columns();
        assert_eq!(free.len(), q.len());
        let mut v = vec![0u64; self.ambient];
        for (c, &x) in free.iter().zip(q) {
            v[*c] = x % self.p;
        }
        v
    }
}

// ---------------------------------------------------------------------------
// Integer matrices
// ---------------------------------------------------------------------------

/// Dense integer matrix with arbitrary-precision entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|v| v.len()).unwrap_or(0);
        if rows.iter().any(|v| v.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let data = rows.iter().flatten().map(|&x| BigInt::from(x)).collect();
        IntMatrix {
            rows: rows.len(),
            cols: rows.first().map(|v| v.len()).unwrap_or(0),
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let v = out.get(r, c) + a * rhs.get(k, c);
                    out.set(r, c, v);
                }
            }
        }
        out
    }
}

/// Rank over the rationals by fraction-free (Bareiss) elimination.
pub fn rank_int(m: &IntMatrix) -> usize {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut rank = 0usize;
    let mut denom = BigInt::one();
    let mut row = 0usize;
    for col in 0..cols {
        if row >= rows {
            break;
        }
        let mut pivot = None;
        for r in row..rows {
            if !a.get(r, col).is_zero() {
                pivot = Some(r);
                break;
            }
        }
        let Some(pr) = pivot else { continue };
        if pr != row {
            for c in 0..cols {
                let tmp = a.get(pr, c).clone();
                a.set(pr, c, a.get(row, c).clone());
                a.set(row, c, tmp);
            }
        }
        let piv = a.get(row, col).clone();
        for r in (row + 1)..rows {
            let factor = a.get(r, col).clone();
            for c in 0..cols {
                // Bareiss update with exact division by the previous pivot.
                let v = (a.get(r, c) * &piv - &factor * a.get(row, c)) / &denom;
                a.set(r, c, v);
            }
        }
        denom = piv;
        row += 1;
        rank += 1;
    }
    rank
}

/// Divides a vector by the gcd of its entries (makes it primitive).
fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for x in &v {
        g = g.gcd(x);
    }
    if g.is_zero() || g.is_one() {
        return v;
    }
    for x in v.iter_mut() {
        *x = &*x / &g;
    }
    v
}

/// Basis of the right kernel lattice { x in Z^cols : m * x = 0 }, computed by
/// unimodular row reduction of the transpose with a tracked transform. The
/// returned vectors are primitive and form a basis of the full (saturated)
/// kernel lattice.
pub fn kernel_int(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let b = m.transpose(); // n x r, kernel of m = left kernel of b
    let n = b.rows;
    let r = b.cols;
    let mut work = b.clone();
    let mut trans = IntMatrix::zeros(n, n);
    for i in 0..n {
        trans.set(i, i, BigInt::one());
    }
    let mut row = 0usize;
    for col in 0..r {
        if row >= n {
            break;
        }
        // Clear the column below `row` with unimodular row operations.
        loop {
            let mut pivot: Option<usize> = None;
            for rr in row..n {
                if !work.get(rr, col).is_zero() {
                    pivot = match pivot {
                        None => Some(rr),
                        Some(pr) => {
                            if work.get(rr, col).abs() < work.get(pr, col).abs() {
                                Some(rr)
                            } else {
                                Some(pr)
                            }
                        }
                    };
                }
            }
            let Some(pr) = pivot else { break };
            if pr != row {
                for c in 0..r {
                    let tmp = work.get(pr, c).clone();
                    work.set(pr, c, work.get(row, c).clone());
                    work.set(row, c, tmp);
                }
                for c in 0..n {
                    let tmp = trans.get(pr, c).clone();
                    trans.set(pr, c, trans.get(row, c).clone());
                    trans.set(row, c, tmp);
                }
            }
            let piv = work.get(row, col).clone();
            let mut all_cleared = true;
            for rr in (row + 1)..n {
                let q = work.get(rr, col) / &piv; // truncated division
                if !q.is_zero() {
                    for c in 0..r {
                        let v = work.get(rr, c) - &q * work.get(row, c);
                        work.set(rr, c, v);
                    }
                    for c in 0..n {
                        let v = trans.get(rr, c) - &q * trans.get(row, c);
                        trans.set(rr, c, v);
                    }
                }
                if !work.get(rr, col).is_zero() {
                    all_cleared = false;
                }
            }
            if all_cleared {
                row += 1;
                break;
            }
        }
    }
    // Rows of `work` that became zero give kernel vectors via `trans`.
    let mut out = Vec::new();
    for i in 0..n {
        if (0..r).all(|c| work.get(i, c).is_zero()) {
            let v: Vec<BigInt> = (0..n).map(|c| trans.get(i, c).clone()).collect();
            out.push(primitive(v));
        }
    }
    out
}
