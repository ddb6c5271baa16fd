//! Univariate polynomial arithmetic and factorisation over F_p.
//!
//! Used by the decomposition machinery: minimal polynomials of endomorphisms
//! are split into coprime irreducible parts to drive Fitting decompositions.
//! Polynomials are coefficient vectors, lowest degree first, with no trailing
//! zeros (the zero polynomial is the empty vector).

use rand::Rng;

use crate::linalg::{fp_inv, fp_mul, fp_sub};

pub type Poly = Vec<u64>;

pub fn trim(mut f: Poly) -> Poly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub fn deg(f: &Poly) -> Option<usize> {
    if f.is_empty() {
        None
    } else {
        Some(f.len() - 1)
    }
}

pub fn add(p: u64, f: &Poly, g: &Poly) -> Poly {
    let n = f.len().max(g.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let a = f.get(i).copied().unwrap_or(0);
        let b = g.get(i).copied().unwrap_or(0);
        out[i] = (a + b) % p;
    }
    trim(out)
}

pub fn sub(p: u64, f: &Poly, g: &Poly) -> Poly {
    let n = f.len().max(g.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let a = f.get(i).copied().unwrap_or(0);
        let b = g.get(i).copied().unwrap_or(0);
        out[i] = fp_sub(p, a, b);
    }
    trim(out)
}

pub fn mul(p: u64, f: &Poly, g: &Poly) -> Poly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = (out[i + j] + a * b) % p;
        }
    }
    trim(out)
}

pub fn monic(p: u64, f: &Poly) -> Poly {
    match f.last() {
        None => Vec::new(),
        Some(&lc) if lc == 1 => f.clone(),
        Some(&lc) => {
            let inv = fp_inv(p, lc);
            trim(f.iter().map(|&c| fp_mul(p, c, inv)).collect())
        }
    }
}

/// Quotient and remainder of f by g (g nonzero).
pub fn div_rem(p: u64, f: &Poly, g: &Poly) -> (Poly, Poly) {
    assert!(!g.is_empty(), "division by zero polynomial");
    let dg = g.len() - 1;
    if f.len() <= dg && !(f.len() == g.len()) && f.len() < g.len() {
        return (Vec::new(), f.clone());
    }
    if f.len() < g.len() {
        return (Vec::new(), f.clone());
    }
    let mut r = f.clone();
    let mut q = vec![0u64; f.len() - dg];
    let lc_inv = fp_inv(p, *g.last().unwrap());
    for i in (dg..r.len()).rev() {
        let coeff = fp_mul(p, r[i], lc_inv);
        if coeff == 0 {
            continue;
        }
        q[i - dg] = coeff;
        for (j, &gc) in g.iter().enumerate() {
            r[i - dg + j] = fp_sub(p, r[i - dg + j], fp_mul(p, coeff, gc));
        }
    }
    (trim(q), trim(r))
}

pub fn rem(p: u64, f: &Poly, g: &Poly) -> Poly {
    div_rem(p, f, g).1
}

pub fn gcd(p: u64, f: &Poly, g: &Poly) -> Poly {
    let mut a = f.clone();
    let mut b = g.clone();
    while !b.is_empty() {
        let r = rem(p, &a, &b);
        a = b;
        b = r;
    }
    monic(p, &a)
}

/// Formal derivative.
pub fn derivative(p: u64, f: &Poly) -> Poly {
    if f.len() <= 1 {
        return Vec::new();
    }
    trim(
        f.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| (i as u64 % p) * c % p)
            .collect(),
    )
}

/// h^e mod f by square and multiply.
pub fn pow_mod(p: u64, h: &Poly, mut e: u64, f: &Poly) -> Poly {
    let mut acc = vec![1u64];
    let mut base = rem(p, h, f);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(p, &mul(p, &acc, &base), f);
        }
        base = rem(p, &mul(p, &base, &base), f);
        e >>= 1;
    }
    acc
}

/// Squarefree decomposition in characteristic p: returns pairs (g, m) with
/// g squarefree, pairwise coprime, and f = prod g^m up to a scalar.
fn squarefree_decomposition(p: u64, f: &Poly) -> Vec<(Poly, usize)> {
    let f = monic(p, f);
    if deg(&f).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let df = derivative(p, &f);
    if df.is_empty() {
        // f = g(x^p) = (p-th root of g)^p; over F_p coefficients are fixed by
        // the Frobenius, so the root just contracts exponents.
        let mut root = Vec::new();
        for (i, &c) in f.iter().enumerate() {
            if i % (p as usize) == 0 {
                root.push(c);
            } else {
                debug_assert_eq!(c, 0);
            }
        }
        let inner = squarefree_decomposition(p, &trim(root));
        return inner
            .into_iter()
            .map(|(g, m)| (g, m * p as usize))
            .collect();
    }
    let mut out: Vec<(Poly, usize)> = Vec::new();
    let a0 = gcd(p, &f, &df);
    let mut b = div_rem(p, &f, &a0).0; // squarefree part with every factor of multiplicity not divisible by p... standard Yun loop
    let mut c = a0;
    let mut m = 1usize;
    while deg(&b).unwrap_or(0) > 0 {
        let d = gcd(p, &b, &c);
        let factor = div_rem(p, &b, &d).0;
        if deg(&factor).unwrap_or(0) > 0 {
            out.push((monic(p, &factor), m));
        }
        b = d.clone();
        c = div_rem(p, &c, &d).0;
        m += 1;
    }
    if deg(&c).unwrap_or(0) > 0 {
        // Remaining part is a p-th power.
        for (g, mm) in squarefree_decomposition(p, &c) {
            out.push((g, mm));
        }
    }
    out
}

/// Distinct-degree splitting of a squarefree monic f: pairs (product of
/// irreducibles of degree d, d).
fn distinct_degree(p: u64, f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let mut f = monic(p, f);
    let mut h = vec![0u64, 1]; // x
    let mut d = 0usize;
    while deg(&f).map(|n| n >= 1).unwrap_or(false) {
        d += 1;
        if 2 * d > deg(&f).unwrap() {
            out.push((f.clone(), deg(&f).unwrap()));
            break;
        }
        h = pow_mod(p, &h, p, &f); // x^(p^d) mod f
        let diff = sub(p, &h, &[0, 1].to_vec());
        let g = gcd(p, &diff, &f);
        if deg(&g).unwrap_or(0) > 0 {
            out.push((g.clone(), d));
            f = div_rem(p, &f, &g).0;
            h = rem(p, &h, &f);
        }
    }
    out
}

/// Cantor-Zassenhaus equal-degree splitting: f squarefree, all irreducible
/// factors of degree d.
fn equal_degree<R: Rng>(p: u64, f: &Poly, d: usize, rng: &mut R, out: &mut Vec<Poly>) {
    let n = deg(f).unwrap();
    if n == d {
        out.push(monic(p, f));
        return;
    }
    loop {
        // Random polynomial of degree < n.
        let a: Poly = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if deg(&a).is_none() {
            continue;
        }
        let g = gcd(p, &a, f);
        if deg(&g).unwrap_or(0) > 0 && deg(&g).unwrap() < n {
            equal_degree(p, &g, d, rng, out);
            equal_degree(p, &div_rem(p, f, &g).0, d, rng, out);
            return;
        }
        let candidate = if p == 2 {
            // Trace map a + a^2 + a^4 + ... splits in characteristic 2.
            let mut t = rem(p, &a, f);
            let mut acc = t.clone();
            for _ in 1..d {
                t = rem(p, &mul(p, &t, &t), f);
                acc = add(p, &acc, &t);
            }
            acc
        } else {
            // a^((p^d - 1)/2) - 1
            let e = (fp_checked_pow(p, d) - 1) / 2;
            let b = pow_mod_big(p, &a, e, f);
            sub(p, &b, &vec![1u64])
        };
        let g = gcd(p, &candidate, f);
        let dg = deg(&g).unwrap_or(0);
        if dg > 0 && dg < n {
            equal_degree(p, &g, d, rng, out);
            equal_degree(p, &div_rem(p, f, &g).0, d, rng, out);
            return;
        }
    }
}

/// p^d as u128 for exponent bookkeeping (degrees stay tiny here).
fn fp_checked_pow(p: u64, d: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..d {
        acc *= p as u128;
    }
    acc
}

fn pow_mod_big(p: u64, h: &Poly, mut e: u128, f: &Poly) -> Poly {
    let mut acc = vec![1u64];
    let mut base = rem(p, h, f);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(p, &mul(p, &acc, &base), f);
        }
        base = rem(p, &mul(p, &base, &base), f);
        e >>= 1;
    }
    acc
}

/// Full factorisation of f over F_p: (irreducible monic factor, multiplicity).
pub fn factor<R: Rng>(p: u64, f: &Poly, rng: &mut R) -> Vec<(Poly, usize)> {
    let f = monic(p, f);
    let mut out = Vec::new();
    for (sq, mult) in squarefree_decomposition(p, &f) {
        for (prod, d) in distinct_degree(p, &sq) {
            let mut irr = Vec::new();
            equal_degree(p, &prod, d, rng, &mut irr);
            for g in irr {
                out.push((g, mult));
            }
        }
    }
    out.sort();
    out
}

pub fn is_irreducible<R: Rng>(p: u64, f: &Poly, rng: &mut R) -> bool {
    let fs = factor(p, f, rng);
    fs.len() == 1 && fs[0].1 == 1 && deg(&fs[0].0) == deg(f)
}

/// Evaluate f at a square matrix, i.e. f(M).
pub fn eval_matrix(f: &Poly, m: &crate::linalg::FpMatrix) -> crate::linalg::FpMatrix {
    use crate::linalg::FpMatrix;
    let p = m.p();
    let n = m.rows();
    let mut acc = FpMatrix::zeros(p, n, n);
    // Horner from the top coefficient.
    for &c in f.iter().rev() {
        acc = acc.mul(m);
        for i in 0..n {
            let v = (acc.get(i, i) + c) % p;
            acc.set(i, i, v);
        }
    }
    acc
}
