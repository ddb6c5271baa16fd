//! Small benchmark algebras used throughout the tests and the self-test
//! corpus, together with hand-built modules over them.
//!
//! - `fix1`: `k[x]/(x^2)`, the cyclic Nakayama algebra with Kupisch series (2).
//! - `fix2`: the linear A3 path algebra (Kupisch (3,2,1)), hereditary.
//! - `fix3`: linear A3 with the length-two path killed (Kupisch (2,2,1)).
//! - `fix4`: the cyclic Nakayama algebra with series (2,2), self-injective.
//! - `fix5`: the one-point extension of `fix1` by its simple module.

use crate::algebra::{AlgebraPresentation, AlgebraRef, Provenance};
use crate::error::Result;
use crate::linalg::FpMatrix;
use crate::module::{simple_module, Module};
use crate::quiver::{module_from_representation, nakayama_from_kupisch, to_algebra, KupischSeries};
use crate::tilting::{one_point_extension, OnePointExtension};

pub fn fix1(p: u64) -> AlgebraRef {
    let spec = nakayama_from_kupisch(&KupischSeries::cyclic(vec![2]), p).expect("fix1 series");
    to_algebra(&spec).expect("fix1 algebra")
}

pub fn fix2(p: u64) -> AlgebraRef {
    let spec =
        nakayama_from_kupisch(&KupischSeries::linear(vec![3, 2, 1]), p).expect("fix2 series");
    to_algebra(&spec).expect("fix2 algebra")
}

pub fn fix3(p: u64) -> AlgebraRef {
    let spec =
        nakayama_from_kupisch(&KupischSeries::linear(vec![2, 2, 1]), p).expect("fix3 series");
    to_algebra(&spec).expect("fix3 algebra")
}

pub fn fix4(p: u64) -> AlgebraRef {
    let spec = nakayama_from_kupisch(&KupischSeries::cyclic(vec![2, 2]), p).expect("fix4 series");
    to_algebra(&spec).expect("fix4 algebra")
}

pub fn fix5(p: u64) -> OnePointExtension {
    let a = fix1(p);
    let s = simple_module(&a, 0).expect("fix1 simple");
    one_point_extension(&a, &s).expect("fix5 extension")
}

/// The ground field as a one-dimensional algebra.
pub fn ground_field(p: u64) -> AlgebraRef {
    AlgebraPresentation::new(
        p,
        vec![vec![vec![1]]],
        vec![1],
        vec![vec![1]],
        vec![],
        Provenance::Raw,
    )
    .expect("ground field")
}

/// Interval module over a linear A3-type quiver algebra (fix2 or fix3):
/// one-dimensional at the vertices lo..=hi, identity along interior arrows.
pub fn interval_module_a3(a: &AlgebraRef, lo: usize, hi: usize) -> Result<Module> {
    let p = a.p();
    let dims: Vec<usize> = (0..3).map(|v| usize::from(v >= lo && v <= hi)).collect();
    let data = a.quiver_data().expect("quiver-derived fixture");
    let mats: Vec<FpMatrix> = data
        .arrows
        .iter()
        .map(|arrow| {
            let (r, c) = (dims[arrow.target], dims[arrow.source]);
            if r == 1 && c == 1 {
                FpMatrix::from_rows(p, vec![vec![1]]).unwrap()
            } else {
                FpMatrix::zeros(p, r, c)
            }
        })
        .collect();
    module_from_representation(a, &dims, &mats)
}

/// Module over the fix5 extension from raw block data: V1 carries the fix1
/// action x = `x_mat`, V_omega is a plain vector space, and the extension
/// basis element acts by `connect`: V_omega -> V1. Block order: V1 then
/// V_omega.
pub fn fix5_module(
    ope: &OnePointExtension,
    dim_v1: usize,
    dim_omega: usize,
    x_mat: FpMatrix,
    connect: FpMatrix,
) -> Result<Module> {
    let lambda = &ope.algebra;
    let p = lambda.p();
    let total = dim_v1 + dim_omega;
    let embed = |r0: usize, c0: usize, m: &FpMatrix| {
        let mut big = FpMatrix::zeros(p, total, total);
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                big.set(r0 + r, c0 + c, m.get(r, c));
            }
        }
        big
    };
    let mut action = Vec::with_capacity(lambda.dim());
    // Basis layout of the extension: [e1, x] ++ [m] ++ [e_omega].
    let e1 = embed(0, 0, &FpMatrix::identity(p, dim_v1));
    let x = embed(0, 0, &x_mat);
    let m = embed(0, dim_v1, &connect);
    let e_om = embed(dim_v1, dim_v1, &FpMatrix::identity(p, dim_omega));
    action.push(e1);
    action.push(x);
    action.push(m);
    action.push(e_om);
    Module::new(lambda.clone(), total, action)
}

/// The five indecomposable modules over the fix5 extension: the two simples,
/// the two indecomposable projectives, and the length-three module gluing
/// them.
pub fn fix5_indecomposables(ope: &OnePointExtension) -> Vec<Module> {
    let p = ope.algebra.p();
    let z = |r: usize, c: usize| FpMatrix::zeros(p, r, c);
    let s_omega = fix5_module(ope, 0, 1, z(0, 0), z(0, 1)).expect("s_omega");
    let s1 = fix5_module(ope, 1, 0, z(1, 1), z(1, 0)).expect("s1");
    let p1 = fix5_module(
        ope,
        2,
        0,
        FpMatrix::from_rows(p, vec![vec![0, 0], vec![1, 0]]).unwrap(),
        z(2, 0),
    )
    .expect("p1");
    let p_omega = fix5_module(
        ope,
        1,
        1,
        z(1, 1),
        FpMatrix::from_rows(p, vec![vec![1]]).unwrap(),
    )
    .expect("p_omega");
    let glued = fix5_module(
        ope,
        2,
        1,
        FpMatrix::from_rows(p, vec![vec![0, 1], vec![0, 0]]).unwrap(),
        FpMatrix::from_rows(p, vec![vec![1], vec![0]]).unwrap(),
    )
    .expect("glued");
    vec![s_omega, s1, p1, p_omega, glued]
}

/// Module over the one-point extension of fix2 by its sink simple S3. Blocks
/// in order V1, V2, V3, V_omega; `a`: V1->V2, `b`: V2->V3, `c`: V_omega->V3.
pub fn ope_fix2_module(
    ope: &OnePointExtension,
    dims: [usize; 4],
    a_mat: FpMatrix,
    b_mat: FpMatrix,
    c_mat: FpMatrix,
) -> Result<Module> {
    let lambda = &ope.algebra;
    let p = lambda.p();
    let total: usize = dims.iter().sum();
    let off = [0, dims[0], dims[0] + dims[1], dims[0] + dims[1] + dims[2]];
    let embed = |r0: usize, c0: usize, m: &FpMatrix| {
        let mut big = FpMatrix::zeros(p, total, total);
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                big.set(r0 + r, c0 + c, m.get(r, c));
            }
        }
        big
    };
    // Extension basis layout: [e1, e2, e3, a, b, b.a] ++ [m] ++ [e_omega].
    let action = vec![
        embed(off[0], off[0], &FpMatrix::identity(p, dims[0])),
        embed(off[1], off[1], &FpMatrix::identity(p, dims[1])),
        embed(off[2], off[2], &FpMatrix::identity(p, dims[2])),
        embed(off[1], off[0], &a_mat),
        embed(off[2], off[1], &b_mat),
        embed(off[2], off[0], &b_mat.mul(&a_mat)),
        embed(off[2], off[3], &c_mat),
        embed(off[3], off[3], &FpMatrix::identity(p, dims[3])),
    ];
    Module::new(lambda.clone(), total, action)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_dimensions() {
        assert_eq!(fix1(2).dim(), 2);
        assert_eq!(fix2(2).dim(), 6);
        assert_eq!(fix3(2).dim(), 5);
        assert_eq!(fix4(2).dim(), 4);
        assert_eq!(fix5(2).algebra.dim(), 4);
    }

    #[test]
    fn fix5_known_indecomposables_are_modules() {
        let ope = fix5(2);
        let mods = fix5_indecomposables(&ope);
        assert_eq!(mods.len(), 5);
        let dims: Vec<usize> = mods.iter().map(|m| m.dim()).collect();
        assert_eq!(dims, vec![1, 1, 2, 2, 3]);
    }
}
