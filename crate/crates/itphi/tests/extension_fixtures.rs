//! The one-point extension of the hereditary A3 fixture by its sink simple:
//! a dimension-8 hereditary algebra whose ten indecomposables are built by
//! hand, giving exact phi-dimensions on both sides of the extension bound.

use itphi::decomp::are_isomorphic;
use itphi::fixtures::{fix2, interval_module_a3, ope_fix2_module};
use itphi::linalg::FpMatrix;
use itphi::module::{simple_module, Module};
use itphi::phi::{PhiConfig, PhiKind};
use itphi::phidim::{enumerate_indecomposables_nakayama, phidim_exact};
use itphi::quiver::KupischSeries;
use itphi::tilting::{
    inflate_module, one_point_extension, ope_bound_check, OnePointExtension, OpeConfig,
};

fn extension_indecomposables(ope: &OnePointExtension) -> Vec<Module> {
    let a = fix2(2);
    let p = 2;
    let one = || FpMatrix::from_rows(p, vec![vec![1]]).unwrap();
    let z = |r: usize, c: usize| FpMatrix::zeros(p, r, c);
    let mut mods: Vec<Module> = Vec::new();
    // The six interval modules of the corner algebra, inflated.
    for lo in 0..3 {
        for hi in lo..3 {
            let m = interval_module_a3(&a, lo, hi).unwrap();
            mods.push(inflate_module(ope, &m).unwrap());
        }
    }
    // The four modules supported on the new vertex.
    mods.push(ope_fix2_module(ope, [0, 0, 0, 1], z(0, 0), z(0, 0), z(0, 1)).unwrap()); // S_omega
    mods.push(ope_fix2_module(ope, [0, 0, 1, 1], z(0, 0), z(1, 0), one()).unwrap()); // P_omega
    mods.push(ope_fix2_module(ope, [0, 1, 1, 1], z(1, 0), one(), one()).unwrap());
    mods.push(ope_fix2_module(ope, [1, 1, 1, 1], one(), one(), one()).unwrap());
    mods
}

#[test]
fn extension_of_hereditary_fixture_has_ten_indecomposables() {
    let a = fix2(2);
    let s3 = simple_module(&a, 2).unwrap();
    let ope = one_point_extension(&a, &s3).unwrap();
    assert_eq!(ope.algebra.dim(), 8);
    let mods = extension_indecomposables(&ope);
    assert_eq!(mods.len(), 10);
    for (i, m) in mods.iter().enumerate() {
        let (ind, _) = itphi::decomp::is_indecomposable(m).unwrap();
        assert!(ind, "entry {i} (dim {}) is decomposable", m.dim());
        for n in mods.iter().skip(i + 1) {
            assert!(!are_isomorphic(m, n).unwrap());
        }
    }
}

#[test]
fn extension_of_hereditary_fixture_phidim_is_one() {
    let a = fix2(2);
    let s3 = simple_module(&a, 2).unwrap();
    let ope = one_point_extension(&a, &s3).unwrap();
    let mods = extension_indecomposables(&ope);
    let out = phidim_exact(&ope.algebra, &mods, &PhiConfig::default(), 23).unwrap();
    assert_eq!(out.kind, PhiKind::Exact);
    assert_eq!(out.value, 1);
}

#[test]
fn extension_step_bound_with_exact_lists() {
    let a = fix2(2);
    let s3 = simple_module(&a, 2).unwrap();
    let ope = one_point_extension(&a, &s3).unwrap();
    let (_, base_list) =
        enumerate_indecomposables_nakayama(&KupischSeries::linear(vec![3, 2, 1]), 2).unwrap();
    let ext_list = extension_indecomposables(&ope);
    let cfg = OpeConfig {
        phi: PhiConfig::default(),
        seed: 23,
        complete_list_a: Some(base_list),
        complete_list_ext: Some(ext_list),
        dim_bound: None,
    };
    let (_, report) = ope_bound_check(&a, &s3, &cfg).unwrap();
    assert_eq!(report.phidim_a.outcome.value, 1);
    assert_eq!(report.phidim_ext.outcome.value, 1);
    assert_eq!(report.bound_holds, Some(true));
}
