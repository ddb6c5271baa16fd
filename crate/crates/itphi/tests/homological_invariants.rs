//! Cross-module invariants of the homological calculus, exercised on the
//! benchmark fixtures: additivity of the syzygy, dimension shifting, the
//! Tor/Ext bridge, duality, and the behaviour of phi on the extension
//! fixture.

use itphi::decomp::are_isomorphic;
use itphi::fixtures;
use itphi::module::{
    ext_dim, hom_dim, projective_cover, projective_module, simple_module, syzygy, tor_dim, Module,
};
use itphi::phi::{ce_duality_check, phi, PhiConfig, PhiKind};
use itphi::phidim::enumerate_indecomposables_nakayama;
use itphi::quiver::KupischSeries;

fn fixture_modules(p: u64) -> Vec<(itphi::algebra::AlgebraRef, Vec<Module>)> {
    let mut out = Vec::new();
    for series in [
        KupischSeries::cyclic(vec![2]),
        KupischSeries::linear(vec![3, 2, 1]),
        KupischSeries::linear(vec![2, 2, 1]),
        KupischSeries::cyclic(vec![2, 2]),
    ] {
        let (a, mods) = enumerate_indecomposables_nakayama(&series, p).unwrap();
        out.push((a, mods));
    }
    out
}

#[test]
fn syzygy_is_additive_on_direct_sums() {
    for (_, mods) in fixture_modules(2) {
        for m in &mods {
            for n in &mods {
                let sum = Module::direct_sum(&[m.clone(), n.clone()]).unwrap();
                let left = syzygy(&sum).unwrap();
                let right = Module::direct_sum(&[syzygy(m).unwrap(), syzygy(n).unwrap()]).unwrap();
                assert!(
                    are_isomorphic(&left, &right).unwrap(),
                    "syzygy not additive: dims {} vs {}",
                    left.dim(),
                    right.dim()
                );
            }
        }
    }
}

#[test]
fn syzygy_dimension_law() {
    for (_, mods) in fixture_modules(3) {
        for m in &mods {
            let cover = projective_cover(m).unwrap();
            assert_eq!(cover.kernel.dim(), cover.cover.dim() - m.dim());
        }
    }
}

#[test]
fn ext_dimension_shift() {
    for (_, mods) in fixture_modules(2) {
        for m in &mods {
            let om = syzygy(m).unwrap();
            for n in &mods {
                for i in 1..=3usize {
                    assert_eq!(
                        ext_dim(m, n, i + 1).unwrap(),
                        ext_dim(&om, n, i).unwrap(),
                        "dimension shift failed at degree {i}"
                    );
                }
            }
        }
    }
}

#[test]
fn ext_zero_is_hom_everywhere() {
    for (_, mods) in fixture_modules(5) {
        for m in &mods {
            for n in &mods {
                assert_eq!(ext_dim(m, n, 0).unwrap(), hom_dim(m, n).unwrap());
            }
        }
    }
}

#[test]
fn tor_ext_duality_on_all_fixture_pairs() {
    for (_, mods) in fixture_modules(2) {
        for m in &mods {
            for n in &mods {
                let report = ce_duality_check(m, n, 4).unwrap();
                assert!(
                    report.holds(),
                    "tor {:?} vs ext {:?}",
                    report.tor_dims,
                    report.ext_dims
                );
            }
        }
    }
}

#[test]
fn tor_of_dual_against_projectives_vanishes_positively() {
    let a = fixtures::fix3(2);
    let p1 = projective_module(&a, 0).unwrap();
    for i in 0..3 {
        let s = simple_module(&a, i).unwrap();
        for deg in 1..=4usize {
            assert_eq!(tor_dim(&s.dual(), &p1, deg).unwrap(), 0);
        }
    }
}

#[test]
fn double_dual_is_isomorphic() {
    for (_, mods) in fixture_modules(3) {
        for m in &mods {
            let dd = m.dual().dual();
            assert!(are_isomorphic(m, &dd).unwrap());
        }
    }
}

#[test]
fn phi_on_extension_fixture() {
    // Over the one-point extension of k[x]/(x^2): the new simple has syzygy
    // the old simple, and phi(S_omega + S_1) = 1 with trace (2, 1, 1, ...).
    let ope = fixtures::fix5(2);
    let mods = fixtures::fix5_indecomposables(&ope);
    let s_omega = mods[0].clone();
    let s1 = mods[1].clone();
    let syz = syzygy(&s_omega).unwrap();
    assert!(are_isomorphic(&syz, &s1).unwrap());
    let sum = Module::direct_sum(&[s_omega, s1]).unwrap();
    let out = phi(&sum, &PhiConfig::default(), 17).unwrap();
    assert_eq!(out.kind, PhiKind::Exact);
    assert_eq!(out.value, 1);
    assert_eq!(out.trace[0], 2);
    assert_eq!(out.trace[1], 1);
}

#[test]
fn phi_of_each_fixture_module_bounded_by_phidim() {
    let cfg = PhiConfig::default();
    for (a, mods) in fixture_modules(2) {
        let total = Module::direct_sum(&mods).unwrap();
        let top = phi(&total, &cfg, 3).unwrap();
        assert_eq!(top.kind, PhiKind::Exact);
        for m in &mods {
            let one = phi(m, &cfg, 3).unwrap();
            assert!(
                one.value <= top.value,
                "phi({}) = {} > {}",
                m.dim(),
                one.value,
                top.value
            );
        }
        let _ = a;
    }
}

#[test]
fn inflated_fixture_modules_keep_syzygy_dimensions() {
    let a = fixtures::fix3(2);
    let m = simple_module(&a, 2).unwrap();
    let ope = itphi::tilting::one_point_extension(&a, &m).unwrap();
    let (_, mods) =
        enumerate_indecomposables_nakayama(&KupischSeries::linear(vec![2, 2, 1]), 2).unwrap();
    for module in &mods {
        let inflated = itphi::tilting::inflate_module(&ope, module).unwrap();
        let mut x = module.clone();
        let mut y = inflated;
        for _ in 0..3 {
            assert_eq!(x.dim(), y.dim());
            x = syzygy(&x).unwrap();
            y = syzygy(&y).unwrap();
        }
    }
}

#[test]
fn opposite_algebra_reverses_projective_dimensions() {
    // Over the linear A3 path algebra the projectives have dimensions
    // (3, 2, 1); over the opposite (arrows transposed) they come out as
    // (1, 2, 3).
    let a = fixtures::fix2(2);
    let dims: Vec<usize> =
        (0..3).map(|i| projective_module(&a, i).unwrap().dim()).collect();
    assert_eq!(dims, vec![3, 2, 1]);
    let op = a.opposite();
    let op_dims: Vec<usize> =
        (0..3).map(|i| projective_module(&op, i).unwrap().dim()).collect();
    assert_eq!(op_dims, vec![1, 2, 3]);
}

#[test]
fn projective_dimension_vectors() {
    let a = fixtures::fix2(2);
    let p1 = projective_module(&a, 0).unwrap();
    assert_eq!(p1.dimension_vector(), vec![1, 1, 1]);
    let b = fixtures::fix3(2);
    let q1 = projective_module(&b, 0).unwrap();
    assert_eq!(q1.dim(), 2);
    assert_eq!(q1.dimension_vector(), vec![1, 1, 0]);
}

#[test]
fn shared_values_are_thread_safe() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<itphi::algebra::AlgebraPresentation>();
    assert_send_sync::<Module>();
    assert_send_sync::<itphi::module::ModuleMap>();
    // Concurrent reads of one immutable module from several threads.
    let a = fixtures::fix3(2);
    let m = Module::regular(&a);
    std::thread::scope(|scope| {
        for _ in 0..4 {
            let m = m.clone();
            scope.spawn(move || {
                assert_eq!(m.dimension_vector().iter().sum::<usize>(), m.dim());
                assert!(itphi::module::is_projective(&m).unwrap());
            });
        }
    });
}
