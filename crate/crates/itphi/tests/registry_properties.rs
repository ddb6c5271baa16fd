//! Properties of the class registry and the isomorphism machinery:
//! equivalence-relation behaviour, class-vector additivity, and completeness
//! evidence for the hand-built indecomposable lists.

use itphi::decomp::{are_isomorphic, decompose, indec_isomorphic, IsoRegistry};
use itphi::fixtures;
use itphi::module::{simple_module, Module};
use itphi::phi::register;
use itphi::phidim::{enumerate_indecomposables_nakayama, enumerate_indecomposables_sampled};
use itphi::quiver::KupischSeries;

#[test]
fn are_isomorphic_is_an_equivalence_on_fixture_modules() {
    let (_, mods) =
        enumerate_indecomposables_nakayama(&KupischSeries::linear(vec![3, 2, 1]), 2).unwrap();
    // Reflexive.
    for m in &mods {
        assert!(are_isomorphic(m, m).unwrap());
    }
    // Symmetric on all pairs.
    for m in &mods {
        for n in &mods {
            assert_eq!(are_isomorphic(m, n).unwrap(), are_isomorphic(n, m).unwrap());
        }
    }
    // Transitive on sampled triples built from sums.
    let s1 = &mods[0];
    let sum1 = Module::direct_sum(&[s1.clone(), mods[1].clone()]).unwrap();
    let sum2 = Module::direct_sum(&[mods[1].clone(), s1.clone()]).unwrap();
    let sum3 = Module::direct_sum(&[s1.clone(), mods[1].clone()]).unwrap();
    assert!(are_isomorphic(&sum1, &sum2).unwrap());
    assert!(are_isomorphic(&sum2, &sum3).unwrap());
    assert!(are_isomorphic(&sum1, &sum3).unwrap());
}

#[test]
fn registry_never_stores_isomorphic_classes_twice() {
    let (a, mods) =
        enumerate_indecomposables_nakayama(&KupischSeries::linear(vec![2, 2, 1]), 2).unwrap();
    let mut reg = IsoRegistry::new(a).unwrap();
    for m in &mods {
        reg.register_decomposition(m, 3).unwrap();
        let doubled = Module::direct_sum(&[m.clone(), m.clone()]).unwrap();
        reg.register_decomposition(&doubled, 3).unwrap();
    }
    assert_eq!(reg.class_count(), 5);
    for i in 0..reg.class_count() {
        for j in (i + 1)..reg.class_count() {
            let ri = &reg.classes()[i].rep;
            let rj = &reg.classes()[j].rep;
            assert!(indec_isomorphic(ri, rj).unwrap().is_none());
        }
    }
}

#[test]
fn class_vectors_are_additive() {
    let (a, mods) =
        enumerate_indecomposables_nakayama(&KupischSeries::linear(vec![2, 2, 1]), 2).unwrap();
    let mut reg = IsoRegistry::new(a).unwrap();
    for m in &mods {
        for n in &mods {
            let sum = Module::direct_sum(&[m.clone(), n.clone()]).unwrap();
            let ks = register(&mut reg, &sum, 9).unwrap();
            let km = register(&mut reg, m, 9).unwrap();
            let kn = register(&mut reg, n, 9).unwrap();
            let mut merged = km.coeffs().clone();
            for (id, c) in kn.coeffs() {
                *merged.entry(*id).or_insert(0) += c;
            }
            merged.retain(|_, v| *v != 0);
            assert_eq!(ks.coeffs(), &merged);
        }
    }
}

#[test]
fn projective_summands_register_to_nothing() {
    let a = fixtures::fix2(2);
    let mut reg = IsoRegistry::new(a.clone()).unwrap();
    let regular = Module::regular(&a);
    let kv = register(&mut reg, &regular, 1).unwrap();
    assert!(kv.is_zero());
    let s1 = simple_module(&a, 0).unwrap();
    let padded = Module::direct_sum(&[s1.clone(), regular]).unwrap();
    let kp = register(&mut reg, &padded, 1).unwrap();
    let ks = register(&mut reg, &s1, 1).unwrap();
    assert_eq!(kp, ks);
}

#[test]
fn fix5_list_is_complete_under_sampling() {
    let ope = fixtures::fix5(2);
    let known = fixtures::fix5_indecomposables(&ope);
    // Pairwise non-isomorphic and indecomposable.
    for (i, m) in known.iter().enumerate() {
        let (ind, _) = itphi::decomp::is_indecomposable(m).unwrap();
        assert!(ind, "entry {i} is decomposable");
        for n in known.iter().skip(i + 1) {
            assert!(!are_isomorphic(m, n).unwrap());
        }
    }
    // A sampling sweep finds exactly these classes.
    let found = enumerate_indecomposables_sampled(&ope.algebra, 6, 4, 31).unwrap();
    assert_eq!(
        found.len(),
        5,
        "sampled classes: {:?}",
        found.iter().map(|m| m.dim()).collect::<Vec<_>>()
    );
    for f in &found {
        assert!(known.iter().any(|k| are_isomorphic(f, k).unwrap()));
    }
}

#[test]
fn cyclic_nakayama_enumeration_is_irredundant() {
    let (_, mods) =
        enumerate_indecomposables_nakayama(&KupischSeries::cyclic(vec![3, 3]), 2).unwrap();
    assert_eq!(mods.len(), 6);
    for (i, m) in mods.iter().enumerate() {
        for n in mods.iter().skip(i + 1) {
            assert!(!are_isomorphic(m, n).unwrap());
        }
    }
}

#[test]
fn seed_varied_decompositions_of_shuffled_sums_agree() {
    let (_, mods) =
        enumerate_indecomposables_nakayama(&KupischSeries::linear(vec![3, 2, 1]), 3).unwrap();
    let big = Module::direct_sum(&[
        mods[0].clone(),
        mods[3].clone(),
        mods[0].clone(),
        mods[5].clone(),
    ])
    .unwrap();
    let d1 = decompose(&big, 100).unwrap();
    let d2 = decompose(&big, 200).unwrap();
    assert_eq!(d1.pieces.len(), d2.pieces.len());
    let mults1: Vec<usize> = {
        let mut v: Vec<usize> = d1.pieces.iter().map(|(_, k)| *k).collect();
        v.sort();
        v
    };
    let mults2: Vec<usize> = {
        let mut v: Vec<usize> = d2.pieces.iter().map(|(_, k)| *k).collect();
        v.sort();
        v
    };
    assert_eq!(mults1, mults2);
}
