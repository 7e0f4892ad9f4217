mod common;

use std::sync::Arc;

use surface_tower::characteristic::{homology_cover, Automorphism};
use surface_tower::cycle::{Arrow, CyclePath, PathStep, ReductionOrder};
use surface_tower::enumerate::low_index_subgroups;
use surface_tower::vaut::{TwoArrowCycle, VirtualAutomorphism};
use surface_tower::{Budget, Error, Presentation, Subgroup, Word};

fn genus2() -> Arc<Presentation> {
    Presentation::surface(2).unwrap()
}

fn population(pres: &Arc<Presentation>, b: &Budget) -> (Vec<Subgroup>, Vec<Automorphism>) {
    let subs = low_index_subgroups(pres, 4, b).unwrap();
    let mut auts = Automorphism::builtins(pres).unwrap();
    auts.push(
        Automorphism::new(
            pres,
            "twist-b1",
            vec![Word::new([1, 2]), Word::new([2]), Word::new([3]), Word::new([4])],
            Some(vec![Word::new([1, -2]), Word::new([2]), Word::new([3]), Word::new([4])]),
        )
        .unwrap(),
    );
    (subs, auts)
}

/// Virtual automorphisms restricted from ambient automorphisms to a spread of
/// subgroups of index at most 4.
fn sample_vauts(count: usize, seed: u64) -> Vec<VirtualAutomorphism> {
    let pres = genus2();
    let b = Budget::default();
    let (subs, auts) = population(&pres, &b);
    let mut rng = common::rng(seed);
    (0..count)
        .map(|_| {
            use rand::Rng;
            let h = &subs[rng.gen_range(1..subs.len())];
            let phi = &auts[rng.gen_range(0..auts.len())];
            VirtualAutomorphism::from_automorphism(phi, h, &b).unwrap()
        })
        .collect()
}

#[test]
fn domain_and_codomain_have_equal_index() {
    let b = Budget::default();
    for v in sample_vauts(40, 1) {
        assert_eq!(v.domain().index(), v.codomain().index());
        v.check(&b).unwrap();
    }
}

#[test]
fn identity_and_inverse_laws() {
    let b = Budget::default();
    for v in sample_vauts(12, 2) {
        let id_dom = VirtualAutomorphism::identity(v.domain());
        let id_cod = VirtualAutomorphism::identity(v.codomain());
        assert!(id_dom.compose(&v, &b).unwrap().germ_equals(&v, &b).unwrap());
        assert!(v.compose(&id_cod, &b).unwrap().germ_equals(&v, &b).unwrap());
        let inv = v.inverse(&b).unwrap();
        inv.check(&b).unwrap();
        assert!(v.compose(&inv, &b).unwrap().is_identity_germ(&b).unwrap());
        assert!(inv.compose(&v, &b).unwrap().is_identity_germ(&b).unwrap());
        assert!(inv.inverse(&b).unwrap().germ_equals(&v, &b).unwrap());
    }
}

#[test]
fn associativity_on_triples() {
    let b = Budget::default();
    let vs = sample_vauts(18, 3);
    for t in vs.chunks(3) {
        let (u, v, w) = (&t[0], &t[1], &t[2]);
        let left = u.compose(v, &b).unwrap().compose(w, &b).unwrap();
        let right = u.compose(&v.compose(w, &b).unwrap(), &b).unwrap();
        assert!(left.germ_equals(&right, &b).unwrap());
        let uv = u.compose(v, &b).unwrap();
        assert!(uv.domain().index() <= u.domain().index() * v.domain().index() * u.codomain().index());
    }
}

#[test]
fn germ_equality_is_an_equivalence() {
    let b = Budget::default();
    let vs = sample_vauts(10, 4);
    // restrictions are germ-equal to the original
    let pres = genus2();
    let h2 = homology_cover(&pres, 2, &b).unwrap().subgroup;
    for v in &vs {
        assert!(v.germ_equals(v, &b).unwrap());
        let cut = v.domain().intersect(&h2).unwrap();
        let r1 = v.restrict(&cut, &b).unwrap();
        let cut2 = cut.intersect(&h2.conjugate(&Word::new([1]))).unwrap();
        let r2 = v.restrict(&cut2, &b).unwrap();
        assert!(r1.germ_equals(v, &b).unwrap() && v.germ_equals(&r1, &b).unwrap());
        assert!(r1.germ_equals(&r2, &b).unwrap() && r2.germ_equals(v, &b).unwrap());
    }
    for x in &vs {
        for y in &vs {
            assert_eq!(x.germ_equals(y, &b).unwrap(), y.germ_equals(x, &b).unwrap());
        }
    }
}

#[test]
fn different_automorphisms_give_different_germs() {
    let pres = genus2();
    let b = Budget::default();
    let h = &low_index_subgroups(&pres, 2, &b).unwrap()[1];
    let swap = VirtualAutomorphism::from_automorphism(&Automorphism::handle_shift(&pres).unwrap(), h, &b).unwrap();
    let id = VirtualAutomorphism::identity(h);
    assert!(!swap.germ_equals(&id, &b).unwrap());
}

/// `G <- h -> G <- k -> G`, each up-arrow an automorphism restricted.
fn valley_path(h: &Subgroup, phi: &Automorphism, k: &Subgroup, psi: &Automorphism, b: &Budget) -> CyclePath {
    let g = Subgroup::full_group(h.presentation().clone());
    let v = VirtualAutomorphism::from_automorphism(phi, h, b).unwrap();
    let w = VirtualAutomorphism::from_automorphism(psi, k, b).unwrap();
    CyclePath::new(vec![
        PathStep::backward(Arrow::inclusion(h, &g).unwrap()),
        PathStep::forward(Arrow::from_vaut(&v, &g).unwrap()),
        PathStep::backward(Arrow::inclusion(k, &g).unwrap()),
        PathStep::forward(Arrow::from_vaut(&w, &g).unwrap()),
    ])
    .unwrap()
}

/// `G <- h -> k <- m -> G`: a peak at `k` that needs a fiber product.
fn peak_path(h: &Subgroup, k: &Subgroup, m: &Subgroup, psi: &Automorphism, b: &Budget) -> CyclePath {
    let g = Subgroup::full_group(h.presentation().clone());
    let w = VirtualAutomorphism::from_automorphism(psi, m, b).unwrap();
    CyclePath::new(vec![
        PathStep::backward(Arrow::inclusion(h, &g).unwrap()),
        PathStep::forward(Arrow::inclusion(h, k).unwrap()),
        PathStep::backward(Arrow::inclusion(m, k).unwrap()),
        PathStep::forward(Arrow::from_vaut(&w, &g).unwrap()),
    ])
    .unwrap()
}

#[test]
fn four_arrow_cycles_reduce_independently_of_order() {
    use rand::Rng;
    let pres = genus2();
    let b = Budget::default();
    let (subs, auts) = population(&pres, &b);
    let mut rng = common::rng(9);
    let mut paths = Vec::new();
    for _ in 0..8 {
        let h = &subs[rng.gen_range(1..subs.len())];
        let k = &subs[rng.gen_range(1..subs.len())];
        let phi = &auts[rng.gen_range(0..auts.len())];
        let psi = &auts[rng.gen_range(0..auts.len())];
        paths.push(valley_path(h, phi, k, psi, &b));
    }
    let index_two: Vec<&Subgroup> = subs.iter().filter(|s| s.index() == 2).collect();
    while paths.len() < 14 {
        let k = index_two[rng.gen_range(0..index_two.len())];
        let below: Vec<&Subgroup> = subs.iter().filter(|s| s.index() == 4 && s.is_subgroup_of(k).unwrap()).collect();
        let h = below[rng.gen_range(0..below.len())];
        let m = below[rng.gen_range(0..below.len())];
        let psi = &auts[rng.gen_range(0..auts.len())];
        paths.push(peak_path(h, k, m, psi, &b));
    }
    for p in &paths {
        let left = p.reduce(ReductionOrder::LeftmostFirst, &b).unwrap().to_vaut(&b).unwrap();
        let right = p.reduce(ReductionOrder::RightmostFirst, &b).unwrap().to_vaut(&b).unwrap();
        let direct = p.direct_composite(&b).unwrap();
        assert!(left.germ_equals(&right, &b).unwrap());
        assert!(left.germ_equals(&direct, &b).unwrap());
        assert_eq!(left.domain().covering_genus(), left.codomain().covering_genus());
    }
}

#[test]
fn two_arrow_cycles_need_matching_genus() {
    let pres = genus2();
    let b = Budget::default();
    let subs = low_index_subgroups(&pres, 3, &b).unwrap();
    let (h2, h3) = (&subs[1], subs.iter().find(|s| s.index() == 3).unwrap());
    let bad = TwoArrowCycle { alpha: h2.clone(), beta: h3.clone(), identification: h2.schreier_generators().to_vec() };
    assert!(matches!(bad.to_vaut(&b), Err(Error::IdentificationInvalid(_))));
    let good = TwoArrowCycle { alpha: h2.clone(), beta: h2.clone(), identification: h2.schreier_generators().to_vec() };
    assert!(good.to_vaut(&b).unwrap().is_identity_germ(&b).unwrap());
}

#[test]
fn automorphism_restrictions_are_mapping_class_like() {
    let pres = genus2();
    let b = Budget::default();
    let h2 = homology_cover(&pres, 2, &b).unwrap();
    for v in sample_vauts(6, 5) {
        assert!(v.caut_witness(&h2, &b).unwrap() || !h2.subgroup.is_subgroup_of(v.domain()).unwrap());
        assert!(v.bounded_mcl_search(3, &b).unwrap().is_some());
    }
}

#[test]
fn rebase_and_unbase_round_trip() {
    let pres = genus2();
    let b = Budget::default();
    let h2 = homology_cover(&pres, 2, &b).unwrap().subgroup;
    let inner = low_index_subgroups(&pres, 4, &b).unwrap();
    let k = inner.iter().find(|s| s.index() == 4 && h2.is_subgroup_of(s).unwrap()).unwrap();
    let v = VirtualAutomorphism::from_automorphism(&Automorphism::inner(&pres, &Word::new([2])), &h2, &b).unwrap();
    let local = v.rebase(k, false, &b).unwrap();
    assert!(local.unbase(k).unwrap().germ_equals(&v, &b).unwrap());
}
