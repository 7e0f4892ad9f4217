mod common;

use std::sync::Arc;

use proptest::prelude::*;
use surface_tower::abelian::abelianization;
use surface_tower::coset_enum::enumerate_cosets;
use surface_tower::enumerate::{index_counts, low_index_subgroups};
use surface_tower::{Budget, CosetAction, Presentation, Subgroup, Word};

fn genus2() -> Arc<Presentation> {
    Presentation::surface(2).unwrap()
}

fn family(max_index: usize) -> Vec<Subgroup> {
    low_index_subgroups(&genus2(), max_index, &Budget::default()).unwrap()
}

#[test]
fn index_at_most_two_matches_hom_count() {
    let homs = common::brute_force_homs(2, 2);
    assert_eq!(homs.len(), 16);
    let subs = family(2);
    // each nontrivial map to Z/2 has its own kernel; the trivial one gives G
    assert_eq!(subs.len(), homs.len());
    assert_eq!(index_counts(&subs, 2), vec![1, 15]);
}

#[test]
fn index_three_matches_transitive_oracle() {
    let expected = common::index_n_subgroup_count(2, 3);
    let subs = family(3);
    assert_eq!(index_counts(&subs, 3)[2], expected);
}

#[test]
fn index_two_of_genus_three() {
    let pres = Presentation::surface(3).unwrap();
    let subs = low_index_subgroups(&pres, 2, &Budget::default()).unwrap();
    assert_eq!(subs.len(), common::brute_force_homs(3, 2).len());
}

#[test]
fn intersection_membership_on_random_words() {
    let subs = family(3);
    let mut rng = common::rng(11);
    let mut pairs = 0;
    for (i, a) in subs.iter().enumerate().skip(1).step_by(9) {
        for b in subs.iter().skip(i + 3).step_by(23).take(3) {
            let ab = a.intersect(b).unwrap();
            assert_eq!(ab.index() % a.index(), 0);
            assert_eq!(ab.index() % b.index(), 0);
            assert!(ab.index() <= a.index() * b.index());
            for _ in 0..1000 {
                let w = common::random_word(&mut rng, 4, 20);
                assert_eq!(ab.contains(&w), a.contains(&w) && b.contains(&w), "{w}");
            }
            pairs += 1;
        }
    }
    assert!(pairs >= 20, "only {pairs} pairs");
}

#[test]
fn canonical_form_and_containment_agree() {
    let subs = family(3);
    for a in subs.iter().step_by(7) {
        for b in subs.iter().step_by(11) {
            let mutual = a.is_subgroup_of(b).unwrap() && b.is_subgroup_of(a).unwrap();
            assert_eq!(mutual, a == b);
            assert_eq!(a.factor_through(b).unwrap().is_some(), a.is_subgroup_of(b).unwrap());
        }
    }
}

#[test]
fn relabeling_does_not_change_the_subgroup() {
    let mut rng = common::rng(5);
    for h in family(3).iter().filter(|h| h.index() == 3).step_by(13) {
        let action = h.to_action();
        // move the basepoint label around while keeping the same stabilizer
        for relabel in common::all_perms(3) {
            let relabeled: CosetAction = action.relabeled(&relabel);
            let again = Subgroup::from_action(h.presentation().clone(), &relabeled, true).unwrap();
            assert_eq!(&again, h);
            assert_eq!(again.canonicalize(), again);
        }
        let w = common::random_word(&mut rng, 4, 6);
        let inside = h.conjugate(&w);
        assert!(h.is_conjugate_to(&inside).unwrap());
    }
}

#[test]
fn rewritten_presentation_rank_is_twice_the_genus() {
    let pres = genus2();
    let b = Budget::default();
    let h2 = surface_tower::characteristic::homology_cover(&pres, 2, &b).unwrap().subgroup;
    let mut cases: Vec<Subgroup> = family(3).into_iter().step_by(17).collect();
    cases.push(h2);
    for h in cases {
        let rs = h.reidemeister_schreier();
        let k = rs.generator_count();
        let rows: Vec<Vec<i64>> = rs.relators().iter().map(|r| r.exponent_sums(k)).collect();
        let rank = k - common::rational_rank(&rows);
        let genus = h.covering_genus().unwrap();
        assert_eq!(rank, 2 * genus);
        assert_eq!(abelianization(&rs).unwrap().rank, 2 * genus);
    }
}

#[test]
fn covering_genus_multiplies_along_chains() {
    let b = Budget::default();
    let h2 = surface_tower::characteristic::homology_cover(&genus2(), 2, &b).unwrap().subgroup;
    for mid in family(2).iter().filter(|m| h2.is_subgroup_of(m).unwrap()) {
        let arrow = h2.factor_through(mid).unwrap().unwrap();
        let (g_top, g_mid) = (h2.covering_genus().unwrap(), mid.covering_genus().unwrap());
        assert_eq!(g_top - 1, arrow.relative_degree * (g_mid - 1));
        assert_eq!(g_mid - 1, mid.index());
    }
}

#[test]
fn non_normal_index_three_subgroups_exist() {
    let subs = family(3);
    let non_normal: Vec<&Subgroup> = subs.iter().filter(|h| h.index() == 3 && !h.is_normal()).collect();
    assert!(!non_normal.is_empty());
    // oracle: a subgroup is normal iff every conjugate has the same table
    for h in non_normal.iter().take(10) {
        let conjugates: Vec<Subgroup> = (1..=4).map(|g| h.conjugate(&Word::new([g]))).collect();
        assert!(conjugates.iter().any(|c| c != *h));
    }
}

#[test]
fn coset_enumeration_recovers_schreier_generators() {
    for h in family(3).iter().step_by(19) {
        let e = enumerate_cosets(h.presentation(), h.schreier_generators(), true, 100_000).unwrap();
        assert_eq!(e.subgroup(), h);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn express_writes_members_in_the_given_generators(seed in any::<u64>()) {
        let subs = family(2);
        let h = &subs[1 + (seed as usize % 15)];
        let gens = h.schreier_generators().to_vec();
        let e = enumerate_cosets(h.presentation(), &gens, true, 100_000).unwrap();
        let mut rng = common::rng(seed);
        let w = common::random_word(&mut rng, 4, 12);
        let expressed = e.express(&w);
        prop_assert_eq!(expressed.is_some(), h.contains(&w));
        if let Some(y) = expressed {
            let back = y.substitute(&gens);
            prop_assert!(h.presentation().words_equal(&back, &w).unwrap());
        }
    }

    #[test]
    fn membership_is_invariant_under_free_and_relator_insertion(seed in any::<u64>()) {
        let subs = family(3);
        let h = &subs[seed as usize % subs.len()];
        let mut rng = common::rng(seed);
        let w = common::random_word(&mut rng, 4, 10);
        let u = common::random_word(&mut rng, 4, 5);
        let rel = Word::new(common::surface_relator(2));
        let padded = u.mul(&rel).mul(&u.inverse()).mul(&w).mul(&u).mul(&u.inverse());
        prop_assert_eq!(h.contains(&padded), h.contains(&w));
    }
}
