use proptest::prelude::*;
use unionfam::kneser::{disjoint_pair_count, is_union_intersecting};
use unionfam::search::{branch_and_bound_max, oracle_max_family, ConstraintSpec};
use unionfam::setfam::all_k_sets;
use unionfam::structure::{ell, is_intersecting, peel};
use unionfam::{canonical_form, is_isomorphic, Family, Permutation};

fn family_and_perm() -> impl Strategy<Value = (Family, Permutation)> {
    (4u32..=8, 2u32..=3).prop_flat_map(|(n, k)| {
        let total = all_k_sets(n, k).len();
        let images: Vec<u32> = (1..=n).collect();
        (proptest::collection::vec(any::<bool>(), total), Just(images).prop_shuffle()).prop_map(move |(pick, img)| {
            let masks = all_k_sets(n, k).into_iter().zip(pick).filter(|p| p.1).map(|p| p.0).collect();
            (Family::from_masks(n, k, masks).unwrap(), Permutation::new(img).unwrap())
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn relabelling_is_an_isomorphism((f, sigma) in family_and_perm()) {
        let g = f.apply_permutation(&sigma).unwrap();
        let w = is_isomorphic(&f, &g).unwrap().expect("relabelled family is isomorphic");
        prop_assert_eq!(f.apply_permutation(&w).unwrap(), g.clone());
        prop_assert_eq!(canonical_form(&f), canonical_form(&g));
    }

    #[test]
    fn invariants_survive_relabelling((f, sigma) in family_and_perm()) {
        let g = f.apply_permutation(&sigma).unwrap();
        prop_assert_eq!(disjoint_pair_count(&f), disjoint_pair_count(&g));
        prop_assert_eq!(is_intersecting(&f), is_intersecting(&g));
        prop_assert_eq!(ell(&f, 2).unwrap().value, ell(&g, 2).unwrap().value);
        prop_assert_eq!(is_union_intersecting(&f, 1, 2).unwrap(), is_union_intersecting(&g, 1, 2).unwrap());
    }

    #[test]
    fn removal_set_kills_all_disjoint_pairs((f, _s) in family_and_perm()) {
        let e = ell(&f, 2).unwrap();
        prop_assert!(is_intersecting(&e.remainder(&f)));
        prop_assert_eq!(e.removal.len(), e.value);
        prop_assert!(e.value as u64 <= disjoint_pair_count(&f));
    }

    #[test]
    fn peeling_on_union_intersecting((f, _s) in family_and_perm(), t in 1usize..=3) {
        prop_assume!(is_union_intersecting(&f, 1, t).unwrap());
        let trace = peel(&f, t).unwrap();
        prop_assert!(is_intersecting(&trace.core));
        prop_assert!(trace.removed.len() <= trace.m() * (t - 1));
        prop_assert!(ell(&f, 2).unwrap().value <= trace.removed.len());
    }
}

#[test]
fn search_is_label_free() {
    // anchors at different labels but in the same orbit give the same optimum
    for n in 4..=6 {
        let a = ConstraintSpec { pattern: Some(vec![1, 1]), must_contain: vec![vec![1, 2]], ..Default::default() };
        let b = ConstraintSpec { pattern: Some(vec![1, 1]), must_contain: vec![vec![n - 1, n]], ..Default::default() };
        assert_eq!(oracle_max_family(n, 2, &a).unwrap().max_size, oracle_max_family(n, 2, &b).unwrap().max_size);
        assert_eq!(
            branch_and_bound_max(n, 2, &a, u64::MAX).unwrap().max_size,
            branch_and_bound_max(n, 2, &b, u64::MAX).unwrap().max_size
        );
    }
}
