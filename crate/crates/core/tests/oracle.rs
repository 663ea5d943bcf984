mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use ybe_core::classify::{count_formula, iso_cycle_sets};
use ybe_core::oracle::{brute_iso, canonical_form, enumerate_cycle_sets, SearchOptions};
use ybe_core::CycleSet;

use common::{relabeled, small_pool};

fn classes(n: usize, indecomposable: bool) -> Vec<CycleSet> {
    let mut opts = SearchOptions::new(n);
    opts.indecomposable_only = indecomposable;
    let out = enumerate_cycle_sets(&opts).unwrap();
    assert!(out.complete);
    out.classes
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn canonical_form_is_a_relabeling_invariant((cs, moved, _) in relabeled(small_pool())) {
        let canon = canonical_form(&cs);
        prop_assert_eq!(&canonical_form(&moved), &canon);
        prop_assert!(brute_iso(&cs, &canon).unwrap().is_some());
        prop_assert!(iso_cycle_sets(&cs, &canon).is_some());
    }
}

#[test]
fn outputs_are_valid_and_distinct() {
    for n in 1..=5 {
        let found = classes(n, false);
        let forms: BTreeSet<CycleSet> = found.iter().map(canonical_form).collect();
        assert_eq!(forms.len(), found.len(), "duplicate class at n={n}");
        for cs in &found {
            assert!(cs.check().is_valid());
        }
    }
}

#[test]
fn known_small_counts() {
    let all: Vec<usize> = (1..=5).map(|n| classes(n, false).len()).collect();
    assert_eq!(all, vec![1, 2, 5, 23, 88]);
    let indecomposable: Vec<usize> = (1..=5).map(|n| classes(n, true).len()).collect();
    assert_eq!(indecomposable, vec![1, 1, 1, 5, 1]);
}

#[test]
fn indecomposable_size_four_matches_formula() {
    let found = classes(4, true);
    assert_eq!(found.len() as u128, count_formula(2).unwrap().total);
    assert!(found.iter().all(CycleSet::is_indecomposable));
}

#[test]
fn irretractable_filter_agrees_with_predicate() {
    for n in 1..=6 {
        let mut opts = SearchOptions::new(n);
        opts.irretractable_only = true;
        let filtered = enumerate_cycle_sets(&opts).unwrap().classes;
        let expected = classes(n, false).into_iter().filter(CycleSet::is_irretractable).count();
        assert_eq!(filtered.len(), expected, "n={n}");
    }
}
