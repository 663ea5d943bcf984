mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use ybe_core::classify::automorphisms;
use ybe_core::families::deform;
use ybe_core::perm::{all_block_systems, closure, compose, is_block_system, orbits};
use ybe_core::{from_solution, parse_documents, to_solution, CycleSet, CycleSetDoc, Document, Perm, SolutionDoc};

use common::{perm_of, relabeled, small_pool};

fn gens_strategy() -> impl Strategy<Value = (usize, Vec<Perm>)> {
    (2usize..=7).prop_flat_map(|n| (Just(n), prop::collection::vec(perm_of(n), 1..=3)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closure_is_a_group((n, gens) in gens_strategy()) {
        let elems = closure(&gens, n, 10_000).unwrap();
        let set: BTreeSet<Perm> = elems.iter().cloned().collect();
        prop_assert!(set.contains(&Perm::identity(n)));
        for a in &elems {
            prop_assert!(set.contains(&a.inverse()));
            for g in &gens {
                prop_assert!(set.contains(&compose(a, g).unwrap()));
            }
        }
    }

    #[test]
    fn orbits_stable_under_extra_generators((n, gens) in gens_strategy()) {
        let before = orbits(&gens, n);
        let mut more = gens.clone();
        more.extend(closure(&gens, n, 10_000).unwrap());
        prop_assert_eq!(orbits(&more, n), before);
    }

    #[test]
    fn block_systems_are_invariant((n, gens) in gens_strategy()) {
        if orbits(&gens, n).len() == 1 {
            for system in all_block_systems(&gens, n).unwrap() {
                prop_assert!(is_block_system(&gens, &system));
            }
        }
    }

    #[test]
    fn solution_roundtrip((_, cs, _) in relabeled(small_pool())) {
        let sol = to_solution(&cs);
        prop_assert!(sol.report().is_valid());
        let back = from_solution(&sol).unwrap();
        prop_assert_eq!(&back, &cs);
        prop_assert_eq!(to_solution(&back), sol);
    }

    #[test]
    fn relabeling_is_an_isomorphism((cs, moved, pi) in relabeled(small_pool())) {
        prop_assert!(moved.check().is_valid());
        prop_assert!(cs.is_isomorphism(&moved, &pi));
        prop_assert_eq!(cs.is_indecomposable(), moved.is_indecomposable());
        prop_assert_eq!(cs.multipermutation_level(), moved.multipermutation_level());
    }

    #[test]
    fn documents_roundtrip((_, cs, _) in relabeled(small_pool())) {
        let text = format!(
            "{}\n{}",
            serde_json::to_string(&CycleSetDoc::new(&cs)).unwrap(),
            serde_json::to_string(&SolutionDoc::new(&to_solution(&cs))).unwrap()
        );
        let docs = parse_documents(&text).unwrap();
        prop_assert_eq!(docs.len(), 2);
        for doc in &docs {
            prop_assert_eq!(&doc.to_cycle_set().unwrap(), &cs);
        }
        prop_assert!(matches!(docs[1], Document::Solution(_)));
    }
}

#[test]
fn irretractable_characterizations() {
    for cs in small_pool() {
        let rows: BTreeSet<&[usize]> = (0..cs.size()).map(|x| cs.row(x)).collect();
        let distinct = rows.len() == cs.size();
        let ret = cs.retraction().unwrap();
        assert_eq!(cs.is_irretractable(), distinct);
        assert_eq!(distinct, ret.cycle_set.size() == cs.size());
    }
}

#[test]
fn indecomposable_quotients_have_equal_fibres() {
    for cs in small_pool().into_iter().filter(CycleSet::is_indecomposable) {
        let ret = cs.retraction().unwrap();
        assert!(ret.cycle_set.is_indecomposable());
        let mut quotients: Vec<Vec<usize>> = cs.quotients().unwrap().into_iter().map(|q| q.projection).collect();
        quotients.push(ret.projection);
        for projection in quotients {
            let classes = projection.iter().max().map_or(0, |m| m + 1);
            let mut sizes = vec![0; classes];
            for &c in &projection {
                sizes[c] += 1;
            }
            assert!(sizes.iter().all(|&s| s == sizes[0]), "fibres {sizes:?}");
        }
    }
}

#[test]
fn deformation_composes() {
    for cs in small_pool().into_iter().filter(|cs| cs.size() >= 4) {
        let auts = automorphisms(&cs);
        for phi in auts.iter().take(6) {
            for psi in auts.iter().take(6) {
                let phi_psi = compose(phi, psi).unwrap();
                if phi_psi != compose(psi, phi).unwrap() {
                    continue;
                }
                let twice = deform(&deform(&cs, psi).unwrap(), phi).unwrap();
                assert_eq!(deform(&cs, &phi_psi).unwrap(), twice);
                assert!(twice.check().is_valid());
            }
        }
    }
}
