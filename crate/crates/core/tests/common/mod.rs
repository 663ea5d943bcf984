#![allow(dead_code)]

use proptest::prelude::*;
use ybe_core::classify::enumerate_classes;
use ybe_core::families::cyclic_cycle_set;
use ybe_core::oracle::{enumerate_cycle_sets, SearchOptions};
use ybe_core::{CycleSet, FamilyParams, Perm};

/// Every class of size 4 and 9, plus all cycle sets of size ≤ 4 and a few cyclic ones.
pub fn small_pool() -> Vec<CycleSet> {
    let mut pool = Vec::new();
    for n in 1..=4 {
        pool.extend(enumerate_cycle_sets(&SearchOptions::new(n)).unwrap().classes);
    }
    for n in [5, 6, 8] {
        pool.push(cyclic_cycle_set(n));
    }
    for p in [2, 3] {
        pool.extend(enumerate_classes(p).unwrap().iter().map(|c| c.build().unwrap()));
    }
    pool
}

pub fn params(p: u64) -> Vec<FamilyParams> {
    enumerate_classes(p).unwrap()
}

pub fn perm_of(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_images(v).unwrap())
}

/// A pool member together with a random relabeling of it.
pub fn relabeled(pool: Vec<CycleSet>) -> impl Strategy<Value = (CycleSet, CycleSet, Perm)> {
    prop::sample::select(pool).prop_flat_map(|cs| {
        let n = cs.size();
        (Just(cs), perm_of(n)).prop_map(|(cs, pi)| {
            let moved = cs.relabel(&pi);
            (cs, moved, pi)
        })
    })
}
