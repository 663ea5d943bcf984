//! Isomorphism and automorphism search for cycle sets.
//!
//! Points are first coloured by isomorphism-invariant data and the colouring
//! is refined until stable. The search then assigns images class by class;
//! every assignment is closed under the operation (`f(u·v) = f(u)·f(v)`), so
//! one or two choices usually determine the whole map.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use rustc_hash::FxHashMap;

use crate::cycleset::CycleSet;
use crate::perm::Perm;

const NONE: usize = usize::MAX;

fn hash_of<T: Hash>(value: &T) -> u64 {
    let mut h = DefaultHasher::new();
    value.hash(&mut h);
    h.finish()
}

fn class_count(colors: &[u64]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Stable invariant colouring and the number of refinement rounds it took.
pub fn refined_colors(cs: &CycleSet) -> (Vec<u64>, usize) {
    let n = cs.size();
    let mut row_count: FxHashMap<&[usize], usize> = FxHashMap::default();
    for x in 0..n {
        *row_count.entry(cs.row(x)).or_default() += 1;
    }
    let square = cs.square_map();
    let mut colors: Vec<u64> = (0..n)
        .map(|x| {
            let sigma = cs.sigma(x);
            let mut orbit = 1;
            let mut y = sigma.apply(x);
            while y != x {
                y = sigma.apply(y);
                orbit += 1;
            }
            let mut sq_orbit = 1;
            let mut y = square.apply(x);
            while y != x {
                y = square.apply(y);
                sq_orbit += 1;
            }
            hash_of(&(sigma.cycle_type(), orbit, sq_orbit, row_count[cs.row(x)]))
        })
        .collect();
    let mut classes = class_count(&colors);
    let mut rounds = 0;
    loop {
        let next: Vec<u64> = (0..n)
            .map(|x| {
                let mut out: Vec<(u64, u64)> = (0..n).map(|y| (colors[y], colors[cs.op(x, y)])).collect();
                let mut inn: Vec<(u64, u64)> = (0..n).map(|y| (colors[y], colors[cs.op(y, x)])).collect();
                out.sort_unstable();
                inn.sort_unstable();
                hash_of(&(colors[x], out, inn))
            })
            .collect();
        let next_classes = class_count(&next);
        if next_classes == classes {
            return (colors, rounds);
        }
        colors = next;
        classes = next_classes;
        rounds += 1;
    }
}

/// Sorted colour multiset; equal for isomorphic cycle sets.
pub fn signature(cs: &CycleSet) -> (usize, usize, Vec<u64>) {
    let (colors, rounds) = refined_colors(cs);
    let mut sorted = colors;
    sorted.sort_unstable();
    (cs.size(), rounds, sorted)
}

struct Search<'a> {
    a: &'a CycleSet,
    b: &'a CycleSet,
    ca: Vec<u64>,
    cb: Vec<u64>,
    f: Vec<usize>,
    finv: Vec<usize>,
    trail: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(a: &'a CycleSet, b: &'a CycleSet) -> Option<Search<'a>> {
        let n = a.size();
        if n != b.size() {
            return None;
        }
        let (ca, ra) = refined_colors(a);
        let (cb, rb) = refined_colors(b);
        let mut sa = ca.clone();
        let mut sb = cb.clone();
        sa.sort_unstable();
        sb.sort_unstable();
        if ra != rb || sa != sb {
            return None;
        }
        Some(Search { a, b, ca, cb, f: vec![NONE; n], finv: vec![NONE; n], trail: Vec::with_capacity(n) })
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().unwrap();
            self.finv[self.f[x]] = NONE;
            self.f[x] = NONE;
        }
    }

    fn set(&mut self, x: usize, y: usize) -> bool {
        if self.finv[y] != NONE || self.ca[x] != self.cb[y] {
            return false;
        }
        self.f[x] = y;
        self.finv[y] = x;
        self.trail.push(x);
        true
    }

    /// Assigns `x ↦ y` and closes under the operation. On failure the caller undoes.
    fn assign(&mut self, x: usize, y: usize) -> bool {
        let start = self.trail.len();
        if !self.set(x, y) {
            return false;
        }
        let mut head = start;
        while head < self.trail.len() {
            let w = self.trail[head];
            head += 1;
            let mut i = 0;
            while i < self.trail.len() {
                let u = self.trail[i];
                i += 1;
                for (s, t) in [(u, w), (w, u)] {
                    let r = self.a.op(s, t);
                    let target = self.b.op(self.f[s], self.f[t]);
                    if self.f[r] == NONE {
                        if !self.set(r, target) {
                            return false;
                        }
                    } else if self.f[r] != target {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Unassigned point with the fewest candidate images.
    fn pick(&self) -> Option<(usize, Vec<usize>)> {
        let n = self.f.len();
        let mut best: Option<(usize, Vec<usize>)> = None;
        for x in 0..n {
            if self.f[x] != NONE {
                continue;
            }
            let cands: Vec<usize> =
                (0..n).filter(|&y| self.finv[y] == NONE && self.cb[y] == self.ca[x]).collect();
            if best.as_ref().is_none_or(|(_, c)| cands.len() < c.len()) {
                let done = cands.len() <= 1;
                best = Some((x, cands));
                if done {
                    break;
                }
            }
        }
        best
    }

    /// Visits every complete isomorphism; `visit` returns `false` to stop.
    fn run(&mut self, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let Some((x, cands)) = self.pick() else {
            return visit(&self.f);
        };
        for y in cands {
            let mark = self.trail.len();
            if self.assign(x, y) && !self.run(visit) {
                self.undo_to(mark);
                return false;
            }
            self.undo_to(mark);
        }
        true
    }
}

/// An isomorphism `a → b`, if one exists.
pub fn iso_cycle_sets(a: &CycleSet, b: &CycleSet) -> Option<Perm> {
    let mut search = Search::new(a, b)?;
    let mut found = None;
    search.run(&mut |f| {
        found = Some(f.to_vec());
        false
    });
    found.map(|img| Perm::from_images(img).expect("search produces bijections"))
}

/// All automorphisms, in the order the search meets them.
pub fn automorphisms(cs: &CycleSet) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut search = Search::new(cs, cs).expect("a cycle set matches itself");
    search.run(&mut |f| {
        out.push(Perm::from_images(f.to_vec()).expect("search produces bijections"));
        true
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cyclic_cycle_set, irr_cycle_set, mpl2_zp, PhiFn};

    #[test]
    fn self_iso() {
        let cs = irr_cycle_set(&PhiFn::new(3, vec![0, 1, 1]).unwrap(), 1).unwrap();
        let f = iso_cycle_sets(&cs, &cs).unwrap();
        assert!(cs.is_isomorphism(&cs, &f));
    }

    #[test]
    fn relabeled_copies_match() {
        let cs = mpl2_zp(3, &[0, 1, 2], 1).unwrap();
        let pi = Perm::from_images(vec![4, 2, 7, 0, 8, 1, 3, 6, 5]).unwrap();
        let other = cs.relabel(&pi);
        let f = iso_cycle_sets(&cs, &other).unwrap();
        assert!(cs.is_isomorphism(&other, &f));
    }

    #[test]
    fn mpl2_scaled_parameters() {
        let a = mpl2_zp(3, &[0, 1, 1], 1).unwrap();
        let b = mpl2_zp(3, &[0, 2, 2], 2).unwrap();
        assert!(iso_cycle_sets(&a, &b).is_some());
    }

    #[test]
    fn distinct_classes() {
        let a = irr_cycle_set(&PhiFn::new(3, vec![0, 1, 1]).unwrap(), 1).unwrap();
        let b = irr_cycle_set(&PhiFn::new(3, vec![1, 0, 0]).unwrap(), 1).unwrap();
        assert!(iso_cycle_sets(&a, &b).is_none());
        assert!(iso_cycle_sets(&cyclic_cycle_set(4), &mpl2_zp(2, &[0, 1], 0).unwrap()).is_none());
    }

    #[test]
    fn automorphism_counts() {
        // p·|Stab Φ|
        let cs = irr_cycle_set(&PhiFn::new(2, vec![0, 1]).unwrap(), 1).unwrap();
        assert_eq!(automorphisms(&cs).len(), 2);
        let cs = irr_cycle_set(&PhiFn::new(3, vec![0, 1, 1]).unwrap(), 1).unwrap();
        assert_eq!(automorphisms(&cs).len(), 3);
        let c4 = cyclic_cycle_set(4);
        assert_eq!(automorphisms(&c4).len(), 4);
    }
}
