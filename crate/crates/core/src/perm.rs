//! Permutations of `{0, ..., n-1}`, generated groups, orbits and block systems.

use std::collections::VecDeque;
use std::fmt;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_DEGREE: usize = 1 << 15;

/// Default number of elements a materialized closure may hold.
pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

/// A partition of the point set, blocks sorted internally and by first element.
pub type Partition = Vec<Vec<usize>>;

/// A bijection of `{0, ..., n-1}` stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[derive(Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Perm {
    img: Vec<u16>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        assert!(n <= MAX_DEGREE);
        Perm { img: (0..n as u16).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        if n > MAX_DEGREE {
            return Err(Error::DegreeTooLarge(n));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::NotAPermutation(format!("{images:?}")));
            }
            seen[x] = true;
        }
        Ok(Perm { img: images.into_iter().map(|x| x as u16).collect() })
    }

    /// Builds a permutation from disjoint cycles; points not mentioned are fixed.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Perm> {
        let mut img: Vec<usize> = (0..n).collect();
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= n {
                    return Err(Error::NotAPermutation(format!("point {x} out of range")));
                }
                img[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Perm::from_images(img)
    }

    pub(crate) fn from_raw(img: Vec<u16>) -> Perm {
        Perm { img }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.img.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.img[x] as usize
    }

    pub fn images(&self) -> &[u16] {
        &self.img
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.img.iter().map(|&x| x as usize).collect()
    }

    /// `self ∘ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch { left: self.degree(), right: other.degree() });
        }
        Ok(self.mul(other))
    }

    #[inline]
    pub(crate) fn mul(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm { img: other.img.iter().map(|&x| self.img[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut img = vec![0u16; self.img.len()];
        for (i, &x) in self.img.iter().enumerate() {
            img[x as usize] = i as u16;
        }
        Perm { img }
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Cycle lengths in decreasing order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x);
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    pub fn order(&self) -> u64 {
        self.cycle_type()
            .into_iter()
            .fold(1u64, |acc, l| acc / crate::arith::gcd(acc, l as u64) * l as u64)
    }

    pub fn pow(&self, k: i64) -> Perm {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut result = Perm::identity(self.degree());
        for _ in 0..k.unsigned_abs() {
            result = base.mul(&result);
        }
        result
    }

    /// Image of a set of points, sorted.
    pub fn image_of_set(&self, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().map(|&x| self.apply(x)).collect();
        out.sort_unstable();
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.img)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.img.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl TryFrom<Vec<usize>> for Perm {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Perm> {
        Perm::from_images(v)
    }
}

impl From<Perm> for Vec<usize> {
    fn from(p: Perm) -> Vec<usize> {
        p.to_vec()
    }
}

/// Checked composition `a ∘ b`.
pub fn compose(a: &Perm, b: &Perm) -> Result<Perm> {
    a.compose(b)
}

fn common_degree(gens: &[Perm]) -> Result<Option<usize>> {
    let Some(first) = gens.first() else { return Ok(None) };
    for g in gens {
        if g.degree() != first.degree() {
            return Err(Error::DegreeMismatch { left: first.degree(), right: g.degree() });
        }
    }
    Ok(Some(first.degree()))
}

/// Materializes the group generated by `gens`, identity first, in breadth-first order.
///
/// `n` is only consulted when `gens` is empty.
pub fn closure(gens: &[Perm], n: usize, cap: usize) -> Result<Vec<Perm>> {
    let n = common_degree(gens)?.unwrap_or(n);
    let mut gens: Vec<Perm> = gens.to_vec();
    gens.sort();
    gens.dedup();
    let id = Perm::identity(n);
    let mut index: FxHashMap<Perm, usize> = FxHashMap::default();
    let mut elems = vec![id.clone()];
    index.insert(id, 0);
    let mut head = 0;
    while head < elems.len() {
        let cur = elems[head].clone();
        head += 1;
        for g in &gens {
            let next = cur.mul(g);
            if !index.contains_key(&next) {
                if elems.len() >= cap {
                    return Err(Error::CapExceeded { cap });
                }
                index.insert(next.clone(), elems.len());
                elems.push(next);
            }
        }
    }
    Ok(elems)
}

/// A permutation group given by generators, optionally materialized.
#[derive(Debug, Clone)]
pub struct PermGroup {
    pub n: usize,
    pub gens: Vec<Perm>,
    elems: Option<Vec<Perm>>,
}

impl PermGroup {
    pub fn new(n: usize, gens: Vec<Perm>) -> Result<PermGroup> {
        if let Some(d) = common_degree(&gens)? {
            if d != n {
                return Err(Error::DegreeMismatch { left: n, right: d });
            }
        }
        Ok(PermGroup { n, gens, elems: None })
    }

    pub fn materialize(&mut self, cap: usize) -> Result<&[Perm]> {
        if self.elems.is_none() {
            self.elems = Some(closure(&self.gens, self.n, cap)?);
        }
        Ok(self.elems.as_deref().unwrap())
    }

    pub fn elements(&self) -> Option<&[Perm]> {
        self.elems.as_deref()
    }

    pub fn order(&self) -> Option<usize> {
        self.elems.as_ref().map(Vec::len)
    }

    pub fn orbits(&self) -> Partition {
        orbits(&self.gens, self.n)
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() <= 1
    }
}

/// Orbits of the group generated by `gens`, by point expansion.
pub fn orbits(gens: &[Perm], n: usize) -> Partition {
    let mut label = vec![usize::MAX; n];
    let mut out = Vec::new();
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut orbit = vec![start];
        label[start] = id;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = g.apply(x);
                if label[y] == usize::MAX {
                    label[y] = id;
                    orbit.push(y);
                    queue.push_back(y);
                }
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> Option<(usize, usize)> {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return None;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        Some((lo, hi))
    }

    fn partition(&mut self) -> Partition {
        let n = self.parent.len();
        let mut blocks: FxHashMap<usize, Vec<usize>> = FxHashMap::default();
        for x in 0..n {
            let r = self.find(x);
            blocks.entry(r).or_default().push(x);
        }
        canonical_partition(blocks.into_values().collect())
    }
}

pub fn canonical_partition(mut blocks: Partition) -> Partition {
    for b in &mut blocks {
        b.sort_unstable();
    }
    blocks.sort_unstable_by_key(|b| b[0]);
    blocks
}

/// Finest partition invariant under `gens` with all of `seed` in one block.
pub fn minimal_block_system(gens: &[Perm], n: usize, seed: &[usize]) -> Partition {
    let mut uf = UnionFind::new(n);
    let mut queue = Vec::new();
    if let Some((&first, rest)) = seed.split_first() {
        for &s in rest {
            if let Some(pair) = uf.union(first, s) {
                queue.push(pair);
            }
        }
    }
    while let Some((a, b)) = queue.pop() {
        for g in gens {
            if let Some(pair) = uf.union(g.apply(a), g.apply(b)) {
                queue.push(pair);
            }
        }
    }
    uf.partition()
}

pub fn is_trivial_partition(p: &Partition, n: usize) -> bool {
    p.len() <= 1 || p.len() == n
}

/// True iff every generator maps every block onto a block.
pub fn is_block_system(gens: &[Perm], partition: &Partition) -> bool {
    let n: usize = partition.iter().map(Vec::len).sum();
    let mut block_of = vec![usize::MAX; n];
    for (i, b) in partition.iter().enumerate() {
        for &x in b {
            if x >= n || block_of[x] != usize::MAX {
                return false;
            }
            block_of[x] = i;
        }
    }
    gens.iter().all(|g| {
        partition.iter().all(|b| {
            let target = block_of[g.apply(b[0])];
            b.iter().all(|&x| block_of[g.apply(x)] == target)
                && partition[target].len() == b.len()
        })
    })
}

fn require_transitive(gens: &[Perm], n: usize) -> Result<()> {
    if orbits(gens, n).len() > 1 {
        return Err(Error::NotTransitive);
    }
    Ok(())
}

/// The distinct nontrivial minimal block systems generated by `{0, x}`, `x != 0`.
pub fn block_systems(gens: &[Perm], n: usize) -> Result<Vec<Partition>> {
    require_transitive(gens, n)?;
    let mut out: Vec<Partition> = Vec::new();
    for x in 1..n {
        let p = minimal_block_system(gens, n, &[0, x]);
        if !is_trivial_partition(&p, n) && !out.contains(&p) {
            out.push(p);
        }
    }
    out.sort();
    Ok(out)
}

/// Every nontrivial block system of a transitive group, found by joining
/// the block containing 0 with further points until the whole set is reached.
pub fn all_block_systems(gens: &[Perm], n: usize) -> Result<Vec<Partition>> {
    require_transitive(gens, n)?;
    let mut found: Vec<Partition> = Vec::new();
    let mut frontier: Vec<Partition> = Vec::new();
    for x in 1..n {
        let p = minimal_block_system(gens, n, &[0, x]);
        if !found.contains(&p) {
            found.push(p.clone());
            frontier.push(p);
        }
    }
    while let Some(p) = frontier.pop() {
        let block0 = p[0].clone();
        for x in 0..n {
            if block0.contains(&x) {
                continue;
            }
            let mut seed = block0.clone();
            seed.push(x);
            let q = minimal_block_system(gens, n, &seed);
            if !found.contains(&q) {
                found.push(q.clone());
                frontier.push(q);
            }
        }
    }
    found.retain(|p| !is_trivial_partition(p, n));
    found.sort();
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Perm {
        Perm::from_images(v.to_vec()).unwrap()
    }

    #[test]
    fn compose_examples() {
        let b = p(&[2, 0, 1]);
        assert_eq!(Perm::identity(3).compose(&b).unwrap(), b);
        let t = p(&[1, 0]);
        assert!(t.compose(&t).unwrap().is_identity());
        let c = Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let s = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        assert_eq!(c.compose(&s).unwrap().to_vec(), vec![2, 1, 0]);
        assert!(matches!(c.compose(&t), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::from_images(vec![0, 0]).is_err());
        assert!(Perm::from_images(vec![0, 2]).is_err());
    }

    #[test]
    fn closure_small() {
        assert_eq!(closure(&[Perm::identity(3)], 3, 10).unwrap().len(), 1);
        let g = closure(&[p(&[1, 0])], 2, 10).unwrap();
        assert_eq!(g.len(), 2);
        assert!(g[0].is_identity());
        let sym4 = [p(&[1, 0, 2, 3]), p(&[1, 2, 3, 0])];
        assert_eq!(closure(&sym4, 4, 100).unwrap().len(), 24);
        assert_eq!(closure(&sym4, 4, 10), Err(Error::CapExceeded { cap: 10 }));
    }

    #[test]
    fn orbit_examples() {
        assert_eq!(orbits(&[Perm::identity(3)], 3), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(orbits(&[p(&[1, 2, 0])], 3), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn block_system_examples() {
        let sym4 = [p(&[1, 0, 2, 3]), p(&[1, 2, 3, 0])];
        assert!(block_systems(&sym4, 4).unwrap().is_empty());
        let klein = [p(&[1, 0, 3, 2]), p(&[2, 3, 0, 1])];
        let systems = block_systems(&klein, 4).unwrap();
        assert_eq!(systems.len(), 3);
        for s in &systems {
            assert_eq!(s.len(), 2);
            assert!(is_block_system(&klein, s));
        }
        assert_eq!(
            block_systems(&[Perm::identity(2)], 2),
            Err(Error::NotTransitive)
        );
    }

    #[test]
    fn all_block_systems_of_cyclic_8() {
        let c8 = [Perm::from_cycles(8, &[&[0, 1, 2, 3, 4, 5, 6, 7]]).unwrap()];
        // blocks of size 2 and of size 4
        let all = all_block_systems(&c8, 8).unwrap();
        assert_eq!(all.len(), 2);
        assert_eq!(block_systems(&c8, 8).unwrap().len(), 2);
    }

    #[test]
    fn cycle_type_and_order() {
        let x = Perm::from_cycles(5, &[&[0, 1], &[2, 3, 4]]).unwrap();
        assert_eq!(x.cycle_type(), vec![3, 2]);
        assert_eq!(x.order(), 6);
        assert!(x.pow(6).is_identity());
        assert_eq!(x.pow(-1), x.inverse());
    }
}
