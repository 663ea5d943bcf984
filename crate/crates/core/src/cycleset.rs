//! Finite non-degenerate cycle sets and their structural predicates.
//!
//! A cycle set is stored as its full operation table, `table[x][y] = x·y`.
//! Rows are the maps `σ_x = x·-`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{self, Partition, Perm};

/// Outcome of checking the three cycle-set axioms on a table.
///
/// Witnesses are the first failures in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidityReport {
    pub c1_ok: bool,
    pub c2_ok: bool,
    pub c3_ok: bool,
    /// `(x, y, z)` with `(x·y)·(x·z) != (y·x)·(y·z)`.
    pub c1_witness: Option<[usize; 3]>,
    /// A row `x` whose map `y ↦ x·y` is not injective.
    pub c2_witness: Option<usize>,
    /// Two points with the same square.
    pub c3_witness: Option<[usize; 2]>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.c1_ok && self.c2_ok && self.c3_ok
    }

    /// First witness in words, or `valid`.
    pub fn describe(&self) -> String {
        if let Some([x, y, z]) = self.c1_witness {
            format!("(C1) fails at (x,y,z)=({x},{y},{z})")
        } else if let Some(x) = self.c2_witness {
            format!("(C2) fails: row {x} is not a bijection")
        } else if let Some([x, y]) = self.c3_witness {
            format!("(C3) fails: {x}·{x} = {y}·{y}")
        } else {
            "valid".to_string()
        }
    }
}

fn validate_shape(table: &[Vec<usize>]) -> Result<usize> {
    let n = table.len();
    if n == 0 {
        return Err(Error::MalformedTable("empty table".into()));
    }
    for (x, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::MalformedTable(format!("row {x} has length {} (expected {n})", row.len())));
        }
        if let Some(&v) = row.iter().find(|&&v| v >= n) {
            return Err(Error::MalformedTable(format!("entry {v} in row {x} out of range")));
        }
    }
    Ok(n)
}

/// Checks (C1)-(C3) on a raw square table.
pub fn check_cycle_set(table: &[Vec<usize>]) -> Result<ValidityReport> {
    let n = validate_shape(table)?;
    let op = |x: usize, y: usize| table[x][y];

    let mut c2_witness = None;
    for (x, row) in table.iter().enumerate() {
        let distinct: BTreeSet<_> = row.iter().collect();
        if distinct.len() != n {
            c2_witness = Some(x);
            break;
        }
    }

    let mut c1_witness = None;
    'outer: for x in 0..n {
        for y in 0..n {
            let xy = op(x, y);
            let yx = op(y, x);
            for z in 0..n {
                if op(xy, op(x, z)) != op(yx, op(y, z)) {
                    c1_witness = Some([x, y, z]);
                    break 'outer;
                }
            }
        }
    }

    let mut c3_witness = None;
    let mut first_with_square = vec![usize::MAX; n];
    for x in 0..n {
        let s = op(x, x);
        if first_with_square[s] != usize::MAX {
            c3_witness = Some([first_with_square[s], x]);
            break;
        }
        first_with_square[s] = x;
    }

    Ok(ValidityReport {
        c1_ok: c1_witness.is_none(),
        c2_ok: c2_witness.is_none(),
        c3_ok: c3_witness.is_none(),
        c1_witness,
        c2_witness,
        c3_witness,
    })
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleSet {
    n: usize,
    table: Vec<usize>,
}

impl fmt::Debug for CycleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CycleSet").field("n", &self.n).field("table", &self.rows()).finish()
    }
}

/// Result of a retraction step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Retraction {
    pub cycle_set: CycleSet,
    /// `projection[x]` is the class of `x`; classes are numbered by first occurrence.
    pub projection: Vec<usize>,
}

/// A proper quotient of a cycle set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub partition: Partition,
    pub cycle_set: CycleSet,
    pub projection: Vec<usize>,
}

impl CycleSet {
    /// Validates the table against (C1)-(C3).
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<CycleSet> {
        let report = check_cycle_set(&table)?;
        if !report.is_valid() {
            return Err(Error::InvalidCycleSet(report.describe()));
        }
        Ok(Self::from_rows_unchecked(&table))
    }

    pub(crate) fn from_rows_unchecked(table: &[Vec<usize>]) -> CycleSet {
        let n = table.len();
        CycleSet { n, table: table.iter().flatten().copied().collect() }
    }

    /// Builds from a flat row-major table without checking the axioms.
    /// Callers must guarantee the result is a valid cycle set.
    pub fn from_flat_unchecked(n: usize, table: Vec<usize>) -> CycleSet {
        assert_eq!(table.len(), n * n);
        CycleSet { n, table }
    }

    /// Builds from a function `(x, y) ↦ x·y` without checking the axioms.
    pub fn from_fn_unchecked(n: usize, op: impl Fn(usize, usize) -> usize) -> CycleSet {
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                table.push(op(x, y));
            }
        }
        CycleSet { n, table }
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x * self.n + y]
    }

    pub fn row(&self, x: usize) -> &[usize] {
        &self.table[x * self.n..(x + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|x| self.row(x).to_vec()).collect()
    }

    pub fn flat(&self) -> &[usize] {
        &self.table
    }

    pub fn check(&self) -> ValidityReport {
        check_cycle_set(&self.rows()).expect("stored tables are well-formed")
    }

    pub fn sigma(&self, x: usize) -> Perm {
        Perm::from_raw(self.row(x).iter().map(|&v| v as u16).collect())
    }

    /// `[σ_0, ..., σ_{n-1}]`.
    pub fn sigma_gens(&self) -> Vec<Perm> {
        (0..self.n).map(|x| self.sigma(x)).collect()
    }

    pub fn square_map(&self) -> Perm {
        Perm::from_raw((0..self.n).map(|x| self.op(x, x) as u16).collect())
    }

    pub fn is_indecomposable(&self) -> bool {
        perm::orbits(&self.sigma_gens(), self.n).len() == 1
    }

    pub fn is_irretractable(&self) -> bool {
        let rows: BTreeSet<&[usize]> = (0..self.n).map(|x| self.row(x)).collect();
        rows.len() == self.n
    }

    /// Identifies `x ~ y` when `σ_x = σ_y` and induces the operation on classes.
    pub fn retraction(&self) -> Result<Retraction> {
        let n = self.n;
        let mut reps: Vec<usize> = Vec::new();
        let mut projection = vec![0; n];
        for x in 0..n {
            match reps.iter().position(|&r| self.row(r) == self.row(x)) {
                Some(c) => projection[x] = c,
                None => {
                    projection[x] = reps.len();
                    reps.push(x);
                }
            }
        }
        let m = reps.len();
        let mut table = vec![usize::MAX; m * m];
        for x in 0..n {
            for y in 0..n {
                let cell = &mut table[projection[x] * m + projection[y]];
                let v = projection[self.op(x, y)];
                if *cell == usize::MAX {
                    *cell = v;
                } else if *cell != v {
                    return Err(Error::InducedTableIllDefined);
                }
            }
        }
        Ok(Retraction { cycle_set: CycleSet { n: m, table }, projection })
    }

    /// Sizes `|X|, |Ret(X)|, |Ret²(X)|, ...` until a fixed point is reached.
    pub fn retraction_tower(&self) -> Vec<usize> {
        let mut sizes = vec![self.n];
        let mut cur = self.clone();
        for _ in 0..self.n {
            let next = cur.retraction().expect("valid cycle sets have well-defined retractions").cycle_set;
            if next.n == cur.n {
                break;
            }
            sizes.push(next.n);
            cur = next;
        }
        sizes
    }

    /// Number of retraction steps to reach one point, or `None` if the
    /// iteration stalls at a larger irretractable cycle set.
    pub fn multipermutation_level(&self) -> Option<usize> {
        let tower = self.retraction_tower();
        (*tower.last().unwrap() == 1).then(|| tower.len() - 1)
    }

    /// Smallest subset containing `seed` and closed under the operation.
    pub fn sub_cycle_set(&self, seed: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.n];
        let mut members: Vec<usize> = Vec::new();
        for &s in seed {
            if !inside[s] {
                inside[s] = true;
                members.push(s);
            }
        }
        let mut processed = 0;
        while processed < members.len() {
            let new = members[processed];
            processed += 1;
            for i in 0..processed {
                let old = members[i];
                for v in [self.op(new, old), self.op(old, new)] {
                    if !inside[v] {
                        inside[v] = true;
                        members.push(v);
                    }
                }
            }
        }
        members.sort_unstable();
        members
    }

    /// The cycle set transported along `pi`: `π(x)·'π(y) = π(x·y)`.
    pub fn relabel(&self, pi: &Perm) -> CycleSet {
        assert_eq!(pi.degree(), self.n);
        let mut table = vec![0; self.n * self.n];
        for x in 0..self.n {
            for y in 0..self.n {
                table[pi.apply(x) * self.n + pi.apply(y)] = pi.apply(self.op(x, y));
            }
        }
        CycleSet { n: self.n, table }
    }

    /// True iff `f(x·y) = f(x)·'f(y)` for all `x, y`.
    pub fn is_homomorphism(&self, other: &CycleSet, f: &[usize]) -> bool {
        f.len() == self.n
            && f.iter().all(|&v| v < other.n)
            && (0..self.n).all(|x| (0..self.n).all(|y| f[self.op(x, y)] == other.op(f[x], f[y])))
    }

    pub fn is_isomorphism(&self, other: &CycleSet, f: &Perm) -> bool {
        self.n == other.n && f.degree() == self.n && self.is_homomorphism(other, &f.to_vec())
    }

    pub fn is_automorphism(&self, f: &Perm) -> bool {
        self.is_isomorphism(self, f)
    }

    /// Tries to induce a quotient table on `partition`.
    pub fn quotient_by(&self, partition: &Partition) -> Option<Quotient> {
        let mut projection = vec![usize::MAX; self.n];
        for (i, block) in partition.iter().enumerate() {
            for &x in block {
                projection[x] = i;
            }
        }
        if projection.contains(&usize::MAX) {
            return None;
        }
        let m = partition.len();
        let mut table = vec![usize::MAX; m * m];
        for x in 0..self.n {
            for y in 0..self.n {
                let cell = &mut table[projection[x] * m + projection[y]];
                let v = projection[self.op(x, y)];
                if *cell == usize::MAX {
                    *cell = v;
                } else if *cell != v {
                    return None;
                }
            }
        }
        Some(Quotient {
            partition: partition.clone(),
            cycle_set: CycleSet { n: m, table },
            projection,
        })
    }

    /// All proper nontrivial quotients of an indecomposable cycle set.
    ///
    /// Fibres of a quotient map of an indecomposable cycle set form a block
    /// system of the permutation group, so only block systems are searched.
    pub fn quotients(&self) -> Result<Vec<Quotient>> {
        if !self.is_indecomposable() {
            return Err(Error::NotIndecomposable);
        }
        let systems = perm::all_block_systems(&self.sigma_gens(), self.n)?;
        Ok(systems.iter().filter_map(|s| self.quotient_by(s)).collect())
    }

    pub fn is_simple(&self) -> Result<bool> {
        Ok(self.quotients()?.is_empty())
    }

    /// Plain-text rendering of the operation table.
    pub fn render_table(&self) -> String {
        let w = (self.n.max(2) - 1).to_string().len();
        let mut s = String::new();
        s.push_str(&format!("{:>w$} |", "·", w = w));
        for y in 0..self.n {
            s.push_str(&format!(" {:>w$}", y, w = w));
        }
        s.push('\n');
        s.push_str(&"-".repeat((w + 1) * (self.n + 1) + 1));
        s.push('\n');
        for x in 0..self.n {
            s.push_str(&format!("{:>w$} |", x, w = w));
            for y in 0..self.n {
                s.push_str(&format!(" {:>w$}", self.op(x, y), w = w));
            }
            s.push('\n');
        }
        s
    }
}

/// The trivial cycle set `x·y = y` on `n` points.
pub fn trivial_cycle_set(n: usize) -> CycleSet {
    CycleSet::from_fn_unchecked(n, |_, y| y)
}

/// Disjoint union, with the points of `b` shifted by `|a|`.
pub fn disjoint_union(a: &CycleSet, b: &CycleSet) -> CycleSet {
    let (na, nb) = (a.size(), b.size());
    CycleSet::from_fn_unchecked(na + nb, |x, y| match (x < na, y < na) {
        (true, true) => a.op(x, y),
        (false, false) => b.op(x - na, y - na) + na,
        _ => y,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::cyclic_cycle_set;

    #[test]
    fn check_examples() {
        let z2 = vec![vec![1, 0], vec![1, 0]];
        assert!(check_cycle_set(&z2).unwrap().is_valid());

        let bad = vec![vec![1, 0], vec![0, 1]];
        let r = check_cycle_set(&bad).unwrap();
        assert!(!r.c1_ok);
        assert_eq!(r.c1_witness, Some([0, 1, 0]));
        assert!(r.c2_ok);
    }

    #[test]
    fn malformed_tables() {
        assert!(matches!(check_cycle_set(&[]), Err(Error::MalformedTable(_))));
        assert!(matches!(check_cycle_set(&[vec![0, 1]]), Err(Error::MalformedTable(_))));
        assert!(matches!(check_cycle_set(&[vec![0, 2], vec![0, 1]]), Err(Error::MalformedTable(_))));
    }

    #[test]
    fn c2_and_c3_witnesses() {
        let r = check_cycle_set(&[vec![0, 0], vec![0, 1]]).unwrap();
        assert_eq!(r.c2_witness, Some(0));
        // rows bijective, squares collide: x·x = 0 for both
        let r = check_cycle_set(&[vec![0, 1], vec![0, 1]]).unwrap();
        assert!(r.c2_ok);
        assert_eq!(r.c3_witness, None);
        let r = check_cycle_set(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(r.c3_witness, Some([0, 1]));
    }

    #[test]
    fn sigma_and_indecomposability() {
        let z3 = cyclic_cycle_set(3);
        let gens = z3.sigma_gens();
        assert_eq!(gens.len(), 3);
        assert!(gens.iter().all(|g| g == &gens[0] && g.cycle_type() == vec![3]));
        assert_eq!(cyclic_cycle_set(1).sigma_gens(), vec![Perm::identity(1)]);
        assert!(cyclic_cycle_set(4).is_indecomposable());
        let split = disjoint_union(&trivial_cycle_set(1), &trivial_cycle_set(1));
        assert!(split.check().is_valid());
        assert!(!split.is_indecomposable());
    }

    #[test]
    fn retraction_of_cyclic() {
        let z9 = cyclic_cycle_set(9);
        let ret = z9.retraction().unwrap();
        assert_eq!(ret.cycle_set.size(), 1);
        assert!(ret.projection.iter().all(|&c| c == 0));
        assert_eq!(z9.multipermutation_level(), Some(1));
        assert_eq!(cyclic_cycle_set(1).multipermutation_level(), Some(0));
        assert_eq!(cyclic_cycle_set(4).multipermutation_level(), Some(1));
    }

    #[test]
    fn sub_cycle_set_examples() {
        let z4 = cyclic_cycle_set(4);
        assert_eq!(z4.sub_cycle_set(&[0]), vec![0, 1, 2, 3]);
        assert_eq!(z4.sub_cycle_set(&[0, 1, 2, 3]), vec![0, 1, 2, 3]);
        let t = trivial_cycle_set(3);
        assert_eq!(t.sub_cycle_set(&[1]), vec![1]);
    }

    #[test]
    fn quotients_of_cyclic_4() {
        let z4 = cyclic_cycle_set(4);
        let qs = z4.quotients().unwrap();
        assert_eq!(qs.len(), 1);
        assert_eq!(qs[0].partition, vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(qs[0].cycle_set.size(), 2);
        assert!(!z4.is_simple().unwrap());
        let split = disjoint_union(&trivial_cycle_set(1), &trivial_cycle_set(1));
        assert_eq!(split.quotients(), Err(Error::NotIndecomposable));
    }

    #[test]
    fn relabel_is_isomorphism() {
        let z4 = cyclic_cycle_set(4);
        let pi = Perm::from_images(vec![2, 0, 3, 1]).unwrap();
        let r = z4.relabel(&pi);
        assert!(r.check().is_valid());
        assert!(z4.is_isomorphism(&r, &pi));
    }

    #[test]
    fn render_has_all_rows() {
        let s = cyclic_cycle_set(3).render_table();
        assert_eq!(s.lines().count(), 5);
    }
}
