//! Brute-force ground truth: exhaustive enumeration of small cycle sets up to
//! isomorphism, and isomorphism/automorphism search over all bijections.
//!
//! Nothing here depends on the classification of the families.
//!
//! The enumeration fixes the rows `σ_x` one at a time. Axiom (C1) is used in
//! the pairwise form `σ_{σ_a(b)} ∘ σ_a = σ_{σ_b(a)} ∘ σ_b`: once three of the
//! four rows of a pair are known the fourth is forced, and when all four are
//! known the relation is checked.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::classify::refined_colors;
use crate::cycleset::CycleSet;
use crate::error::{Error, Result};
use crate::perm::Perm;

/// Sizes above this are refused by every oracle entry point.
pub const MAX_ORACLE_N: usize = 9;

/// Sizes up to this are always searched to completion.
pub const GUARANTEED_COMPLETE_N: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    pub n: usize,
    pub indecomposable_only: bool,
    pub irretractable_only: bool,
    pub time_budget: Option<Duration>,
    pub canonicalize: bool,
    pub jobs: usize,
}

impl SearchOptions {
    pub fn new(n: usize) -> SearchOptions {
        SearchOptions {
            n,
            indecomposable_only: false,
            irretractable_only: false,
            time_budget: None,
            canonicalize: true,
            jobs: 1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct OracleResult {
    /// One representative per class, sorted by table.
    pub classes: Vec<CycleSet>,
    /// False when the time budget ran out before the search finished.
    pub complete: bool,
    pub elapsed: Duration,
}

/// Summary record emitted after the class list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleSummary {
    pub classes: usize,
    pub complete: bool,
    /// Seconds.
    pub elapsed: f64,
}

impl OracleResult {
    pub fn summary(&self) -> OracleSummary {
        OracleSummary {
            classes: self.classes.len(),
            complete: self.complete,
            elapsed: self.elapsed.as_secs_f64(),
        }
    }
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::MalformedTable("empty cycle set".into()));
    }
    if n > MAX_ORACLE_N {
        return Err(Error::SizeTooLarge { n, max: MAX_ORACLE_N });
    }
    Ok(())
}

fn partitions(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if n == 0 {
        out.push(prefix.clone());
        return;
    }
    for part in (1..=n.min(max)).rev() {
        prefix.push(part);
        partitions(n - part, part, prefix, out);
        prefix.pop();
    }
}

/// `(cycle type, length of the cycle through x)` of the row `σ_x`, cycle
/// lengths in decreasing order.
fn row_key(row: &[usize], x: usize) -> (Vec<usize>, usize) {
    let n = row.len();
    let mut seen = vec![false; n];
    let mut lengths = Vec::new();
    let mut through_x = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut y = start;
        let mut has_x = false;
        while !seen[y] {
            seen[y] = true;
            has_x |= y == x;
            y = row[y];
            len += 1;
        }
        if has_x {
            through_x = len;
        }
        lengths.push(len);
    }
    lengths.sort_unstable_by(|a, b| b.cmp(a));
    (lengths, through_x)
}

/// One `σ_0` per (cycle type, length of the cycle through 0). Any cycle set can
/// be relabeled so that `0` is a point of greatest [`row_key`] and its `σ_0`
/// is one of these.
fn first_rows(n: usize) -> Vec<Vec<usize>> {
    let mut types = Vec::new();
    partitions(n, n, &mut Vec::new(), &mut types);
    let mut out = Vec::new();
    for ty in types {
        let mut lengths: Vec<usize> = ty.clone();
        lengths.dedup();
        for &first in &lengths {
            let mut rest = ty.clone();
            let pos = rest.iter().position(|&l| l == first).unwrap();
            rest.remove(pos);
            let mut row = vec![0; n];
            let mut start = 0;
            for len in std::iter::once(first).chain(rest) {
                for i in 0..len {
                    row[start + i] = start + (i + 1) % len;
                }
                start += len;
            }
            out.push(row);
        }
    }
    out
}

const NONE: usize = usize::MAX;

#[derive(Clone)]
struct State {
    n: usize,
    rows: Vec<Vec<usize>>,
    fixed: Vec<bool>,
    /// Key of `σ_0`; no row may exceed it.
    top: (Vec<usize>, usize),
}

impl State {
    fn new(first: Vec<usize>) -> State {
        let n = first.len();
        let top = row_key(&first, 0);
        let mut state = State { n, rows: vec![vec![0; n]; n], fixed: vec![false; n], top };
        state.set_row(0, first);
        state
    }

    fn set_row(&mut self, x: usize, row: Vec<usize>) {
        self.rows[x] = row;
        self.fixed[x] = true;
    }

    fn below_top(&self, x: usize, row: &[usize]) -> bool {
        row_key(row, x) <= self.top
    }

    /// Enforces the pairwise relation and the partial square-map injectivity.
    fn propagate(&mut self) -> bool {
        let n = self.n;
        loop {
            let mut changed = false;
            for a in 0..n {
                if !self.fixed[a] {
                    continue;
                }
                for b in a + 1..n {
                    if !self.fixed[b] {
                        continue;
                    }
                    let u = self.rows[a][b];
                    let v = self.rows[b][a];
                    match (self.fixed[u], self.fixed[v]) {
                        (true, true) => {
                            if (0..n).any(|z| self.rows[u][self.rows[a][z]] != self.rows[v][self.rows[b][z]]) {
                                return false;
                            }
                        }
                        (true, false) => {
                            let mut row = vec![0; n];
                            for z in 0..n {
                                row[self.rows[b][z]] = self.rows[u][self.rows[a][z]];
                            }
                            if !self.below_top(v, &row) {
                                return false;
                            }
                            self.set_row(v, row);
                            changed = true;
                        }
                        (false, true) => {
                            let mut row = vec![0; n];
                            for z in 0..n {
                                row[self.rows[a][z]] = self.rows[v][self.rows[b][z]];
                            }
                            if !self.below_top(u, &row) {
                                return false;
                            }
                            self.set_row(u, row);
                            changed = true;
                        }
                        (false, false) => {
                            if u == v && self.rows[a] != self.rows[b] {
                                return false;
                            }
                        }
                    }
                }
            }
            let mut squares = vec![false; n];
            for x in (0..n).filter(|&x| self.fixed[x]) {
                let s = self.rows[x][x];
                if squares[s] {
                    return false;
                }
                squares[s] = true;
            }
            if !changed {
                return true;
            }
        }
    }

    /// All rows for the unfixed point `x` consistent with the fixed rows.
    ///
    /// Entries at fixed points are chosen first: once `σ_x(y) = u` is known
    /// with `σ_u` fixed, the pair `(x, y)` forces every other entry.
    fn candidate_rows(&self, x: usize) -> Vec<Vec<usize>> {
        let n = self.n;
        let mut positions: Vec<usize> = (0..n).filter(|&y| self.fixed[y]).collect();
        positions.extend((0..n).filter(|&y| !self.fixed[y]));
        let mut out = Vec::new();
        let mut row = vec![NONE; n];
        let mut used = vec![false; n];
        self.extend_row(x, &positions, 0, &mut row, &mut used, &mut out);
        out
    }

    fn extend_row(
        &self,
        x: usize,
        positions: &[usize],
        depth: usize,
        row: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let n = self.n;
        if depth == n {
            if self.below_top(x, row) {
                out.push(row.clone());
            }
            return;
        }
        let z = positions[depth];
        let mut try_value = |w: usize, row: &mut Vec<usize>, used: &mut Vec<bool>| {
            if used[w] {
                return;
            }
            row[z] = w;
            used[w] = true;
            if self.partial_ok(x, row) {
                self.extend_row(x, positions, depth + 1, row, used, out);
            }
            used[w] = false;
            row[z] = NONE;
        };
        match self.forced(x, z, row) {
            Some(w) => try_value(w, row, used),
            None => {
                for w in 0..n {
                    try_value(w, row, used);
                }
            }
        }
    }

    /// Value of `σ_x(z)` implied by an assigned pair `(x, y)`, if any.
    fn forced(&self, x: usize, z: usize, row: &[usize]) -> Option<usize> {
        for y in (0..self.n).filter(|&y| y != x && self.fixed[y]) {
            let u = row[y];
            if u == NONE || u == x || !self.fixed[u] {
                continue;
            }
            let v = self.rows[y][x];
            if v != x && !self.fixed[v] {
                continue;
            }
            let t = self.rows[y][z];
            let target = if v == x { row[t] } else { self.rows[v][t] };
            if target != NONE {
                return self.rows[u].iter().position(|&w| w == target);
            }
        }
        None
    }

    /// Checks the relation for pairs `(x, y)`, `y` fixed, on the entries of
    /// `row` assigned so far, and that `σ_x(x)` is no other point's square.
    fn partial_ok(&self, x: usize, row: &[usize]) -> bool {
        let n = self.n;
        let lookup = |r: usize, c: usize| -> usize {
            if r == x {
                row[c]
            } else if self.fixed[r] {
                self.rows[r][c]
            } else {
                NONE
            }
        };
        if row[x] != NONE && (0..n).any(|y| y != x && self.fixed[y] && self.rows[y][y] == row[x]) {
            return false;
        }
        for y in 0..n {
            if y == x || !self.fixed[y] || row[y] == NONE {
                continue;
            }
            let u = row[y];
            let v = self.rows[y][x];
            for z in 0..n {
                if row[z] == NONE {
                    continue;
                }
                let left = lookup(u, row[z]);
                let right = lookup(v, self.rows[y][z]);
                if left != NONE && right != NONE && left != right {
                    return false;
                }
            }
        }
        true
    }
}

struct Enumerator<'a> {
    opts: &'a SearchOptions,
    deadline: Option<Instant>,
    found: BTreeSet<Vec<usize>>,
    aborted: bool,
    nodes: u64,
}

impl Enumerator<'_> {
    fn out_of_time(&mut self) -> bool {
        self.nodes += 1;
        if !self.aborted && self.nodes.is_multiple_of(256) {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.aborted = true;
                }
            }
        }
        self.aborted
    }

    fn dfs(&mut self, state: State) {
        if self.out_of_time() {
            return;
        }
        // fail first: branch on the unfixed point with the fewest candidate rows
        let mut best: Option<(usize, Vec<Vec<usize>>)> = None;
        for x in (0..state.n).filter(|&x| !state.fixed[x]) {
            let cands = state.candidate_rows(x);
            if best.as_ref().is_none_or(|(_, b)| cands.len() < b.len()) {
                let done = cands.len() <= 1;
                best = Some((x, cands));
                if done {
                    break;
                }
            }
        }
        let Some((x, cands)) = best else {
            self.leaf(&state);
            return;
        };
        for row in cands {
            let mut next = state.clone();
            next.set_row(x, row);
            if next.propagate() {
                self.dfs(next);
            }
            if self.aborted {
                return;
            }
        }
    }

    fn leaf(&mut self, state: &State) {
        let cs = CycleSet::from_rows_unchecked(&state.rows);
        if !cs.check().is_valid() {
            return;
        }
        if self.opts.indecomposable_only && !cs.is_indecomposable() {
            return;
        }
        if self.opts.irretractable_only && !cs.is_irretractable() {
            return;
        }
        let key = if self.opts.canonicalize { canonical_form(&cs) } else { cs };
        self.found.insert(key.flat().to_vec());
    }
}

/// Enumerates cycle sets of size `opts.n`, one per isomorphism class (or every
/// table reached, when canonicalization is off).
pub fn enumerate_cycle_sets(opts: &SearchOptions) -> Result<OracleResult> {
    check_size(opts.n)?;
    let start = Instant::now();
    let deadline = if opts.n <= GUARANTEED_COMPLETE_N { None } else { opts.time_budget.map(|b| start + b) };
    let n = opts.n;
    let roots = first_rows(n);
    let jobs = opts.jobs.max(1).min(roots.len());

    let run = |share: Vec<Vec<usize>>| {
        let mut e = Enumerator { opts, deadline, found: BTreeSet::new(), aborted: false, nodes: 0 };
        for row in share {
            let mut state = State::new(row);
            if state.propagate() {
                e.dfs(state);
            }
            if e.aborted {
                break;
            }
        }
        (e.found, e.aborted)
    };

    let mut shares: Vec<Vec<Vec<usize>>> = vec![Vec::new(); jobs];
    for (i, row) in roots.into_iter().enumerate() {
        shares[i % jobs].push(row);
    }
    let results: Vec<(BTreeSet<Vec<usize>>, bool)> = if jobs == 1 {
        shares.into_iter().map(run).collect()
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = shares.into_iter().map(|s| scope.spawn(|| run(s))).collect();
            handles.into_iter().map(|h| h.join().expect("oracle worker panicked")).collect()
        })
    };

    let mut all = BTreeSet::new();
    let mut complete = true;
    for (found, aborted) in results {
        all.extend(found);
        complete &= !aborted;
    }
    Ok(OracleResult {
        classes: all.into_iter().map(|t| CycleSet::from_flat_unchecked(n, t)).collect(),
        complete,
        elapsed: start.elapsed(),
    })
}

/// Least relabeled table over an isomorphism-invariant family of labelings.
///
/// Labels are handed out by closing the labeled points under the operation
/// in a fixed order of label pairs; when closure stalls, the next label goes
/// to each unlabeled point of the least remaining colour in turn.
pub fn canonical_form(cs: &CycleSet) -> CycleSet {
    let n = cs.size();
    let (colors, _) = refined_colors(cs);
    let mut best: Option<Vec<usize>> = None;
    let mut order = Vec::with_capacity(n);
    let mut label = vec![usize::MAX; n];
    canon_branch(cs, &colors, &mut order, &mut label, &mut best);
    CycleSet::from_flat_unchecked(n, best.expect("at least one labeling"))
}

fn canon_branch(
    cs: &CycleSet,
    colors: &[u64],
    order: &mut Vec<usize>,
    label: &mut Vec<usize>,
    best: &mut Option<Vec<usize>>,
) {
    let n = cs.size();
    let mark = order.len();
    // close under the operation, visiting label pairs by their larger label
    let mut k = 0;
    while k < order.len() {
        for i in 0..=k {
            for (s, t) in [(i, k), (k, i)] {
                let w = cs.op(order[s], order[t]);
                if label[w] == usize::MAX {
                    label[w] = order.len();
                    order.push(w);
                }
            }
        }
        k += 1;
    }
    if order.len() == n {
        let table: Vec<usize> = (0..n * n)
            .map(|c| label[cs.op(order[c / n], order[c % n])])
            .collect();
        if best.as_ref().is_none_or(|b| table < *b) {
            *best = Some(table);
        }
    } else {
        let least = (0..n).filter(|&x| label[x] == usize::MAX).map(|x| colors[x]).min().unwrap();
        for seed in 0..n {
            if label[seed] != usize::MAX || colors[seed] != least {
                continue;
            }
            label[seed] = order.len();
            order.push(seed);
            canon_branch(cs, colors, order, label, best);
            let x = order.pop().unwrap();
            label[x] = usize::MAX;
        }
    }
    while order.len() > mark {
        let x = order.pop().unwrap();
        label[x] = usize::MAX;
    }
}

/// Rearranges `a` into the next permutation in lexicographic order.
fn next_permutation(a: &mut [usize]) -> bool {
    let Some(i) = (1..a.len()).rev().find(|&i| a[i - 1] < a[i]) else {
        return false;
    };
    let j = (i..a.len()).rev().find(|&j| a[j] > a[i - 1]).unwrap();
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

fn scan_bijections(a: &CycleSet, b: &CycleSet, mut visit: impl FnMut(&[usize]) -> bool) -> Result<()> {
    let n = a.size();
    check_size(n)?;
    if b.size() != n {
        return Ok(());
    }
    let mut f: Vec<usize> = (0..n).collect();
    loop {
        let hom = (0..n).all(|x| (0..n).all(|y| f[a.op(x, y)] == b.op(f[x], f[y])));
        if hom && !visit(&f) {
            return Ok(());
        }
        if !next_permutation(&mut f) {
            return Ok(());
        }
    }
}

/// First isomorphism `a → b` in lexicographic order of image arrays.
pub fn brute_iso(a: &CycleSet, b: &CycleSet) -> Result<Option<Perm>> {
    let mut found = None;
    scan_bijections(a, b, |f| {
        found = Some(f.to_vec());
        false
    })?;
    Ok(found.map(|img| Perm::from_images(img).expect("scanned maps are bijections")))
}

/// Every automorphism, in lexicographic order of image arrays.
pub fn brute_aut(cs: &CycleSet) -> Result<Vec<Perm>> {
    let mut out = Vec::new();
    scan_bijections(cs, cs, |f| {
        out.push(Perm::from_images(f.to_vec()).expect("scanned maps are bijections"));
        true
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cyclic_cycle_set, irr_cycle_set, mpl2_zp, PhiFn};

    #[test]
    fn first_rows_cover_types() {
        assert_eq!(first_rows(1), vec![vec![0]]);
        // types of 3: [3], [2,1] twice, [1,1,1]
        assert_eq!(first_rows(3).len(), 4);
        assert!(first_rows(3).contains(&vec![1, 0, 2]));
        assert!(first_rows(3).contains(&vec![0, 2, 1]));
        for row in first_rows(5) {
            assert!(Perm::from_images(row).is_ok());
        }
    }

    #[test]
    fn size_one_and_two() {
        let r = enumerate_cycle_sets(&SearchOptions::new(1)).unwrap();
        assert_eq!(r.classes.len(), 1);
        assert!(r.complete);
        // trivial and the swap
        let r = enumerate_cycle_sets(&SearchOptions::new(2)).unwrap();
        assert_eq!(r.classes.len(), 2);
    }

    #[test]
    fn size_three_counts() {
        let all = enumerate_cycle_sets(&SearchOptions::new(3)).unwrap();
        assert_eq!(all.classes.len(), 5);
        assert_eq!(enumerate_cycle_sets(&SearchOptions::new(4)).unwrap().classes.len(), 23);
        let mut opts = SearchOptions::new(3);
        opts.indecomposable_only = true;
        assert_eq!(enumerate_cycle_sets(&opts).unwrap().classes.len(), 1);
    }

    #[test]
    fn size_four_indecomposable() {
        let mut opts = SearchOptions::new(4);
        opts.indecomposable_only = true;
        let r = enumerate_cycle_sets(&opts).unwrap();
        assert!(r.complete);
        assert_eq!(r.classes.len(), 5);
        opts.irretractable_only = true;
        assert_eq!(enumerate_cycle_sets(&opts).unwrap().classes.len(), 2);
    }

    #[test]
    fn parallel_matches_serial() {
        let mut opts = SearchOptions::new(4);
        let serial = enumerate_cycle_sets(&opts).unwrap();
        opts.jobs = 3;
        let parallel = enumerate_cycle_sets(&opts).unwrap();
        assert_eq!(serial.classes, parallel.classes);
    }

    #[test]
    fn canonical_is_invariant() {
        let cs = mpl2_zp(3, &[0, 1, 2], 2).unwrap();
        let pi = Perm::from_images(vec![5, 3, 8, 0, 2, 1, 7, 4, 6]).unwrap();
        assert_eq!(canonical_form(&cs), canonical_form(&cs.relabel(&pi)));
        let c = canonical_form(&cs);
        assert!(c.check().is_valid());
        assert!(brute_iso(&cs, &c).unwrap().is_some());
    }

    #[test]
    fn brute_examples() {
        let cs = irr_cycle_set(&PhiFn::new(2, vec![0, 1]).unwrap(), 1).unwrap();
        let auts = brute_aut(&cs).unwrap();
        assert_eq!(auts.len(), 2);
        assert!(auts[0].is_identity());
        assert!(brute_iso(&cyclic_cycle_set(4), &mpl2_zp(2, &[0, 1], 0).unwrap()).unwrap().is_none());
        assert_eq!(
            brute_iso(&cyclic_cycle_set(10), &cyclic_cycle_set(10)).unwrap_err(),
            Error::SizeTooLarge { n: 10, max: 9 }
        );
    }
}
