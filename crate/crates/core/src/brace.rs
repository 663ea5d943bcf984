//! The permutation brace of a cycle set.
//!
//! The multiplicative group is `⟨σ_x⁻¹⟩ ⊆ Sym_X`. The addition is generated by
//! the rule `g + σ_z⁻¹ = g ∘ σ⁻¹_{g⁻¹(z)}`, which follows from
//! `λ_g(σ_z⁻¹) = σ⁻¹_{g(z)}`. Every element is reached from the identity by a
//! breadth-first walk that adds one generator at a time; the walk's parent
//! links give each element as a sum of generators, and general sums are
//! evaluated by replaying those chains.
//!
//! Full Cayley tables are only materialized for small braces; larger ones
//! answer queries from the step table.

use serde::{Deserialize, Serialize};

use rustc_hash::FxHashMap;

use crate::cycleset::CycleSet;
use crate::error::{Error, Result};
use crate::perm::{self, Partition, Perm};

pub const DEFAULT_BRACE_CAP: usize = 100_000;

/// Braces up to this order get materialized `circ`/`add`/`lam` tables.
pub const TABLE_LIMIT: usize = 1024;

/// Above this many `order · n²` step evaluations the commutation check is sampled.
const FULL_COMMUTATION_BUDGET: usize = 50_000_000;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraceTables {
    pub circ: Vec<Vec<u32>>,
    pub add: Vec<Vec<u32>>,
    pub lam: Vec<Vec<u32>>,
}

#[derive(Debug, Clone)]
pub struct PermBrace {
    n_points: usize,
    elems: Vec<Perm>,
    index: FxHashMap<Perm, u32>,
    /// Index of `σ_z⁻¹` for each point `z`.
    point_elem: Vec<u32>,
    /// Index of `σ_z` for each point `z`.
    sigma_elem: Vec<u32>,
    /// `step[a * n + z] = a + σ_z⁻¹`.
    step: Vec<u32>,
    /// Breadth-first parent and the generator point added to reach each element.
    parent: Vec<(u32, u16)>,
    neg: Vec<u32>,
    tables: Option<BraceTables>,
}

/// A subset of a brace with its structural tags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraceSubset {
    pub members: Vec<usize>,
    pub is_subgroup_add: bool,
    pub is_subgroup_circ: bool,
    pub is_left_ideal: bool,
    pub is_ideal: bool,
}

impl BraceSubset {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members.binary_search(&a).is_ok()
    }

    pub fn is_subbrace(&self) -> bool {
        self.is_subgroup_add && self.is_subgroup_circ
    }
}

/// Block stabilizer together with its index in the multiplicative group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockStabilizer {
    pub subset: BraceSubset,
    pub index: usize,
}

/// JSON snapshot of a small brace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraceDoc {
    pub kind: String,
    pub n_points: usize,
    pub order: usize,
    pub elements: Vec<Perm>,
    pub circ: Vec<Vec<u32>>,
    pub add: Vec<Vec<u32>>,
}

/// Checks the brace axioms on raw tables: `add` an abelian group, `circ` a
/// group with the same neutral element, and `a∘(b+c) = a∘b − a + a∘c`.
/// Cubic in the order.
pub fn check_brace_tables(circ: &[Vec<u32>], add: &[Vec<u32>]) -> std::result::Result<(), String> {
    let order = add.len();
    if order == 0 || circ.len() != order {
        return Err("tables are empty or of different sizes".into());
    }
    for (name, table) in [("add", add), ("circ", circ)] {
        for (a, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(format!("{name} row {a} has length {}", row.len()));
            }
            let mut seen = vec![false; order];
            for &v in row {
                let v = v as usize;
                if v >= order || seen[v] {
                    return Err(format!("{name} row {a} is not a permutation"));
                }
                seen[v] = true;
            }
        }
    }
    let Some(zero) = (0..order).find(|&e| (0..order).all(|a| add[e][a] as usize == a)) else {
        return Err("addition has no neutral element".into());
    };
    if (0..order).any(|a| circ[zero][a] as usize != a || circ[a][zero] as usize != a) {
        return Err(format!("additive zero {zero} is not neutral for composition"));
    }
    let mut neg = vec![0usize; order];
    for a in 0..order {
        neg[a] = add[a].iter().position(|&v| v as usize == zero).expect("rows are permutations");
        for b in 0..order {
            if add[a][b] != add[b][a] {
                return Err(format!("addition not commutative at ({a},{b})"));
            }
        }
    }
    for a in 0..order {
        for b in 0..order {
            let ab_add = add[a][b] as usize;
            let ab_circ = circ[a][b] as usize;
            let shifted = add[ab_circ][neg[a]] as usize;
            for c in 0..order {
                if add[ab_add][c] != add[a][add[b][c] as usize] {
                    return Err(format!("addition not associative at ({a},{b},{c})"));
                }
                if circ[ab_circ][c] != circ[a][circ[b][c] as usize] {
                    return Err(format!("composition not associative at ({a},{b},{c})"));
                }
                if circ[a][add[b][c] as usize] != add[shifted][circ[a][c] as usize] {
                    return Err(format!("skew distributivity fails at ({a},{b},{c})"));
                }
            }
        }
    }
    Ok(())
}

/// Materializes the permutation brace of `cs`.
pub fn build_perm_brace(cs: &CycleSet, cap: usize) -> Result<PermBrace> {
    let n = cs.size();
    let sigma = cs.sigma_gens();
    let t: Vec<Perm> = sigma.iter().map(Perm::inverse).collect();
    let elems = perm::closure(&t, n, cap)?;
    let order = elems.len();
    let index: FxHashMap<Perm, u32> =
        elems.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
    let point_elem: Vec<u32> = t.iter().map(|p| index[p]).collect();
    let sigma_elem: Vec<u32> = sigma.iter().map(|p| index[p]).collect();

    let mut step = vec![NONE; order * n];
    for (a, g) in elems.iter().enumerate() {
        let g_inv = g.inverse();
        for z in 0..n {
            let sum = g.mul(&t[g_inv.apply(z)]);
            step[a * n + z] = index[&sum];
        }
    }
    for z in 0..n {
        let mut hit = vec![false; order];
        for a in 0..order {
            let b = step[a * n + z] as usize;
            if hit[b] {
                return Err(Error::InconsistentAddition(format!(
                    "adding generator {z} is not injective"
                )));
            }
            hit[b] = true;
        }
    }

    let mut parent = vec![(NONE, 0u16); order];
    parent[0] = (0, 0);
    let mut bfs = vec![0u32];
    let mut head = 0;
    while head < bfs.len() {
        let a = bfs[head] as usize;
        head += 1;
        for z in 0..n {
            let b = step[a * n + z] as usize;
            if parent[b].0 == NONE {
                parent[b] = (a as u32, z as u16);
                bfs.push(b as u32);
            }
        }
    }
    if bfs.len() != order {
        return Err(Error::InconsistentAddition(format!(
            "additive walk reached {} of {order} elements",
            bfs.len()
        )));
    }

    let full = order.saturating_mul(n * n) <= FULL_COMMUTATION_BUDGET;
    let stride = if full { 1 } else { (order * n * n / FULL_COMMUTATION_BUDGET).max(1) };
    for a in (0..order).step_by(stride) {
        for z in 0..n {
            for w in (z + 1)..n {
                let zw = step[step[a * n + z] as usize * n + w];
                let wz = step[step[a * n + w] as usize * n + z];
                if zw != wz {
                    return Err(Error::InconsistentAddition(format!(
                        "generators {z} and {w} do not commute at element {a}"
                    )));
                }
            }
        }
    }

    let mut brace = PermBrace {
        n_points: n,
        elems,
        index,
        point_elem,
        sigma_elem,
        step,
        parent,
        neg: Vec::new(),
        tables: None,
    };

    let neg_gen: Vec<u32> = (0..n)
        .map(|z| {
            let mut a = 0usize;
            loop {
                let next = brace.step[a * n + z] as usize;
                if next == 0 {
                    break a as u32;
                }
                a = next;
            }
        })
        .collect();
    let mut neg = vec![NONE; order];
    neg[0] = 0;
    for &e in &bfs[1..] {
        let (par, z) = brace.parent[e as usize];
        neg[e as usize] = brace.add(neg[par as usize] as usize, neg_gen[z as usize] as usize) as u32;
    }
    brace.neg = neg;

    if order <= TABLE_LIMIT {
        brace.tables = Some(brace.compute_tables());
    }
    Ok(brace)
}

impl PermBrace {
    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn elem(&self, a: usize) -> &Perm {
        &self.elems[a]
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elems
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).map(|&i| i as usize)
    }

    pub fn tables(&self) -> Option<&BraceTables> {
        self.tables.as_ref()
    }

    /// The element `σ_x⁻¹`, i.e. the image of the point `x` in the brace.
    pub fn point(&self, x: usize) -> usize {
        self.point_elem[x] as usize
    }

    /// The element `σ_x`.
    pub fn sigma(&self, x: usize) -> usize {
        self.sigma_elem[x] as usize
    }

    pub fn circ(&self, a: usize, b: usize) -> usize {
        if let Some(t) = &self.tables {
            return t.circ[a][b] as usize;
        }
        self.index[&self.elems[a].mul(&self.elems[b])] as usize
    }

    pub fn circ_inv(&self, a: usize) -> usize {
        self.index[&self.elems[a].inverse()] as usize
    }

    /// `a + σ_z⁻¹`.
    #[inline]
    pub fn add_point(&self, a: usize, z: usize) -> usize {
        self.step[a * self.n_points + z] as usize
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        if let Some(t) = &self.tables {
            return t.add[a][b] as usize;
        }
        self.add_by_chain(a, b)
    }

    fn add_by_chain(&self, a: usize, b: usize) -> usize {
        let mut acc = a;
        let mut cur = b;
        while cur != 0 {
            let (par, z) = self.parent[cur];
            acc = self.add_point(acc, z as usize);
            cur = par as usize;
        }
        acc
    }

    /// The generator points whose sum is `a`.
    pub fn decomposition(&self, a: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = a;
        while cur != 0 {
            let (par, z) = self.parent[cur];
            out.push(z as usize);
            cur = par as usize;
        }
        out
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// `k·a` in the additive group.
    pub fn mul_add(&self, k: i64, a: usize) -> usize {
        let mut base = if k < 0 { self.neg(a) } else { a };
        let mut e = k.unsigned_abs();
        let mut acc = 0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn additive_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut cur = a;
        while cur != 0 {
            cur = self.add(cur, a);
            k += 1;
        }
        k
    }

    /// `λ_a(b) = -a + a∘b`.
    pub fn lambda(&self, a: usize, b: usize) -> usize {
        if let Some(t) = &self.tables {
            return t.lam[a][b] as usize;
        }
        self.add(self.neg(a), self.circ(a, b))
    }

    /// `λ_a(b)` evaluated as `Σ σ⁻¹_{a(z)}` over a decomposition `b = Σ σ_z⁻¹`.
    pub fn lambda_by_generators(&self, a: usize, b: usize) -> usize {
        let g = &self.elems[a];
        self.decomposition(b)
            .into_iter()
            .fold(0, |acc, z| self.add_point(acc, g.apply(z)))
    }

    /// `ᵃb = a∘b∘ā`.
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.circ(self.circ(a, b), self.circ_inv(a))
    }

    /// `a * b = λ_a(b) - b`.
    pub fn star(&self, a: usize, b: usize) -> usize {
        self.sub(self.lambda(a, b), b)
    }

    fn compute_tables(&self) -> BraceTables {
        let order = self.order();
        let circ: Vec<Vec<u32>> = (0..order)
            .map(|a| (0..order).map(|b| self.index[&self.elems[a].mul(&self.elems[b])]).collect())
            .collect();
        let add: Vec<Vec<u32>> = (0..order)
            .map(|a| (0..order).map(|b| self.add_by_chain(a, b) as u32).collect())
            .collect();
        let lam = (0..order)
            .map(|a| {
                (0..order)
                    .map(|b| add[self.neg[a] as usize][circ[a][b] as usize])
                    .collect()
            })
            .collect();
        BraceTables { circ, add, lam }
    }

    /// Exhaustive check of every brace axiom on the materialized tables.
    /// Fails with the first violated law.
    pub fn verify_tables(&self) -> std::result::Result<(), String> {
        let Some(t) = &self.tables else {
            return Err("tables not materialized".into());
        };
        check_brace_tables(&t.circ, &t.add)?;
        for a in 0..self.order() {
            for b in 0..self.order() {
                if t.lam[a][b] != t.add[self.neg(a)][t.circ[a][b] as usize] {
                    return Err(format!("lambda table disagrees with -a + a∘b at ({a},{b})"));
                }
            }
        }
        Ok(())
    }

    /// Builds the subset record, computing all tags.
    pub fn subset(&self, mut members: Vec<usize>) -> BraceSubset {
        members.sort_unstable();
        members.dedup();
        let mut mask = vec![false; self.order()];
        for &m in &members {
            mask[m] = true;
        }
        let add_gens = self.subgroup_generators(&members, &mask, |a, b| self.add(a, b));
        let circ_gens = self.subgroup_generators(&members, &mask, |a, b| self.circ(a, b));
        let is_subgroup_add = add_gens.is_some();
        let is_subgroup_circ = circ_gens.is_some();
        let is_left_ideal = add_gens.as_ref().is_some_and(|gens| {
            gens.iter().all(|&g| (0..self.n_points).all(|x| mask[self.lambda(self.point(x), g)]))
        });
        let is_ideal = is_left_ideal
            && circ_gens.as_ref().is_some_and(|gens| {
                gens.iter().all(|&s| (0..self.n_points).all(|x| mask[self.conj(self.point(x), s)]))
            });
        BraceSubset { members, is_subgroup_add, is_subgroup_circ, is_left_ideal, is_ideal }
    }

    /// Greedy generating set of `members` under `op` if it is a subgroup, else `None`.
    fn subgroup_generators(
        &self,
        members: &[usize],
        mask: &[bool],
        op: impl Fn(usize, usize) -> usize,
    ) -> Option<Vec<usize>> {
        if !mask.first().copied().unwrap_or(false) {
            return None;
        }
        let mut span = vec![false; self.order()];
        span[0] = true;
        let mut span_list = vec![0usize];
        let mut gens: Vec<usize> = Vec::new();
        for &m in members {
            if span[m] {
                continue;
            }
            gens.push(m);
            let mut head = 0;
            while head < span_list.len() {
                let h = span_list[head];
                head += 1;
                for &g in &gens {
                    let v = op(h, g);
                    if !mask[v] {
                        return None;
                    }
                    if !span[v] {
                        span[v] = true;
                        span_list.push(v);
                    }
                }
            }
        }
        (span_list.len() == members.len()).then_some(gens)
    }

    /// `Soc = ker λ`; `λ_a = id` iff `σ_{a(z)} = σ_z` for every point `z`.
    pub fn socle(&self) -> BraceSubset {
        let members = (0..self.order())
            .filter(|&a| {
                let g = &self.elems[a];
                (0..self.n_points).all(|z| self.point_elem[g.apply(z)] == self.point_elem[z])
            })
            .collect();
        self.subset(members)
    }

    /// Fixed points of `λ_s` for all `s ∈ S` (all of the brace by default).
    pub fn fix(&self, s: Option<&[usize]>) -> BraceSubset {
        let actors: Vec<usize> = match s {
            None => (0..self.n_points).map(|x| self.point(x)).collect(),
            Some(set) => {
                let mut set = set.to_vec();
                set.sort_unstable();
                set.dedup();
                let mut mask = vec![false; self.order()];
                for &m in &set {
                    mask[m] = true;
                }
                self.subgroup_generators(&set, &mask, |a, b| self.circ(a, b))
                    .unwrap_or(set)
            }
        };
        let members = (0..self.order())
            .filter(|&a| actors.iter().all(|&g| self.lambda_by_generators(g, a) == a))
            .collect();
        self.subset(members)
    }

    /// Elements mapping every block of `system` onto itself.
    pub fn block_stabilizer(&self, system: &Partition) -> BlockStabilizer {
        let mut block_of = vec![0; self.n_points];
        for (i, b) in system.iter().enumerate() {
            for &x in b {
                block_of[x] = i;
            }
        }
        let members: Vec<usize> = (0..self.order())
            .filter(|&a| (0..self.n_points).all(|x| block_of[self.elems[a].apply(x)] == block_of[x]))
            .collect();
        let index = self.order() / members.len();
        BlockStabilizer { subset: self.subset(members), index }
    }

    /// Elements of `p`-power additive order.
    pub fn additive_sylow(&self, p: u64) -> BraceSubset {
        let members = (0..self.order())
            .filter(|&a| {
                let mut k = self.additive_order(a) as u64;
                while k.is_multiple_of(p) {
                    k /= p;
                }
                k == 1
            })
            .collect();
        self.subset(members)
    }

    /// Centre of the multiplicative group.
    pub fn circ_center(&self) -> BraceSubset {
        let gens: Vec<&Perm> = (0..self.n_points).map(|x| &self.elems[self.point(x)]).collect();
        let members = (0..self.order())
            .filter(|&a| {
                let g = &self.elems[a];
                gens.iter().all(|h| g.mul(h) == h.mul(g))
            })
            .collect();
        self.subset(members)
    }

    pub fn is_circ_abelian(&self) -> bool {
        let gens: Vec<&Perm> = (0..self.n_points).map(|x| &self.elems[self.point(x)]).collect();
        gens.iter().all(|a| gens.iter().all(|b| a.mul(b) == b.mul(a)))
    }

    pub fn to_doc(&self) -> Result<BraceDoc> {
        let Some(t) = &self.tables else {
            return Err(Error::TooLargeToDump { order: self.order(), limit: TABLE_LIMIT });
        };
        Ok(BraceDoc {
            kind: "perm_brace".into(),
            n_points: self.n_points,
            order: self.order(),
            elements: self.elems.clone(),
            circ: t.circ.clone(),
            add: t.add.clone(),
        })
    }
}
