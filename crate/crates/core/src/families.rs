//! Explicit families of indecomposable cycle sets, the deformation and
//! cabling operators, and the simple solutions with parameters `(f, t)`.
//!
//! Pairs `(a, x) ∈ Z_m × A` are indexed as `a·|A| + idx(x)`; for size `p²`
//! this is `a·p + x`.

use serde::{Deserialize, Serialize};

use crate::arith::{inv_mod, is_prime, mul_order};
use crate::brace::{build_perm_brace, PermBrace};
use crate::cycleset::CycleSet;
use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::solution::{to_solution, Solution};

/// `1` at zero, `0` elsewhere.
pub fn chi0(x: u64) -> u64 {
    u64::from(x == 0)
}

/// `x·y = y + 1 (mod n)`.
pub fn cyclic_cycle_set(n: usize) -> CycleSet {
    assert!(n >= 1, "cyclic cycle set needs at least one point");
    CycleSet::from_fn_unchecked(n, |_, y| (y + 1) % n)
}

/// A finite abelian group `Z_{n_1} × … × Z_{n_k}`. Elements are coordinate
/// vectors; the last coordinate varies fastest in the integer index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    orders: Vec<u64>,
}

impl AbelianGroup {
    pub fn new(orders: Vec<u64>) -> Result<AbelianGroup> {
        if orders.contains(&0) {
            return Err(Error::InvariantViolation("cyclic factor of order 0".into()));
        }
        Ok(AbelianGroup { orders })
    }

    pub fn cyclic(n: u64) -> AbelianGroup {
        AbelianGroup { orders: vec![n] }
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn order(&self) -> usize {
        self.orders.iter().product::<u64>() as usize
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.orders.len()]
    }

    pub fn contains(&self, x: &[u64]) -> bool {
        x.len() == self.orders.len() && x.iter().zip(&self.orders).all(|(v, o)| v < o)
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter().zip(y).zip(&self.orders).map(|((a, b), o)| (a + b) % o).collect()
    }

    pub fn index(&self, x: &[u64]) -> usize {
        x.iter().zip(&self.orders).fold(0, |acc, (v, o)| acc * *o as usize + *v as usize)
    }

    pub fn element(&self, mut idx: usize) -> Vec<u64> {
        let mut out = vec![0; self.orders.len()];
        for (slot, o) in out.iter_mut().zip(&self.orders).rev() {
            *slot = (idx % *o as usize) as u64;
            idx /= *o as usize;
        }
        out
    }
}

/// A map `Z_p → Z_p` given by its value table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PhiFn {
    p: u64,
    values: Vec<u64>,
}

impl PhiFn {
    pub fn new(p: u64, values: Vec<u64>) -> Result<PhiFn> {
        if p == 0 || values.len() as u64 != p {
            return Err(Error::InvariantViolation(format!(
                "expected {p} values, got {}",
                values.len()
            )));
        }
        if let Some(v) = values.iter().find(|&&v| v >= p) {
            return Err(Error::InvariantViolation(format!("value {v} out of range mod {p}")));
        }
        Ok(PhiFn { p, values })
    }

    /// `Φ(A) = c·A^e`.
    pub fn monomial(p: u64, c: u64, e: u32) -> PhiFn {
        let values = (0..p).map(|a| c % p * crate::arith::pow_mod(a, e as u64, p) % p).collect();
        PhiFn { p, values }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<u64> {
        self.values
    }

    /// `Φ(i)` for any integer argument.
    #[inline]
    pub fn eval(&self, i: i64) -> u64 {
        self.values[i.rem_euclid(self.p as i64) as usize]
    }

    pub fn is_constant(&self) -> bool {
        self.values.iter().all(|&v| v == self.values[0])
    }

    pub fn is_even(&self) -> bool {
        (0..self.p as i64).all(|a| self.eval(a) == self.eval(-a))
    }

    /// `Φ(αA) = αΦ(A)` for all `A`.
    pub fn is_equivariant(&self, alpha: u64) -> bool {
        let p = self.p;
        (0..p).all(|a| self.values[(alpha * a % p) as usize] == alpha % p * self.values[a as usize] % p)
    }
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// `(a,x)·(b,y) = (b+1, y + χ₀(b)S + Φ(b−a))` on `Z_m × A`.
pub fn mpl2_cycle_set(m: u64, group: &AbelianGroup, phi: &[Vec<u64>], s: &[u64]) -> Result<CycleSet> {
    if m == 0 || phi.len() as u64 != m {
        return Err(Error::InvariantViolation(format!("Φ needs {m} values")));
    }
    if !phi.iter().all(|v| group.contains(v)) || !group.contains(s) {
        return Err(Error::InvariantViolation("Φ or S not in the group".into()));
    }
    if phi.iter().all(|v| v == &phi[0]) {
        return Err(Error::ConstantPhi);
    }
    if phi[0] != group.zero() {
        return Err(Error::InvariantViolation("Φ(0) must be 0".into()));
    }
    let na = group.order();
    let n = m as usize * na;
    if n > crate::perm::MAX_DEGREE {
        return Err(Error::DegreeTooLarge(n));
    }
    let elems: Vec<Vec<u64>> = (0..na).map(|i| group.element(i)).collect();
    Ok(CycleSet::from_fn_unchecked(n, |u, v| {
        let (a, b) = ((u / na) as u64, (v / na) as u64);
        let y = &elems[v % na];
        let mut z = group.add(y, &phi[((b + m - a) % m) as usize]);
        if b == 0 {
            z = group.add(&z, s);
        }
        ((b + 1) % m) as usize * na + group.index(&z)
    }))
}

/// The level-two family on `Z_p × Z_p`.
pub fn mpl2_zp(p: u64, phi: &[u64], s: u64) -> Result<CycleSet> {
    let rows: Vec<Vec<u64>> = phi.iter().map(|&v| vec![v]).collect();
    mpl2_cycle_set(p, &AbelianGroup::cyclic(p), &rows, &[s])
}

/// Checks the parameter conditions of the irretractable family.
pub fn check_irr_params(phi: &PhiFn, alpha: u64) -> Result<()> {
    let p = phi.modulus();
    require_prime(p)?;
    if alpha == 0 || alpha >= p {
        return Err(Error::InvariantViolation(format!("α = {alpha} is not a unit mod {p}")));
    }
    if phi.is_constant() {
        return Err(Error::InvariantViolation("Φ is constant".into()));
    }
    if !phi.is_even() {
        return Err(Error::InvariantViolation("Φ is not even".into()));
    }
    if !phi.is_equivariant(alpha) {
        return Err(Error::InvariantViolation(format!("Φ(αA) ≠ αΦ(A) for α = {alpha}")));
    }
    Ok(())
}

/// `(a,x)·(b,y) = (αb + αx, αy + αΦ(b−a))` on `Z_p × Z_p`.
pub fn irr_cycle_set(phi: &PhiFn, alpha: u64) -> Result<CycleSet> {
    check_irr_params(phi, alpha)?;
    let p = phi.modulus();
    let n = (p * p) as usize;
    let pu = p as usize;
    Ok(CycleSet::from_fn_unchecked(n, |u, v| {
        let (a, x) = ((u / pu) as u64, (u % pu) as u64);
        let (b, y) = ((v / pu) as u64, (v % pu) as u64);
        let c = alpha * ((b + x) % p) % p;
        let w = alpha * ((y + phi.eval(b as i64 - a as i64)) % p) % p;
        (c * p + w) as usize
    }))
}

/// `(a, x) ↦ (αa, αx)` on `Z_p × Z_p`.
pub fn scale_map(p: u64, alpha: u64) -> Perm {
    let pu = p as usize;
    let img = (0..pu * pu)
        .map(|u| {
            let (a, x) = ((u / pu) as u64, (u % pu) as u64);
            ((alpha * a % p) * p + alpha * x % p) as usize
        })
        .collect();
    Perm::from_images(img).expect("scaling by a unit is bijective")
}

/// `x ·_φ y = φ(x·y)`.
pub fn deform(cs: &CycleSet, phi: &Perm) -> Result<CycleSet> {
    if phi.degree() != cs.size() || !cs.is_automorphism(phi) {
        return Err(Error::NotAnAutomorphism);
    }
    Ok(CycleSet::from_fn_unchecked(cs.size(), |x, y| phi.apply(cs.op(x, y))))
}

/// `x ·_k y = (kσ_x)(y)`, the additive power taken in the permutation brace.
///
/// The brace here is built on `t_x = σ_x⁻¹`, with `t_x + t_y = t_x ∘ t_{σ_x(y)}`;
/// inversion carries it onto the brace on the `σ_x` in which the power is
/// defined, so `kσ_x` is the inverse of `k·t_x`.
pub fn cable(cs: &CycleSet, k: i64, cap: usize) -> Result<CycleSet> {
    Ok(cable_in(&build_perm_brace(cs, cap)?, k))
}

/// Cabling using an already materialized brace of the cycle set.
pub fn cable_in(brace: &PermBrace, k: i64) -> CycleSet {
    let n = brace.n_points();
    let rows: Vec<Perm> = (0..n)
        .map(|x| brace.elem(brace.circ_inv(brace.mul_add(k, brace.point(x)))).clone())
        .collect();
    CycleSet::from_fn_unchecked(n, |x, y| rows[x].apply(y))
}

/// Parameters of one isomorphism class in the classification of size `p²`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum FamilyParams {
    Cyclic { p: u64 },
    Mpl2 { m: u64, a: Vec<u64>, phi: Vec<Vec<u64>>, s: Vec<u64> },
    Irr { p: u64, phi: Vec<u64>, alpha: u64 },
}

impl FamilyParams {
    /// Level-two parameters over `A = Z_p`.
    pub fn mpl2_zp(p: u64, phi: &[u64], s: u64) -> FamilyParams {
        FamilyParams::Mpl2 {
            m: p,
            a: vec![p],
            phi: phi.iter().map(|&v| vec![v]).collect(),
            s: vec![s],
        }
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            FamilyParams::Cyclic { .. } => "cyclic",
            FamilyParams::Mpl2 { .. } => "mpl2",
            FamilyParams::Irr { .. } => "irr",
        }
    }

    pub fn size(&self) -> usize {
        match self {
            FamilyParams::Cyclic { p } => (p * p) as usize,
            FamilyParams::Mpl2 { m, a, .. } => *m as usize * a.iter().product::<u64>() as usize,
            FamilyParams::Irr { p, .. } => (p * p) as usize,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.build().map(|_| ())
    }

    pub fn build(&self) -> Result<CycleSet> {
        match self {
            FamilyParams::Cyclic { p } => {
                require_prime(*p)?;
                Ok(cyclic_cycle_set((p * p) as usize))
            }
            FamilyParams::Mpl2 { m, a, phi, s } => {
                mpl2_cycle_set(*m, &AbelianGroup::new(a.clone())?, phi, s)
            }
            FamilyParams::Irr { p, phi, alpha } => {
                irr_cycle_set(&PhiFn::new(*p, phi.clone())?, *alpha)
            }
        }
    }
}

/// Closed-form solution of the level-two family over `Z_p`.
pub fn mpl2_solution(p: u64, phi: &PhiFn, s: u64) -> Solution {
    let pu = p as usize;
    let n = pu * pu;
    let m = |v: i64| v.rem_euclid(p as i64) as u64;
    let split = |u: usize| ((u / pu) as i64, (u % pu) as i64);
    let join = |a: u64, x: u64| (a * p + x) as usize;
    let s = s as i64;
    Solution::from_fns_unchecked(
        n,
        |u, v| {
            let (a, _) = split(u);
            let (b, y) = split(v);
            let chi = chi0(m(b - 1)) as i64;
            join(m(b - 1), m(y - chi * s - phi.eval(b - 1 - a) as i64))
        },
        |v, u| {
            let (a, x) = split(u);
            let (b, _) = split(v);
            let chi = chi0(m(a)) as i64;
            join(m(a + 1), m(x + chi * s + phi.eval(a - b + 1) as i64))
        },
    )
}

/// Closed-form solution of the irretractable family.
pub fn irr_solution(phi: &PhiFn, alpha: u64) -> Solution {
    let p = phi.modulus();
    let pu = p as usize;
    let m = |v: i64| v.rem_euclid(p as i64) as u64;
    let split = |u: usize| ((u / pu) as i64, (u % pu) as i64);
    let join = |a: u64, x: u64| (a * p + x) as usize;
    let al = alpha as i64;
    let inv = inv_mod(alpha, p) as i64;
    Solution::from_fns_unchecked(
        pu * pu,
        |u, v| {
            let (a, x) = split(u);
            let (b, y) = split(v);
            join(m(inv * b - x), m(inv * y - phi.eval(inv * b - x - a) as i64))
        },
        |v, u| {
            let (a, x) = split(u);
            let (b, y) = split(v);
            join(
                m(al * a + y - phi.eval(b - al * x - al * a) as i64),
                m(al * x + phi.eval(al * a + al * x - b) as i64),
            )
        },
    )
}

/// Checks the three conditions on `(f, t)`, naming the first that fails.
pub fn check_co_conditions(p: u64, f: &[u64], t: u64) -> Result<()> {
    require_prime(p)?;
    if f.len() as u64 != p || f.iter().any(|&v| v >= p) {
        return Err(Error::CoCondition { condition: "domain", detail: format!("f needs {p} values mod {p}") });
    }
    if t.is_multiple_of(p) {
        return Err(Error::CoCondition { condition: "t", detail: "t must be non-zero".into() });
    }
    let t = t % p;
    let at = |i: u64| f[(i % p) as usize];
    for i in 0..p {
        if at(i) != at(p - i) {
            return Err(Error::CoCondition {
                condition: "S1",
                detail: format!("f({i}) ≠ f(-{i})"),
            });
        }
    }
    // t^s runs over the cyclic group generated by t
    let mut ts = 1;
    for s in 0..mul_order(t, p) {
        for i in 0..p {
            let rhs = (ts * at(i) % p + p - (ts + p - 1) % p * at(0) % p) % p;
            if at(ts * i) != rhs {
                return Err(Error::CoCondition {
                    condition: "S2",
                    detail: format!("fails at s = {s}, i = {i}"),
                });
            }
        }
        ts = ts * t % p;
    }
    if f.iter().all(|&v| v == f[0]) {
        return Err(Error::CoCondition { condition: "S3", detail: "f is constant".into() });
    }
    Ok(())
}

/// `λ_{(i,j)}(k,l) = (tk + j, t(l − f(tk + j − i)))`, `ρ_y(x) = λ⁻¹_{λ_x(y)}(x)`.
pub fn co_simple_solution(p: u64, f: &[u64], t: u64) -> Result<Solution> {
    check_co_conditions(p, f, t)?;
    let pu = p as usize;
    let n = pu * pu;
    let lam = |u: usize, v: usize| {
        let (i, j) = ((u / pu) as u64, (u % pu) as u64);
        let (k, l) = ((v / pu) as u64, (v % pu) as u64);
        let c = (t * k + j) % p;
        let w = t * ((l + p - f[((c + p - i) % p) as usize]) % p) % p;
        (c * p + w) as usize
    };
    let mut inv = vec![0; n * n];
    for u in 0..n {
        for v in 0..n {
            inv[u * n + lam(u, v)] = v;
        }
    }
    Ok(Solution::from_fns_unchecked(n, lam, |v, u| inv[lam(u, v) * n + u]))
}

/// `f(i) = −Φ(αi)` and `t = α⁻¹`.
pub fn co_params(phi: &PhiFn, alpha: u64) -> (Vec<u64>, u64) {
    let p = phi.modulus();
    let f = (0..p).map(|i| (p - phi.eval((alpha * i % p) as i64)) % p).collect();
    (f, inv_mod(alpha, p))
}

/// `(i, j) ↦ (i, −j)`.
pub fn psi_map(p: u64) -> Perm {
    let pu = p as usize;
    let img = (0..pu * pu).map(|u| (u / pu) * pu + (pu - u % pu) % pu).collect();
    Perm::from_images(img).expect("negating the second coordinate is bijective")
}

/// Is `(i, j) ↦ (i, −j)` an isomorphism from the irretractable family member
/// onto the simple solution with parameters `co_params(Φ, α)`?
pub fn psi_iso_check(phi: &PhiFn, alpha: u64) -> Result<bool> {
    let source = to_solution(&irr_cycle_set(phi, alpha)?);
    let (f, t) = co_params(phi, alpha);
    let target = co_simple_solution(phi.modulus(), &f, t)?;
    let psi = psi_map(phi.modulus());
    Ok(source.is_homomorphism(&target, &psi.to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::DEFAULT_BRACE_CAP;

    fn phi(p: u64, v: &[u64]) -> PhiFn {
        PhiFn::new(p, v.to_vec()).unwrap()
    }

    #[test]
    fn cyclic_examples() {
        assert_eq!(cyclic_cycle_set(1).size(), 1);
        let c4 = cyclic_cycle_set(4);
        assert!(c4.check().is_valid());
        assert_eq!(c4.multipermutation_level(), Some(1));
        assert!(c4.is_indecomposable());
        let c9 = cyclic_cycle_set(9);
        assert_eq!(c9.retraction().unwrap().cycle_set.size(), 1);
    }

    #[test]
    fn chi0_values() {
        assert_eq!(chi0(0), 1);
        assert_eq!(chi0(3), 0);
    }

    #[test]
    fn mpl2_examples() {
        let a = mpl2_zp(2, &[0, 1], 0).unwrap();
        assert!(a.check().is_valid());
        assert_eq!(a.size(), 4);
        assert_eq!(a.multipermutation_level(), Some(2));

        let b = mpl2_zp(3, &[0, 1, 1], 2).unwrap();
        assert!(b.check().is_valid());
        assert_eq!(b.retraction().unwrap().cycle_set.size(), 3);
        assert!(b.is_indecomposable());

        let klein = AbelianGroup::new(vec![2, 2]).unwrap();
        let c = mpl2_cycle_set(2, &klein, &[vec![0, 0], vec![1, 0]], &[0, 1]).unwrap();
        assert_eq!(c.size(), 8);
        assert!(c.check().is_valid());
        assert_eq!(c.multipermutation_level(), Some(2));
        assert!(c.is_indecomposable());
    }

    #[test]
    fn mpl2_rejections() {
        assert_eq!(mpl2_zp(3, &[0, 0, 0], 1).unwrap_err(), Error::ConstantPhi);
        assert!(matches!(mpl2_zp(3, &[1, 0, 0], 1), Err(Error::InvariantViolation(_))));
        assert!(matches!(mpl2_zp(3, &[0, 5, 0], 1), Err(Error::InvariantViolation(_))));
    }

    #[test]
    fn abelian_indexing() {
        let g = AbelianGroup::new(vec![2, 3]).unwrap();
        for i in 0..6 {
            assert_eq!(g.index(&g.element(i)), i);
        }
        assert_eq!(g.add(&[1, 2], &[1, 2]), vec![0, 1]);
    }

    #[test]
    fn irr_examples() {
        let cs = irr_cycle_set(&phi(2, &[0, 1]), 1).unwrap();
        assert!(cs.check().is_valid());
        assert!(cs.is_irretractable());
        assert!(cs.is_indecomposable());
        assert_eq!(cs.multipermutation_level(), None);
        assert!(matches!(
            irr_cycle_set(&phi(3, &[1, 1, 1]), 1),
            Err(Error::InvariantViolation(_))
        ));
        // Φ(A) = A² is even but Φ(4A) = A² ≠ 4A² mod 5
        assert!(matches!(
            irr_cycle_set(&PhiFn::monomial(5, 1, 2), 4),
            Err(Error::InvariantViolation(_))
        ));
        assert!(matches!(irr_cycle_set(&phi(3, &[0, 1, 2]), 1), Err(Error::InvariantViolation(_))));
        assert_eq!(irr_cycle_set(&phi(4, &[0, 1, 0, 1]), 1).unwrap_err(), Error::NotPrime(4));

        // Φ(A) = A⁴ mod 7 commutes with scaling by 2
        let quartic = PhiFn::monomial(7, 1, 4);
        let cs = irr_cycle_set(&quartic, 2).unwrap();
        assert!(cs.check().is_valid());
        assert!(cs.is_irretractable() && cs.is_indecomposable());
    }

    #[test]
    fn deform_examples() {
        let cs = irr_cycle_set(&phi(3, &[0, 1, 1]), 1).unwrap();
        assert_eq!(deform(&cs, &Perm::identity(9)).unwrap(), cs);

        let quartic = PhiFn::monomial(7, 1, 4);
        let base = irr_cycle_set(&quartic, 1).unwrap();
        let d = deform(&base, &scale_map(7, 2)).unwrap();
        assert_eq!(d, irr_cycle_set(&quartic, 2).unwrap());

        let c4 = cyclic_cycle_set(4);
        let shift = Perm::from_images(vec![2, 3, 0, 1]).unwrap();
        let d = deform(&c4, &shift).unwrap();
        assert!(d.check().is_valid());
        assert_eq!(d.multipermutation_level(), Some(1));

        let swap = Perm::from_images(vec![1, 0, 2, 3]).unwrap();
        assert_eq!(deform(&c4, &swap).unwrap_err(), Error::NotAnAutomorphism);
    }

    #[test]
    fn cable_examples() {
        let cs = irr_cycle_set(&phi(3, &[0, 1, 1]), 1).unwrap();
        assert_eq!(cable(&cs, 1, DEFAULT_BRACE_CAP).unwrap(), cs);
        let c2 = cable(&cyclic_cycle_set(4), 2, DEFAULT_BRACE_CAP).unwrap();
        assert!((0..4).all(|x| (0..4).all(|y| c2.op(x, y) == (y + 2) % 4)));
        for base in [cs, mpl2_zp(3, &[0, 1, 2], 1).unwrap(), irr_cycle_set(&phi(2, &[0, 1]), 1).unwrap()] {
            for k in -4..=9 {
                assert!(cable(&base, k, DEFAULT_BRACE_CAP).unwrap().check().is_valid(), "k = {k}");
            }
        }
    }

    #[test]
    fn params_roundtrip_json() {
        let params = [
            FamilyParams::Cyclic { p: 3 },
            FamilyParams::mpl2_zp(3, &[0, 1, 1], 2),
            FamilyParams::Irr { p: 3, phi: vec![0, 1, 1], alpha: 1 },
        ];
        for fp in &params {
            let text = serde_json::to_string(fp).unwrap();
            let back: FamilyParams = serde_json::from_str(&text).unwrap();
            assert_eq!(&back, fp);
            assert_eq!(back.build().unwrap().size(), 9);
        }
        let parsed: FamilyParams =
            serde_json::from_str(r#"{"family":"irr","p":7,"phi":[0,1,2,4,4,2,1],"alpha":2}"#).unwrap();
        assert_eq!(parsed, FamilyParams::Irr { p: 7, phi: PhiFn::monomial(7, 1, 4).into_values(), alpha: 2 });
        assert!(parsed.validate().is_ok());
    }

    #[test]
    fn closed_form_solutions() {
        let f = phi(3, &[0, 1, 1]);
        for s in 0..3 {
            assert_eq!(mpl2_solution(3, &f, s), to_solution(&mpl2_zp(3, f.values(), s).unwrap()));
        }
        let f = phi(2, &[0, 1]);
        assert_eq!(irr_solution(&f, 1), to_solution(&irr_cycle_set(&f, 1).unwrap()));
        let q = PhiFn::monomial(7, 1, 4);
        for alpha in [1, 2, 4] {
            assert_eq!(irr_solution(&q, alpha), to_solution(&irr_cycle_set(&q, alpha).unwrap()));
        }
    }

    #[test]
    fn co_examples() {
        let (f, t) = co_params(&phi(2, &[0, 1]), 1);
        assert_eq!((f, t), (vec![0, 1], 1));
        assert!(psi_iso_check(&phi(2, &[0, 1]), 1).unwrap());

        let (f, t) = co_params(&phi(3, &[0, 1, 1]), 1);
        assert_eq!((f, t), (vec![0, 2, 2], 1));
        assert!(psi_iso_check(&phi(3, &[0, 1, 1]), 1).unwrap());

        let q = PhiFn::monomial(7, 1, 4);
        let (f, t) = co_params(&q, 2);
        assert_eq!(t, 4);
        assert!(check_co_conditions(7, &f, t).is_ok());
        assert!(psi_iso_check(&q, 2).unwrap());
        let sol = co_simple_solution(7, &f, t).unwrap();
        assert!(sol.report().is_valid());
    }

    #[test]
    fn co_condition_failures() {
        let named = |r: Result<()>| match r {
            Err(Error::CoCondition { condition, .. }) => condition,
            other => panic!("unexpected {other:?}"),
        };
        assert_eq!(named(check_co_conditions(3, &[0, 1, 2], 1)), "S1");
        assert_eq!(named(check_co_conditions(3, &[1, 1, 1], 1)), "S3");
        assert_eq!(named(check_co_conditions(3, &[0, 1, 1], 0)), "t");
        // Φ(0) ≠ 0 with t = 2 breaks the scaling condition
        assert_eq!(named(check_co_conditions(5, &[1, 0, 2, 2, 0], 2)), "S2");
    }
}
