//! Canonical parameters, enumeration of the isomorphism classes of size `p²`,
//! and recognition of an arbitrary indecomposable cycle set of that size.

pub mod count;
pub mod iso;

pub use count::{count_formula, irr_orbit_counts, mpl2_orbit_count, psi, psi_convolution, CountReport};
pub use iso::{automorphisms, iso_cycle_sets, refined_colors, signature};

use crate::arith::{inv_mod, is_prime};
use crate::cycleset::CycleSet;
use crate::error::{Error, Result};
use crate::families::{FamilyParams, PhiFn};

/// Largest prime for which [`enumerate_classes`] lists every class.
pub const MAX_ENUMERATE_P: u64 = 7;

/// `(^αΦ)(A) = α⁻¹Φ(αA)`.
pub fn phi_act(alpha: u64, phi: &PhiFn) -> PhiFn {
    let p = phi.modulus();
    let inv = inv_mod(alpha, p);
    let values = (0..p).map(|a| inv * phi.eval((alpha * a % p) as i64) % p).collect();
    PhiFn::new(p, values).expect("acted values stay in range")
}

/// Least element of the orbit of `Φ` under the action of the units.
pub fn canonical_phi(phi: &PhiFn) -> PhiFn {
    (1..phi.modulus())
        .map(|alpha| phi_act(alpha, phi))
        .min()
        .expect("Z_p^* is non-empty")
}

/// `{α : ^αΦ = Φ}`, increasing.
pub fn stabilizer(phi: &PhiFn) -> Vec<u64> {
    (1..phi.modulus()).filter(|&a| &phi_act(a, phi) == phi).collect()
}

/// Least element of `{(αΦ, αS)}` compared as `(Φ(0), …, Φ(p−1), S)`.
pub fn mpl2_canonical(p: u64, phi: &[u64], s: u64) -> (Vec<u64>, u64) {
    (1..p)
        .map(|alpha| (phi.iter().map(|&v| alpha * v % p).collect::<Vec<_>>(), alpha * s % p))
        .min()
        .expect("Z_p^* is non-empty")
}

/// Canonical form of a size-`p²` parameter record.
pub fn canonicalize(params: &FamilyParams) -> Result<FamilyParams> {
    params.validate()?;
    Ok(match params {
        FamilyParams::Cyclic { p } => FamilyParams::Cyclic { p: *p },
        FamilyParams::Mpl2 { m, a, phi, s } if a.len() == 1 && a[0] == *m && is_prime(*m) => {
            let values: Vec<u64> = phi.iter().map(|v| v[0]).collect();
            let (cphi, cs) = mpl2_canonical(*m, &values, s[0]);
            FamilyParams::mpl2_zp(*m, &cphi, cs)
        }
        FamilyParams::Mpl2 { .. } => params.clone(),
        FamilyParams::Irr { p, phi, alpha } => {
            let c = canonical_phi(&PhiFn::new(*p, phi.clone())?);
            FamilyParams::Irr { p: *p, phi: c.into_values(), alpha: *alpha }
        }
    })
}

fn check_bound(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p > MAX_ENUMERATE_P {
        return Err(Error::BoundExceeded { what: "p", value: p, bound: MAX_ENUMERATE_P });
    }
    Ok(())
}

/// Even functions `Z_p → Z_p` (all functions when `p = 2`) in increasing order.
fn even_functions(p: u64) -> impl Iterator<Item = Vec<u64>> {
    let half = if p == 2 { 2 } else { (p as usize).div_ceil(2) };
    let total = p.pow(half as u32);
    (0..total).map(move |mut code| {
        let mut digits = vec![0; half];
        for d in digits.iter_mut().rev() {
            *d = code % p;
            code /= p;
        }
        let pu = p as usize;
        (0..pu).map(|a| digits[if p == 2 { a } else { a.min(pu - a) }]).collect()
    })
}

/// One parameter record per irretractable class.
pub fn irr_classes(p: u64) -> Result<Vec<FamilyParams>> {
    check_bound(p)?;
    let mut out = Vec::new();
    for values in even_functions(p) {
        let phi = PhiFn::new(p, values)?;
        if phi.is_constant() || canonical_phi(&phi) != phi {
            continue;
        }
        for alpha in stabilizer(&phi) {
            out.push(FamilyParams::Irr { p, phi: phi.values().to_vec(), alpha });
        }
    }
    Ok(out)
}

/// One parameter record per level-two class.
pub fn mpl2_classes(p: u64) -> Result<Vec<FamilyParams>> {
    check_bound(p)?;
    let pu = p as usize;
    let mut out = Vec::new();
    let mut phi = vec![0u64; pu];
    for code in 0..p.pow(p as u32 - 1) {
        let mut c = code;
        for slot in phi[1..].iter_mut().rev() {
            *slot = c % p;
            c /= p;
        }
        if phi.iter().all(|&v| v == 0) {
            continue;
        }
        for s in 0..p {
            if mpl2_canonical(p, &phi, s) == (phi.clone(), s) {
                out.push(FamilyParams::mpl2_zp(p, &phi, s));
            }
        }
    }
    Ok(out)
}

/// Every isomorphism class of indecomposable cycle sets of size `p²`:
/// cyclic first, then level two, then irretractable.
pub fn enumerate_classes(p: u64) -> Result<Vec<FamilyParams>> {
    check_bound(p)?;
    let mut out = vec![FamilyParams::Cyclic { p }];
    out.extend(mpl2_classes(p)?);
    out.extend(irr_classes(p)?);
    Ok(out)
}

fn first_match(
    cs: &CycleSet,
    candidates: impl IntoIterator<Item = FamilyParams>,
) -> Result<FamilyParams> {
    let sig = signature(cs);
    for params in candidates {
        let other = params.build()?;
        if signature(&other) == sig && iso_cycle_sets(cs, &other).is_some() {
            return Ok(params);
        }
    }
    Err(Error::NoMatch)
}

/// Canonical parameters of an indecomposable cycle set of size `p²`.
pub fn classify_size_p2(cs: &CycleSet) -> Result<FamilyParams> {
    let n = cs.size();
    let p = (n as f64).sqrt().round() as u64;
    if p * p != n as u64 || !is_prime(p) {
        return Err(Error::NotSizePSquared(n));
    }
    if !cs.is_indecomposable() {
        return Err(Error::NotIndecomposable);
    }
    let ret = cs.retraction()?.cycle_set.size();
    if ret == 1 {
        return first_match(cs, [FamilyParams::Cyclic { p }]);
    }
    if ret == n {
        if p <= MAX_ENUMERATE_P {
            return first_match(cs, irr_classes(p)?);
        }
        return Err(Error::BoundExceeded { what: "p", value: p, bound: MAX_ENUMERATE_P });
    }
    if ret as u64 == p {
        if p <= MAX_ENUMERATE_P {
            return first_match(cs, mpl2_classes(p)?);
        }
        return Err(Error::BoundExceeded { what: "p", value: p, bound: MAX_ENUMERATE_P });
    }
    Err(Error::NoMatch)
}
