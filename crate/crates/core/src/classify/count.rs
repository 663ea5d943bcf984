//! Closed-form class counts and the direct orbit counts they are checked against.

use serde::{Deserialize, Serialize};

use crate::arith::{checked_pow, divisors, euler_phi, factorize, is_prime, pow_mod};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub p: u64,
    pub n_cyclic: u128,
    pub n_mpl2: u128,
    /// Irretractable classes with `Φ(0) ≠ 0`.
    pub n_irr_even: u128,
    /// Irretractable classes with `Φ(0) = 0`.
    pub n_irr_zero: u128,
    pub total: u128,
}

impl CountReport {
    pub fn n_irr(&self) -> u128 {
        self.n_irr_even + self.n_irr_zero
    }
}

fn pow(base: u64, exp: u64, what: &'static str) -> Result<u128> {
    let exp = u32::try_from(exp).map_err(|_| Error::Overflow(what))?;
    checked_pow(base as u128, exp).ok_or(Error::Overflow(what))
}

/// Multiplicative function with `ψ(q^ν) = (q² − 1)q^{2ν−2}`.
pub fn psi(n: u64) -> u128 {
    assert!(n >= 1, "ψ is defined on positive integers");
    factorize(n)
        .into_iter()
        .map(|(q, nu)| {
            let q = q as u128;
            (q * q - 1) * q.pow(2 * nu - 2)
        })
        .product()
}

/// `ψ(n) = Σ_{d|n} d·φ(d)·φ(n/d)`.
pub fn psi_convolution(n: u64) -> u128 {
    divisors(n)
        .into_iter()
        .map(|d| d as u128 * euler_phi(d) as u128 * euler_phi(n / d) as u128)
        .sum()
}

/// Class counts from the closed formulas.
pub fn count_formula(p: u64) -> Result<CountReport> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    // free action of Z_p^* on pairs (Φ, S) with Φ(0) = 0 and Φ ≠ 0
    let n_mpl2 = pow(p, p - 1, "p^(p-1)")?
        .checked_sub(1)
        .and_then(|v| v.checked_mul(p as u128))
        .ok_or(Error::Overflow("n_mpl2"))?
        / (p as u128 - 1);
    let (n_irr_even, n_irr_zero) = if p == 2 {
        (1, 1)
    } else {
        let even = pow(p, (p - 1) / 2, "p^((p-1)/2)")? - 1;
        let mut k = 0;
        let mut l = p - 1;
        while l.is_multiple_of(2) {
            l /= 2;
            k += 1;
        }
        let mut zero: u128 = 0;
        for d in divisors(l) {
            let e = (1u64 << (k - 1)) * d;
            let term = (pow(p, e, "p^(2^(k-1) d)")? - 1) / (p as u128 - 1);
            zero = psi(l / d)
                .checked_mul(term)
                .and_then(|t| zero.checked_add(t))
                .ok_or(Error::Overflow("n_irr_zero"))?;
        }
        (even, zero)
    };
    let total = [n_mpl2, n_irr_even, n_irr_zero]
        .into_iter()
        .try_fold(1u128, |acc, v| acc.checked_add(v))
        .ok_or(Error::Overflow("total"))?;
    Ok(CountReport { p, n_cyclic: 1, n_mpl2, n_irr_even, n_irr_zero, total })
}

/// Largest number of candidate functions the orbit counters will scan.
pub const ORBIT_SCAN_LIMIT: u64 = 50_000_000;

fn scan_size(p: u64, digits: u64) -> Result<u64> {
    match checked_pow(p as u128, digits as u32) {
        Some(v) if v <= ORBIT_SCAN_LIMIT as u128 => Ok(v as u64),
        other => Err(Error::BoundExceeded {
            what: "functions to scan",
            value: other.map_or(u64::MAX, |v| v.min(u64::MAX as u128) as u64),
            bound: ORBIT_SCAN_LIMIT,
        }),
    }
}

/// Steps `digits` as a base-`p` counter; false once it wraps to zero.
fn next_digits(digits: &mut [u64], p: u64) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < p {
            return true;
        }
        *d = 0;
    }
    false
}

/// Counts irretractable classes directly: pairs `(Φ, α)` with `Φ` even,
/// non-constant and least in its orbit, and `α` fixing `Φ`. Returned as
/// `(Φ(0) ≠ 0, Φ(0) = 0)`.
pub fn irr_orbit_counts(p: u64) -> Result<(u64, u64)> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let half = if p == 2 { 2 } else { p.div_ceil(2) };
    scan_size(p, half)?;
    let pu = p as usize;
    let units: Vec<(u64, u64)> = (1..p).map(|a| (a, pow_mod(a, p - 2, p))).collect();
    let mut digits = vec![0u64; half as usize];
    let mut phi = vec![0u64; pu];
    let mut acted = vec![0u64; pu];
    let (mut nonzero, mut zero) = (0, 0);
    loop {
        for a in 0..pu {
            let r = if p == 2 { a } else { a.min(pu - a) };
            phi[a] = digits[r];
        }
        if phi.iter().any(|&v| v != phi[0]) {
            let mut least = true;
            let mut stab = 0;
            for &(alpha, inv) in &units {
                for a in 0..pu {
                    acted[a] = inv * phi[(alpha as usize * a) % pu] % p;
                }
                match acted.cmp(&phi) {
                    std::cmp::Ordering::Less => {
                        least = false;
                        break;
                    }
                    std::cmp::Ordering::Equal => stab += 1,
                    std::cmp::Ordering::Greater => {}
                }
            }
            if least {
                if phi[0] == 0 {
                    zero += stab;
                } else {
                    nonzero += stab;
                }
            }
        }
        if !next_digits(&mut digits, p) {
            break;
        }
    }
    Ok((nonzero, zero))
}

/// Counts level-two classes directly: pairs `(Φ, S)`, `Φ(0) = 0`, `Φ ≠ 0`,
/// that are least in their orbit under `(Φ, S) ↦ (αΦ, αS)`.
pub fn mpl2_orbit_count(p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    scan_size(p, p)?;
    let mut digits = vec![0u64; p as usize];
    let mut count = 0;
    let mut scaled = vec![0u64; p as usize];
    loop {
        // digits = (Φ(1), …, Φ(p−1), S)
        let phi_nonzero = digits[..p as usize - 1].iter().any(|&v| v != 0);
        if phi_nonzero
            && (2..p).all(|alpha| {
                for (t, &d) in scaled.iter_mut().zip(&digits) {
                    *t = alpha * d % p;
                }
                scaled >= digits
            })
        {
            count += 1;
        }
        if !next_digits(&mut digits, p) {
            break;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi_values() {
        assert_eq!(psi(1), 1);
        assert_eq!(psi(3), 8);
        assert_eq!(psi(12), 96);
        for n in 1..200 {
            assert_eq!(psi(n), psi_convolution(n), "n = {n}");
        }
    }

    #[test]
    fn formula_small_primes() {
        let r = count_formula(2).unwrap();
        assert_eq!((r.n_mpl2, r.n_irr(), r.total), (2, 2, 5));
        let r = count_formula(3).unwrap();
        assert_eq!((r.n_mpl2, r.n_irr_even, r.n_irr_zero, r.total), (12, 2, 1, 16));
        let r = count_formula(5).unwrap();
        assert_eq!((r.n_mpl2, r.n_irr(), r.total), (780, 30, 811));
        let r = count_formula(7).unwrap();
        assert_eq!((r.n_irr_even, r.n_irr_zero), (342, 65));
    }

    #[test]
    fn formula_errors() {
        assert_eq!(count_formula(9).unwrap_err(), Error::NotPrime(9));
        assert!(matches!(count_formula(1_000_003), Err(Error::Overflow(_))));
    }

    #[test]
    fn orbit_counts_small() {
        assert_eq!(irr_orbit_counts(2).unwrap(), (1, 1));
        assert_eq!(irr_orbit_counts(3).unwrap(), (2, 1));
        assert_eq!(mpl2_orbit_count(2).unwrap(), 2);
        assert_eq!(mpl2_orbit_count(3).unwrap(), 12);
    }
}
