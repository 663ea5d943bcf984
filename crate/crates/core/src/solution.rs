//! Involutive non-degenerate set-theoretic solutions and the correspondence
//! with cycle sets.

use serde::{Deserialize, Serialize};

use crate::cycleset::CycleSet;
use crate::error::{Error, Result};

/// `r(x, y) = (lam[x][y], rho[y][x])`, both stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Solution {
    n: usize,
    lam: Vec<usize>,
    rho: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionReport {
    pub nondegenerate_ok: bool,
    pub involutive_ok: bool,
    pub ybe_ok: bool,
    /// `("lambda" | "rho", index)` of the first non-bijective component.
    pub nondegenerate_witness: Option<(String, usize)>,
    /// `((x, y), r(r(x, y)))` for the first pair not fixed by `r²`.
    pub involutive_witness: Option<([usize; 2], [usize; 2])>,
    /// First triple on which both sides of the braid relation differ.
    pub ybe_witness: Option<[usize; 3]>,
}

impl SolutionReport {
    pub fn is_valid(&self) -> bool {
        self.nondegenerate_ok && self.involutive_ok && self.ybe_ok
    }

    /// First witness in words, or `valid`.
    pub fn describe(&self) -> String {
        if let Some((which, i)) = &self.nondegenerate_witness {
            format!("{which}_{i} is not bijective")
        } else if let Some((p, q)) = self.involutive_witness {
            format!("r²({},{}) = ({},{})", p[0], p[1], q[0], q[1])
        } else if let Some([x, y, z]) = self.ybe_witness {
            format!("braid relation fails at ({x},{y},{z})")
        } else {
            "valid".into()
        }
    }
}

fn is_bijection(v: impl Iterator<Item = usize>, n: usize) -> bool {
    let mut seen = vec![false; n];
    for x in v {
        if x >= n || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

fn flatten(rows: &[Vec<usize>], n: usize, name: &str) -> Result<Vec<usize>> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::MalformedTable(format!("{name} table is not {n}x{n}")));
    }
    if rows.iter().flatten().any(|&v| v >= n) {
        return Err(Error::MalformedTable(format!("{name} table has entries out of range")));
    }
    Ok(rows.iter().flatten().copied().collect())
}

/// Checks non-degeneracy, involutivity and the braid relation over all triples.
pub fn check_solution(lam: &[Vec<usize>], rho: &[Vec<usize>]) -> Result<SolutionReport> {
    let n = lam.len();
    if n == 0 {
        return Err(Error::MalformedTable("empty solution".into()));
    }
    let sol = Solution { n, lam: flatten(lam, n, "lam")?, rho: flatten(rho, n, "rho")? };
    Ok(sol.report())
}

impl Solution {
    pub fn from_tables(lam: Vec<Vec<usize>>, rho: Vec<Vec<usize>>) -> Result<Solution> {
        let report = check_solution(&lam, &rho)?;
        if !report.is_valid() {
            return Err(Error::InvalidSolution(report.describe()));
        }
        let n = lam.len();
        Ok(Solution { n, lam: flatten(&lam, n, "lam")?, rho: flatten(&rho, n, "rho")? })
    }

    /// From `λ_x(y)` and `ρ_y(x)` as functions, unchecked.
    pub fn from_fns_unchecked(
        n: usize,
        lam: impl Fn(usize, usize) -> usize,
        rho: impl Fn(usize, usize) -> usize,
    ) -> Solution {
        let mut l = Vec::with_capacity(n * n);
        let mut r = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                l.push(lam(a, b));
                r.push(rho(a, b));
            }
        }
        Solution { n, lam: l, rho: r }
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    /// `λ_x(y)`.
    #[inline]
    pub fn lambda(&self, x: usize, y: usize) -> usize {
        self.lam[x * self.n + y]
    }

    /// `ρ_y(x)`.
    #[inline]
    pub fn rho(&self, y: usize, x: usize) -> usize {
        self.rho[y * self.n + x]
    }

    #[inline]
    pub fn r(&self, x: usize, y: usize) -> (usize, usize) {
        (self.lambda(x, y), self.rho(y, x))
    }

    pub fn lam_rows(&self) -> Vec<Vec<usize>> {
        self.lam.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    pub fn rho_rows(&self) -> Vec<Vec<usize>> {
        self.rho.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    pub fn report(&self) -> SolutionReport {
        let n = self.n;
        let mut nondegenerate_witness = None;
        for x in 0..n {
            if !is_bijection((0..n).map(|y| self.lambda(x, y)), n) {
                nondegenerate_witness = Some(("lambda".to_string(), x));
                break;
            }
            if !is_bijection((0..n).map(|y| self.rho(x, y)), n) {
                nondegenerate_witness = Some(("rho".to_string(), x));
                break;
            }
        }

        let mut involutive_witness = None;
        'inv: for x in 0..n {
            for y in 0..n {
                let (u, v) = self.r(x, y);
                let (a, b) = self.r(u, v);
                if (a, b) != (x, y) {
                    involutive_witness = Some(([x, y], [a, b]));
                    break 'inv;
                }
            }
        }

        let mut ybe_witness = None;
        'ybe: for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    // (r×id)(id×r)(r×id)
                    let (a, b) = self.r(x, y);
                    let (b, c) = self.r(b, z);
                    let (a, b) = self.r(a, b);
                    let left = (a, b, c);
                    // (id×r)(r×id)(id×r)
                    let (b2, c2) = self.r(y, z);
                    let (a2, b2) = self.r(x, b2);
                    let (b2, c2) = self.r(b2, c2);
                    if left != (a2, b2, c2) {
                        ybe_witness = Some([x, y, z]);
                        break 'ybe;
                    }
                }
            }
        }

        SolutionReport {
            nondegenerate_ok: nondegenerate_witness.is_none(),
            involutive_ok: involutive_witness.is_none(),
            ybe_ok: ybe_witness.is_none(),
            nondegenerate_witness,
            involutive_witness,
            ybe_witness,
        }
    }

    /// Is `f` a homomorphism `(X, r) → (Y, s)`, i.e. `(f×f)∘r = s∘(f×f)`?
    pub fn is_homomorphism(&self, other: &Solution, f: &[usize]) -> bool {
        f.len() == self.n
            && (0..self.n).all(|x| {
                (0..self.n).all(|y| {
                    let (u, v) = self.r(x, y);
                    other.r(f[x], f[y]) == (f[u], f[v])
                })
            })
    }
}

/// `r(x, y) = (σ_x⁻¹(y), σ_x⁻¹(y)·x)`.
pub fn to_solution(cs: &CycleSet) -> Solution {
    let n = cs.size();
    let inv: Vec<Vec<usize>> = (0..n)
        .map(|x| {
            let mut row = vec![0; n];
            for y in 0..n {
                row[cs.op(x, y)] = y;
            }
            row
        })
        .collect();
    // lam[x][y] = σ_x⁻¹(y); rho[y][x] = σ_x⁻¹(y)·x
    Solution::from_fns_unchecked(n, |x, y| inv[x][y], |y, x| cs.op(inv[x][y], x))
}

/// `x·y = λ_x⁻¹(y)`. Fails on invalid solutions.
pub fn from_solution(sol: &Solution) -> Result<CycleSet> {
    let report = sol.report();
    if !report.is_valid() {
        return Err(Error::InvalidSolution(report.describe()));
    }
    let n = sol.size();
    let mut table = vec![vec![0; n]; n];
    for (x, row) in table.iter_mut().enumerate() {
        for y in 0..n {
            row[sol.lambda(x, y)] = y;
        }
    }
    CycleSet::from_table(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::cyclic_cycle_set;

    #[test]
    fn flip_is_a_solution() {
        let n = 3;
        let flip = Solution::from_fns_unchecked(n, |_, y| y, |_, x| x);
        assert!(flip.report().is_valid());
        assert_eq!(flip.r(0, 2), (2, 0));
        let cs = from_solution(&flip).unwrap();
        assert!((0..n).all(|x| (0..n).all(|y| cs.op(x, y) == y)));
    }

    #[test]
    fn non_involutive_witness() {
        // r(x, y) = (y, x+1) on Z_2
        let s = Solution::from_fns_unchecked(2, |_, y| y, |_, x| (x + 1) % 2);
        let r = s.report();
        assert!(!r.involutive_ok);
        assert_eq!(r.involutive_witness, Some(([0, 0], [1, 1])));
        assert!(matches!(from_solution(&s), Err(Error::InvalidSolution(_))));
    }

    #[test]
    fn cyclic_solution_formula() {
        let p2 = 9;
        let sol = to_solution(&cyclic_cycle_set(p2));
        for x in 0..p2 {
            for y in 0..p2 {
                assert_eq!(sol.r(x, y), ((y + p2 - 1) % p2, (x + 1) % p2));
            }
        }
        assert!(sol.report().is_valid());
    }

    #[test]
    fn from_shifted_solution() {
        // r(x, y) = (y-1, x+1) on Z_4 comes from x·y = y+1
        let s = Solution::from_fns_unchecked(4, |_, y| (y + 3) % 4, |_, x| (x + 1) % 4);
        let cs = from_solution(&s).unwrap();
        assert_eq!(cs, cyclic_cycle_set(4));
        // r(x, y) = (y+1, x-1) comes from x·y = y-1, which negation maps onto y+1
        let s2 = Solution::from_fns_unchecked(4, |_, y| (y + 1) % 4, |_, x| (x + 3) % 4);
        let cs2 = from_solution(&s2).unwrap();
        assert!((0..4).all(|x| (0..4).all(|y| cs2.op(x, y) == (y + 3) % 4)));
        let neg = crate::perm::Perm::from_images(vec![0, 3, 2, 1]).unwrap();
        assert!(cs2.is_isomorphism(&cs, &neg));
    }

    #[test]
    fn size_one() {
        let cs = cyclic_cycle_set(1);
        let sol = to_solution(&cs);
        assert_eq!(sol.r(0, 0), (0, 0));
        assert_eq!(from_solution(&sol).unwrap(), cs);
    }

    #[test]
    fn malformed() {
        assert!(matches!(check_solution(&[vec![0]], &[vec![0, 1]]), Err(Error::MalformedTable(_))));
        assert!(matches!(check_solution(&[], &[]), Err(Error::MalformedTable(_))));
    }
}
