//! The subgroup lattice of a cyclic group `C_n`.
//!
//! Subgroups of `C_n` are in bijection with the divisors of `n` (`C_d <-> d`),
//! and containment `C_j <= C_d` is divisibility `j | d`. Everything here works
//! on divisors directly.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// All divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorisation as ascending `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Number-theoretic Möbius function.
pub fn moebius_number(m: u64) -> i64 {
    assert!(m > 0, "moebius of zero");
    let mut sign = 1;
    for (_, e) in factorize(m) {
        if e > 1 {
            return 0;
        }
        sign = -sign;
    }
    sign
}

/// Number of prime factors counted with multiplicity.
pub fn big_omega(n: u64) -> u32 {
    factorize(n).iter().map(|&(_, e)| e).sum()
}

/// The `p`-residual part of `C_d`: `O^p(C_d) = C_{d / p^v}` with `p^v || d`.
pub fn o_p(d: u64, p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::PrimeRequired(p));
    }
    let mut d = d;
    while d.is_multiple_of(p) {
        d /= p;
    }
    Ok(d)
}

/// A non-negative integer that is zero or prime, checked at construction.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct PrimeOrZero(u64);

impl PrimeOrZero {
    pub const ZERO: PrimeOrZero = PrimeOrZero(0);

    pub fn new(p: u64) -> Result<Self> {
        if p == 0 || is_prime(p) {
            Ok(PrimeOrZero(p))
        } else {
            Err(Error::NotPrimeOrZero(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// `Some(p)` for a genuine prime, `None` for zero.
    pub fn prime(self) -> Option<u64> {
        (self.0 != 0).then_some(self.0)
    }
}

impl TryFrom<u64> for PrimeOrZero {
    type Error = Error;
    fn try_from(p: u64) -> Result<Self> {
        PrimeOrZero::new(p)
    }
}

impl From<PrimeOrZero> for u64 {
    fn from(p: PrimeOrZero) -> u64 {
        p.0
    }
}

impl fmt::Display for PrimeOrZero {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One cell `S_J` of the partition of subgroups by their intersection with `C`,
/// together with its unique maximum `M_J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionCell {
    pub members: Vec<u64>,
    pub maximum: u64,
}

/// The ambient group `C_n`, with its divisors precomputed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicGroup {
    n: u64,
    divisors: Vec<u64>,
}

impl CyclicGroup {
    pub fn new(n: u64) -> Result<Self> {
        Ok(CyclicGroup {
            n,
            divisors: divisors(n)?,
        })
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn divisors(&self) -> &[u64] {
        &self.divisors
    }

    pub fn is_subgroup(&self, d: u64) -> bool {
        d != 0 && self.n.is_multiple_of(d)
    }

    pub fn check_subgroup(&self, d: u64) -> Result<()> {
        if self.is_subgroup(d) {
            Ok(())
        } else {
            Err(Error::NotADivisor { d, n: self.n })
        }
    }

    /// Divisors of `d` (subgroups of `C_d`), ascending. `d` must divide `n`.
    pub fn divisors_of(&self, d: u64) -> Vec<u64> {
        debug_assert!(self.is_subgroup(d));
        self.divisors.iter().copied().filter(|x| d.is_multiple_of(*x)).collect()
    }

    /// Primes dividing `n`, ascending.
    pub fn prime_divisors(&self) -> Vec<u64> {
        factorize(self.n).into_iter().map(|(p, _)| p).collect()
    }

    /// `mu(C_j, C_k)` on the subgroup poset; zero unless `j | k`.
    pub fn moebius(&self, j: u64, k: u64) -> i64 {
        if j == 0 || !k.is_multiple_of(j) {
            0
        } else {
            moebius_number(k / j)
        }
    }

    /// The partition `{S_J}` of subgroups by `I ∩ C = J`, keyed by `J | c`.
    pub fn s_partition(&self, c: u64) -> Result<BTreeMap<u64, IntersectionCell>> {
        self.check_subgroup(c)?;
        let mut cells: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for &j in self.divisors_of(c).iter() {
            cells.insert(j, Vec::new());
        }
        for &d in &self.divisors {
            cells.entry(d.gcd(&c)).or_default().push(d);
        }
        let mut out = BTreeMap::new();
        for (j, members) in cells {
            let maxima: Vec<u64> = members
                .iter()
                .copied()
                .filter(|&x| !members.iter().any(|&y| y != x && y % x == 0))
                .collect();
            match maxima.as_slice() {
                [m] => {
                    let maximum = *m;
                    if members.iter().any(|x| maximum % x != 0) {
                        return Err(Error::NonUniqueMaximum { j });
                    }
                    out.insert(j, IntersectionCell { members, maximum });
                }
                _ => return Err(Error::NonUniqueMaximum { j }),
            }
        }
        Ok(out)
    }

    /// Length of the longest subgroup chain `e < H_1 < ... < C_n`, i.e. `Ω(n)`.
    pub fn max_chain_length(&self) -> u32 {
        big_omega(self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(12).unwrap(), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1).unwrap(), vec![1]);
        assert_eq!(divisors(7).unwrap(), vec![1, 7]);
        assert_eq!(divisors(36).unwrap(), vec![1, 2, 3, 4, 6, 9, 12, 18, 36]);
        assert_eq!(divisors(0), Err(Error::ZeroOrder));
    }

    #[test]
    fn moebius_values() {
        let g = CyclicGroup::new(12).unwrap();
        assert_eq!(g.moebius(2, 12), 1);
        assert_eq!(g.moebius(1, 12), 0);
        assert_eq!(g.moebius(3, 2), 0);
        assert_eq!(g.moebius(4, 4), 1);
        assert_eq!(g.moebius(1, 2), -1);
    }

    // Recursive poset definition, computed independently of `moebius_number`.
    fn poset_moebius(g: &CyclicGroup, a: u64, b: u64) -> i64 {
        if !b.is_multiple_of(a) {
            0
        } else if a == b {
            1
        } else {
            -g.divisors()
                .iter()
                .filter(|&&x| x % a == 0 && b.is_multiple_of(x) && x != b)
                .map(|&x| poset_moebius(g, a, x))
                .sum::<i64>()
        }
    }

    #[test]
    fn moebius_matches_poset_recursion() {
        for n in 1..=60 {
            let g = CyclicGroup::new(n).unwrap();
            for &j in g.divisors() {
                for &k in g.divisors() {
                    assert_eq!(g.moebius(j, k), poset_moebius(&g, j, k), "n={n} j={j} k={k}");
                }
                for &k in g.divisors() {
                    if k % j == 0 && k != j {
                        let s: i64 = g
                            .divisors()
                            .iter()
                            .filter(|&&x| x % j == 0 && k % x == 0)
                            .map(|&x| g.moebius(j, x))
                            .sum();
                        assert_eq!(s, 0);
                    }
                }
            }
        }
    }

    #[test]
    fn residual_subgroups() {
        assert_eq!(o_p(12, 2).unwrap(), 3);
        assert_eq!(o_p(12, 5).unwrap(), 12);
        assert_eq!(o_p(8, 2).unwrap(), 1);
        assert_eq!(o_p(12, 0), Err(Error::PrimeRequired(0)));
        assert_eq!(o_p(12, 4), Err(Error::PrimeRequired(4)));
        for d in 1..200 {
            for p in [2, 3, 5, 7] {
                let once = o_p(d, p).unwrap();
                assert_eq!(o_p(once, p).unwrap(), once);
            }
        }
    }

    #[test]
    fn prime_or_zero_validation() {
        assert!(PrimeOrZero::new(0).is_ok());
        assert!(PrimeOrZero::new(2).is_ok());
        assert_eq!(PrimeOrZero::new(1), Err(Error::NotPrimeOrZero(1)));
        assert_eq!(PrimeOrZero::new(9), Err(Error::NotPrimeOrZero(9)));
        assert_eq!(PrimeOrZero::new(7).unwrap().prime(), Some(7));
        assert_eq!(PrimeOrZero::ZERO.prime(), None);
    }

    #[test]
    fn partition_examples() {
        let g = CyclicGroup::new(12).unwrap();
        let s = g.s_partition(2).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[&1], IntersectionCell { members: vec![1, 3], maximum: 3 });
        assert_eq!(s[&2], IntersectionCell { members: vec![2, 4, 6, 12], maximum: 12 });

        let s = g.s_partition(12).unwrap();
        for (&j, cell) in &s {
            assert_eq!(cell.members, vec![j]);
            assert_eq!(cell.maximum, j);
        }

        let g6 = CyclicGroup::new(6).unwrap();
        let s = g6.s_partition(1).unwrap();
        assert_eq!(s[&1], IntersectionCell { members: vec![1, 2, 3, 6], maximum: 6 });
        assert!(g6.s_partition(4).is_err());
    }

    #[test]
    fn partition_invariants() {
        for n in 1..=120 {
            let g = CyclicGroup::new(n).unwrap();
            for &c in g.divisors() {
                let cells = g.s_partition(c).unwrap();
                let mut all: Vec<u64> = cells.values().flat_map(|c| c.members.clone()).collect();
                all.sort();
                assert_eq!(all, g.divisors());
                for cell in cells.values() {
                    assert!(cell.members.contains(&cell.maximum));
                    assert!(cell.members.iter().all(|x| cell.maximum % x == 0));
                }
            }
        }
    }

    // Longest path in the divisor DAG with prime-ratio edges.
    fn longest_prime_chain(n: u64) -> u32 {
        let ds = divisors(n).unwrap();
        let mut best: BTreeMap<u64, u32> = BTreeMap::new();
        for &d in &ds {
            let b = ds
                .iter()
                .filter(|&&x| x < d && d % x == 0 && is_prime(d / x))
                .map(|x| best[x] + 1)
                .max()
                .unwrap_or(0);
            best.insert(d, b);
        }
        best[&n]
    }

    #[test]
    fn chain_lengths() {
        assert_eq!(CyclicGroup::new(12).unwrap().max_chain_length(), 3);
        assert_eq!(CyclicGroup::new(1).unwrap().max_chain_length(), 0);
        assert_eq!(CyclicGroup::new(8).unwrap().max_chain_length(), 3);
        for n in 1..=200 {
            assert_eq!(CyclicGroup::new(n).unwrap().max_chain_length(), longest_prime_chain(n));
        }
    }
}
