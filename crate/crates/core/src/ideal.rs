//! The prime ideals `𝔭_{C,p}` of the Burnside Tambara functor of `C_n`.
//!
//! At level `C_h`, `𝔭_{C,p}(G/C_h)` is the set of `X ∈ A(C_h)` whose marks at
//! every subgroup of `C_h ∩ C` vanish mod `p` (exactly, for `p = 0`). For a
//! cyclic group `C_h ∩ C = C_gcd(h,c)`, so each level is `𝔭_{C_gcd(h,c), p}` of
//! `A(C_h)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::burnside::BurnsideElement;
use crate::error::{Error, Result};
use crate::hnf::{self, Row};
use crate::subgroups::{divisors, CyclicGroup, PrimeOrZero};

/// Names `𝔭_{C_c, p}` inside the ambient `C_n`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IdealSpec {
    pub n: u64,
    pub c: u64,
    pub p: PrimeOrZero,
}

impl IdealSpec {
    pub fn new(n: u64, c: u64, p: u64) -> Result<Self> {
        CyclicGroup::new(n)?.check_subgroup(c)?;
        Ok(IdealSpec {
            n,
            c,
            p: PrimeOrZero::new(p)?,
        })
    }

    /// Parses `c=<d>,p=<p>` relative to the ambient order `n`.
    pub fn parse(n: u64, s: &str) -> Result<Self> {
        let mut c = None;
        let mut p = None;
        for part in s.split(',') {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value in {s:?}")))?;
            let value = u64::from_str(value.trim())
                .map_err(|_| Error::Parse(format!("not a non-negative integer: {value:?}")))?;
            match key.trim() {
                "c" => c = Some(value),
                "p" => p = Some(value),
                other => return Err(Error::Parse(format!("unknown key {other:?}"))),
            }
        }
        match (c, p) {
            (Some(c), Some(p)) => IdealSpec::new(n, c, p),
            _ => Err(Error::Parse(format!("spec needs both c and p: {s:?}"))),
        }
    }

    fn check_level(&self, h: u64) -> Result<()> {
        if h != 0 && self.n.is_multiple_of(h) {
            Ok(())
        } else {
            Err(Error::NotADivisor { d: h, n: self.n })
        }
    }

    /// The subgroup `C_h ∩ C` whose marks are constrained at level `h`.
    pub fn constrained_at(&self, h: u64) -> u64 {
        h.gcd(&self.c)
    }

    pub fn member(&self, x: &BurnsideElement) -> Result<bool> {
        let h = x.level();
        self.check_level(h)?;
        for i in divisors(self.constrained_at(h))? {
            if !x.mark_mod(i, self.p)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for IdealSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p_{{C_{},{}}}", self.c, self.p)
    }
}

/// `ψ^J(X) = Σ_{I ∈ S_J} m_I |G:I|` for `X` at the top level `G = C_n`.
pub fn psi(x: &BurnsideElement, c: u64, j: u64) -> Result<BigInt> {
    let g = CyclicGroup::new(x.level())?;
    let cells = g.s_partition(c)?;
    let cell = cells.get(&j).ok_or(Error::NotADivisor { d: j, n: c })?;
    Ok(cell
        .members
        .iter()
        .map(|&i| x.coeff(i) * BigInt::from(g.order() / i))
        .sum())
}

/// Splits `X = Σ_{J | c} X_J` with `X_J` supported on `S_J`.
pub fn decompose_by_c(x: &BurnsideElement, c: u64) -> Result<BTreeMap<u64, BurnsideElement>> {
    let g = CyclicGroup::new(x.level())?;
    g.s_partition(c)?
        .into_iter()
        .map(|(j, cell)| {
            let part = BurnsideElement::from_coeffs(
                g.order(),
                cell.members.iter().map(|&i| (i, x.coeff(i))),
            )?;
            Ok((j, part))
        })
        .collect()
}

/// Ring-theoretic generators of `𝔭_{C,p}(G/C_h)`:
///
/// 1. `p · C_h/C_h` (prime `p` only),
/// 2. `C_h/C_k` whenever `p | h/k` (prime `p` only),
/// 3. `C_h/C_k − |M_J : C_k| · C_h/M_J` for `J | gcd(h, c)` and `k ∈ S_J`, `k ≠ M_J`.
pub fn level_generators(spec: &IdealSpec, h: u64) -> Result<Vec<BurnsideElement>> {
    spec.check_level(h)?;
    let mut out = Vec::new();
    if let Some(p) = spec.p.prime() {
        out.push(BurnsideElement::one(h).scale(&BigInt::from(p)));
        for k in divisors(h)? {
            if (h / k).is_multiple_of(p) {
                out.push(BurnsideElement::transitive(h, k)?);
            }
        }
    }
    let local = CyclicGroup::new(h)?;
    for cell in local.s_partition(spec.constrained_at(h))?.values() {
        let top = cell.maximum;
        for &k in cell.members.iter().filter(|&&k| k != top) {
            out.push(BurnsideElement::from_coeffs(
                h,
                [(k, BigInt::from(1)), (top, -BigInt::from(top / k))],
            )?);
        }
    }
    Ok(out)
}

/// A sub-`Z`-module of `A(C_h)` in the ascending transitive basis, stored in
/// Hermite normal form, and closed under multiplication by every `t_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelLattice {
    level: u64,
    basis: Vec<Row>,
    /// `Some(p)` when the lattice was built as a mark-congruence kernel mod `p`.
    modulus: Option<PrimeOrZero>,
}

impl LevelLattice {
    pub fn new(level: u64, rows: &[Row], modulus: Option<PrimeOrZero>) -> Result<Self> {
        let ds = divisors(level)?;
        let basis = hnf::hnf(rows, ds.len());
        let lattice = LevelLattice {
            level,
            basis,
            modulus,
        };
        for row in &lattice.basis {
            let x = BurnsideElement::from_coords(level, row)?;
            for &m in &ds {
                let prod = x.mul(&BurnsideElement::from_t(level, m)?)?;
                if !hnf::in_span(&lattice.basis, &prod.coords()) {
                    return Err(Error::NotAnIdeal { level, m });
                }
            }
        }
        Ok(lattice)
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn basis(&self) -> &[Row] {
        &self.basis
    }

    pub fn modulus(&self) -> Option<PrimeOrZero> {
        self.modulus
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, x: &BurnsideElement) -> Result<bool> {
        if x.level() != self.level {
            return Err(Error::LevelMismatch {
                left: self.level,
                right: x.level(),
            });
        }
        Ok(hnf::in_span(&self.basis, &x.coords()))
    }

    pub fn is_sublattice_of(&self, other: &LevelLattice) -> Result<bool> {
        if self.level != other.level {
            return Err(Error::LevelMismatch {
                left: self.level,
                right: other.level,
            });
        }
        Ok(self.basis.iter().all(|r| hnf::in_span(&other.basis, r)))
    }

    /// Same lattice, ignoring how it was built.
    pub fn same_span(&self, other: &LevelLattice) -> bool {
        self.level == other.level && self.basis == other.basis
    }
}

fn mark_row(h: u64, i: u64, ds: &[u64]) -> Row {
    ds.iter()
        .map(|&k| {
            if k % i == 0 {
                BigInt::from(h / k)
            } else {
                BigInt::zero()
            }
        })
        .collect()
}

/// `{X ∈ A(C_h) : φ^{C_i}(X) ≡ 0 (mod p) for each listed i}`.
pub fn mark_kernel_lattice(h: u64, marks: &[u64], p: PrimeOrZero) -> Result<LevelLattice> {
    let ds = divisors(h)?;
    for &i in marks {
        if !h.is_multiple_of(i) {
            return Err(Error::NotADivisor { d: i, n: h });
        }
    }
    let a: Vec<Row> = marks.iter().map(|&i| mark_row(h, i, &ds)).collect();
    let basis = hnf::kernel_mod(&a, ds.len(), p.get());
    LevelLattice::new(h, &basis, Some(p))
}

/// `𝔭_{C,p}(G/C_h)` as an integer lattice, computed from the congruences alone.
pub fn kernel_lattice(spec: &IdealSpec, h: u64) -> Result<LevelLattice> {
    spec.check_level(h)?;
    mark_kernel_lattice(h, &divisors(spec.constrained_at(h))?, spec.p)
}

/// The ring ideal of `A(C_h)` generated by `gens`: the `Z`-span of all `g · t_m`.
pub fn ring_ideal_lattice(h: u64, gens: &[BurnsideElement]) -> Result<LevelLattice> {
    let ds = divisors(h)?;
    let mut rows = Vec::with_capacity(gens.len() * ds.len());
    for g in gens {
        if g.level() != h {
            return Err(Error::LevelMismatch {
                left: h,
                right: g.level(),
            });
        }
        for &m in &ds {
            rows.push(g.mul(&BurnsideElement::from_t(h, m)?)?.coords());
        }
    }
    LevelLattice::new(h, &rows, None)
}

pub fn lattice_member(lattice: &LevelLattice, x: &BurnsideElement) -> Result<bool> {
    lattice.contains(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(level: u64, terms: &[(u64, i64)]) -> BurnsideElement {
        BurnsideElement::from_coeffs(level, terms.iter().copied()).unwrap()
    }

    fn spec(n: u64, c: u64, p: u64) -> IdealSpec {
        IdealSpec::new(n, c, p).unwrap()
    }

    #[test]
    fn spec_parsing() {
        assert_eq!(IdealSpec::parse(12, "c=2,p=3").unwrap(), spec(12, 2, 3));
        assert_eq!(IdealSpec::parse(12, " p=0 , c=12").unwrap(), spec(12, 12, 0));
        assert!(IdealSpec::parse(12, "c=5,p=2").is_err());
        assert!(IdealSpec::parse(12, "c=2,p=4").is_err());
        assert!(IdealSpec::parse(12, "c=2").is_err());
        assert!(IdealSpec::parse(12, "c=2,q=3").is_err());
        assert_eq!(spec(12, 2, 3).to_string(), "p_{C_2,3}");
    }

    #[test]
    fn membership_examples() {
        assert!(spec(12, 2, 2).member(&el(12, &[(12, 2)])).unwrap());
        assert!(!spec(12, 2, 0).member(&el(12, &[(3, 1)])).unwrap());
        for c in [1, 2, 3, 4, 6, 12] {
            for p in [0, 2, 3, 5] {
                for h in [1, 2, 3, 4, 6, 12] {
                    assert!(spec(12, c, p).member(&BurnsideElement::zero(h)).unwrap());
                }
            }
        }
        assert!(spec(12, 2, 0).member(&el(5, &[(1, 1)])).is_err());
    }

    #[test]
    fn psi_examples() {
        let x = el(12, &[(4, 1), (12, -3)]);
        assert_eq!(psi(&x, 2, 2).unwrap(), BigInt::zero());
        assert_eq!(psi(&x, 2, 1).unwrap(), BigInt::zero());
        let y = el(12, &[(1, 2), (3, -1), (4, 5), (6, 7)]);
        for c in [1, 2, 3, 4, 6, 12] {
            let total: BigInt = divisors(c).unwrap().iter().map(|&j| psi(&y, c, j).unwrap()).sum();
            assert_eq!(total, y.mark(1).unwrap());
        }
    }

    #[test]
    fn decomposition_by_c() {
        let x = el(12, &[(4, 1), (12, -3)]);
        let parts = decompose_by_c(&x, 2).unwrap();
        assert_eq!(parts[&2], x);
        assert!(parts[&1].is_zero());

        let y = el(12, &[(1, 2), (3, -1), (6, 7)]);
        let parts = decompose_by_c(&y, 12).unwrap();
        for (&j, part) in &parts {
            assert_eq!(part, &el(12, &[(j, i64::try_from(y.coeff(j)).unwrap())]));
        }
        let sum = parts.values().fold(BurnsideElement::zero(12), |a, b| a.add(b).unwrap());
        assert_eq!(sum, y);
        assert!(decompose_by_c(&BurnsideElement::zero(12), 4)
            .unwrap()
            .values()
            .all(BurnsideElement::is_zero));
    }

    #[test]
    fn generator_examples() {
        let gens = level_generators(&spec(12, 2, 0), 12).unwrap();
        assert_eq!(
            gens,
            vec![
                el(12, &[(1, 1), (3, -3)]),
                el(12, &[(2, 1), (12, -6)]),
                el(12, &[(4, 1), (12, -3)]),
                el(12, &[(6, 1), (12, -2)]),
            ]
        );

        let gens = level_generators(&spec(12, 1, 3), 6).unwrap();
        assert!(gens.contains(&el(6, &[(6, 3)])));
        assert!(gens.contains(&el(6, &[(2, 1)])));
        assert!(gens.contains(&el(6, &[(1, 1)])));

        assert!(level_generators(&spec(12, 12, 0), 12).unwrap().is_empty());

        for c in [1, 2, 3, 4, 6, 12] {
            for p in [0, 2, 3, 5] {
                let s = spec(12, c, p);
                for h in [1, 2, 3, 4, 6, 12] {
                    for g in level_generators(&s, h).unwrap() {
                        assert!(s.member(&g).unwrap(), "{g} not in {s} at level {h}");
                    }
                }
            }
        }
    }

    #[test]
    fn kernel_lattice_examples() {
        assert_eq!(kernel_lattice(&spec(12, 12, 0), 12).unwrap().rank(), 0);
        for p in [2, 3, 5] {
            let lat = kernel_lattice(&spec(12, 1, p), 1).unwrap();
            assert_eq!(lat.basis(), &[vec![BigInt::from(p)]]);
        }
        let s = spec(12, 2, 0);
        let lat = kernel_lattice(&s, 12).unwrap();
        assert_eq!(lat.rank(), 4);
        let gens = ring_ideal_lattice(12, &level_generators(&s, 12).unwrap()).unwrap();
        assert!(lat.same_span(&gens));
        assert!(lattice_member(&lat, &el(12, &[(4, 1), (12, -3)])).unwrap());
    }

    #[test]
    fn ring_ideal_examples() {
        let lat = ring_ideal_lattice(2, &[el(2, &[(2, 2)])]).unwrap();
        assert_eq!(
            lat.basis(),
            &[
                vec![BigInt::from(2), BigInt::zero()],
                vec![BigInt::zero(), BigInt::from(2)]
            ]
        );
        assert!(lattice_member(&lat, &el(2, &[(1, 4)])).unwrap());
        assert!(!lattice_member(&lat, &el(2, &[(1, 1)])).unwrap());
        assert!(lattice_member(&lat, &el(6, &[(1, 1)])).is_err());

        assert_eq!(ring_ideal_lattice(6, &[]).unwrap().rank(), 0);
        assert_eq!(ring_ideal_lattice(6, &[BurnsideElement::one(6)]).unwrap().rank(), 4);
        assert!(ring_ideal_lattice(6, &[BurnsideElement::one(3)]).is_err());
    }

    #[test]
    fn non_ideal_lattice_rejected() {
        // span{C_2/C_2} contains the unit but not t_2
        let rows = vec![vec![BigInt::zero(), BigInt::from(1)]];
        assert_eq!(
            LevelLattice::new(2, &rows, None),
            Err(Error::NotAnIdeal { level: 2, m: 2 })
        );
    }

    #[test]
    fn membership_agrees_with_lattice() {
        let n = 12;
        let ds = divisors(n).unwrap();
        for &c in &ds {
            for p in [0, 2, 3, 5] {
                let s = spec(n, c, p);
                for &h in &ds {
                    let lat = kernel_lattice(&s, h).unwrap();
                    let hd = divisors(h).unwrap();
                    // all coefficient vectors in a small box
                    let mut idx = vec![0usize; hd.len()];
                    let vals = [-2i64, -1, 0, 1, 3];
                    loop {
                        let x = BurnsideElement::from_coeffs(
                            h,
                            hd.iter().zip(&idx).map(|(&k, &i)| (k, vals[i])),
                        )
                        .unwrap();
                        assert_eq!(s.member(&x).unwrap(), lat.contains(&x).unwrap(), "{s} {x}");
                        let mut pos = 0;
                        while pos < idx.len() && idx[pos] == vals.len() - 1 {
                            idx[pos] = 0;
                            pos += 1;
                        }
                        if pos == idx.len() || hd.len() > 4 && pos >= 4 {
                            break;
                        }
                        idx[pos] += 1;
                    }
                }
            }
        }
    }
}
