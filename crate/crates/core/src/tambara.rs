//! Structure maps of the Burnside Tambara functor for cyclic groups.
//!
//! Levels are identified with subgroup orders: an element at level `h` lives
//! in `A(C_h)`. Restriction goes down the divisor lattice, transfer and norm go
//! up. Each map has a transitive-basis implementation and a ghost-coordinate
//! counterpart; the ghost versions are the closed forms the transitive ones are
//! tested against.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::burnside::{BurnsideElement, GhostVector};
use crate::error::{Error, Result};
use crate::subgroups::divisors;

fn check_divides(d: u64, h: u64) -> Result<()> {
    if d != 0 && h.is_multiple_of(d) {
        Ok(())
    } else {
        Err(Error::NotADivisor { d, n: h })
    }
}

/// Restriction `res^{C_h}_{C_j}`.
///
/// `C_h/C_k` restricted to `C_j` has every stabiliser equal to `C_k ∩ C_j`,
/// so it splits as `|C_h:C_k| / |C_j : C_k ∩ C_j|` copies of `C_j/(C_k ∩ C_j)`.
pub fn restrict(x: &BurnsideElement, j: u64) -> Result<BurnsideElement> {
    let h = x.level();
    check_divides(j, h)?;
    let terms = x.coeffs().iter().map(|(&k, m)| {
        let g = k.gcd(&j);
        let copies = (h / k) / (j / g);
        (g, m * BigInt::from(copies))
    });
    BurnsideElement::from_coeffs(j, terms)
}

/// Transfer (induction) `C_h ×_{C_k} X`; stabilisers are preserved.
pub fn transfer(x: &BurnsideElement, h: u64) -> Result<BurnsideElement> {
    check_divides(x.level(), h)?;
    BurnsideElement::from_coeffs(h, x.coeffs().iter().map(|(&j, m)| (j, m.clone())))
}

/// Norm (multiplicative induction) `Map_{C_k}(C_h, X)`.
///
/// Computed by downward recursion on marks: with `k` the source level, for every `K | h`
///
/// `C(K) = φ^{K∩C_k}(X)^{|C_h : K·C_k|} − Σ_{K < L ≤ C_h} C(L)`
///
/// and the norm is `Σ_K C(K)/|C_h:K| · C_h/K`. The recursion is polynomial in
/// the coefficients, so formal differences are handled as well.
pub fn norm(x: &BurnsideElement, h: u64) -> Result<BurnsideElement> {
    let k = x.level();
    check_divides(k, h)?;
    let ds = divisors(h)?;
    let mut c: BTreeMap<u64, BigInt> = BTreeMap::new();
    for &big_k in ds.iter().rev() {
        let base = x.mark(big_k.gcd(&k))?;
        let exponent = h / big_k.lcm(&k);
        let mut value = num_traits::pow(base, exponent as usize);
        for (&l, cl) in c.range(big_k + 1..) {
            if l % big_k == 0 {
                value -= cl;
            }
        }
        c.insert(big_k, value);
    }
    let mut terms = Vec::with_capacity(c.len());
    for (big_k, value) in c {
        let (q, r) = value.div_rem(&BigInt::from(h / big_k));
        assert!(
            r.is_zero(),
            "norm recursion produced a non-integral coefficient at C_{big_k} (level {k} -> {h})"
        );
        terms.push((big_k, q));
    }
    BurnsideElement::from_coeffs(h, terms)
}

/// Conjugation; trivial since the group is abelian.
pub fn conjugate(x: &BurnsideElement) -> BurnsideElement {
    x.clone()
}

/// Ghost restriction: keep the marks at subgroups of `C_j`.
pub fn ghost_res(v: &GhostVector, j: u64) -> Result<GhostVector> {
    check_divides(j, v.level())?;
    Ok(GhostVector::from_fn(j, |i| v.marks()[&i].clone()))
}

/// Ghost transfer: `|C_h:C_k| · v_i` when `C_i ≤ C_k`, and `0` otherwise.
pub fn ghost_tr(v: &GhostVector, h: u64) -> Result<GhostVector> {
    let k = v.level();
    check_divides(k, h)?;
    let index = BigInt::from(h / k);
    Ok(GhostVector::from_fn(h, |i| {
        if k.is_multiple_of(i) {
            &index * &v.marks()[&i]
        } else {
            BigInt::zero()
        }
    }))
}

/// Ghost norm: `N(v)_i = v_{gcd(i,k)}^{h / lcm(i,k)}`.
pub fn norm_ghost(v: &GhostVector, h: u64) -> Result<GhostVector> {
    let k = v.level();
    check_divides(k, h)?;
    Ok(GhostVector::from_fn(h, |i| {
        num_traits::pow(v.marks()[&i.gcd(&k)].clone(), (h / i.lcm(&k)) as usize)
    }))
}
