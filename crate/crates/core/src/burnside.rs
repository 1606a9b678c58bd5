//! Burnside rings `A(C_h)` of the subgroups of `C_n`, the marks, and the ghost
//! embedding.
//!
//! An element of `A(C_h)` is stored in the transitive basis: the coefficient
//! keyed by `k` multiplies the orbit `C_h/C_k`. Coefficients are arbitrary
//! precision and zero coefficients are never stored, so structural equality is
//! equality in the ring.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::subgroups::{divisors, moebius_number, PrimeOrZero};

fn check_divides(d: u64, level: u64) -> Result<()> {
    if d != 0 && level != 0 && level.is_multiple_of(d) {
        Ok(())
    } else {
        Err(Error::NotADivisor { d, n: level })
    }
}

fn check_same_level(a: u64, b: u64) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::LevelMismatch { left: a, right: b })
    }
}

/// A formal integer combination `Σ m_k C_h/C_k` in `A(C_h)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BurnsideElement {
    level: u64,
    coeffs: BTreeMap<u64, BigInt>,
}

impl BurnsideElement {
    pub fn zero(level: u64) -> Self {
        assert!(level > 0, "level must be positive");
        BurnsideElement {
            level,
            coeffs: BTreeMap::new(),
        }
    }

    /// The one-point set `C_h/C_h`, the multiplicative unit.
    pub fn one(level: u64) -> Self {
        Self::zero(level).with_term(level, BigInt::one())
    }

    /// The orbit `C_h/C_k`.
    pub fn transitive(level: u64, stabilizer: u64) -> Result<Self> {
        check_divides(stabilizer, level)?;
        Ok(Self::zero(level).with_term(stabilizer, BigInt::one()))
    }

    /// `t_m`: the transitive `C_h`-set with `m` elements, i.e. `C_h/C_{h/m}`.
    pub fn from_t(level: u64, m: u64) -> Result<Self> {
        check_divides(m, level)?;
        Self::transitive(level, level / m)
    }

    /// Builds an element from `(stabilizer, coefficient)` pairs; repeated keys are summed.
    pub fn from_coeffs<I, C>(level: u64, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, C)>,
        C: Into<BigInt>,
    {
        check_divides(1, level)?;
        let mut out = Self::zero(level);
        for (k, m) in terms {
            check_divides(k, level)?;
            out.add_term(k, m.into());
        }
        Ok(out)
    }

    /// Coordinates in the ascending transitive basis.
    pub fn from_coords(level: u64, coords: &[BigInt]) -> Result<Self> {
        let ds = divisors(level)?;
        if ds.len() != coords.len() {
            return Err(Error::Parse(format!(
                "expected {} coordinates at level {level}, got {}",
                ds.len(),
                coords.len()
            )));
        }
        Self::from_coeffs(level, ds.into_iter().zip(coords.iter().cloned()))
    }

    fn with_term(mut self, k: u64, m: BigInt) -> Self {
        self.add_term(k, m);
        self
    }

    fn add_term(&mut self, k: u64, m: BigInt) {
        if m.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(k).or_insert_with(BigInt::zero);
        *slot += m;
        if slot.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn coeffs(&self) -> &BTreeMap<u64, BigInt> {
        &self.coeffs
    }

    pub fn coeff(&self, k: u64) -> BigInt {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    pub fn coords(&self) -> Vec<BigInt> {
        divisors(self.level)
            .expect("level is positive")
            .into_iter()
            .map(|k| self.coeff(k))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True when every coefficient is non-negative, i.e. the element is an actual G-set.
    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|m| !m.is_negative())
    }

    /// Number of points, `|X| = φ^e(X)`.
    pub fn cardinality(&self) -> BigInt {
        self.mark(1).expect("1 divides every level")
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_same_level(self.level, other.level)?;
        let mut out = self.clone();
        for (&k, m) in &other.coeffs {
            out.add_term(k, m.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        BurnsideElement {
            level: self.level,
            coeffs: self.coeffs.iter().map(|(&k, m)| (k, -m)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        let mut out = Self::zero(self.level);
        for (&k, m) in &self.coeffs {
            out.add_term(k, m * s);
        }
        out
    }

    /// Cartesian product, via `t_x · t_y = gcd(x, y) · t_lcm(x, y)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_same_level(self.level, other.level)?;
        let h = self.level;
        let mut out = Self::zero(h);
        for (&a, ma) in &self.coeffs {
            let x = h / a;
            for (&b, mb) in &other.coeffs {
                let y = h / b;
                let (g, l) = (x.gcd(&y), x.lcm(&y));
                out.add_term(h / l, ma * mb * BigInt::from(g));
            }
        }
        Ok(out)
    }

    /// The mark `φ^{C_i}(X)`: number of `C_i`-fixed points.
    pub fn mark(&self, i: u64) -> Result<BigInt> {
        check_divides(i, self.level)?;
        Ok(self
            .coeffs
            .iter()
            .filter(|(&k, _)| k % i == 0)
            .map(|(&k, m)| m * BigInt::from(self.level / k))
            .sum())
    }

    /// The mark reduced into `Z/p`; for `p = 0` this is the mark itself.
    pub fn mark_mod(&self, i: u64, p: PrimeOrZero) -> Result<BigInt> {
        let v = self.mark(i)?;
        Ok(match p.prime() {
            Some(p) => v.mod_floor(&BigInt::from(p)),
            None => v,
        })
    }

    pub fn ghost(&self) -> GhostVector {
        GhostVector::from_fn(self.level, |i| self.mark(i).expect("divisor of level"))
    }
}

impl fmt::Display for BurnsideElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (idx, (k, m)) in self.coeffs.iter().enumerate() {
            let mag = m.abs();
            let sign = if m.is_negative() { "-" } else { "+" };
            match (idx, m.is_negative()) {
                (0, false) => {}
                (0, true) => write!(f, "-")?,
                _ => write!(f, " {sign} ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag}·")?;
            }
            write!(f, "C_{}/C_{}", self.level, k)?;
        }
        Ok(())
    }
}

/// The integer tuple of marks `(φ^{C_i}(X))_{i | h}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GhostVector {
    level: u64,
    marks: BTreeMap<u64, BigInt>,
}

impl GhostVector {
    pub fn new(level: u64, marks: BTreeMap<u64, BigInt>) -> Result<Self> {
        let ds = divisors(level)?;
        if marks.len() != ds.len() || !ds.iter().all(|d| marks.contains_key(d)) {
            return Err(Error::MalformedGhost { level });
        }
        Ok(GhostVector { level, marks })
    }

    pub fn from_fn(level: u64, mut f: impl FnMut(u64) -> BigInt) -> Self {
        let marks = divisors(level)
            .expect("level must be positive")
            .into_iter()
            .map(|i| (i, f(i)))
            .collect();
        GhostVector { level, marks }
    }

    pub fn constant(level: u64, v: impl Into<BigInt>) -> Self {
        let v = v.into();
        Self::from_fn(level, |_| v.clone())
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn marks(&self) -> &BTreeMap<u64, BigInt> {
        &self.marks
    }

    pub fn get(&self, i: u64) -> Result<&BigInt> {
        self.marks
            .get(&i)
            .ok_or(Error::NotADivisor { d: i, n: self.level })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_same_level(self.level, other.level)?;
        Ok(Self::from_fn(self.level, |i| &self.marks[&i] + &other.marks[&i]))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_same_level(self.level, other.level)?;
        Ok(Self::from_fn(self.level, |i| &self.marks[&i] * &other.marks[&i]))
    }

    /// Inverts the mark map by Möbius inversion over the divisor lattice.
    ///
    /// With `w_J = m_J · h/J` the marks satisfy `v_I = Σ_{I | J} w_J`, so
    /// `w_J = Σ_{J | I} μ(I/J) v_I`, and `v` lies in the image exactly when each
    /// `w_J` is divisible by `h/J`. Fails at the smallest `J` where it is not.
    pub fn unghost(&self) -> Result<BurnsideElement> {
        let h = self.level;
        let mut out = BurnsideElement::zero(h);
        for &j in self.marks.keys() {
            let w: BigInt = self
                .marks
                .iter()
                .filter(|(&i, _)| i % j == 0)
                .map(|(&i, v)| v * BigInt::from(moebius_number(i / j)))
                .sum();
            let (q, r) = w.div_rem(&BigInt::from(h / j));
            if !r.is_zero() {
                return Err(Error::NotInGhostImage { divisor: j });
            }
            out.add_term(j, q);
        }
        Ok(out)
    }
}

mod json_int {
    use super::*;

    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(super) enum Repr {
        Int(i64),
        Str(String),
    }

    pub(super) fn parse(r: Repr) -> std::result::Result<BigInt, String> {
        match r {
            Repr::Int(v) => Ok(BigInt::from(v)),
            Repr::Str(s) => s
                .trim()
                .parse::<BigInt>()
                .map_err(|_| format!("not an integer: {s:?}")),
        }
    }

    pub(super) struct Out<'a>(pub &'a BigInt);

    impl Serialize for Out<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
            match i64::try_from(self.0) {
                Ok(v) => s.serialize_i64(v),
                Err(_) => s.serialize_str(&self.0.to_string()),
            }
        }
    }

    pub(super) struct Entries<'a>(pub &'a BTreeMap<u64, BigInt>);

    impl Serialize for Entries<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
            let mut map = s.serialize_map(Some(self.0.len()))?;
            for (k, v) in self.0 {
                map.serialize_entry(&k.to_string(), &Out(v))?;
            }
            map.end()
        }
    }

    pub(super) fn parse_entries(
        raw: BTreeMap<String, Repr>,
    ) -> std::result::Result<Vec<(u64, BigInt)>, String> {
        raw.into_iter()
            .map(|(k, v)| {
                let key = k
                    .trim()
                    .parse::<u64>()
                    .map_err(|_| format!("key is not a divisor: {k:?}"))?;
                Ok((key, parse(v)?))
            })
            .collect()
    }
}

#[derive(Serialize)]
struct ElementOut<'a> {
    level: u64,
    coeffs: json_int::Entries<'a>,
}

#[derive(Deserialize)]
struct ElementIn {
    level: u64,
    #[serde(default)]
    coeffs: BTreeMap<String, json_int::Repr>,
}

impl Serialize for BurnsideElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ElementOut {
            level: self.level,
            coeffs: json_int::Entries(&self.coeffs),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BurnsideElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ElementIn::deserialize(d)?;
        let terms = json_int::parse_entries(raw.coeffs).map_err(D::Error::custom)?;
        BurnsideElement::from_coeffs(raw.level, terms).map_err(D::Error::custom)
    }
}

#[derive(Serialize)]
struct GhostOut<'a> {
    level: u64,
    marks: json_int::Entries<'a>,
}

#[derive(Deserialize)]
struct GhostIn {
    level: u64,
    marks: BTreeMap<String, json_int::Repr>,
}

impl Serialize for GhostVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GhostOut {
            level: self.level,
            marks: json_int::Entries(&self.marks),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GhostVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = GhostIn::deserialize(d)?;
        let entries = json_int::parse_entries(raw.marks).map_err(D::Error::custom)?;
        let n = entries.len();
        let marks: BTreeMap<u64, BigInt> = entries.into_iter().collect();
        if marks.len() != n {
            return Err(D::Error::custom("duplicate mark key"));
        }
        GhostVector::new(raw.level, marks).map_err(D::Error::custom)
    }
}
