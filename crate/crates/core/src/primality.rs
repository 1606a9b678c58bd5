//! The Q-criterion for prime Tambara ideals, a bounded falsifier built
//! on it, and the membership checks behind the Tambara-theoretic generators.
//!
//! For an abelian group conjugations are trivial, so `Q(𝓘, a, b)` asks that
//! `N_K^L res_K(a) · N_{K'}^L res_{K'}(b) ∈ 𝓘(G/L)` for all `K ≤ H`, `K' ≤ H'`
//! and `L ≥ K, K'`. An ideal is prime iff `Q(𝓘, a, b)` forces `a ∈ 𝓘` or `b ∈ 𝓘`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::burnside::{BurnsideElement, GhostVector};
use crate::error::{Error, Result};
use crate::ideal::IdealSpec;
use crate::par::{self, Parallelism};
use crate::subgroups::{divisors, factorize};
use crate::tambara::{norm, restrict, transfer};

/// A levelwise membership predicate on `A̲_{C_n}`.
pub trait IdealFamily: Sync {
    fn ambient(&self) -> u64;

    /// Membership of the element at `level` whose mark at `C_i` is `mark(i)`.
    /// Implementations only evaluate the marks they need.
    fn contains_marks(&self, level: u64, mark: &dyn Fn(u64) -> BigInt) -> bool;

    fn describe(&self) -> String;

    fn contains(&self, x: &BurnsideElement) -> bool {
        self.contains_marks(x.level(), &|i| x.mark(i).expect("divisor of level"))
    }
}

fn spec_contains_marks(spec: &IdealSpec, level: u64, mark: &dyn Fn(u64) -> BigInt) -> bool {
    let c = spec.constrained_at(level);
    divisors(c).expect("positive").into_iter().all(|i| {
        let v = mark(i);
        match spec.p.prime() {
            Some(p) => v.mod_floor(&BigInt::from(p)).is_zero(),
            None => v.is_zero(),
        }
    })
}

impl IdealFamily for IdealSpec {
    fn ambient(&self) -> u64 {
        self.n
    }

    fn contains_marks(&self, level: u64, mark: &dyn Fn(u64) -> BigInt) -> bool {
        spec_contains_marks(self, level, mark)
    }

    fn describe(&self) -> String {
        self.to_string()
    }
}

/// Levelwise intersection of several `𝔭_{C,p}` (an ideal, not prime in general).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealIntersection {
    n: u64,
    specs: Vec<IdealSpec>,
}

impl IdealIntersection {
    pub fn new(specs: Vec<IdealSpec>) -> Result<Self> {
        let n = specs
            .first()
            .map(|s| s.n)
            .ok_or_else(|| Error::Parse("empty intersection".into()))?;
        if let Some(bad) = specs.iter().find(|s| s.n != n) {
            return Err(Error::AmbientMismatch { left: n, right: bad.n });
        }
        Ok(IdealIntersection { n, specs })
    }
}

impl IdealFamily for IdealIntersection {
    fn ambient(&self) -> u64 {
        self.n
    }

    fn contains_marks(&self, level: u64, mark: &dyn Fn(u64) -> BigInt) -> bool {
        self.specs
            .iter()
            .all(|s| spec_contains_marks(s, level, mark))
    }

    fn describe(&self) -> String {
        let parts: Vec<String> = self.specs.iter().map(|s| s.to_string()).collect();
        parts.join(" ∩ ")
    }
}

/// The whole functor: every element is a member.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct WholeFunctor {
    pub n: u64,
}

impl IdealFamily for WholeFunctor {
    fn ambient(&self) -> u64 {
        self.n
    }

    fn contains_marks(&self, _level: u64, _mark: &dyn Fn(u64) -> BigInt) -> bool {
        true
    }

    fn describe(&self) -> String {
        format!("A_(C_{})", self.n)
    }
}

/// The restriction `𝓘|_{C_m}` of a family on `C_n` to the subgroup `C_m`.
pub struct Restricted<'a> {
    inner: &'a dyn IdealFamily,
    m: u64,
}

impl<'a> Restricted<'a> {
    pub fn new(inner: &'a dyn IdealFamily, m: u64) -> Result<Self> {
        let n = inner.ambient();
        if m == 0 || !n.is_multiple_of(m) {
            return Err(Error::NotADivisor { d: m, n });
        }
        Ok(Restricted { inner, m })
    }
}

impl IdealFamily for Restricted<'_> {
    fn ambient(&self) -> u64 {
        self.m
    }

    fn contains_marks(&self, level: u64, mark: &dyn Fn(u64) -> BigInt) -> bool {
        self.inner.contains_marks(level, mark)
    }

    fn describe(&self) -> String {
        format!("({})|C_{}", self.inner.describe(), self.m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QWitness {
    pub k: u64,
    pub k_prime: u64,
    pub l: u64,
    pub product: BurnsideElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QReport {
    pub holds: bool,
    pub witness: Option<QWitness>,
}

fn check_level(family: &dyn IdealFamily, h: u64) -> Result<()> {
    let n = family.ambient();
    if h != 0 && n.is_multiple_of(h) {
        Ok(())
    } else {
        Err(Error::NotADivisor { d: h, n })
    }
}

/// Evaluates `Q(family, a, b)` with the structure maps in the transitive basis.
///
/// Triples are visited with `L` descending, then `K` and `K'` ascending; the
/// first product outside the family is reported as the witness.
pub fn q_check(family: &dyn IdealFamily, a: &BurnsideElement, b: &BurnsideElement) -> Result<QReport> {
    check_level(family, a.level())?;
    check_level(family, b.level())?;
    for l in divisors(family.ambient())?.into_iter().rev() {
        for k in divisors(a.level().gcd(&l))? {
            let na = norm(&restrict(a, k)?, l)?;
            for k_prime in divisors(b.level().gcd(&l))? {
                let nb = norm(&restrict(b, k_prime)?, l)?;
                let product = na.mul(&nb)?;
                if !family.contains(&product) {
                    return Ok(QReport {
                        holds: false,
                        witness: Some(QWitness {
                            k,
                            k_prime,
                            l,
                            product,
                        }),
                    });
                }
            }
        }
    }
    Ok(QReport {
        holds: true,
        witness: None,
    })
}

/// Ghost vectors of `N_K^L res_K(x)` for every admissible `(K, L)`.
#[derive(Clone, Debug)]
pub struct NormProfile {
    /// Keyed by `L` descending; each entry lists `(K, marks over divisors of L)`.
    targets: Vec<(u64, Vec<u64>, Vec<Vec<BigInt>>)>,
}

impl NormProfile {
    pub fn new(x: &BurnsideElement, n: u64) -> Result<Self> {
        let mut targets = Vec::new();
        for l in divisors(n)?.into_iter().rev() {
            let ks = divisors(x.level().gcd(&l))?;
            let mut rows = Vec::with_capacity(ks.len());
            for &k in &ks {
                let g: GhostVector = norm(&restrict(x, k)?, l)?.ghost();
                rows.push(g.marks().values().cloned().collect());
            }
            targets.push((l, divisors(l)?, rows));
        }
        Ok(NormProfile { targets })
    }

    /// `Q(family, a, b)` evaluated from precomputed profiles by pointwise products.
    pub fn q_holds(&self, other: &NormProfile, family: &dyn IdealFamily) -> bool {
        for ((l, ds, rows_a), (_, _, rows_b)) in self.targets.iter().zip(&other.targets) {
            for va in rows_a {
                for vb in rows_b {
                    let mark = |i: u64| {
                        let pos = ds.binary_search(&i).expect("divisor of L");
                        &va[pos] * &vb[pos]
                    };
                    if !family.contains_marks(*l, &mark) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Search box for [`primality_probe`].
#[derive(Clone, Debug)]
pub struct ProbeConfig {
    /// Coefficients range over `[-bound, bound]`.
    pub bound: i64,
    /// Maximum number of non-zero coefficients.
    pub max_support: usize,
    /// Levels (subgroup orders) the elements live at.
    pub levels: Vec<u64>,
    pub parallelism: Parallelism,
}

impl ProbeConfig {
    /// Every level of `C_n`, support at most 2.
    pub fn for_group(n: u64, bound: i64) -> Result<Self> {
        Ok(ProbeConfig {
            bound,
            max_support: 2,
            levels: divisors(n)?,
            parallelism: Parallelism::default(),
        })
    }
}

/// All elements at level `h` with coefficients in `[-bound, bound]` and at most
/// `max_support` non-zero coefficients, in a deterministic order.
pub fn box_elements(h: u64, bound: i64, max_support: usize) -> Result<Vec<BurnsideElement>> {
    let ds = divisors(h)?;
    let values: Vec<i64> = (-bound..=bound).filter(|&v| v != 0).collect();
    let mut out = vec![BurnsideElement::zero(h)];
    // (support so far, next admissible index)
    let mut frontier: Vec<(Vec<(u64, i64)>, usize)> = vec![(Vec::new(), 0)];
    for _ in 0..max_support.min(ds.len()) {
        let mut next = Vec::new();
        for (terms, start) in &frontier {
            for (idx, &d) in ds.iter().enumerate().skip(*start) {
                for &v in &values {
                    let mut t = terms.clone();
                    t.push((d, v));
                    out.push(BurnsideElement::from_coeffs(h, t.iter().copied())?);
                    next.push((t, idx + 1));
                }
            }
        }
        frontier = next;
    }
    Ok(out)
}

/// Elements and their norm profiles, shared across families.
pub struct ProbeUniverse {
    n: u64,
    config: ProbeConfig,
    elements: Vec<BurnsideElement>,
    profiles: Vec<NormProfile>,
}

impl ProbeUniverse {
    pub fn new(n: u64, config: ProbeConfig) -> Result<Self> {
        let mut elements = Vec::new();
        for &h in &config.levels {
            if h == 0 || !n.is_multiple_of(h) {
                return Err(Error::NotADivisor { d: h, n });
            }
            elements.extend(box_elements(h, config.bound, config.max_support)?);
        }
        let profiles = par::map(&elements, config.parallelism, |x| NormProfile::new(x, n))
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        Ok(ProbeUniverse {
            n,
            config,
            elements,
            profiles,
        })
    }

    pub fn elements(&self) -> &[BurnsideElement] {
        &self.elements
    }

    /// Every unordered pair `{a, b}` with `Q(family, a, b)` true but neither a member.
    pub fn probe(&self, family: &dyn IdealFamily) -> Result<ProbeReport> {
        if family.ambient() != self.n {
            return Err(Error::AmbientMismatch {
                left: self.n,
                right: family.ambient(),
            });
        }
        let outside: Vec<usize> = (0..self.elements.len())
            .filter(|&i| !family.contains(&self.elements[i]))
            .collect();
        let hits = par::flat_map(&outside, self.config.parallelism, |&i| {
            outside
                .iter()
                .filter(|&&j| j >= i)
                .filter(|&&j| self.profiles[i].q_holds(&self.profiles[j], family))
                .map(|&j| (self.elements[i].clone(), self.elements[j].clone()))
                .collect()
        });
        let m = outside.len();
        Ok(ProbeReport {
            family: family.describe(),
            bound: self.config.bound,
            max_support: self.config.max_support,
            levels: self.config.levels.clone(),
            elements: self.elements.len(),
            pairs_checked: m * (m + 1) / 2,
            counterexamples: hits,
        })
    }
}

/// Outcome of a bounded falsification run. An empty counterexample list means
/// nothing was found in the searched box, nothing more.
#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub family: String,
    pub bound: i64,
    pub max_support: usize,
    pub levels: Vec<u64>,
    pub elements: usize,
    pub pairs_checked: usize,
    pub counterexamples: Vec<(BurnsideElement, BurnsideElement)>,
}

impl ProbeReport {
    pub fn falsified(&self) -> bool {
        !self.counterexamples.is_empty()
    }

    pub fn contains_pair(&self, a: &BurnsideElement, b: &BurnsideElement) -> bool {
        self.counterexamples
            .iter()
            .any(|(x, y)| (x == a && y == b) || (x == b && y == a))
    }
}

impl fmt::Display for ProbeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let levels: Vec<String> = self.levels.iter().map(u64::to_string).collect();
        let scale = format!(
            "coefficients in [-{b}, {b}], support <= {s}, levels {{{l}}}",
            b = self.bound,
            s = self.max_support,
            l = levels.join(",")
        );
        if self.counterexamples.is_empty() {
            write!(
                f,
                "{}: no counterexample found at scale ({scale}; {} pairs checked); not a proof of primality",
                self.family, self.pairs_checked
            )
        } else {
            writeln!(
                f,
                "{}: {} counterexample(s) at scale ({scale}):",
                self.family,
                self.counterexamples.len()
            )?;
            for (a, b) in &self.counterexamples {
                writeln!(f, "  a = {a} (level {}), b = {b} (level {})", a.level(), b.level())?;
            }
            Ok(())
        }
    }
}

/// Runs the falsifier over the box described by `config`.
pub fn primality_probe(family: &dyn IdealFamily, config: ProbeConfig) -> Result<ProbeReport> {
    ProbeUniverse::new(family.ambient(), config)?.probe(family)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SylowStep {
    /// The prime `r | n` with `Syl_r(C) ≠ Syl_r(G)`.
    pub prime: u64,
    /// Order of `Syl_r(C)^+`, the level where `t_r − r` is tested.
    pub level: u64,
    pub member: bool,
}

/// Membership facts behind the Tambara-theoretic generators of `𝔭_{C,p}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorCheckReport {
    pub spec: IdealSpec,
    /// `p · C_h/C_h ∈ 𝔭(G/C_h)` for all `h`; `None` for `p = 0`.
    pub unit_multiples: Option<bool>,
    /// `C_h/C_k ∈ 𝔭(G/C_h)` whenever `p | h/k`; `None` for `p = 0`.
    pub index_orbits: Option<bool>,
    pub sylow_steps: Vec<SylowStep>,
}

impl GeneratorCheckReport {
    pub fn passed(&self) -> bool {
        self.unit_multiples.unwrap_or(true)
            && self.index_orbits.unwrap_or(true)
            && self.sylow_steps.iter().all(|s| s.member)
    }
}

/// Checks, by direct membership tests:
///
/// (a) `p · C_h/C_h ∈ 𝔭(G/C_h)` for all `h | n`, given `p · e/e ∈ 𝔭(G/e)`;
/// (b) `C_h/C_k ∈ 𝔭(G/C_h)` whenever `p | h/k`;
/// (c) `t_r − r ∈ 𝔭(G/Syl_r(C)^+)` for every prime `r | n` with `Syl_r(C) ≠ Syl_r(G)`.
///
/// For `p = 0` only (c) applies.
pub fn tambara_generator_check(spec: &IdealSpec) -> Result<GeneratorCheckReport> {
    let n = spec.n;
    let levels = divisors(n)?;
    let (unit_multiples, index_orbits) = match spec.p.prime() {
        None => (None, None),
        Some(p) => {
            let pb = BigInt::from(p);
            let base = spec.member(&BurnsideElement::one(1).scale(&pb))?;
            let mut units = true;
            let mut orbits = true;
            for &h in &levels {
                if base {
                    units &= spec.member(&BurnsideElement::one(h).scale(&pb))?;
                }
                for k in divisors(h)? {
                    if (h / k) % p == 0 {
                        orbits &= spec.member(&BurnsideElement::transitive(h, k)?)?;
                    }
                }
            }
            (Some(units), Some(orbits))
        }
    };
    let mut sylow_steps = Vec::new();
    for (r, e) in factorize(n) {
        let syl_g = r.pow(e);
        let syl_c = syl_g.gcd(&spec.c);
        if syl_c == syl_g {
            continue;
        }
        let level = r * syl_c;
        let t_r = BurnsideElement::from_t(level, r)?;
        let element = t_r.sub(&BurnsideElement::one(level).scale(&BigInt::from(r)))?;
        sylow_steps.push(SylowStep {
            prime: r,
            level,
            member: spec.member(&element)?,
        });
    }
    Ok(GeneratorCheckReport {
        spec: *spec,
        unit_multiples,
        index_orbits,
        sylow_steps,
    })
}

/// For `|C_h : C_k| = q` prime, checks the identity that produces `p · C_h/C_h`
/// from `p · C_k/C_k` using only norm and transfer:
///
/// * `q ≠ p`: `N(pK/K) − (p^{q−1} − 1)/q · tr(pK/K) = p H/H`,
/// * `q = p`: `p · N(pK/K) − (p^{p−1} − 1) · tr(pK/K) = p² H/H`.
pub fn simple_generator_identity(k: u64, h: u64, p: u64) -> Result<bool> {
    if k == 0 || !h.is_multiple_of(k) {
        return Err(Error::NotADivisor { d: k, n: h });
    }
    let q = h / k;
    if factorize(q) != vec![(q, 1)] {
        return Err(Error::PrimeRequired(q));
    }
    if factorize(p) != vec![(p, 1)] {
        return Err(Error::PrimeRequired(p));
    }
    let pb = BigInt::from(p);
    let seed = BurnsideElement::one(k).scale(&pb);
    let n = norm(&seed, h)?;
    let t = transfer(&seed, h)?;
    let pq1: BigInt = num_traits::pow(pb.clone(), (q - 1) as usize) - 1;
    let lhs;
    let rhs;
    if q != p {
        let (coef, rem) = pq1.div_rem(&BigInt::from(q));
        debug_assert!(rem.is_zero());
        lhs = n.sub(&t.scale(&coef))?;
        rhs = BurnsideElement::one(h).scale(&pb);
    } else {
        lhs = n.scale(&pb).sub(&t.scale(&pq1))?;
        rhs = BurnsideElement::one(h).scale(&(&pb * &pb));
    }
    Ok(lhs == rhs)
}
