//! Brute-force ground truth: explicit finite `C_h`-sets.
//!
//! A `C_h`-set is a finite set `{0, .., size-1}` together with the permutation
//! by which a fixed generator of `C_h` acts. Everything here is computed by
//! direct enumeration and never consults the closed forms in `burnside` or
//! `tambara`, except `decompose`, which only reads off orbit lengths.
//! [`cross_check`] runs the comparison against those closed forms.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::burnside::BurnsideElement;
use crate::error::{Error, Result};
use crate::par::{self, Parallelism};
use crate::subgroups::divisors;
use crate::tambara::{norm, transfer};

/// Default cap on the number of maps `map_set` will enumerate.
pub const DEFAULT_MAP_BUDGET: u128 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcreteGSet {
    level: u64,
    action: Vec<usize>,
}

impl ConcreteGSet {
    /// Checks that `action` is a permutation whose order divides `level`.
    pub fn new(level: u64, action: Vec<usize>) -> Result<Self> {
        if level == 0 {
            return Err(Error::ZeroOrder);
        }
        let invalid = |reason: String| Error::InvalidAction { level, reason };
        let mut seen = vec![false; action.len()];
        for &y in &action {
            if y >= action.len() || seen[y] {
                return Err(invalid("not a permutation".into()));
            }
            seen[y] = true;
        }
        let set = ConcreteGSet { level, action };
        for x in 0..set.size() {
            if set.power(x, level) != x {
                return Err(invalid(format!("generator^{level} moves point {x}")));
            }
        }
        Ok(set)
    }

    /// A single point with trivial action.
    pub fn point(level: u64) -> Self {
        ConcreteGSet {
            level,
            action: vec![0],
        }
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn size(&self) -> usize {
        self.action.len()
    }

    pub fn action(&self) -> &[usize] {
        &self.action
    }

    fn power(&self, mut x: usize, e: u64) -> usize {
        for _ in 0..e {
            x = self.action[x];
        }
        x
    }

    /// Points fixed by `C_i`, i.e. by the generator raised to `h/i`.
    pub fn fixed_points(&self, i: u64) -> Result<usize> {
        if i == 0 || !self.level.is_multiple_of(i) {
            return Err(Error::NotADivisor { d: i, n: self.level });
        }
        let e = self.level / i;
        Ok((0..self.size()).filter(|&x| self.power(x, e) == x).count())
    }

    /// Orbit lengths, one entry per orbit, in order of first point.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        let mut seen = vec![false; self.size()];
        let mut out = Vec::new();
        for start in 0..self.size() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.action[x];
                len += 1;
            }
            out.push(len);
        }
        out
    }
}

/// Disjoint union of `m_k` copies of the coset set `C_h/C_k` (an `h/k`-cycle each).
pub fn realize(x: &BurnsideElement) -> Result<ConcreteGSet> {
    let h = x.level();
    let mut action = Vec::new();
    for (&k, m) in x.coeffs() {
        if m.is_negative() {
            return Err(Error::NegativeCoefficient {
                level: h,
                stabilizer: k,
                coeff: m.to_string(),
            });
        }
        let copies = m
            .to_usize()
            .ok_or_else(|| Error::Parse(format!("coefficient {m} too large to realise")))?;
        let len = (h / k) as usize;
        for _ in 0..copies {
            let start = action.len();
            action.extend((0..len).map(|i| start + (i + 1) % len));
        }
    }
    Ok(ConcreteGSet { level: h, action })
}

/// Orbit decomposition: an orbit of length `l` is a copy of `C_h/C_{h/l}`.
pub fn decompose(s: &ConcreteGSet) -> BurnsideElement {
    let h = s.level();
    BurnsideElement::from_coeffs(
        h,
        s.orbit_lengths()
            .into_iter()
            .map(|l| (h / l as u64, BigInt::from(1))),
    )
    .expect("orbit lengths divide the group order")
}

/// Induction `C_h ×_{C_k} S`.
///
/// Points are pairs `(r, x)` with `r` a coset representative `g^r`,
/// `0 <= r < h/k`; the generator sends `(r, x)` to `(r+1, x)`, wrapping
/// `(h/k - 1, x)` to `(0, σx)` because `g^{h/k}` generates `C_k`.
pub fn induce(s: &ConcreteGSet, h: u64) -> Result<ConcreteGSet> {
    let k = s.level();
    if !h.is_multiple_of(k) {
        return Err(Error::NotADivisor { d: k, n: h });
    }
    let d = (h / k) as usize;
    let n = s.size();
    let mut action = vec![0; d * n];
    for r in 0..d {
        for x in 0..n {
            action[r * n + x] = if r + 1 < d { (r + 1) * n + x } else { s.action[x] };
        }
    }
    Ok(ConcreteGSet { level: h, action })
}

/// Cartesian product with the diagonal action.
pub fn product(s: &ConcreteGSet, t: &ConcreteGSet) -> Result<ConcreteGSet> {
    if s.level() != t.level() {
        return Err(Error::LevelMismatch {
            left: s.level(),
            right: t.level(),
        });
    }
    let m = t.size();
    let mut action = Vec::with_capacity(s.size() * m);
    for a in 0..s.size() {
        for b in 0..m {
            action.push(s.action[a] * m + t.action[b]);
        }
    }
    Ok(ConcreteGSet {
        level: s.level(),
        action,
    })
}

/// The `C_h`-set `Map_{C_k}(C_h, S)` of `C_k`-equivariant maps `C_h -> S`.
///
/// An equivariant `f` is determined by its values `(x_0, .., x_{d-1})` on the
/// coset representatives `g^0, .., g^{d-1}`, `d = h/k`, since
/// `f(g^{r + d s}) = σ^s f(g^r)`. The generator acts by `(g·f)(y) = f(y g)`,
/// which shifts the tuple: `(x_0, .., x_{d-1}) -> (x_1, .., x_{d-1}, σ x_0)`.
/// Tuples are indexed in base `|S|` with `x_0` least significant.
pub fn map_set(
    s: &ConcreteGSet,
    h: u64,
    budget: u128,
    mode: Parallelism,
) -> Result<ConcreteGSet> {
    let k = s.level();
    if !h.is_multiple_of(k) {
        return Err(Error::NotADivisor { d: k, n: h });
    }
    let d = (h / k) as u32;
    let base = s.size() as u128;
    let needed = base.checked_pow(d).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let total = needed as usize;
    let base = s.size();
    let top = if base == 0 { 0 } else { base.pow(d - 1) };
    let action = par::map_range(total, mode, |idx| {
        let x0 = idx % base;
        idx / base + s.action[x0] * top
    });
    Ok(ConcreteGSet { level: h, action })
}

/// Every `C_h`-set with at most `max_size` points, as elements with
/// non-negative coefficients, in a deterministic order.
pub fn small_gsets(h: u64, max_size: u64) -> Result<Vec<BurnsideElement>> {
    let ds = divisors(h)?;
    let mut out = Vec::new();
    let mut stack = vec![(0usize, 0u64, Vec::<(u64, u64)>::new())];
    while let Some((idx, size, terms)) = stack.pop() {
        if idx == ds.len() {
            out.push(BurnsideElement::from_coeffs(h, terms.iter().copied())?);
            continue;
        }
        let orbit = h / ds[idx];
        let mut m = 0;
        while size + m * orbit <= max_size {
            let mut t = terms.clone();
            t.push((ds[idx], m));
            stack.push((idx + 1, size + m * orbit, t));
            m += 1;
        }
    }
    out.reverse();
    Ok(out)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum OracleCheck {
    /// `decompose(map_set(realize(X)))` against `norm`.
    Norms,
    /// `decompose(induce(realize(X)))` against `transfer`.
    Transfers,
    /// Fixed-point counts against `mark`.
    Marks,
}

impl std::str::FromStr for OracleCheck {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "norms" => Ok(OracleCheck::Norms),
            "transfers" => Ok(OracleCheck::Transfers),
            "marks" => Ok(OracleCheck::Marks),
            other => Err(Error::Parse(format!("unknown oracle check {other:?}"))),
        }
    }
}

/// One disagreement between a closed form and the brute-force oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub input: BurnsideElement,
    pub target: u64,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OracleReport {
    pub checked: usize,
    /// Cases whose enumeration would exceed the map budget.
    pub skipped: usize,
    pub mismatches: Vec<Mismatch>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "checked {}, skipped {} over budget, {} mismatches",
            self.checked,
            self.skipped,
            self.mismatches.len()
        )
    }
}

/// Runs `check` for every `k | h | n` and every `C_k`-set (`C_h`-set for marks)
/// with at most `max_size` points.
pub fn cross_check(
    check: OracleCheck,
    n: u64,
    max_size: u64,
    budget: u128,
    mode: Parallelism,
) -> Result<OracleReport> {
    let mut cases = Vec::new();
    for h in divisors(n)? {
        match check {
            OracleCheck::Marks => cases.extend(small_gsets(h, max_size)?.into_iter().map(|x| (x, h))),
            _ => {
                for k in divisors(h)? {
                    cases.extend(small_gsets(k, max_size)?.into_iter().map(|x| (x, h)));
                }
            }
        }
    }
    let outcomes = par::map(&cases, mode, |(x, h)| -> Result<Option<Option<Mismatch>>> {
        let s = realize(x)?;
        let (expected, actual) = match check {
            OracleCheck::Norms => match map_set(&s, *h, budget, Parallelism::Sequential) {
                Ok(m) => (norm(x, *h)?.to_string(), decompose(&m).to_string()),
                Err(Error::BudgetExceeded { .. }) => return Ok(None),
                Err(e) => return Err(e),
            },
            OracleCheck::Transfers => (transfer(x, *h)?.to_string(), decompose(&induce(&s, *h)?).to_string()),
            OracleCheck::Marks => {
                let marks: Vec<String> = divisors(*h)?
                    .into_iter()
                    .map(|i| x.mark(i).map(|v| v.to_string()))
                    .collect::<Result<_>>()?;
                let fixed: Vec<String> = divisors(*h)?
                    .into_iter()
                    .map(|i| s.fixed_points(i).map(|v| v.to_string()))
                    .collect::<Result<_>>()?;
                (marks.join(","), fixed.join(","))
            }
        };
        Ok(Some((expected != actual).then(|| Mismatch {
            input: x.clone(),
            target: *h,
            expected,
            actual,
        })))
    });
    let mut report = OracleReport::default();
    for outcome in outcomes {
        match outcome? {
            None => report.skipped += 1,
            Some(m) => {
                report.checked += 1;
                report.mismatches.extend(m);
            }
        }
    }
    Ok(report)
}
