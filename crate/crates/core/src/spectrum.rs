//! The prime spectrum of `A̲_{C_n}` over a finite set of primes, its
//! specialization order, and the ring-theoretic spectrum of the Burnside ring for comparison.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::{kernel_lattice, IdealSpec};
use crate::par::{self, Parallelism};
use crate::subgroups::{divisors, is_prime, o_p, CyclicGroup, PrimeOrZero};

fn same_ambient(a: u64, b: u64) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::AmbientMismatch { left: a, right: b })
    }
}

/// `O^p(C_d)` for prime `p`, `C_d` itself for `p = 0`.
fn residual(d: u64, p: PrimeOrZero) -> u64 {
    match p.prime() {
        Some(q) => o_p(d, q).expect("prime"),
        None => d,
    }
}

/// Symbolic containment `a ⊆ b`.
///
/// `(0,0)`: `b.c | a.c`; `(0,q)`: `o_q(b.c) | o_q(a.c)`; `(p,0)`: never;
/// `(p,q)`: `p = q` and `o_p(b.c) | o_p(a.c)`.
pub fn contains(a: &IdealSpec, b: &IdealSpec) -> Result<bool> {
    same_ambient(a.n, b.n)?;
    Ok(match (a.p.prime(), b.p.prime()) {
        (None, None) => a.c.is_multiple_of(b.c),
        (None, Some(q)) => o_p(a.c, q)? % o_p(b.c, q)? == 0,
        (Some(_), None) => false,
        (Some(p), Some(q)) => p == q && o_p(a.c, p)? % o_p(b.c, p)? == 0,
    })
}

/// Containment decided levelwise on the kernel lattices.
pub fn contains_semantic(a: &IdealSpec, b: &IdealSpec) -> Result<bool> {
    same_ambient(a.n, b.n)?;
    for h in divisors(a.n)? {
        if !kernel_lattice(a, h)?.is_sublattice_of(&kernel_lattice(b, h)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `{0} ∪ {p : p | n} ∪ {smallest prime not dividing n}`.
pub fn default_primes(n: u64) -> Result<Vec<PrimeOrZero>> {
    let g = CyclicGroup::new(n)?;
    let mut out = vec![PrimeOrZero::ZERO];
    for p in g.prime_divisors() {
        out.push(PrimeOrZero::new(p)?);
    }
    let fresh = (2..).find(|&q| is_prime(q) && !n.is_multiple_of(q)).expect("infinitely many primes");
    out.push(PrimeOrZero::new(fresh)?);
    out.sort();
    Ok(out)
}

fn check_primes(primes: &[PrimeOrZero]) -> Result<Vec<PrimeOrZero>> {
    if primes.is_empty() {
        return Err(Error::InvalidPrimeSet("empty".into()));
    }
    let mut sorted = primes.to_vec();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != primes.len() {
        return Err(Error::InvalidPrimeSet("duplicate entries".into()));
    }
    Ok(sorted)
}

/// Parses a comma-separated prime list such as `0,2,3,5`.
pub fn parse_primes(s: &str) -> Result<Vec<PrimeOrZero>> {
    let primes = s
        .split(',')
        .map(|t| {
            let v: u64 = t
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("not a non-negative integer: {t:?}")))?;
            PrimeOrZero::new(v)
        })
        .collect::<Result<Vec<_>>>()?;
    check_primes(&primes)?;
    Ok(primes)
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PosetKind {
    /// Prime ideals `𝔭_{C,p}` of the Tambara functor.
    #[default]
    Tambara,
    /// Prime ideals `ker φ^{C_d}_{G,p}` of the Burnside ring.
    Dress,
}

/// One equality class of primes. `c` is the canonical subgroup (the `p`-free
/// divisor when `p | n`) and `merged` lists every subgroup in the class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumPoint {
    pub c: u64,
    pub p: PrimeOrZero,
    pub merged: Vec<u64>,
}

impl SpectrumPoint {
    fn label(kind: PosetKind, d: u64, p: PrimeOrZero) -> String {
        match kind {
            PosetKind::Tambara => format!("p_{{C_{d},{p}}}"),
            PosetKind::Dress => format!("ker phi^{{C_{d}}}_{p}"),
        }
    }

    fn node(&self, kind: PosetKind) -> String {
        match kind {
            PosetKind::Tambara => format!("pq_{}_{}", self.c, self.p),
            PosetKind::Dress => format!("kp_{}_{}", self.c, self.p),
        }
    }
}

/// Canonical points and their containment matrix, `relation[i][j]` meaning
/// point `i ⊆` point `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumPoset {
    pub n: u64,
    pub kind: PosetKind,
    pub primes: Vec<PrimeOrZero>,
    pub points: Vec<SpectrumPoint>,
    pub relation: Vec<Vec<bool>>,
}

/// Equality classes at `p`, ordered by canonical divisor.
fn classes(g: &CyclicGroup, p: PrimeOrZero) -> Vec<SpectrumPoint> {
    let mut out: Vec<SpectrumPoint> = Vec::new();
    for &d in g.divisors() {
        let c = residual(d, p);
        match out.iter_mut().find(|pt| pt.c == c) {
            Some(pt) => pt.merged.push(d),
            None => out.push(SpectrumPoint {
                c,
                p,
                merged: vec![d],
            }),
        }
    }
    out.sort_by_key(|pt| pt.c);
    out
}

fn assemble(
    n: u64,
    kind: PosetKind,
    primes: &[PrimeOrZero],
    mode: Parallelism,
    rel: impl Fn(&SpectrumPoint, &SpectrumPoint) -> Result<bool> + Sync + Send,
) -> Result<SpectrumPoset> {
    let primes = check_primes(primes)?;
    let g = CyclicGroup::new(n)?;
    let mut points: Vec<SpectrumPoint> = primes.iter().flat_map(|&p| classes(&g, p)).collect();
    points.sort_by_key(|pt| (pt.c, pt.p));
    let relation = par::map(&points, mode, |a| {
        points.iter().map(|b| rel(a, b)).collect::<Result<Vec<bool>>>()
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(SpectrumPoset {
        n,
        kind,
        primes,
        points,
        relation,
    })
}

/// `Spec(A̲_{C_n})` restricted to the given primes, containment filled by [`contains`].
pub fn enumerate(n: u64, primes: &[PrimeOrZero]) -> Result<SpectrumPoset> {
    enumerate_with(n, primes, Parallelism::default())
}

pub fn enumerate_with(n: u64, primes: &[PrimeOrZero], mode: Parallelism) -> Result<SpectrumPoset> {
    assemble(n, PosetKind::Tambara, primes, mode, |a, b| {
        contains(&IdealSpec::new(n, a.c, a.p.get())?, &IdealSpec::new(n, b.c, b.p.get())?)
    })
}

/// `ker φ^{C_d}_{G,p}`, the prime of the Burnside ring `A(C_n)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DressPoint {
    pub n: u64,
    pub d: u64,
    pub p: PrimeOrZero,
}

impl DressPoint {
    pub fn new(n: u64, d: u64, p: u64) -> Result<Self> {
        CyclicGroup::new(n)?.check_subgroup(d)?;
        Ok(DressPoint {
            n,
            d,
            p: PrimeOrZero::new(p)?,
        })
    }
}

/// Containment of Burnside-ring primes: equal classes, plus
/// `ker φ^H_{G,0} ⊂ ker φ^K_{G,q}` when `O^q(H) = O^q(K)`.
pub fn dress_contains(a: &DressPoint, b: &DressPoint) -> Result<bool> {
    same_ambient(a.n, b.n)?;
    Ok(match (a.p.prime(), b.p.prime()) {
        (None, None) => a.d == b.d,
        (None, Some(q)) => o_p(a.d, q)? == o_p(b.d, q)?,
        (Some(_), None) => false,
        (Some(p), Some(q)) => p == q && o_p(a.d, p)? == o_p(b.d, p)?,
    })
}

pub fn dress_spectrum(n: u64, primes: &[PrimeOrZero]) -> Result<SpectrumPoset> {
    assemble(n, PosetKind::Dress, primes, Parallelism::default(), |a, b| {
        dress_contains(
            &DressPoint { n, d: a.c, p: a.p },
            &DressPoint { n, d: b.c, p: b.p },
        )
    })
}

impl SpectrumPoset {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, c: u64, p: PrimeOrZero) -> Option<usize> {
        self.points
            .iter()
            .position(|pt| pt.p == p && pt.merged.contains(&c))
    }

    pub fn label(&self, i: usize) -> String {
        let pt = &self.points[i];
        pt.merged
            .iter()
            .map(|&d| SpectrumPoint::label(self.kind, d, pt.p))
            .collect::<Vec<_>>()
            .join(" = ")
    }

    /// Cover relations `(i, j)` with `i ⊊ j` and nothing strictly between,
    /// sorted by `(i, j)`.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let r = &self.relation;
        let m = self.len();
        let mut out = Vec::new();
        for i in 0..m {
            for j in 0..m {
                if i == j || !r[i][j] || r[j][i] {
                    continue;
                }
                let between = (0..m).any(|k| k != i && k != j && r[i][k] && r[k][j] && !r[k][i] && !r[j][k]);
                if !between {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Pairs of distinct points that contain each other; empty for a
    /// correctly canonicalized poset.
    pub fn mutual_pairs(&self) -> Vec<(usize, usize)> {
        let m = self.len();
        let mut out = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                if self.relation[i][j] && self.relation[j][i] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Reflexive and transitive.
    pub fn is_preorder(&self) -> bool {
        let r = &self.relation;
        let m = self.len();
        (0..m).all(|i| r[i][i])
            && (0..m).all(|i| (0..m).all(|j| !r[i][j] || (0..m).all(|k| !r[j][k] || r[i][k])))
    }
}

/// Number of edges in the longest strict chain.
pub fn krull_dimension(poset: &SpectrumPoset) -> usize {
    fn longest(i: usize, r: &[Vec<bool>], memo: &mut [Option<usize>]) -> usize {
        if let Some(v) = memo[i] {
            return v;
        }
        let mut best = 0;
        for j in 0..r.len() {
            if j != i && r[i][j] && !r[j][i] {
                best = best.max(1 + longest(j, r, memo));
            }
        }
        memo[i] = Some(best);
        best
    }
    let mut memo = vec![None; poset.len()];
    (0..poset.len())
        .map(|i| longest(i, &poset.relation, &mut memo))
        .max()
        .unwrap_or(0)
}

fn primes_string(primes: &[PrimeOrZero]) -> String {
    primes.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
}

/// Graphviz digraph of the Hasse diagram; arrows point from the smaller ideal
/// to the larger one.
pub fn export_dot(poset: &SpectrumPoset) -> String {
    let mut s = String::new();
    let name = match poset.kind {
        PosetKind::Tambara => "spectrum",
        PosetKind::Dress => "dress_spectrum",
    };
    writeln!(s, "digraph {name} {{").unwrap();
    writeln!(s, "  // C_{} over primes {{{}}}", poset.n, primes_string(&poset.primes)).unwrap();
    writeln!(s, "  rankdir=BT;").unwrap();
    writeln!(s, "  node [shape=box];").unwrap();
    for (i, pt) in poset.points.iter().enumerate() {
        writeln!(s, "  {} [label=\"{}\"];", pt.node(poset.kind), poset.label(i)).unwrap();
    }
    for (i, j) in poset.hasse_edges() {
        writeln!(
            s,
            "  {} -> {};",
            poset.points[i].node(poset.kind),
            poset.points[j].node(poset.kind)
        )
        .unwrap();
    }
    s.push_str("}\n");
    s
}

#[derive(Serialize, Deserialize)]
struct PosetJson {
    n: u64,
    #[serde(default, skip_serializing_if = "is_tambara")]
    kind: PosetKind,
    primes: Vec<PrimeOrZero>,
    points: Vec<SpectrumPoint>,
    hasse: Vec<[usize; 2]>,
}

fn is_tambara(k: &PosetKind) -> bool {
    *k == PosetKind::Tambara
}

pub fn export_json(poset: &SpectrumPoset) -> String {
    let doc = PosetJson {
        n: poset.n,
        kind: poset.kind,
        primes: poset.primes.clone(),
        points: poset.points.clone(),
        hasse: poset.hasse_edges().into_iter().map(|(i, j)| [i, j]).collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
    s.push('\n');
    s
}

/// Rebuilds a poset from [`export_json`] output, taking the reflexive
/// transitive closure of the Hasse edges.
pub fn from_json(text: &str) -> Result<SpectrumPoset> {
    let doc: PosetJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let g = CyclicGroup::new(doc.n)?;
    let primes = check_primes(&doc.primes)?;
    for pt in &doc.points {
        g.check_subgroup(pt.c)?;
        for &d in &pt.merged {
            g.check_subgroup(d)?;
        }
        if !primes.contains(&pt.p) {
            return Err(Error::Parse(format!("point prime {} not in the prime set", pt.p)));
        }
    }
    let m = doc.points.len();
    let mut relation = vec![vec![false; m]; m];
    for (i, row) in relation.iter_mut().enumerate() {
        row[i] = true;
    }
    for &[i, j] in &doc.hasse {
        if i >= m || j >= m {
            return Err(Error::Parse(format!("edge [{i},{j}] out of range")));
        }
        relation[i][j] = true;
    }
    for k in 0..m {
        let through = relation[k].clone();
        for row in relation.iter_mut().filter(|row| row[k]) {
            for (x, &y) in row.iter_mut().zip(&through) {
                *x |= y;
            }
        }
    }
    Ok(SpectrumPoset {
        n: doc.n,
        kind: doc.kind,
        primes,
        points: doc.points,
        relation,
    })
}

/// Plain-text listing: one line per point with its upper covers.
pub fn export_table(poset: &SpectrumPoset) -> String {
    let edges = poset.hasse_edges();
    let mut s = String::new();
    writeln!(
        s,
        "C_{} primes={{{}}} points={} krull_dimension={}",
        poset.n,
        primes_string(&poset.primes),
        poset.len(),
        krull_dimension(poset)
    )
    .unwrap();
    for i in 0..poset.len() {
        let ups: Vec<String> = edges
            .iter()
            .filter(|e| e.0 == i)
            .map(|e| e.1.to_string())
            .collect();
        writeln!(s, "{i:>3}  {:<40} -> [{}]", poset.label(i), ups.join(",")).unwrap();
    }
    s
}
