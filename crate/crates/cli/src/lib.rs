//! Command-line front end for `tambara-core`.
//!
//! Exit codes: 0 on success, 1 on domain errors (a JSON object with `error`
//! and `message` is written to stderr), 2 on usage errors.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use tambara_core::ideal::level_generators;
use tambara_core::oracle::{cross_check, OracleCheck, DEFAULT_MAP_BUDGET};
use tambara_core::primality::{
    tambara_generator_check, IdealFamily, IdealIntersection, ProbeConfig, ProbeUniverse,
};
use tambara_core::spectrum::{
    contains, contains_semantic, default_primes, dress_spectrum, enumerate_with, export_dot,
    export_json, export_table, parse_primes, SpectrumPoset,
};
use tambara_core::subgroups::divisors;
use tambara_core::tambara::{norm, restrict, transfer};
use tambara_core::{CyclicGroup, Error, GhostVector, IdealSpec, Parallelism, PrimeOrZero};

mod element;

pub use element::parse_element;

#[derive(Parser, Debug)]
#[command(name = "tambara", version, about = "Burnside Tambara functor of a cyclic group C_n")]
struct Cli {
    /// Suppress progress messages on stderr.
    #[arg(long, global = true)]
    quiet: bool,
    /// Run everything on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Format {
    Dot,
    Json,
    Table,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Op {
    Res,
    Tr,
    Norm,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Check {
    Norms,
    Transfers,
    Marks,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate the prime spectrum and export its containment order.
    Spectrum {
        #[arg(short)]
        n: u64,
        /// Comma-separated primes (0 allowed); defaults to 0, the primes dividing n,
        /// and the smallest prime not dividing n.
        #[arg(long)]
        primes: Option<String>,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
    },
    /// Decide whether ideal A is contained in ideal B (specs as c=<d>,p=<p>).
    Contains {
        #[arg(short)]
        n: u64,
        a: String,
        b: String,
        /// Decide by comparing kernel lattices level by level.
        #[arg(long)]
        semantic: bool,
    },
    /// Test membership of an element in an ideal.
    Member {
        #[arg(short)]
        n: u64,
        #[arg(long)]
        spec: String,
        /// JSON or shorthand such as `2*t3 - 1@6`.
        #[arg(long, allow_hyphen_values = true)]
        element: String,
    },
    /// Apply restriction, transfer or norm.
    Map {
        #[arg(short)]
        n: u64,
        #[arg(long, value_enum)]
        op: Op,
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
    },
    /// Print the ghost (mark) vector of an element.
    Ghost {
        #[arg(short)]
        n: Option<u64>,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
    },
    /// Recover an element from its ghost vector.
    Unghost {
        #[arg(short)]
        n: Option<u64>,
        /// JSON {"level":h,"marks":{"i":v,..}}.
        #[arg(long)]
        ghost: String,
    },
    /// Ring-theoretic generators at each level and the Tambara generator checks.
    Gens {
        #[arg(short)]
        n: u64,
        #[arg(long)]
        spec: String,
        /// Only this level.
        #[arg(long)]
        level: Option<u64>,
    },
    /// Search a coefficient box for violations of the primality criterion.
    Probe {
        #[arg(short)]
        n: u64,
        #[arg(long, default_value_t = 2)]
        bound: i64,
        #[arg(long, default_value_t = 2)]
        support: usize,
        /// Comma-separated levels; defaults to every divisor of n.
        #[arg(long)]
        levels: Option<String>,
        /// Probe the canonical points over these primes (default as for `spectrum`).
        #[arg(long)]
        primes: Option<String>,
        /// Probe the levelwise intersection of these specs instead (repeatable).
        #[arg(long = "intersect")]
        intersect: Vec<String>,
    },
    /// Cross-check closed forms against brute-force G-set enumeration.
    Oracle {
        #[arg(short)]
        n: u64,
        #[arg(long, value_enum)]
        check: Check,
        /// Largest G-set (number of points) to enumerate.
        #[arg(long, default_value_t = 4)]
        max_size: u64,
        #[arg(long, default_value_t = DEFAULT_MAP_BUDGET)]
        budget: u128,
    },
    /// Ring-theoretic prime spectrum of the Burnside ring over the same primes.
    Dress {
        #[arg(short)]
        n: u64,
        #[arg(long)]
        primes: Option<String>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
}

#[derive(Debug)]
enum Failure {
    Domain(Error),
    Check { kind: &'static str, message: String },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

struct Ctx<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    quiet: bool,
    mode: Parallelism,
}

impl Ctx<'_> {
    fn emit(&mut self, text: &str) {
        let _ = self.out.write_all(text.as_bytes());
        if !text.ends_with('\n') {
            let _ = self.out.write_all(b"\n");
        }
    }

    fn progress(&mut self, text: &str) {
        if !self.quiet {
            let _ = writeln!(self.err, "{text}");
        }
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    2
                }
            };
        }
    };
    let mut ctx = Ctx {
        out,
        err,
        quiet: cli.quiet,
        mode: if cli.sequential {
            Parallelism::Sequential
        } else {
            Parallelism::Parallel
        },
    };
    match dispatch(cli.command, &mut ctx) {
        Ok(()) => 0,
        Err(f) => {
            let (kind, message) = match f {
                Failure::Domain(e) => (e.kind(), e.to_string()),
                Failure::Check { kind, message } => (kind, message),
            };
            let _ = writeln!(ctx.err, "{}", json!({ "error": kind, "message": message }));
            1
        }
    }
}

fn primes_or_default(n: u64, primes: Option<&str>) -> Result<Vec<PrimeOrZero>, Error> {
    match primes {
        Some(s) => parse_primes(s),
        None => default_primes(n),
    }
}

fn render(poset: &SpectrumPoset, format: Format) -> String {
    match format {
        Format::Dot => export_dot(poset),
        Format::Json => export_json(poset),
        Format::Table => export_table(poset),
    }
}

fn check_level(n: Option<u64>, h: u64) -> Result<(), Error> {
    match n {
        Some(n) => CyclicGroup::new(n)?.check_subgroup(h),
        None => Ok(()),
    }
}

macro_rules! to_json {
    ($v:expr) => {
        serde_json::to_string($v).expect("serializable")
    };
}

fn dispatch(cmd: Command, ctx: &mut Ctx) -> Outcome {
    match cmd {
        Command::Spectrum { n, primes, format } => {
            let primes = primes_or_default(n, primes.as_deref())?;
            let poset = enumerate_with(n, &primes, ctx.mode)?;
            ctx.emit(&render(&poset, format));
        }
        Command::Dress { n, primes, format } => {
            let primes = primes_or_default(n, primes.as_deref())?;
            ctx.emit(&render(&dress_spectrum(n, &primes)?, format));
        }
        Command::Contains { n, a, b, semantic } => {
            let a = IdealSpec::parse(n, &a)?;
            let b = IdealSpec::parse(n, &b)?;
            let answer = if semantic {
                contains_semantic(&a, &b)?
            } else {
                contains(&a, &b)?
            };
            ctx.emit(&answer.to_string());
        }
        Command::Member { n, spec, element } => {
            let spec = IdealSpec::parse(n, &spec)?;
            let x = parse_element(&element, None)?;
            ctx.emit(&spec.member(&x)?.to_string());
        }
        Command::Map {
            n,
            op,
            from,
            to,
            element,
        } => {
            check_level(Some(n), from)?;
            check_level(Some(n), to)?;
            let x = parse_element(&element, Some(from))?;
            if x.level() != from {
                return Err(Error::LevelMismatch {
                    left: from,
                    right: x.level(),
                }
                .into());
            }
            let y = match op {
                Op::Res => restrict(&x, to)?,
                Op::Tr => transfer(&x, to)?,
                Op::Norm => norm(&x, to)?,
            };
            ctx.emit(&to_json!(&y));
        }
        Command::Ghost { n, element } => {
            let x = parse_element(&element, None)?;
            check_level(n, x.level())?;
            ctx.emit(&to_json!(&x.ghost()));
        }
        Command::Unghost { n, ghost } => {
            let v: GhostVector =
                serde_json::from_str(&ghost).map_err(|e| Error::Parse(e.to_string()))?;
            check_level(n, v.level())?;
            ctx.emit(&to_json!(&v.unghost()?));
        }
        Command::Gens { n, spec, level } => {
            let spec = IdealSpec::parse(n, &spec)?;
            let levels = match level {
                Some(h) => {
                    check_level(Some(n), h)?;
                    vec![h]
                }
                None => divisors(n)?,
            };
            let mut per_level = serde_json::Map::new();
            for h in levels {
                let gens = level_generators(&spec, h)?;
                per_level.insert(h.to_string(), serde_json::to_value(&gens).expect("serializable"));
            }
            let report = tambara_generator_check(&spec)?;
            let sylow: Vec<_> = report
                .sylow_steps
                .iter()
                .map(|s| json!({ "prime": s.prime, "level": s.level, "member": s.member }))
                .collect();
            let doc = json!({
                "spec": spec.to_string(),
                "n": n,
                "generators": per_level,
                "tambara_check": {
                    "passed": report.passed(),
                    "unit_multiples": report.unit_multiples,
                    "index_orbits": report.index_orbits,
                    "sylow": sylow,
                },
            });
            ctx.emit(&to_json!(&doc));
        }
        Command::Probe {
            n,
            bound,
            support,
            levels,
            primes,
            intersect,
        } => probe(ctx, n, bound, support, levels, primes, intersect)?,
        Command::Oracle {
            n,
            check,
            max_size,
            budget,
        } => {
            let (name, which) = match check {
                Check::Norms => ("norms", OracleCheck::Norms),
                Check::Transfers => ("transfers", OracleCheck::Transfers),
                Check::Marks => ("marks", OracleCheck::Marks),
            };
            ctx.progress(&format!("cross-checking {name} over C_{n}, G-sets with at most {max_size} points"));
            let report = cross_check(which, n, max_size, budget, ctx.mode)?;
            ctx.emit(&format!("{name} C_{n}: {report}"));
            if let Some(m) = report.mismatches.first() {
                return Err(Failure::Check {
                    kind: "oracle_mismatch",
                    message: format!(
                        "{} at level {} -> {}: closed form {}, oracle {}",
                        m.input,
                        m.input.level(),
                        m.target,
                        m.expected,
                        m.actual
                    ),
                });
            }
        }
    }
    Ok(())
}

fn probe(
    ctx: &mut Ctx,
    n: u64,
    bound: i64,
    support: usize,
    levels: Option<String>,
    primes: Option<String>,
    intersect: Vec<String>,
) -> Outcome {
    if bound < 0 {
        return Err(Error::Parse(format!("bound must be non-negative, got {bound}")).into());
    }
    let levels = match levels {
        Some(s) => s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("not a level: {t:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?,
        None => divisors(n)?,
    };
    let cfg = ProbeConfig {
        bound,
        max_support: support,
        levels,
        parallelism: ctx.mode,
    };
    let families: Vec<Box<dyn IdealFamily>> = if intersect.is_empty() {
        let primes = primes_or_default(n, primes.as_deref())?;
        enumerate_with(n, &primes, ctx.mode)?
            .points
            .iter()
            .map(|pt| IdealSpec::new(n, pt.c, pt.p.get()).map(|s| Box::new(s) as Box<dyn IdealFamily>))
            .collect::<Result<_, _>>()?
    } else {
        let specs = intersect
            .iter()
            .map(|s| IdealSpec::parse(n, s))
            .collect::<Result<Vec<_>, _>>()?;
        vec![Box::new(IdealIntersection::new(specs)?)]
    };
    let universe = ProbeUniverse::new(n, cfg)?;
    ctx.progress(&format!(
        "probing {} famil{} over {} elements",
        families.len(),
        if families.len() == 1 { "y" } else { "ies" },
        universe.elements().len()
    ));
    for fam in &families {
        let report = universe.probe(fam.as_ref())?;
        ctx.emit(&report.to_string());
    }
    Ok(())
}
