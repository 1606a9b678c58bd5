//! Exact arithmetic for the Burnside Tambara functor `A̲_{C_n}` of a finite
//! cyclic group: marks and ghost coordinates, restriction, transfer and norm,
//! the prime ideals `𝔭_{C,p}` and the containment order on them, with a
//! brute-force `C_n`-set oracle for cross-checking the closed forms.
//!
//! Subgroups of `C_n` are identified with the divisors of `n`.

pub mod burnside;
pub mod error;
pub mod hnf;
pub mod ideal;
pub mod oracle;
pub mod par;
pub mod primality;
pub mod spectrum;
pub mod subgroups;
pub mod tambara;

pub use burnside::{BurnsideElement, GhostVector};
pub use error::{Error, Result};
pub use ideal::{IdealSpec, LevelLattice};
pub use par::Parallelism;
pub use spectrum::{SpectrumPoint, SpectrumPoset};
pub use subgroups::{CyclicGroup, PrimeOrZero};
