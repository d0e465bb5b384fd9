//! Exact computations with the mod-2 Hecke operators `T_p` acting on the
//! space spanned by the powers `D^k`, `(k, 6) = 1`, where
//! `D = Σ x^(n²)` over `n > 0` prime to 6.
//!
//! The crate is layered bottom-up:
//!
//! * [`gf2series`]: bit-packed truncated power series over GF(2).
//! * [`qexpansions`]: the series `F, G, H, D, E, r` and the identities among them.
//! * [`heckeop`]: the formal operators `T_p` in characteristic 2 and 0.
//! * [`expalgebra`]: exponent sets, the `[a, b]` monomial coding and decomposition
//!   of series into sums of powers of `D` or `F`.
//! * [`recursions`]: fast recursions for `T_7`, `T_5` and the level-1 `T_3`.
//! * [`gaussclasses`]: Gauss-classes of ideals of `Z[i]`, theta series and the
//!   dihedral subspaces.
//! * [`linalg`]: dense bit-packed linear algebra over GF(2).
//! * [`action`]: cached action of Hecke operators on exponent sets.
//! * [`heckealgebra`]: adapted bases, power-series expansions of `T_p`, `λ` and `ε`.
//! * [`verify`]: the check suites behind `hecke2 verify`.

pub mod action;
pub mod error;
pub mod expalgebra;
pub mod gaussclasses;
pub mod gf2series;
pub mod heckealgebra;
pub mod heckeop;
pub mod linalg;
pub mod qexpansions;
pub mod recursions;
pub mod verify;

pub use error::{Error, Result};
pub use expalgebra::{ExponentSet, Level, MonomialPair};
pub use gf2series::Gf2Series;
pub use heckeop::IntSeries;

/// Trial-division primality, adequate for the small primes used here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn require_odd_prime(p: u64) -> Result<()> {
    if p % 2 == 1 && is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotOddPrime(p))
    }
}
