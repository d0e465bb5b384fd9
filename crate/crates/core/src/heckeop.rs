//! The formal Hecke operators.
//!
//! In characteristic 2, `T_p` sends `Σ c_n x^n` to `Σ c_(pn) x^n + Σ c_n x^(pn)`.
//! Over the integers the weight-1 operator with character twists the second
//! sum by `(-1/p) = (-1)^((p-1)/2)`. Either way the first sum needs `c_(pn)`,
//! so an input known below `N` gives an output known below `⌊(N-1)/p⌋ + 1`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf2series::{parse_fields, Gf2Series};
use crate::require_odd_prime;

/// Truncation order of `T_p f` when `f` is known below `trunc`.
pub fn tp_trunc(trunc: usize, p: u64) -> usize {
    if trunc == 0 {
        0
    } else {
        (trunc - 1) / p as usize + 1
    }
}

/// Characteristic-2 `T_p`.
pub fn apply_tp(f: &Gf2Series, p: u64) -> Result<Gf2Series> {
    require_odd_prime(p)?;
    let p = p as usize;
    let trunc = tp_trunc(f.trunc(), p as u64);
    let mut out = Gf2Series::zero(trunc);
    for n in f.exponents() {
        if n % p == 0 {
            out.flip(n / p);
        }
        if n * p < trunc {
            out.flip(n * p);
        }
    }
    Ok(out)
}

/// A truncated power series with integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntSeries {
    coeffs: Vec<i64>,
}

impl IntSeries {
    pub fn zero(trunc: usize) -> Self {
        IntSeries {
            coeffs: vec![0; trunc],
        }
    }

    pub fn from_coeffs(coeffs: Vec<i64>) -> Self {
        IntSeries { coeffs }
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Option<i64> {
        self.coeffs.get(n).copied()
    }

    pub fn add_to(&mut self, n: usize, delta: i64) {
        self.coeffs[n] += delta;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    pub fn truncated(&self, trunc: usize) -> Result<Self> {
        if trunc > self.trunc() {
            return Err(Error::Precision {
                requested: trunc,
                available: self.trunc(),
            });
        }
        Ok(IntSeries {
            coeffs: self.coeffs[..trunc].to_vec(),
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        IntSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Exact equality below `order`; both series must be known that far.
    pub fn eq_at(&self, other: &Self, order: usize) -> Result<bool> {
        let available = self.trunc().min(other.trunc());
        if order > available {
            return Err(Error::Precision {
                requested: order,
                available,
            });
        }
        Ok(self.coeffs[..order] == other.coeffs[..order])
    }

    pub fn reduce_mod2(&self) -> Gf2Series {
        Gf2Series::from_exponents(
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| *c & 1 == 1)
                .map(|(n, _)| n),
            self.trunc(),
        )
    }

    /// Divides every coefficient by 2; fails if one of them is odd.
    pub fn halve(&self) -> Result<Self> {
        if let Some(n) = self.coeffs.iter().position(|c| c & 1 == 1) {
            return Err(Error::InvalidArgument(format!(
                "coefficient of x^{n} is odd, cannot halve"
            )));
        }
        Ok(IntSeries {
            coeffs: self.coeffs.iter().map(|c| c / 2).collect(),
        })
    }
}

impl fmt::Display for IntSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "trunc={}; coeffs=", self.trunc())?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for IntSeries {
    type Err = Error;

    /// `trunc=<N>; coeffs=<c_0,...,c_(N-1)>`
    fn from_str(s: &str) -> Result<Self> {
        let fields = parse_fields(s, &["trunc", "coeffs"])?;
        let trunc = fields[0]
            .parse::<usize>()
            .map_err(|e| Error::Parse(format!("trunc: {e}")))?;
        let coeffs: Vec<i64> = if fields[1].is_empty() {
            Vec::new()
        } else {
            fields[1]
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<i64>()
                        .map_err(|e| Error::Parse(format!("`{t}`: {e}")))
                })
                .collect::<Result<_>>()?
        };
        if coeffs.len() != trunc {
            return Err(Error::Parse(format!(
                "expected {trunc} coefficients, found {}",
                coeffs.len()
            )));
        }
        Ok(IntSeries { coeffs })
    }
}

/// `(-1/p)` for an odd prime `p`.
pub fn legendre_minus_one(p: u64) -> i64 {
    if p % 4 == 1 {
        1
    } else {
        -1
    }
}

/// Characteristic-0, weight-1 `T_p` with the character `n ↦ (-1/n)`.
pub fn apply_tp_int(f: &IntSeries, p: u64) -> Result<IntSeries> {
    require_odd_prime(p)?;
    let sign = legendre_minus_one(p);
    let p = p as usize;
    let trunc = tp_trunc(f.trunc(), p as u64);
    let mut out = IntSeries::zero(trunc);
    for n in 0..trunc {
        out.coeffs[n] = f.coeffs[p * n];
        if n % p == 0 {
            out.coeffs[n] += sign * f.coeffs[n / p];
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_non_primes() {
        let f = Gf2Series::zero(10);
        assert_eq!(apply_tp(&f, 9), Err(Error::NotOddPrime(9)));
        assert_eq!(apply_tp(&f, 2), Err(Error::NotOddPrime(2)));
        assert!(apply_tp_int(&IntSeries::zero(10), 15).is_err());
    }

    #[test]
    fn zero_maps_to_zero() {
        let out = apply_tp(&Gf2Series::zero(100), 7).unwrap();
        assert!(out.is_zero());
        assert_eq!(out.trunc(), 15);
        assert!(apply_tp_int(&IntSeries::zero(100), 5).unwrap().is_zero());
    }

    #[test]
    fn output_truncation() {
        assert_eq!(tp_trunc(1, 7), 1);
        assert_eq!(tp_trunc(7, 7), 1);
        assert_eq!(tp_trunc(8, 7), 2);
        assert_eq!(tp_trunc(0, 3), 0);
    }

    #[test]
    fn small_example_by_hand() {
        // f = x + x^3 + x^9 at trunc 10; T_3 f = c_0 + c_3 x + c_6 x^2 + c_9 x^3 + (x^3)
        let f = Gf2Series::from_exponents([1, 3, 9], 10);
        let t = apply_tp(&f, 3).unwrap();
        assert_eq!(t.trunc(), 4);
        assert_eq!(t.exponents().collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn int_sign_twist() {
        let f = IntSeries::from_coeffs(vec![0, 1, 0, 2, 0, 0, 0, 0, 0, 5]);
        let t3 = apply_tp_int(&f, 3).unwrap();
        // coefficient of x^3: c_9 + (-1) c_1 = 5 - 1
        assert_eq!(t3.coeffs(), &[0, 2, 0, 4]);
        assert_eq!(t3.reduce_mod2(), apply_tp(&f.reduce_mod2(), 3).unwrap());
    }

    #[test]
    fn int_dump_round_trip() {
        let f = IntSeries::from_coeffs(vec![0, 2, -1, 4]);
        assert_eq!(f.to_string(), "trunc=4; coeffs=0,2,-1,4");
        assert_eq!(f.to_string().parse::<IntSeries>().unwrap(), f);
        assert!("trunc=3; coeffs=1,2".parse::<IntSeries>().is_err());
        assert!(f.halve().is_err());
        assert_eq!(IntSeries::from_coeffs(vec![2, 4]).halve().unwrap().coeffs(), &[1, 2]);
    }

    fn series(trunc: usize) -> impl Strategy<Value = Gf2Series> {
        prop::collection::vec(any::<bool>(), trunc).prop_map(move |bits| {
            Gf2Series::from_exponents(
                bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i),
                trunc,
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn hecke_operators_commute(f in series(6400)) {
            for (p, q) in [(5u64, 7u64), (7, 13), (5, 13)] {
                let pq = apply_tp(&apply_tp(&f, q).unwrap(), p).unwrap();
                let qp = apply_tp(&apply_tp(&f, p).unwrap(), q).unwrap();
                prop_assert!(pq.agreement(&qp).equal);
            }
        }

        #[test]
        fn linear_over_xor(a in series(900), b in series(900), p in prop::sample::select(vec![3u64, 5, 7, 11, 13])) {
            let lhs = apply_tp(&(&a + &b), p).unwrap();
            let rhs = &apply_tp(&a, p).unwrap() + &apply_tp(&b, p).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn integer_operator_reduces_mod_two(
            coeffs in prop::collection::vec(0i64..5, 400),
            p in prop::sample::select(vec![3u64, 5, 7, 13, 19]),
        ) {
            let f = IntSeries::from_coeffs(coeffs);
            let lhs = apply_tp_int(&f, p).unwrap().reduce_mod2();
            let rhs = apply_tp(&f.reduce_mod2(), p).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
