//! Symbolic `T_7` on `W5`, `T_5` from `W5` to `W1` and the level-1 `T_3`,
//! computed by linear recursions with shifts instead of series arithmetic.
//!
//! Each recursion has the shape
//! `A[i + period] = Σ shift_s(A[i + offset])`, where `shift_s` adds `s` to
//! every exponent (multiplication by a power of the base). The tables are
//! filled bottom-up, so arbitrarily large indices never recurse deeply.

use crate::error::{Error, Result};
use crate::expalgebra::{sym_diff, ExponentSet, Level};
use crate::gf2series::Gf2Series;
use crate::qexpansions::{build, SeriesName};

struct ShiftRecurrence {
    period: usize,
    terms: &'static [(usize, usize)],
    values: Vec<Vec<usize>>,
}

impl ShiftRecurrence {
    fn new(period: usize, terms: &'static [(usize, usize)], base: &[&[usize]]) -> Self {
        assert_eq!(base.len(), period);
        ShiftRecurrence {
            period,
            terms,
            values: base.iter().map(|v| v.to_vec()).collect(),
        }
    }

    fn get(&mut self, i: usize) -> &[usize] {
        while self.values.len() <= i {
            let j = self.values.len() - self.period;
            let mut acc: Vec<usize> = Vec::new();
            for &(offset, shift) in self.terms {
                let shifted: Vec<usize> = self.values[j + offset].iter().map(|k| k + shift).collect();
                acc = sym_diff(&acc, &shifted);
            }
            self.values.push(acc);
        }
        &self.values[i]
    }
}

/// Initial values `A_1, A_3, ..., A_15` with `T_7(D^(3n+2)) = D² A_n(D³)`.
const T7_BASE: [&[usize]; 8] = [&[], &[1], &[], &[5], &[3], &[1, 9], &[7], &[5, 13]];
/// `A_(n+16) = t^16 A_n + t^4 A_(n+4) + t^2 A_(n+2)`, indexed by `(n-1)/2`.
const T7_TERMS: &[(usize, usize)] = &[(0, 16), (2, 4), (1, 2)];

/// `T_5(D^(6m+5))` for `m = 0..8`, obtained from the series operator and
/// checked against it in the tests.
pub const T5_BASE: [&[usize]; 8] = [
    &[1],
    &[7],
    &[13],
    &[19],
    &[25],
    &[7, 31],
    &[13, 37],
    &[43],
];
/// `B_(m+8) = D^48 B_m + D^6 B_(m+3) + D^18 B_(m+1)`.
const T5_TERMS: &[(usize, usize)] = &[(0, 48), (3, 6), (1, 18)];

/// `T_3` on `F, F^3, F^5, F^7`.
const T3_BASE: [&[usize]; 4] = [&[], &[1], &[], &[5]];
/// `A_(n+8) = F^8 A_n + F^2 A_(n+2)`, indexed by `(n-1)/2`.
const T3_TERMS: &[(usize, usize)] = &[(0, 8), (1, 2)];

/// Memoized `T_7` on the monomials `D^n`, `n ≡ 5 (mod 6)`.
pub struct T7Recursion(ShiftRecurrence);

impl Default for T7Recursion {
    fn default() -> Self {
        Self::new()
    }
}

impl T7Recursion {
    pub fn new() -> Self {
        T7Recursion(ShiftRecurrence::new(8, T7_TERMS, &T7_BASE))
    }

    /// The polynomial `A_n` in `t` (odd `n`), as a level-1 exponent set.
    pub fn a_poly(&mut self, n: usize) -> Result<ExponentSet> {
        if n.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!("A_n needs odd n, got {n}")));
        }
        Ok(ExponentSet::from_sorted(Level::One, self.0.get((n - 1) / 2).to_vec()))
    }

    pub fn image(&mut self, n: usize) -> Result<ExponentSet> {
        if n % 6 != 5 {
            return Err(Error::InvalidArgument(format!("T_7 recursion needs n ≡ 5 mod 6, got {n}")));
        }
        let m = (n - 2) / 3;
        let exps = self.0.get((m - 1) / 2).iter().map(|j| 2 + 3 * j).collect();
        Ok(ExponentSet::from_sorted(Level::Three, exps))
    }
}

/// Memoized `T_5 : W5 → W1` on the monomials `D^n`, `n ≡ 5 (mod 6)`.
pub struct T5Recursion(ShiftRecurrence);

impl Default for T5Recursion {
    fn default() -> Self {
        Self::new()
    }
}

impl T5Recursion {
    pub fn new() -> Self {
        T5Recursion(ShiftRecurrence::new(8, T5_TERMS, &T5_BASE))
    }

    pub fn image(&mut self, n: usize) -> Result<ExponentSet> {
        if n % 6 != 5 {
            return Err(Error::InvalidArgument(format!("T_5 recursion needs n ≡ 5 mod 6, got {n}")));
        }
        Ok(ExponentSet::from_sorted(Level::Three, self.0.get((n - 5) / 6).to_vec()))
    }
}

/// Memoized level-1 `T_3` on odd powers of `F`.
pub struct T3Recursion(ShiftRecurrence);

impl Default for T3Recursion {
    fn default() -> Self {
        Self::new()
    }
}

impl T3Recursion {
    pub fn new() -> Self {
        T3Recursion(ShiftRecurrence::new(4, T3_TERMS, &T3_BASE))
    }

    pub fn image(&mut self, n: usize) -> Result<ExponentSet> {
        if n.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!("T_3 recursion needs odd n, got {n}")));
        }
        Ok(ExponentSet::from_sorted(Level::One, self.0.get((n - 1) / 2).to_vec()))
    }
}

pub fn t7_w5(n: usize) -> Result<ExponentSet> {
    T7Recursion::new().image(n)
}

pub fn t5_w5_to_w1(n: usize) -> Result<ExponentSet> {
    T5Recursion::new().image(n)
}

pub fn t3_v(n: usize) -> Result<ExponentSet> {
    T3Recursion::new().image(n)
}

/// A polynomial `U(X, Y)` over GF(2) as its list of monomials `X^i Y^j`.
pub type TwoVarPoly = Vec<(u32, u32)>;

/// The level-`p` modular equation satisfied by `(F(x^p), F(x))`.
pub fn modular_polynomial(p: u64) -> Result<TwoVarPoly> {
    match p {
        3 => Ok(vec![(4, 0), (0, 4), (1, 1)]),
        // (X+Y)^6 + XY
        5 => Ok(vec![(6, 0), (4, 2), (2, 4), (0, 6), (1, 1)]),
        7 => Ok(vec![(8, 0), (0, 8), (2, 2), (1, 1)]),
        _ => Err(Error::InvalidArgument(format!(
            "no modular equation available for p = {p} (supported: 3, 5, 7)"
        ))),
    }
}

fn evaluate(poly: &TwoVarPoly, x: &Gf2Series, y: &Gf2Series) -> Gf2Series {
    let trunc = x.trunc().min(y.trunc());
    let mut out = Gf2Series::zero(trunc);
    for &(i, j) in poly {
        out = &out + &(&x.pow(i as u64) * &y.pow(j as u64));
    }
    out
}

/// Checks `U(S(x^p), S(x)) = 0` to order `trunc` for `S = F` and `S = G`.
pub fn verify_modular_relation(poly: &TwoVarPoly, p: u64, trunc: usize) -> Result<bool> {
    if trunc < 2 {
        return Err(Error::InvalidArgument("trunc must be at least 2".into()));
    }
    for name in [SeriesName::F, SeriesName::G] {
        let s = build(name, trunc)?;
        let sp = s.substitute_power(p as usize).truncated(trunc)?;
        if !evaluate(poly, &sp, &s).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn verify_modular_equation(p: u64, trunc: usize) -> Result<bool> {
    verify_modular_relation(&modular_polynomial(p)?, p, trunc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(level: Level, e: &[usize]) -> ExponentSet {
        ExponentSet::new(level, e.iter().copied()).unwrap()
    }

    #[test]
    fn t7_initial_and_first_step() {
        assert_eq!(t7_w5(35).unwrap(), set(Level::Three, &[5, 29]));
        assert!(t7_w5(5).unwrap().is_zero());
        assert_eq!(t7_w5(53).unwrap(), set(Level::Three, &[11]));
        assert!(t7_w5(7).is_err());
    }

    #[test]
    fn t5_and_t3_small_cases() {
        assert_eq!(t5_w5_to_w1(5).unwrap(), set(Level::Three, &[1]));
        assert_eq!(t5_w5_to_w1(11).unwrap().max(), Some(7));
        assert!(t5_w5_to_w1(13).is_err());
        assert_eq!(t3_v(3).unwrap(), set(Level::One, &[1]));
        assert!(t3_v(1).unwrap().is_zero());
        assert_eq!(t3_v(11).unwrap(), set(Level::One, &[9]));
        assert!(t3_v(4).is_err());
    }

    #[test]
    fn large_index_is_iterative() {
        let mut rec = T7Recursion::new();
        let img = rec.image(6 * 20_000 + 5).unwrap();
        assert!(img.exps().iter().all(|&k| k % 6 == 5 && k < 120_005));
    }

    #[test]
    fn modular_equations() {
        for p in [3, 5, 7] {
            assert!(verify_modular_equation(p, 4096).unwrap(), "p={p}");
        }
        assert!(verify_modular_equation(11, 100).is_err());
        let broken: TwoVarPoly = vec![(6, 0), (4, 2), (2, 4), (0, 6), (2, 0)];
        assert!(!verify_modular_relation(&broken, 5, 4096).unwrap());
    }

    use crate::expalgebra::{decode, encode, MonomialPair};

    /// Checks that `img = [a-1, b] + earlier monomials` (or only monomials of
    /// degree below `a + b` when `a = 0`), where `[a, b]` is the monomial of `n`.
    fn leading_term_holds(level: Level, n: usize, img: &ExponentSet) -> bool {
        let top = decode(n, level).unwrap();
        let pairs: Vec<MonomialPair> = img.exps().iter().map(|&k| decode(k, level).unwrap()).collect();
        let below = pairs.iter().all(|p| p.degree() < top.degree());
        match top.a {
            0 => below,
            a => below && pairs.iter().max() == Some(&MonomialPair::new(a - 1, top.b)),
        }
    }

    #[test]
    fn a_polynomials_have_the_expected_leading_term() {
        let mut rec = T7Recursion::new();
        for n in (1..=401).step_by(2) {
            let a = rec.a_poly(n).unwrap();
            assert!(leading_term_holds(Level::One, n, &a), "A_{n} = {a}");
        }
    }

    #[test]
    fn t7_transports_to_level_three_monomials() {
        let mut rec = T7Recursion::new();
        for t in 0..=8 {
            for b in 0..=t {
                let pair = MonomialPair::new(t - b, b);
                let n = encode(pair, Level::Three);
                assert!(leading_term_holds(Level::Three, n, &rec.image(n).unwrap()), "{pair}");
            }
        }
    }

    #[test]
    fn level_one_t3_has_the_expected_leading_term() {
        let mut rec = T3Recursion::new();
        for n in (1..=401).step_by(2) {
            assert!(leading_term_holds(Level::One, n, &rec.image(n).unwrap()), "n={n}");
        }
    }

    #[test]
    fn image_exponents_satisfy_the_congruences() {
        let (mut t7, mut t5, mut t3) = (T7Recursion::new(), T5Recursion::new(), T3Recursion::new());
        for n in (5..=2000).step_by(6) {
            assert!(t7.image(n).unwrap().exps().iter().all(|&k| k <= n && k % 24 == 7 * n % 24));
            assert!(t5.image(n).unwrap().exps().iter().all(|&k| k <= n && k % 24 == 5 * n % 24));
        }
        for n in (1..=2001).step_by(2) {
            assert!(t3.image(n).unwrap().exps().iter().all(|&k| k <= n && k % 8 == 3 * n % 8));
        }
    }
}
