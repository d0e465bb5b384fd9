//! Truncated power series over GF(2).
//!
//! A [`Gf2Series`] stores the coefficients of `x^0 .. x^(trunc-1)` packed into
//! 64-bit words: exponent `n` lives at word `n / 64`, bit `n % 64`. Coefficients
//! at or beyond `trunc` are unknown, so every binary operation returns the
//! smaller of the two truncation orders and comparisons must name the order
//! they are made at.

use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(trunc: usize) -> usize {
    trunc.div_ceil(WORD)
}

/// An element of `Z/2[[x]]` known modulo `x^trunc`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Series {
    words: Vec<u64>,
    trunc: usize,
}

/// Outcome of comparing two series at the largest order both are known to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Agreement {
    pub order: usize,
    pub equal: bool,
}

impl Gf2Series {
    pub fn zero(trunc: usize) -> Self {
        Gf2Series {
            words: vec![0; words_for(trunc)],
            trunc,
        }
    }

    pub fn one(trunc: usize) -> Self {
        Self::monomial(0, trunc)
    }

    /// `x^k`, or the zero series if `k >= trunc`.
    pub fn monomial(k: usize, trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        if k < trunc {
            s.flip(k);
        }
        s
    }

    /// Builds a series from exponents; repeated exponents cancel and
    /// exponents at or beyond `trunc` are dropped.
    pub fn from_exponents<I: IntoIterator<Item = usize>>(exps: I, trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        for k in exps {
            if k < trunc {
                s.flip(k);
            }
        }
        s
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn coeff(&self, n: usize) -> Option<bool> {
        (n < self.trunc).then(|| self.words[n / WORD] >> (n % WORD) & 1 == 1)
    }

    /// Toggles the coefficient of `x^n`. Panics if `n >= trunc`.
    pub fn flip(&mut self, n: usize) {
        assert!(n < self.trunc, "exponent {n} outside truncation {}", self.trunc);
        self.words[n / WORD] ^= 1 << (n % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn lowest(&self) -> Option<usize> {
        self.lowest_from(0)
    }

    /// Lowest exponent `>= start` with a nonzero coefficient.
    pub fn lowest_from(&self, start: usize) -> Option<usize> {
        if start >= self.trunc {
            return None;
        }
        let mut i = start / WORD;
        let mut w = self.words[i] & (!0u64 << (start % WORD));
        loop {
            if w != 0 {
                return Some(i * WORD + w.trailing_zeros() as usize);
            }
            i += 1;
            if i == self.words.len() {
                return None;
            }
            w = self.words[i];
        }
    }

    pub fn highest(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| i * WORD + 63 - w.leading_zeros() as usize)
    }

    /// Exponents of the nonzero coefficients, ascending.
    pub fn exponents(&self) -> Exponents<'_> {
        Exponents {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    /// Forgets every coefficient at or beyond `trunc`. Asking for a larger
    /// order than is known is a precision error.
    pub fn truncated(&self, trunc: usize) -> Result<Self> {
        if trunc > self.trunc {
            return Err(Error::Precision {
                requested: trunc,
                available: self.trunc,
            });
        }
        let mut words = self.words[..words_for(trunc)].to_vec();
        mask_tail(&mut words, trunc);
        Ok(Gf2Series { words, trunc })
    }

    fn truncated_to_min(&self, trunc: usize) -> Self {
        self.truncated(trunc.min(self.trunc))
            .expect("truncation to a smaller order")
    }

    /// Compares at the common order of the two series.
    pub fn agreement(&self, other: &Self) -> Agreement {
        let order = self.trunc.min(other.trunc);
        Agreement {
            order,
            equal: self.prefix_eq(other, order),
        }
    }

    /// Compares the coefficients below `order`; fails if either series is not
    /// known that far.
    pub fn eq_at(&self, other: &Self, order: usize) -> Result<bool> {
        let available = self.trunc.min(other.trunc);
        if order > available {
            return Err(Error::Precision {
                requested: order,
                available,
            });
        }
        Ok(self.prefix_eq(other, order))
    }

    fn prefix_eq(&self, other: &Self, order: usize) -> bool {
        let full = order / WORD;
        if self.words[..full] != other.words[..full] {
            return false;
        }
        let rem = order % WORD;
        rem == 0 || (self.words[full] ^ other.words[full]) & ((1u64 << rem) - 1) == 0
    }

    /// Coefficientwise sum; known to the smaller order.
    pub fn add(&self, other: &Self) -> Self {
        let trunc = self.trunc.min(other.trunc);
        let mut out = self.truncated_to_min(trunc);
        for (o, w) in out.words.iter_mut().zip(&other.words) {
            *o ^= w;
        }
        mask_tail(&mut out.words, trunc);
        out
    }

    /// In-place XOR of `other` restricted to `self`'s window.
    /// Requires `other.trunc() >= self.trunc()`.
    pub fn add_assign_prefix(&mut self, other: &Self) {
        debug_assert!(other.trunc >= self.trunc);
        for (o, w) in self.words.iter_mut().zip(&other.words) {
            *o ^= w;
        }
        mask_tail(&mut self.words, self.trunc);
    }

    /// Cauchy product by shift-and-XOR over the set bits of the sparser
    /// operand, `O(weight * trunc / 64)`.
    pub fn mul(&self, other: &Self) -> Self {
        let trunc = self.trunc.min(other.trunc);
        let (sparse, dense) = if self.weight() <= other.weight() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = vec![0u64; words_for(trunc)];
        for s in sparse.exponents() {
            if s >= trunc {
                break;
            }
            xor_shifted(&mut out, &dense.words, s);
        }
        mask_tail(&mut out, trunc);
        Gf2Series { words: out, trunc }
    }

    /// Frobenius: squaring doubles every exponent.
    pub fn square(&self) -> Self {
        let mut out = vec![0u64; words_for(self.trunc)];
        for (i, &w) in self.words.iter().enumerate() {
            if w == 0 {
                continue;
            }
            let lo = spread(w as u32);
            let hi = spread((w >> 32) as u32);
            if let Some(o) = out.get_mut(2 * i) {
                *o = lo;
            }
            if let Some(o) = out.get_mut(2 * i + 1) {
                *o = hi;
            }
        }
        mask_tail(&mut out, self.trunc);
        Gf2Series {
            words: out,
            trunc: self.trunc,
        }
    }

    /// `self^k` by left-to-right square-and-multiply; every multiply is by the
    /// base, which is cheap when the base is sparse.
    pub fn pow(&self, k: u64) -> Self {
        if k == 0 {
            return Self::one(self.trunc);
        }
        let mut acc = self.clone();
        for bit in (0..63 - k.leading_zeros()).rev() {
            acc = acc.square();
            if k >> bit & 1 == 1 {
                acc = acc.mul(self);
            }
        }
        acc
    }

    /// `f(x) -> f(x^k)`. Every coefficient below `k * trunc` is then known.
    pub fn substitute_power(&self, k: usize) -> Self {
        assert!(k > 0, "substitute_power needs k > 0");
        let trunc = self.trunc * k;
        Self::from_exponents(self.exponents().map(|n| n * k), trunc)
    }

    /// Keeps the coefficients with exponent `n ≡ residue (mod 3)`.
    pub fn p3_project(&self, residue: usize) -> Self {
        assert!(residue < 3, "residue must be 0, 1 or 2");
        let mut out = self.clone();
        for (i, w) in out.words.iter_mut().enumerate() {
            // bit b of word i is exponent 64 i + b, and 64 ≡ 1 mod 3
            let shift = (3 + residue - i % 3) % 3;
            *w &= MOD3_MASK << shift;
        }
        out
    }

    /// True iff every nonzero coefficient sits at an odd exponent.
    pub fn is_odd(&self) -> bool {
        self.words.iter().all(|&w| w & EVEN_BITS == 0)
    }

    /// `trunc=<N>; exps=<ascending comma list>`
    pub fn dump(&self) -> String {
        self.to_string()
    }

    /// The coefficients below `trunc` as a string of `0`/`1`, lowest first.
    pub fn bits(&self) -> String {
        (0..self.trunc)
            .map(|n| if self.coeff(n) == Some(true) { '1' } else { '0' })
            .collect()
    }
}

// bits 0, 3, 6, ... of a word
const MOD3_MASK: u64 = 0x9249_2492_4924_9249;
const EVEN_BITS: u64 = 0x5555_5555_5555_5555;

fn spread(x: u32) -> u64 {
    let mut x = x as u64;
    x = (x | (x << 16)) & 0x0000_FFFF_0000_FFFF;
    x = (x | (x << 8)) & 0x00FF_00FF_00FF_00FF;
    x = (x | (x << 4)) & 0x0F0F_0F0F_0F0F_0F0F;
    x = (x | (x << 2)) & 0x3333_3333_3333_3333;
    (x | (x << 1)) & EVEN_BITS
}

fn mask_tail(words: &mut [u64], trunc: usize) {
    let rem = trunc % WORD;
    if rem != 0 {
        if let Some(last) = words.last_mut() {
            *last &= (1u64 << rem) - 1;
        }
    }
}

/// `out ^= src << shift`, clipped to `out.len()` words.
fn xor_shifted(out: &mut [u64], src: &[u64], shift: usize) {
    let ws = shift / WORD;
    let bs = shift % WORD;
    if ws >= out.len() {
        return;
    }
    let n = (out.len() - ws).min(src.len());
    let dst = &mut out[ws..];
    if bs == 0 {
        for i in 0..n {
            dst[i] ^= src[i];
        }
    } else {
        dst[0] ^= src[0] << bs;
        for i in 1..n {
            dst[i] ^= (src[i] << bs) | (src[i - 1] >> (WORD - bs));
        }
        if n < dst.len() && n == src.len() {
            dst[n] ^= src[n - 1] >> (WORD - bs);
        }
    }
}

pub struct Exponents<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Exponents<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.current == 0 {
            self.index += 1;
            self.current = *self.words.get(self.index)?;
        }
        let tz = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(self.index * WORD + tz)
    }
}

impl Add for &Gf2Series {
    type Output = Gf2Series;
    fn add(self, rhs: &Gf2Series) -> Gf2Series {
        Gf2Series::add(self, rhs)
    }
}

impl Mul for &Gf2Series {
    type Output = Gf2Series;
    fn mul(self, rhs: &Gf2Series) -> Gf2Series {
        Gf2Series::mul(self, rhs)
    }
}

impl fmt::Display for Gf2Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "trunc={}; exps=", self.trunc)?;
        write_list(f, self.exponents())
    }
}

impl fmt::Debug for Gf2Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub(crate) fn write_list<I: Iterator<Item = usize>>(
    f: &mut fmt::Formatter<'_>,
    items: I,
) -> fmt::Result {
    for (i, n) in items.enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{n}")?;
    }
    Ok(())
}

/// Splits `key=value; key=value` dumps into their fields.
pub(crate) fn parse_fields<'a>(s: &'a str, keys: &[&str]) -> Result<Vec<&'a str>> {
    let parts: Vec<&str> = s.trim().split(';').map(str::trim).collect();
    if parts.len() != keys.len() {
        return Err(Error::Parse(format!("expected fields {keys:?} in `{s}`")));
    }
    parts
        .iter()
        .zip(keys)
        .map(|(part, key)| {
            part.strip_prefix(key)
                .and_then(|rest| rest.strip_prefix('='))
                .map(str::trim)
                .ok_or_else(|| Error::Parse(format!("expected `{key}=` in `{part}`")))
        })
        .collect()
}

pub(crate) fn parse_usize_list(s: &str) -> Result<Vec<usize>> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("`{t}`: {e}")))
        })
        .collect()
}

impl FromStr for Gf2Series {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let fields = parse_fields(s, &["trunc", "exps"])?;
        let trunc = fields[0]
            .parse::<usize>()
            .map_err(|e| Error::Parse(format!("trunc: {e}")))?;
        let exps = parse_usize_list(fields[1])?;
        if exps.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse("exponents must be strictly ascending".into()));
        }
        if let Some(&last) = exps.last() {
            if last >= trunc {
                return Err(Error::Parse(format!(
                    "exponent {last} is not below trunc {trunc}"
                )));
            }
        }
        Ok(Self::from_exponents(exps, trunc))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_mul(a: &Gf2Series, b: &Gf2Series) -> Gf2Series {
        let trunc = a.trunc().min(b.trunc());
        let mut out = Gf2Series::zero(trunc);
        for i in a.exponents() {
            for j in b.exponents() {
                if i + j < trunc {
                    out.flip(i + j);
                }
            }
        }
        out
    }

    fn series(trunc: usize) -> impl Strategy<Value = Gf2Series> {
        prop::collection::vec(any::<bool>(), trunc).prop_map(move |bits| {
            Gf2Series::from_exponents(
                bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i),
                trunc,
            )
        })
    }

    #[test]
    fn char_two_and_identity() {
        let a = Gf2Series::from_exponents([1, 4, 9, 70, 129], 200);
        assert!((&a + &a).is_zero());
        assert_eq!(&a + &Gf2Series::zero(200), a);
        assert_eq!(&a * &Gf2Series::one(200), a);
        assert_eq!(a.pow(0), Gf2Series::one(200));
    }

    #[test]
    fn results_take_the_smaller_truncation() {
        let a = Gf2Series::from_exponents([1, 5], 10);
        let b = Gf2Series::from_exponents([1, 5, 12], 20);
        assert_eq!((&a + &b).trunc(), 10);
        assert!((&a + &b).is_zero());
        assert_eq!((&a * &b).trunc(), 10);
        assert_eq!(a.agreement(&b), Agreement { order: 10, equal: true });
    }

    #[test]
    fn comparison_beyond_known_order_is_an_error() {
        let a = Gf2Series::zero(10);
        let b = Gf2Series::zero(20);
        assert!(a.eq_at(&b, 10).unwrap());
        assert!(matches!(
            a.eq_at(&b, 11),
            Err(Error::Precision { requested: 11, available: 10 })
        ));
    }

    #[test]
    fn substitute_and_project() {
        let a = Gf2Series::from_exponents([0, 1, 2, 5, 6, 7], 8);
        let s = a.substitute_power(3);
        assert_eq!(s.trunc(), 24);
        assert_eq!(s.exponents().collect::<Vec<_>>(), vec![0, 3, 6, 15, 18, 21]);
        assert_eq!(a.substitute_power(1), a);
        assert_eq!(a.p3_project(0).exponents().collect::<Vec<_>>(), vec![0, 6]);
        assert_eq!(a.p3_project(1).exponents().collect::<Vec<_>>(), vec![1, 7]);
        assert_eq!(a.p3_project(2).exponents().collect::<Vec<_>>(), vec![2, 5]);
    }

    #[test]
    fn projection_across_word_boundaries() {
        let all = Gf2Series::from_exponents(0..500, 500);
        for r in 0..3 {
            let p = all.p3_project(r);
            assert!(p.exponents().all(|n| n % 3 == r));
            assert_eq!(p.weight(), (0..500).filter(|n| n % 3 == r).count());
        }
    }

    #[test]
    fn oddness() {
        assert!(Gf2Series::from_exponents([1, 9, 25], 30).is_odd());
        assert!(!Gf2Series::one(30).is_odd());
        assert!(Gf2Series::zero(30).is_odd());
    }

    #[test]
    fn dump_round_trip() {
        let a = Gf2Series::from_exponents([1, 9, 25], 30);
        assert_eq!(a.dump(), "trunc=30; exps=1,9,25");
        assert_eq!(a.dump().parse::<Gf2Series>().unwrap(), a);
        assert_eq!("trunc=4; exps=".parse::<Gf2Series>().unwrap(), Gf2Series::zero(4));
        assert!("trunc=4; exps=5".parse::<Gf2Series>().is_err());
        assert!("trunc=9; exps=3,1".parse::<Gf2Series>().is_err());
        assert_eq!(Gf2Series::from_exponents([1, 3], 5).bits(), "01010");
    }

    #[test]
    fn lowest_and_highest() {
        let a = Gf2Series::from_exponents([70, 130, 131], 200);
        assert_eq!(a.lowest(), Some(70));
        assert_eq!(a.lowest_from(71), Some(130));
        assert_eq!(a.lowest_from(132), None);
        assert_eq!(a.highest(), Some(131));
        assert_eq!(Gf2Series::zero(5).lowest(), None);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn mul_matches_naive_product(a in series(300), b in series(257)) {
            prop_assert_eq!(a.mul(&b), naive_mul(&a, &b));
        }

        #[test]
        fn ring_laws(a in series(2048), b in series(2048), c in series(2048)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        }

        #[test]
        fn square_is_frobenius(a in series(2048)) {
            let sq = a.square();
            prop_assert_eq!(&sq, &a.substitute_power(2).truncated(2048).unwrap());
            prop_assert_eq!(&sq, &naive_mul(&a, &a));
        }

        #[test]
        fn projections_partition(a in series(777)) {
            let sum = &(&a.p3_project(0) + &a.p3_project(1)) + &a.p3_project(2);
            prop_assert_eq!(sum, a);
        }

        #[test]
        fn pow_matches_repeated_product(a in series(150), k in 0u64..12) {
            let mut acc = Gf2Series::one(150);
            for _ in 0..k {
                acc = naive_mul(&acc, &a);
            }
            prop_assert_eq!(a.pow(k), acc);
        }
    }
}
