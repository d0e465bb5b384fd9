//! Exponent-set model of the spaces spanned by powers of `F` (level 1) or of
//! `D` (level 3), the `g`-code and the `[a, b]` monomial coding.
//!
//! An element `Σ D^k` is stored as the sorted set of its exponents `k`. At
//! level 1 the exponents are odd (powers of `F`); at level 3 they are prime to
//! 6 and split into the residue classes 1 and 5 mod 6.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};
use crate::gf2series::{parse_fields, parse_usize_list, write_list, Gf2Series};
use crate::qexpansions::{build, SeriesName};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    /// Odd powers of `F`.
    One,
    /// Powers `D^k` with `(k, 6) = 1`.
    Three,
}

impl Level {
    pub fn number(self) -> u8 {
        match self {
            Level::One => 1,
            Level::Three => 3,
        }
    }

    pub fn from_number(n: u64) -> Result<Self> {
        match n {
            1 => Ok(Level::One),
            3 => Ok(Level::Three),
            _ => Err(Error::InvalidArgument(format!("level must be 1 or 3, got {n}"))),
        }
    }

    /// Whether `base^k` belongs to the space at this level.
    pub fn admits(self, k: usize) -> bool {
        match self {
            Level::One => k % 2 == 1,
            Level::Three => k % 2 == 1 && !k.is_multiple_of(3),
        }
    }

    pub fn base_name(self) -> SeriesName {
        match self {
            Level::One => SeriesName::F,
            Level::Three => SeriesName::D,
        }
    }

    pub fn base(self, trunc: usize) -> Gf2Series {
        build(self.base_name(), trunc.max(1)).expect("trunc >= 1")
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

/// A finite sum of powers of the level's base series.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExponentSet {
    level: Level,
    exps: Vec<usize>,
}

impl ExponentSet {
    pub fn zero(level: Level) -> Self {
        ExponentSet {
            level,
            exps: Vec::new(),
        }
    }

    /// Sum of `base^k` over the given exponents; repeated exponents cancel.
    pub fn new<I: IntoIterator<Item = usize>>(level: Level, exps: I) -> Result<Self> {
        let mut v: Vec<usize> = exps.into_iter().collect();
        if let Some(&k) = v.iter().find(|&&k| !level.admits(k)) {
            return Err(Error::InvalidArgument(format!(
                "exponent {k} is not admissible at level {level}"
            )));
        }
        v.sort_unstable();
        let mut exps = Vec::with_capacity(v.len());
        for k in v {
            if exps.last() == Some(&k) {
                exps.pop();
            } else {
                exps.push(k);
            }
        }
        Ok(ExponentSet { level, exps })
    }

    pub fn monomial(level: Level, k: usize) -> Result<Self> {
        Self::new(level, [k])
    }

    /// Builds from exponents already known to be sorted, distinct and admissible.
    pub(crate) fn from_sorted(level: Level, exps: Vec<usize>) -> Self {
        debug_assert!(exps.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(exps.iter().all(|&k| level.admits(k)));
        ExponentSet { level, exps }
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn exps(&self) -> &[usize] {
        &self.exps
    }

    pub fn is_zero(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn max(&self) -> Option<usize> {
        self.exps.last().copied()
    }

    pub fn contains(&self, k: usize) -> bool {
        self.exps.binary_search(&k).is_ok()
    }

    /// Sum over GF(2): symmetric difference of the exponent sets.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.level, other.level, "adding exponent sets of different levels");
        ExponentSet {
            level: self.level,
            exps: sym_diff(&self.exps, &other.exps),
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        *self = self.add(other);
    }

    /// Part with exponents `≡ residue (mod 6)`.
    pub fn residue_part(&self, residue: usize) -> Self {
        ExponentSet {
            level: self.level,
            exps: self.exps.iter().copied().filter(|k| k % 6 == residue).collect(),
        }
    }

    /// The series `Σ base^k`, exact below `trunc`.
    pub fn to_series(&self, trunc: usize) -> Gf2Series {
        let base = self.level.base(trunc);
        let mut out = Gf2Series::zero(trunc);
        for &k in &self.exps {
            out.add_assign_prefix(&base.pow(k as u64));
        }
        out
    }
}

pub(crate) fn sym_diff(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl fmt::Display for ExponentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "level={}; exps=", self.level)?;
        write_list(f, self.exps.iter().copied())
    }
}

impl fmt::Debug for ExponentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExponentSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let fields = parse_fields(s, &["level", "exps"])?;
        let level = fields[0]
            .parse::<u64>()
            .map_err(|e| Error::Parse(format!("level: {e}")))
            .and_then(Level::from_number)?;
        let exps = parse_usize_list(fields[1])?;
        if exps.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse("exponents must be strictly ascending".into()));
        }
        Self::new(level, exps)
    }
}

impl Serialize for ExponentSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("ExponentSet", 2)?;
        st.serialize_field("level", &self.level.number())?;
        st.serialize_field("exps", &self.exps)?;
        st.end()
    }
}

/// Spreads the bits of `n` to the even bit positions: reading the binary
/// digits of `n` in base 4. Equivalently `g(2n) = 4 g(n)`, `g(2n+1) = g(2n) + 1`.
pub fn g(n: u32) -> u64 {
    let mut x = n as u64;
    x = (x | (x << 16)) & 0x0000_FFFF_0000_FFFF;
    x = (x | (x << 8)) & 0x00FF_00FF_00FF_00FF;
    x = (x | (x << 4)) & 0x0F0F_0F0F_0F0F_0F0F;
    x = (x | (x << 2)) & 0x3333_3333_3333_3333;
    (x | (x << 1)) & 0x5555_5555_5555_5555
}

/// Inverse of [`g`] on the even bit positions.
fn compact(mut x: u64) -> u32 {
    x &= 0x5555_5555_5555_5555;
    x = (x | (x >> 1)) & 0x3333_3333_3333_3333;
    x = (x | (x >> 2)) & 0x0F0F_0F0F_0F0F_0F0F;
    x = (x | (x >> 4)) & 0x00FF_00FF_00FF_00FF;
    x = (x | (x >> 8)) & 0x0000_FFFF_0000_FFFF;
    x = (x | (x >> 16)) & 0x0000_0000_FFFF_FFFF;
    x as u32
}

/// The monomial `[a, b]`: `t^(1+2g(a)+4g(b))` at level 1, and
/// `[a, b, G] = D^(5+6g(a)+12g(b))` at level 3.
///
/// Ordered by total degree `a + b`, then by `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct MonomialPair {
    pub a: u32,
    pub b: u32,
}

impl MonomialPair {
    pub fn new(a: u32, b: u32) -> Self {
        MonomialPair { a, b }
    }

    pub fn degree(self) -> u32 {
        self.a + self.b
    }

    /// Position in the ordered list [`s_basis`].
    pub fn index(self) -> usize {
        let t = self.degree() as usize;
        t * (t + 1) / 2 + self.b as usize
    }

    pub fn from_index(i: usize) -> Self {
        let mut t = 0;
        while (t + 1) * (t + 2) / 2 <= i {
            t += 1;
        }
        let b = (i - t * (t + 1) / 2) as u32;
        MonomialPair::new(t as u32 - b, b)
    }
}

impl Ord for MonomialPair {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.degree(), self.b).cmp(&(other.degree(), other.b))
    }
}

impl PartialOrd for MonomialPair {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MonomialPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.a, self.b)
    }
}

pub fn encode(pair: MonomialPair, level: Level) -> usize {
    let (ga, gb) = (g(pair.a) as usize, g(pair.b) as usize);
    match level {
        Level::One => 1 + 2 * ga + 4 * gb,
        Level::Three => 5 + 6 * ga + 12 * gb,
    }
}

pub fn decode(n: usize, level: Level) -> Result<MonomialPair> {
    let t = match level {
        Level::One if n % 2 == 1 => (n - 1) / 2,
        Level::Three if n % 6 == 5 => (n - 5) / 6,
        _ => {
            return Err(Error::InvalidArgument(format!(
                "{n} is not a monomial exponent at level {level}"
            )))
        }
    };
    let t = t as u64;
    let pair = MonomialPair::new(compact(t), compact(t >> 1));
    debug_assert_eq!(encode(pair, level), n);
    Ok(pair)
}

/// `[a, b]` with `a + b < m`, in increasing monomial order.
pub fn s_basis(m: u32) -> Vec<MonomialPair> {
    (0..m)
        .flat_map(|t| (0..=t).map(move |b| MonomialPair::new(t - b, b)))
        .collect()
}

pub fn s_dim(m: u32) -> usize {
    let m = m as usize;
    m * (m + 1) / 2
}

/// Largest exponent among the monomials of `S_m` (`m >= 1`), namely `[0, m-1]`.
pub fn s_max_exponent(m: u32, level: Level) -> usize {
    assert!(m >= 1);
    encode(MonomialPair::new(0, m - 1), level)
}

/// Cached powers `base^k` of the level's base series at a fixed truncation.
pub struct PowerTable {
    level: Level,
    trunc: usize,
    base_sq: Gf2Series,
    base_4: Gf2Series,
    powers: Vec<Option<Gf2Series>>,
    top: usize,
}

impl PowerTable {
    pub fn new(level: Level, trunc: usize) -> Self {
        let base = level.base(trunc);
        let base_sq = base.square();
        let base_4 = base_sq.square();
        PowerTable {
            level,
            trunc,
            base_sq,
            base_4,
            powers: vec![None, Some(base)],
            top: 1,
        }
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    /// Fills every admissible power up to `max_k` by stepping through the
    /// admissible exponents with the sparse factors `base²`, `base⁴`.
    pub fn ensure(&mut self, max_k: usize) {
        if max_k <= self.top {
            return;
        }
        self.powers.resize(max_k + 1, None);
        let mut k = self.top;
        while k <= max_k {
            let step = match self.level {
                Level::One => 2,
                Level::Three if k % 6 == 1 => 4,
                Level::Three => 2,
            };
            let next = k + step;
            if next > max_k {
                break;
            }
            let factor = if step == 2 { &self.base_sq } else { &self.base_4 };
            let p = self.powers[k].as_ref().expect("ladder is contiguous").mul(factor);
            self.powers[next] = Some(p);
            self.top = next;
            k = next;
        }
    }

    pub fn get(&self, k: usize) -> Option<&Gf2Series> {
        self.powers.get(k).and_then(Option::as_ref)
    }
}

/// Writes `f` as a sum of admissible powers of the base, using the fact that
/// `base^k = x^k + higher terms`. Every term with exponent `<= max_exp` is
/// peeled off greedily; what remains must vanish on the whole known window.
pub fn decompose(f: &Gf2Series, level: Level, max_exp: usize) -> Result<ExponentSet> {
    let mut table = PowerTable::new(level, f.trunc());
    table.ensure(max_exp.min(f.trunc().saturating_sub(1)));
    decompose_with(&table, f, max_exp)
}

pub fn decompose_with(table: &PowerTable, f: &Gf2Series, max_exp: usize) -> Result<ExponentSet> {
    let level = table.level();
    if f.trunc() <= max_exp {
        return Err(Error::Precision {
            requested: max_exp + 1,
            available: f.trunc(),
        });
    }
    if table.trunc() < f.trunc() {
        return Err(Error::Precision {
            requested: f.trunc(),
            available: table.trunc(),
        });
    }
    let mut residual = f.clone();
    let mut exps = Vec::new();
    let mut start = 0;
    while let Some(k) = residual.lowest_from(start) {
        if k > max_exp {
            break;
        }
        if !level.admits(k) {
            return Err(Error::NotInSpan(format!(
                "leading exponent {k} is not admissible at level {level}"
            )));
        }
        let power = table.get(k).ok_or_else(|| {
            Error::InvalidArgument(format!("power table does not reach exponent {k}"))
        })?;
        residual.add_assign_prefix(power);
        exps.push(k);
        start = k + 1;
    }
    if let Some(k) = residual.lowest() {
        return Err(Error::NotInSpan(format!(
            "residual x^{k} remains after removing exponents <= {max_exp} (known below {})",
            f.trunc()
        )));
    }
    Ok(ExponentSet::from_sorted(level, exps))
}
