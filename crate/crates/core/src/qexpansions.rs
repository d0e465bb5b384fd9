//! The generating series `F, G, H, D, E, r` and the polynomial identities
//! relating them.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2series::Gf2Series;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeriesName {
    /// `Σ x^(n²)`, `n > 0` odd.
    F,
    /// `F(x³)`.
    G,
    /// `F(x⁹)`.
    H,
    /// `Σ x^(n²)`, `n > 0` prime to 6.
    D,
    /// `Σ x^(n²)`, `n > 0` prime to 3.
    E,
    /// `Σ x^(n²) + x^(2n²) + x^(3n²) + x^(6n²)`, `n > 0`.
    R,
}

impl SeriesName {
    pub const ALL: [SeriesName; 6] = [
        SeriesName::F,
        SeriesName::G,
        SeriesName::H,
        SeriesName::D,
        SeriesName::E,
        SeriesName::R,
    ];
}

impl fmt::Display for SeriesName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SeriesName::F => "F",
            SeriesName::G => "G",
            SeriesName::H => "H",
            SeriesName::D => "D",
            SeriesName::E => "E",
            SeriesName::R => "r",
        };
        f.write_str(s)
    }
}

impl FromStr for SeriesName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "F" => Ok(SeriesName::F),
            "G" => Ok(SeriesName::G),
            "H" => Ok(SeriesName::H),
            "D" => Ok(SeriesName::D),
            "E" => Ok(SeriesName::E),
            "r" | "R" => Ok(SeriesName::R),
            other => Err(Error::UnknownSeries(other.to_string())),
        }
    }
}

/// `Σ x^(scale · n²)` over `n > 0` accepted by `keep`.
fn square_series(trunc: usize, scale: usize, keep: impl Fn(usize) -> bool) -> Gf2Series {
    let mut s = Gf2Series::zero(trunc);
    let mut n = 1;
    while scale * n * n < trunc {
        if keep(n) {
            s.flip(scale * n * n);
        }
        n += 1;
    }
    s
}

/// Builds one of the named series, exact below `trunc`.
pub fn build(name: SeriesName, trunc: usize) -> Result<Gf2Series> {
    if trunc == 0 {
        return Err(Error::InvalidArgument("trunc must be at least 1".into()));
    }
    let odd = |n: usize| n % 2 == 1;
    Ok(match name {
        SeriesName::F => square_series(trunc, 1, odd),
        SeriesName::G => square_series(trunc, 3, odd),
        SeriesName::H => square_series(trunc, 9, odd),
        SeriesName::D => square_series(trunc, 1, |n| n % 2 == 1 && n % 3 != 0),
        SeriesName::E => square_series(trunc, 1, |n| n % 3 != 0),
        SeriesName::R => {
            let mut r = Gf2Series::zero(trunc);
            for scale in [1, 2, 3, 6] {
                r = &r + &square_series(trunc, scale, |_| true);
            }
            r
        }
    })
}

/// All six series at one truncation order.
#[derive(Clone, Debug)]
pub struct Generators {
    pub f: Gf2Series,
    pub g: Gf2Series,
    pub h: Gf2Series,
    pub d: Gf2Series,
    pub e: Gf2Series,
    pub r: Gf2Series,
}

impl Generators {
    pub fn new(trunc: usize) -> Result<Self> {
        Ok(Generators {
            f: build(SeriesName::F, trunc)?,
            g: build(SeriesName::G, trunc)?,
            h: build(SeriesName::H, trunc)?,
            d: build(SeriesName::D, trunc)?,
            e: build(SeriesName::E, trunc)?,
            r: build(SeriesName::R, trunc)?,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub trunc: usize,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name)
    }
}

/// Checks the fifteen identities among the generators to order `trunc`.
pub fn verify_identities(trunc: usize) -> Result<IdentityReport> {
    if trunc < 2 {
        return Err(Error::InvalidArgument("trunc must be at least 2".into()));
    }
    Ok(verify_identities_for(&Generators::new(trunc)?))
}

/// Same as [`verify_identities`] for caller-supplied series, so that a
/// corrupted generator can be shown to be caught.
pub fn verify_identities_for(s: &Generators) -> IdentityReport {
    let Generators { f, g, h, d, e, r } = s;
    let r2 = r.square();
    let r3 = &r2 * r;
    let r4 = r2.square();
    let f2g = &f.square() * g;
    let f3 = &f.square() * f;
    let d3 = &d.square() * d;
    let e2 = e.square();
    let e4 = e2.square();
    let e8 = e4.square();
    let e16 = e8.square();
    let zero = Gf2Series::zero(f.trunc());

    let sum = |xs: &[&Gf2Series]| {
        xs.iter()
            .skip(1)
            .fold(xs[0].clone(), |acc, x| &acc + x)
    };

    let pairs: Vec<(&'static str, Gf2Series, Gf2Series)> = vec![
        ("r^2+r=F+G", &r2 + r, f + g),
        ("F=r+r^2+r^3+r^4", f.clone(), sum(&[r, &r2, &r3, &r4])),
        ("G=r^3+r^4", g.clone(), &r3 + &r4),
        ("F^4+FG+G^4=0", sum(&[&f.square().square(), &(f * g), &g.square().square()]), zero.clone()),
        ("D^3=G", d3.clone(), g.clone()),
        ("D=F+H", d.clone(), f + h),
        ("E^4+E=D", &e4 + e, d.clone()),
        ("p31(F^2G)=0", f2g.p3_project(1), zero.clone()),
        ("p32(F)=0", f.p3_project(2), zero),
        ("p31(F)=D", f.p3_project(1), d.clone()),
        ("p32(F^2G)=D^5", f2g.p3_project(2), &d3 * &d.square()),
        ("p31(r^2)=E^4", r2.p3_project(1), e4),
        ("p32(r^2)=E^2", r2.p3_project(2), e2),
        ("p31(F^3)=E^16D^3", f3.p3_project(1), &e16 * &d3),
        ("p32(F^3)=E^8D^3", f3.p3_project(2), &e8 * &d3),
    ];

    IdentityReport {
        trunc: f.trunc(),
        checks: pairs
            .into_iter()
            .map(|(name, lhs, rhs)| IdentityCheck {
                name,
                passed: lhs.agreement(&rhs).equal,
            })
            .collect(),
    }
}
