//! Gauss-classes of odd-norm ideals of `Z[i]` modulo `4q`, their theta
//! series, and the dihedral subspaces built from them.
//!
//! Every ideal of odd norm has a generator `a + 2bi` with `a` odd, unique up
//! to sign. Two ideals are Gauss-equivalent when an integer multiple of one
//! generator is congruent to the other mod `4q`; multiplying by `a⁻¹` shows
//! each class has exactly one representative `1 + 2ci` with `0 <= c < 2q`, and
//! the label of a class is that `c`. The group law is computed from
//! representatives; it is not addition of labels.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expalgebra::{decompose, sym_diff, ExponentSet, Level};
use crate::heckeop::IntSeries;
use crate::linalg::{rank_of, BitVector};

fn require_power_of_two(q: u64) -> Result<()> {
    if q.is_power_of_two() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("q = {q} is not a power of 2")))
    }
}

fn inverse_mod(a: i64, m: i64) -> Option<i64> {
    let (mut r0, mut r1) = (a.rem_euclid(m), m);
    let (mut s0, mut s1) = (1i64, 0i64);
    while r1 != 0 {
        let t = r0 / r1;
        (r0, r1) = (r1, r0 - t * r1);
        (s0, s1) = (s1, s0 - t * s1);
    }
    (r0 == 1).then(|| s0.rem_euclid(m))
}

/// Label `c` of the class of `(a + 2bi)`, `a` odd: `c ≡ b a⁻¹ (mod 2q)`.
pub fn class_of_ideal(a: i64, b: i64, q: u64) -> Result<usize> {
    require_power_of_two(q)?;
    if a % 2 == 0 {
        return Err(Error::InvalidArgument(format!("a = {a} must be odd")));
    }
    let m = 2 * q as i64;
    let inv = inverse_mod(a, m).expect("odd numbers are units mod 2q");
    Ok((b.rem_euclid(m) * inv).rem_euclid(m) as usize)
}

/// The Gauss group for a fixed `q`.
#[derive(Clone, Debug)]
pub struct GaussClassTable {
    q: u64,
    mult: Vec<Vec<usize>>,
    amb: usize,
}

pub const PRINCIPAL: usize = 0;

pub fn build_table(q: u64) -> Result<GaussClassTable> {
    require_power_of_two(q)?;
    let n = 2 * q as usize;
    let mut mult = vec![vec![0; n]; n];
    for c1 in 0..n as i64 {
        for c2 in 0..n as i64 {
            // (1 + 2 c1 i)(1 + 2 c2 i) = (1 - 4 c1 c2) + 2 (c1 + c2) i
            mult[c1 as usize][c2 as usize] = class_of_ideal(1 - 4 * c1 * c2, c1 + c2, q)?;
        }
    }
    let mut table = GaussClassTable { q, mult, amb: 0 };
    let order_two: Vec<usize> = (0..n).filter(|&c| table.element_order(c) == 2).collect();
    if order_two.len() != 1 {
        return Err(Error::consistency(
            "unique class of order two",
            format!("q = {q}: classes of order 2 are {order_two:?}"),
        ));
    }
    table.amb = order_two[0];
    if !(0..n).any(|c| table.element_order(c) == n) {
        return Err(Error::consistency(
            "Gauss group is cyclic of order 2q",
            format!("q = {q}: no element of order {n}"),
        ));
    }
    for c in 0..n {
        if table.mul(PRINCIPAL, c) != c {
            return Err(Error::consistency("principal class is the identity", format!("label {c}")));
        }
    }
    Ok(table)
}

impl GaussClassTable {
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn order(&self) -> usize {
        self.mult.len()
    }

    pub fn labels(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn principal(&self) -> usize {
        PRINCIPAL
    }

    /// The class of order two.
    pub fn amb(&self) -> usize {
        self.amb
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mult[x][y]
    }

    pub fn pow(&self, x: usize, k: usize) -> usize {
        (0..k).fold(PRINCIPAL, |acc, _| self.mul(acc, x))
    }

    pub fn inverse(&self, x: usize) -> usize {
        self.labels().find(|&y| self.mul(x, y) == PRINCIPAL).expect("group")
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut acc = x;
        let mut k = 1;
        while acc != PRINCIPAL {
            acc = self.mul(acc, x);
            k += 1;
        }
        k
    }

    pub fn is_generator(&self, x: usize) -> bool {
        self.element_order(x) == self.order()
    }

    /// The classes `C^0, C^1, ..., C^(2q-1)`.
    pub fn powers_of(&self, x: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.order());
        let mut acc = PRINCIPAL;
        for _ in 0..self.order() {
            out.push(acc);
            acc = self.mul(acc, x);
        }
        out
    }
}

/// `θ(R)` for every class `R`, indexed by label: the coefficient of `x^m` counts
/// the ideals of norm `m` in the class.
pub fn theta_all(q: u64, trunc: usize) -> Result<Vec<IntSeries>> {
    require_power_of_two(q)?;
    let mut out = vec![IntSeries::zero(trunc); 2 * q as usize];
    let mut a: i64 = 1;
    while ((a * a) as usize) < trunc {
        let mut b: i64 = 0;
        loop {
            let norm = (a * a + 4 * b * b) as usize;
            if norm >= trunc {
                break;
            }
            out[class_of_ideal(a, b, q)?].add_to(norm, 1);
            if b != 0 {
                out[class_of_ideal(a, -b, q)?].add_to(norm, 1);
            }
            b += 1;
        }
        a += 2;
    }
    Ok(out)
}

pub fn theta(q: u64, label: usize, trunc: usize) -> Result<IntSeries> {
    if label >= 2 * q as usize {
        return Err(Error::InvalidArgument(format!("label {label} out of range for q = {q}")));
    }
    Ok(theta_all(q, trunc)?.swap_remove(label))
}

/// Basis vectors of the dihedral space `DI(q)`.
///
/// At level 3, `vectors[i-1]` is `β_i` for `1 <= i <= q`; at level 1,
/// `vectors[i]` is `α_i` for `0 <= i < q`.
#[derive(Clone, Debug, Serialize)]
pub struct DihedralBasis {
    pub q: u64,
    #[serde(serialize_with = "serialize_level")]
    pub level: Level,
    pub generator: (i64, i64),
    pub vectors: Vec<ExponentSet>,
}

fn serialize_level<S: serde::Serializer>(level: &Level, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u8(level.number())
}

impl DihedralBasis {
    /// `β_i` (level 3, `1 <= i <= q`; `β_0 = 0`) or `α_i` (level 1, `0 <= i < q`).
    pub fn vector(&self, i: usize) -> ExponentSet {
        match self.level {
            Level::Three if i == 0 => ExponentSet::zero(Level::Three),
            Level::Three => self.vectors[i - 1].clone(),
            Level::One => self.vectors[i].clone(),
        }
    }

    /// Lines `beta_i: <dump>` or `alpha_i: <dump>`.
    pub fn table(&self) -> String {
        let (name, first) = match self.level {
            Level::Three => ("beta", 1),
            Level::One => ("alpha", 0),
        };
        self.vectors
            .iter()
            .enumerate()
            .map(|(i, v)| format!("{name}_{}: {v}\n", i + first))
            .collect()
    }
}

/// Default generator: `(3 + 2i)` at level 3, whose norm 13 makes `T_13` act
/// through it, and `(1 + 2i)` at level 1.
pub fn default_generator(level: Level) -> (i64, i64) {
    match level {
        Level::Three => (3, 1),
        Level::One => (1, 1),
    }
}

/// Exponent bound of the finite space containing `DI(q)`: `12q²` (level 3) or `4q²` (level 1).
pub fn dihedral_bound(q: u64, level: Level) -> usize {
    let q2 = (q * q) as usize;
    match level {
        Level::Three => 12 * q2,
        Level::One => 4 * q2,
    }
}

/// Builds `β_1..β_q` (level 3) or `α_0..α_(q-1)` (level 1) from the theta series
/// of powers of the class of `generator = (a, b)` meaning `a + 2bi`, and checks
/// their independence by rank.
pub fn dihedral_basis(q: u64, generator: (i64, i64), level: Level, trunc: usize) -> Result<DihedralBasis> {
    let table = build_table(q)?;
    let gen = class_of_ideal(generator.0, generator.1, q)?;
    if !table.is_generator(gen) {
        return Err(Error::InvalidArgument(format!(
            "({} + {}i) does not generate the Gauss group for q = {q}",
            generator.0,
            2 * generator.1
        )));
    }
    let bound = dihedral_bound(q, level);
    if trunc <= bound {
        return Err(Error::Precision {
            requested: bound + 1,
            available: trunc,
        });
    }
    let thetas = theta_all(q, trunc)?;
    let powers = table.powers_of(gen);
    let qi = q as usize;
    let reductions: Vec<_> = match level {
        Level::Three => {
            let mut v: Vec<_> = (1..qi).map(|i| thetas[powers[i]].reduce_mod2().p3_project(2)).collect();
            v.push(thetas[table.amb()].halve()?.reduce_mod2().p3_project(2));
            v
        }
        Level::One => (0..qi).map(|i| thetas[powers[i]].reduce_mod2()).collect(),
    };
    let vectors = reductions
        .iter()
        .map(|s| decompose(s, level, trunc - 1))
        .collect::<Result<Vec<_>>>()?;
    for (i, v) in vectors.iter().enumerate() {
        if let Some(&k) = v.exps().iter().find(|&&k| k >= bound || (level == Level::Three && k % 6 != 5)) {
            return Err(Error::consistency(
                "dihedral vectors lie in the finite space",
                format!("vector {i} has exponent {k} (bound {bound})"),
            ));
        }
    }
    let rows: Vec<BitVector> = vectors
        .iter()
        .map(|v| BitVector::from_indices(bound, v.exps().iter().copied()))
        .collect();
    let rank = rank_of(&rows);
    if rank != qi {
        return Err(Error::consistency(
            "dihedral space has dimension q",
            format!("rank {rank} for q = {q}"),
        ));
    }
    Ok(DihedralBasis {
        q,
        level,
        generator,
        vectors,
    })
}

/// The GF(2) polynomial `U_n(Y)` with `U_n(t + 1/t) = t^n + t^-n`, as its
/// ascending exponent list.
pub fn u_poly(n: usize) -> Result<Vec<usize>> {
    if n == 0 {
        return Err(Error::InvalidArgument("U_n needs n >= 1".into()));
    }
    let (mut prev, mut cur) = (vec![1usize], vec![2usize]);
    if n == 1 {
        return Ok(prev);
    }
    for _ in 2..n {
        let shifted: Vec<usize> = cur.iter().map(|e| e + 1).collect();
        let next = sym_diff(&shifted, &prev);
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2series::Gf2Series;
    use crate::qexpansions::{build, SeriesName};

    #[test]
    fn class_labels() {
        for q in [1, 2, 4, 8, 16] {
            assert_eq!(class_of_ideal(1, 1, q).unwrap(), 1 % (2 * q as usize));
        }
        // brute force: odd N with N(3 + 2i) ≡ 1 + 2ci mod 32
        let brute = (1..32i64)
            .step_by(2)
            .find(|n| (n * 3).rem_euclid(32) == 1)
            .map(|n| ((2 * n).rem_euclid(32) / 2) as usize)
            .unwrap();
        assert_eq!(class_of_ideal(3, 1, 8).unwrap(), brute);
        assert_eq!(brute, 11);
        for (a, b) in [(1, 1), (3, 5), (-7, 3), (5, -1)] {
            assert_eq!(class_of_ideal(a, b * 8, 8).unwrap(), 8);
        }
        assert!(class_of_ideal(2, 1, 8).is_err());
        assert!(class_of_ideal(1, 1, 6).is_err());
    }

    #[test]
    fn sign_of_generator_does_not_matter() {
        for (a, b) in [(3, 1), (5, -2), (7, 6)] {
            assert_eq!(class_of_ideal(a, b, 8).unwrap(), class_of_ideal(-a, -b, 8).unwrap());
        }
    }

    #[test]
    fn group_structure() {
        for q in [1, 2, 4, 8, 16] {
            let t = build_table(q).unwrap();
            assert_eq!(t.order(), 2 * q as usize);
            assert_eq!(t.amb(), q as usize);
            assert_eq!(t.element_order(t.amb()), 2);
            for x in t.labels() {
                assert_eq!(t.mul(t.principal(), x), x);
                assert_eq!(t.mul(x, t.inverse(x)), PRINCIPAL);
            }
        }
        // norm ≡ 5 mod 8 generates
        let t = build_table(8).unwrap();
        assert!(t.is_generator(class_of_ideal(3, 1, 8).unwrap()));
        assert!(t.is_generator(class_of_ideal(1, 1, 8).unwrap()));
    }

    #[test]
    fn principal_theta_reduces_to_f() {
        for q in [1, 2, 4, 8] {
            let th = theta(q, PRINCIPAL, 3000).unwrap();
            assert!(th.is_nonnegative());
            assert_eq!(th.reduce_mod2(), build(SeriesName::F, 3000).unwrap());
        }
    }

    #[test]
    fn amb_theta_is_even_and_half_is_a_power_of_f() {
        for q in [1u64, 2, 4, 8] {
            let t = build_table(q).unwrap();
            let th = theta(q, t.amb(), 3000).unwrap();
            assert!(th.reduce_mod2().is_zero());
            let half = th.halve().unwrap().reduce_mod2();
            let f = build(SeriesName::F, 3000).unwrap();
            let expected: Gf2Series = f.pow(4 * q * q + 1);
            assert_eq!(half, expected);
        }
    }

    #[test]
    fn dihedral_small_cases() {
        let b1 = dihedral_basis(1, (3, 1), Level::Three, 100).unwrap();
        assert_eq!(b1.vectors, vec![ExponentSet::new(Level::Three, [5]).unwrap()]);
        let b2 = dihedral_basis(2, (3, 1), Level::Three, 200).unwrap();
        assert_eq!(b2.vector(2).exps(), &[17]);
        assert!(b2.vector(0).is_zero());
        assert!(dihedral_basis(2, (3, 1), Level::Three, 48).is_err());
        // (1 + 4i) is principal-adjacent: class 2 has order q for q = 4, not a generator
        assert!(dihedral_basis(4, (1, 2), Level::Three, 400).is_err());
    }

    #[test]
    fn u_polynomials() {
        assert_eq!(u_poly(1).unwrap(), vec![1]);
        assert_eq!(u_poly(2).unwrap(), vec![2]);
        assert_eq!(u_poly(3).unwrap(), vec![1, 3]);
        assert!(u_poly(0).is_err());
        for k in 1..20 {
            let uk = u_poly(k).unwrap();
            let doubled: Vec<usize> = uk.iter().map(|e| 2 * e).collect();
            assert_eq!(u_poly(2 * k).unwrap(), doubled, "U_2k = U_k^2 for k={k}");
        }
        for k in 0..6 {
            assert_eq!(u_poly(1 << k).unwrap(), vec![1 << k]);
        }
    }

    #[test]
    fn u_polynomial_defining_identity() {
        // evaluate U_n(t + 1/t) with Laurent polynomials stored as offset bitsets
        for n in 1..16usize {
            let off = 40usize;
            let mut acc = vec![false; 2 * off + 1];
            for e in u_poly(n).unwrap() {
                // (t + t^-1)^e expands over GF(2) by Lucas: binomial(e, j) odd iff j & e == j
                for j in 0..=e {
                    if j & e == j {
                        let exp = off + e - 2 * j;
                        acc[exp] ^= true;
                    }
                }
            }
            let ones: Vec<i64> = acc
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(i, _)| i as i64 - off as i64)
                .collect();
            assert_eq!(ones, vec![-(n as i64), n as i64]);
        }
    }

    #[test]
    fn q8_level3_table() {
        let b = dihedral_basis(8, (3, 1), Level::Three, 24 * 64).unwrap();
        let expected: [&[usize]; 8] = [
            &[101, 125, 197, 221, 245],
            &[17, 41, 65, 113, 209],
            &[5, 29, 77, 125, 221, 245],
            &[65],
            &[53, 77, 125, 221, 245],
            &[41, 65, 113, 209],
            &[29, 53, 101, 125, 197, 221, 245],
            &[257],
        ];
        for (i, e) in expected.iter().enumerate() {
            assert_eq!(b.vector(i + 1).exps(), *e, "beta_{}", i + 1);
        }
    }

    #[test]
    fn level1_basis_is_independent() {
        for q in [1, 2, 4, 8] {
            let b = dihedral_basis(q, default_generator(Level::One), Level::One, 8 * (q * q) as usize).unwrap();
            assert_eq!(b.vectors.len(), q as usize);
            assert!(b.vectors.iter().all(|v| v.max().unwrap() < 4 * (q * q) as usize));
        }
    }

    #[test]
    fn level1_generator_is_t5_of_a_power_of_f() {
        for q in [1u64, 2, 4, 8] {
            let b = dihedral_basis(q, default_generator(Level::One), Level::One, 8 * (q * q) as usize).unwrap();
            let n = 4 * (q * q) as usize + 1;
            let f = build(SeriesName::F, 5 * 2 * (n + 1)).unwrap();
            let image = crate::heckeop::apply_tp(&f.pow(n as u64), 5).unwrap();
            let image = decompose(&image, Level::One, image.trunc() - 1).unwrap();
            assert_eq!(image, b.vector(q as usize - 1), "q={q}");
        }
    }
}
