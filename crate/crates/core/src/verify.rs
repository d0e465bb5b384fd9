//! Check suites reproducing the computational claims, at two scales.
//!
//! Each suite returns a [`SuiteReport`] listing named checks. Errors raised
//! while computing a check (including consistency failures) are recorded as
//! failed checks, so a report is always produced.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::action::{direct_images, HeckeAction};
use crate::error::{Error, Result};
use crate::expalgebra::{encode, s_basis, s_dim, ExponentSet, Level, MonomialPair};
use crate::gaussclasses::{
    build_table, class_of_ideal, default_generator, dihedral_basis, dihedral_bound, theta_all, u_poly,
};
use crate::heckealgebra::{HeckeAlgebra, XYSeries};
use crate::heckeop::apply_tp_int;
use crate::linalg::{rank_of, BitVector};
use crate::qexpansions::verify_identities;
use crate::recursions::{verify_modular_equation, T3Recursion, T5Recursion, T7Recursion};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    /// Small parameters, seconds in total.
    Quick,
    /// The full acceptance parameters.
    Full,
}

impl FromStr for Scale {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Scale::Quick),
            "full" => Ok(Scale::Full),
            _ => Err(Error::Parse(format!("unknown scale `{s}` (expected quick or full)"))),
        }
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scale::Quick => "quick",
            Scale::Full => "full",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub id: u8,
    pub title: &'static str,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

pub const SUITES: [(u8, &str); 11] = [
    (1, "q-expansion identities and modular equations"),
    (2, "T_7 on D^5, D^11, ..., D^47"),
    (3, "dihedral basis table for q = 8"),
    (4, "recursions agree with the series operator"),
    (5, "Hecke images are triangular with congruent exponents"),
    (6, "Hecke operators on theta series over Z"),
    (7, "T_13 acts cyclically on DI(q); beta_q = D^(4q^2+1)"),
    (8, "kernel of X is DI(q); joint kernel of X and Y is D^5"),
    (9, "adapted basis relations, independence and faithfulness"),
    (10, "lambda and the square-zero element"),
    (11, "T_p as power series in X and Y"),
];

struct Recorder(Vec<Check>);

impl Recorder {
    fn check(&mut self, name: impl Into<String>, f: impl FnOnce() -> Result<(bool, String)>) {
        let (passed, detail) = match f() {
            Ok(outcome) => outcome,
            Err(e) => (false, e.to_string()),
        };
        self.0.push(Check {
            name: name.into(),
            passed,
            detail,
        });
    }
}

fn pick<T>(scale: Scale, quick: T, full: T) -> T {
    match scale {
        Scale::Quick => quick,
        Scale::Full => full,
    }
}

fn set(level: Level, exps: &[usize]) -> ExponentSet {
    ExponentSet::new(level, exps.iter().copied()).expect("valid literal")
}

fn w5_monomials(bound: usize) -> Vec<usize> {
    (5..bound).step_by(6).collect()
}

/// `T_7(D^n)` for `n = 5, 11, ..., 47`.
pub fn t7_table() -> Vec<(usize, ExponentSet)> {
    let images: [&[usize]; 8] = [&[], &[5], &[], &[17], &[11], &[5, 29], &[23], &[17, 41]];
    images
        .iter()
        .enumerate()
        .map(|(i, e)| (6 * i + 5, set(Level::Three, e)))
        .collect()
}

/// `β_1, ..., β_8` for `q = 8` and the generator `(3 + 2i)`.
pub fn beta_table_q8() -> Vec<ExponentSet> {
    let rows: [&[usize]; 8] = [
        &[101, 125, 197, 221, 245],
        &[17, 41, 65, 113, 209],
        &[5, 29, 77, 125, 221, 245],
        &[65],
        &[53, 77, 125, 221, 245],
        &[41, 65, 113, 209],
        &[29, 53, 101, 125, 197, 221, 245],
        &[257],
    ];
    rows.iter().map(|r| set(Level::Three, r)).collect()
}

pub fn run_suite(id: u8, scale: Scale, alg: &mut HeckeAlgebra) -> Result<SuiteReport> {
    let title = SUITES
        .iter()
        .find(|(i, _)| *i == id)
        .map(|(_, t)| *t)
        .ok_or_else(|| Error::InvalidArgument(format!("no suite {id} (expected 1..=11)")))?;
    let mut rec = Recorder(Vec::new());
    match id {
        1 => identities(scale, &mut rec),
        2 => t7_golden(&mut rec),
        3 => dihedral_golden(scale, &mut rec),
        4 => recursion_oracles(scale, &mut rec),
        5 => triangularity(scale, &mut rec),
        6 => theta_identities(scale, &mut rec),
        7 => cyclicity(scale, alg, &mut rec),
        8 => kernels(scale, alg, &mut rec),
        9 => adapted(scale, alg, &mut rec),
        10 => lambda_epsilon(scale, alg, &mut rec),
        _ => series_shadows(scale, alg, &mut rec),
    }
    Ok(SuiteReport {
        id,
        title,
        checks: rec.0,
    })
}

/// Every suite in order, sharing one [`HeckeAlgebra`] cache.
pub fn run_all(scale: Scale) -> Vec<SuiteReport> {
    let mut alg = HeckeAlgebra::new();
    SUITES
        .iter()
        .map(|&(id, _)| run_suite(id, scale, &mut alg).expect("listed suite"))
        .collect()
}

fn identities(scale: Scale, rec: &mut Recorder) {
    let trunc = pick(scale, 1 << 12, 1 << 14);
    rec.check(format!("15 identities at trunc {trunc}"), || {
        let report = verify_identities(trunc)?;
        let failed: Vec<_> = report.failures().collect();
        Ok((report.checks.len() == 15 && failed.is_empty(), format!("failed: {failed:?}")))
    });
    let trunc = pick(scale, 1 << 10, 1 << 12);
    for p in [3, 5, 7] {
        rec.check(format!("level-{p} modular equation at trunc {trunc}"), || {
            Ok((verify_modular_equation(p, trunc)?, String::new()))
        });
    }
}

fn t7_golden(rec: &mut Recorder) {
    let table = t7_table();
    let ns: Vec<usize> = table.iter().map(|(n, _)| *n).collect();
    rec.check("series operator", || {
        let direct = direct_images(7, Level::Three, &ns)?;
        let bad: Vec<_> = table.iter().zip(&direct).filter(|((_, e), d)| e != *d).map(|((n, _), _)| n).collect();
        Ok((bad.is_empty(), format!("mismatch at n = {bad:?}")))
    });
    rec.check("recursion", || {
        let mut t7 = T7Recursion::new();
        let mut bad = Vec::new();
        for (n, e) in &table {
            if &t7.image(*n)? != e {
                bad.push(*n);
            }
        }
        Ok((bad.is_empty(), format!("mismatch at n = {bad:?}")))
    });
}

fn dihedral_golden(scale: Scale, rec: &mut Recorder) {
    match scale {
        Scale::Full => rec.check("beta_1..beta_8 for q = 8, C = (3+2i)", || {
            let b = dihedral_basis(8, (3, 1), Level::Three, 24 * 64)?;
            let bad: Vec<usize> = (1..=8).filter(|&i| b.vector(i) != beta_table_q8()[i - 1]).collect();
            Ok((bad.is_empty(), format!("rows differing: {bad:?}")))
        }),
        Scale::Quick => rec.check("beta_4 = D^65 for q = 4", || {
            let b = dihedral_basis(4, (3, 1), Level::Three, 24 * 16)?;
            Ok((b.vector(4) == set(Level::Three, &[65]), b.table()))
        }),
    }
}

fn recursion_oracles(scale: Scale, rec: &mut Recorder) {
    let max5 = pick(scale, 200, 599);
    let ns: Vec<usize> = w5_monomials(max5 + 1);
    rec.check(format!("T_7 recursion, n <= {max5}"), || {
        let direct = direct_images(7, Level::Three, &ns)?;
        let mut r = T7Recursion::new();
        let mut bad = Vec::new();
        for (n, d) in ns.iter().zip(&direct) {
            if &r.image(*n)? != d {
                bad.push(*n);
            }
        }
        Ok((bad.is_empty(), format!("mismatch at n = {bad:?}")))
    });
    rec.check(format!("T_5 recursion, n <= {max5}"), || {
        let direct = direct_images(5, Level::Three, &ns)?;
        let mut r = T5Recursion::new();
        let mut bad = Vec::new();
        for (n, d) in ns.iter().zip(&direct) {
            if &r.image(*n)? != d {
                bad.push(*n);
            }
        }
        Ok((bad.is_empty(), format!("mismatch at n = {bad:?}")))
    });
    let max3 = pick(scale, 200, 401);
    rec.check(format!("level-1 T_3 recursion, odd n <= {max3}"), || {
        let odd: Vec<usize> = (1..=max3).step_by(2).collect();
        let direct = direct_images(3, Level::One, &odd)?;
        let mut r = T3Recursion::new();
        let mut bad = Vec::new();
        for (n, d) in odd.iter().zip(&direct) {
            if &r.image(*n)? != d {
                bad.push(*n);
            }
        }
        Ok((bad.is_empty(), format!("mismatch at n = {bad:?}")))
    });
}

fn triangularity(scale: Scale, rec: &mut Recorder) {
    let primes: &[u64] = pick(scale, &[5, 7, 11, 13], &[5, 7, 11, 13, 17, 19, 23, 29, 31]);
    let bound = pick(scale, 100, 200);
    let ns: Vec<usize> = (1..bound).filter(|n| n % 2 == 1 && n % 3 != 0).collect();
    for &p in primes {
        rec.check(format!("T_{p}(D^n), n < {bound}"), || {
            let images = direct_images(p, Level::Three, &ns)?;
            let bad: Vec<usize> = ns
                .iter()
                .zip(&images)
                .filter(|(&n, img)| img.exps().iter().any(|&k| k > n || k % 24 != (p as usize * n) % 24))
                .map(|(&n, _)| n)
                .collect();
            Ok((bad.is_empty(), format!("violations at n = {bad:?}")))
        });
    }
}

/// The prime ideal `(a + 2bi)` of norm `p ≡ 1 mod 4`.
fn split_prime(p: u64) -> Option<(i64, i64)> {
    let p = p as i64;
    (1..).step_by(2).take_while(|a| a * a < p).find_map(|a| {
        let rest = p - a * a;
        let b = (rest / 4).isqrt();
        (rest % 4 == 0 && b * b == rest / 4).then_some((a, b))
    })
}

fn theta_identities(scale: Scale, rec: &mut Recorder) {
    let qs: &[u64] = pick(scale, &[2], &[2, 4]);
    let trunc = pick(scale, 600, 2000);
    for &q in qs {
        for p in [5u64, 13, 17, 29, 3, 7, 11, 19] {
            let split = p % 4 == 1;
            let name = if split {
                format!("T_{p} theta(R) = theta(PR) + theta(P'R), q = {q}")
            } else {
                format!("T_{p} theta(R) = 0, q = {q}")
            };
            rec.check(name, || {
                let table = build_table(q)?;
                let wide = theta_all(q, p as usize * trunc)?;
                let narrow = theta_all(q, trunc)?;
                let classes = split
                    .then(|| split_prime(p).expect("p ≡ 1 mod 4 is a sum of two squares"))
                    .map(|(a, b)| Ok::<_, Error>((class_of_ideal(a, b, q)?, class_of_ideal(a, -b, q)?)))
                    .transpose()?;
                let mut bad = Vec::new();
                for r in table.labels() {
                    let lhs = apply_tp_int(&wide[r], p)?;
                    let ok = match classes {
                        Some((pc, pbar)) => {
                            let rhs = narrow[table.mul(pc, r)].add(&narrow[table.mul(pbar, r)]);
                            lhs.eq_at(&rhs, trunc)?
                        }
                        None => lhs.truncated(trunc)?.is_zero(),
                    };
                    if !ok {
                        bad.push(r);
                    }
                }
                Ok((bad.is_empty(), format!("failing classes: {bad:?}")))
            });
        }
    }
}

fn apply_poly_in_y(act: &mut HeckeAction, exps: &[usize], w: &ExponentSet) -> Result<ExponentSet> {
    let mut acc = ExponentSet::zero(w.level());
    for &e in exps {
        acc.add_assign(&act.apply_power(13, w, e as u32)?);
    }
    Ok(acc)
}

fn cyclicity(scale: Scale, alg: &mut HeckeAlgebra, rec: &mut Recorder) {
    let q: u64 = pick(scale, 4, 8);
    rec.check(format!("beta_(q-i) = U_i(T_13) beta_q, q = {q}"), || {
        let b = dihedral_basis(q, (3, 1), Level::Three, 2 * dihedral_bound(q, Level::Three))?;
        let mut bad = Vec::new();
        for i in 1..=q as usize {
            let lhs = apply_poly_in_y(alg.action(), &u_poly(i)?, &b.vector(q as usize))?;
            if lhs != b.vector(q as usize - i) {
                bad.push(i);
            }
        }
        Ok((bad.is_empty(), format!("failing i: {bad:?}")))
    });
    rec.check(format!("Y^{q} beta_q = 0 and Y^{} beta_q = D^5", q - 1), || {
        let b = dihedral_basis(q, (3, 1), Level::Three, 2 * dihedral_bound(q, Level::Three))?;
        let top = alg.action().apply_power(13, &b.vector(q as usize), q as u32 - 1)?;
        let next = alg.action().apply(13, &top)?;
        Ok((next.is_zero() && top == set(Level::Three, &[5]), format!("Y^(q-1) beta_q = {top}")))
    });
    let qs: &[u64] = pick(scale, &[1, 2, 4], &[1, 2, 4, 8]);
    for &q in qs {
        rec.check(format!("beta_q = D^(4q^2+1), q = {q}"), || {
            let b = dihedral_basis(q, (3, 1), Level::Three, 2 * dihedral_bound(q, Level::Three))?;
            let expect = set(Level::Three, &[4 * (q * q) as usize + 1]);
            Ok((b.vector(q as usize) == expect, format!("beta_q = {}", b.vector(q as usize))))
        });
    }
}

fn kernels(scale: Scale, alg: &mut HeckeAlgebra, rec: &mut Recorder) {
    let qs: &[u64] = pick(scale, &[1, 2, 4], &[1, 2, 4, 8]);
    for &q in qs {
        rec.check(format!("ker X on W5({q}) = DI({q})"), || {
            let kernel = alg.kernel_x(q)?;
            let bound = dihedral_bound(q, Level::Three);
            let dihedral = dihedral_basis(q, default_generator(Level::Three), Level::Three, 2 * bound)?;
            let rows = |vs: &[ExponentSet]| -> Vec<BitVector> {
                vs.iter().map(|v| BitVector::from_indices(bound, v.exps().iter().copied())).collect()
            };
            let (k, d) = (rows(&kernel), rows(&dihedral.vectors));
            let joint = rank_of(&[k.clone(), d.clone()].concat());
            let ok = rank_of(&k) == q as usize && rank_of(&d) == q as usize && joint == q as usize;
            Ok((ok, format!("dim {}, joint rank {joint}", kernel.len())))
        });
    }
    let max_n = pick(scale, 200, 767);
    rec.check(format!("ker X ∩ ker Y on n <= {max_n} is span(D^5)"), || {
        let kernel = alg.xy_kernel(max_n)?;
        Ok((kernel == [set(Level::Three, &[5])], format!("{kernel:?}")))
    });
}

fn adapted(scale: Scale, alg: &mut HeckeAlgebra, rec: &mut Recorder) {
    let r: u32 = pick(scale, 4, 8);
    rec.check(format!("defining relations via Hecke operators, r = {r}"), || {
        let basis = alg.adapted_basis(r)?;
        let mut bad = Vec::new();
        for (pair, m) in basis.vectors() {
            let x = alg.action().apply(7, &m)?;
            let y = alg.action().apply(13, &m)?;
            let shifted = |a: Option<u32>, b: Option<u32>| match (a, b) {
                (Some(a), Some(b)) => basis.vector(a, b).expect("lower degree"),
                _ => ExponentSet::zero(Level::Three),
            };
            let ex = shifted(pair.a.checked_sub(1), Some(pair.b));
            let ey = shifted(Some(pair.a), pair.b.checked_sub(1));
            if x != ex || y != ey {
                bad.push(pair.to_string());
            }
        }
        let d5 = basis.vector(0, 0) == Some(set(Level::Three, &[5]));
        Ok((bad.is_empty() && d5, format!("failing: {bad:?}")))
    });
    rec.check(format!("m_(a,b), a+b <= k, span S_(k+1) for k <= {r}"), || {
        let basis = alg.adapted_basis(r)?;
        let dim = s_dim(r + 1);
        let mut detail = String::new();
        let mut ok = true;
        for k in 0..=r {
            let rows: Vec<BitVector> = s_basis(k + 1)
                .into_iter()
                .map(|p| {
                    let v = basis.vector(p.a, p.b).expect("in range");
                    let idx = v.exps().iter().map(|&n| {
                        crate::expalgebra::decode(n, Level::Three).map(MonomialPair::index)
                    });
                    idx.collect::<Result<Vec<_>>>().map(|i| BitVector::from_indices(dim, i))
                })
                .collect::<Result<_>>()?;
            let inside = rows.iter().all(|v| v.ones().all(|i| i < s_dim(k + 1)));
            let rank = rank_of(&rows);
            ok &= inside && rank == s_dim(k + 1);
            detail = format!("rank {rank} at k = {k}");
        }
        Ok((ok, detail))
    });
    rec.check(format!("X^a Y^b m_(a,b) = D^5 for a+b <= {r}"), || {
        let basis = alg.adapted_basis(r)?;
        let mut bad = Vec::new();
        for (pair, m) in basis.vectors() {
            let x = alg.action().apply_power(7, &m, pair.a)?;
            let xy = alg.action().apply_power(13, &x, pair.b)?;
            if xy != set(Level::Three, &[5]) {
                bad.push(pair.to_string());
            }
        }
        Ok((bad.is_empty(), format!("failing: {bad:?}")))
    });
}

fn random_w(rng: &mut ChaCha8Rng, bound: usize, residues: &[usize]) -> ExponentSet {
    let pool: Vec<usize> = (1..bound).filter(|n| residues.contains(&(n % 6))).collect();
    loop {
        let size = rng.gen_range(1..=8);
        let exps = (0..size).map(|_| pool[rng.gen_range(0..pool.len())]);
        let w = ExponentSet::new(Level::Three, exps).expect("admissible");
        if !w.is_zero() {
            return w;
        }
    }
}

fn lambda_epsilon(scale: Scale, alg: &mut HeckeAlgebra, rec: &mut Recorder) {
    rec.check("lambda = X + Y mod (X,Y)^2", || {
        let l = alg.lambda_series(2)?;
        Ok((l == XYSeries::x(2).add(&XYSeries::y(2)), l.to_string()))
    });
    let bound = pick(scale, 60, 100);
    rec.check(format!("T_5^2 = lambda^2 on D^n, n < {bound}, deg 4"), || {
        let sq = alg.lambda_series(4)?.square();
        let mut bad = Vec::new();
        for n in w5_monomials(bound) {
            let w = set(Level::Three, &[n]);
            let once = alg.action().apply(5, &w)?;
            let twice = alg.action().apply(5, &once)?;
            if alg.apply_xy(&sq, &w)? != twice {
                bad.push(n);
            }
        }
        Ok((bad.is_empty(), format!("failing n: {bad:?}")))
    });
    let (count, max_exp) = pick(scale, (10, 120), (50, 300));
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let samples: Vec<ExponentSet> = (0..count).map(|_| random_w(&mut rng, max_exp, &[1, 5])).collect();
    rec.check(format!("epsilon^2 = 0 on {count} random W elements, exponents < {max_exp}"), || {
        let mut bad = Vec::new();
        for w in &samples {
            let deg = alg.annihilating_degree(w)?;
            let once = alg.epsilon_apply(w, deg)?;
            if !alg.epsilon_apply(&once, deg)?.is_zero() {
                bad.push(w.to_string());
            }
        }
        Ok((bad.is_empty(), format!("failing: {bad:?}")))
    });
    rec.check(format!("epsilon w != 0 for {count} random nonzero w in W5"), || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed + 1);
        let mut bad = Vec::new();
        for _ in 0..count {
            let w = random_w(&mut rng, max_exp, &[5]);
            let deg = alg.annihilating_degree(&w)?;
            if alg.epsilon_apply(&w, deg)?.is_zero() {
                bad.push(w.to_string());
            }
        }
        Ok((bad.is_empty(), format!("failing: {bad:?}")))
    });
    let top: u32 = pick(scale, 3, 6);
    rec.check(format!("m_(a,b) and epsilon m_(a,b), a+b <= {top}, independent"), || {
        let basis = alg.adapted_basis(top)?;
        let mut vectors = Vec::new();
        for m in basis.vectors().into_values() {
            let e = alg.epsilon_apply(&m, top as usize + 1)?;
            vectors.push(m);
            vectors.push(e);
        }
        let width = vectors.iter().filter_map(ExponentSet::max).max().unwrap_or(0) + 1;
        let rows: Vec<BitVector> = vectors
            .iter()
            .map(|v| BitVector::from_indices(width, v.exps().iter().copied()))
            .collect();
        let rank = rank_of(&rows);
        Ok((rank == rows.len(), format!("rank {rank} of {}", rows.len())))
    });
    let max_m = pick(scale, 20, 50);
    rec.check(format!("T_5(D^(6m+5)) = D^(6m+1) + lower, m <= {max_m}"), || {
        let ns: Vec<usize> = (0..=max_m).map(|m| 6 * m + 5).collect();
        let images = direct_images(5, Level::Three, &ns)?;
        let bad: Vec<usize> = ns
            .iter()
            .zip(&images)
            .filter(|(&n, img)| img.max() != Some(n - 4) || img.exps().iter().any(|k| k % 6 != 1))
            .map(|(&n, _)| n)
            .collect();
        Ok((bad.is_empty(), format!("failing n: {bad:?}")))
    });
}

fn s_monomials(m: u32) -> Vec<ExponentSet> {
    s_basis(m)
        .into_iter()
        .map(|p| set(Level::Three, &[encode(p, Level::Three)]))
        .collect()
}

fn series_shadows(scale: Scale, alg: &mut HeckeAlgebra, rec: &mut Recorder) {
    let deg: usize = pick(scale, 3, 4);
    let space = s_monomials(deg as u32);
    for p in [19u64, 31] {
        rec.check(format!("T_{p} = u(X,Y) on S_{deg}"), || {
            let u = alg.tp_xy_series(p, deg)?;
            let mut bad = Vec::new();
            for w in &space {
                if alg.apply_xy(&u, w)? != alg.action().apply(p, w)? {
                    bad.push(w.to_string());
                }
            }
            Ok((bad.is_empty() && !u.constant_term(), format!("u = {u}; failing: {bad:?}")))
        });
    }
    for p in [11u64, 17, 23] {
        rec.check(format!("T_{p} = t(X,Y) T_5 on S_{deg}"), || {
            let t = alg.tp_t5_cofactor(p, deg)?;
            let mut bad = Vec::new();
            for w in &space {
                let t5 = alg.action().apply(5, w)?;
                if alg.apply_xy(&t, &t5)? != alg.action().apply(p, w)? {
                    bad.push(w.to_string());
                }
            }
            Ok((bad.is_empty(), format!("t = {t}; failing: {bad:?}")))
        });
    }
    rec.check("T_5 cofactor is 1", || {
        let t = alg.tp_t5_cofactor(5, deg)?;
        Ok((t == XYSeries::new(deg, [(0, 0)])?, t.to_string()))
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_scale_passes() {
        for report in run_all(Scale::Quick) {
            assert!(report.passed(), "suite {}: {:?}", report.id, report.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn split_primes() {
        assert_eq!(split_prime(5), Some((1, 1)));
        assert_eq!(split_prime(13), Some((3, 1)));
        assert_eq!(split_prime(17), Some((1, 2)));
        assert_eq!(split_prime(29), Some((5, 1)));
        assert_eq!(split_prime(7), None);
    }

    #[test]
    fn scale_parsing() {
        assert_eq!("quick".parse::<Scale>().unwrap(), Scale::Quick);
        assert!("medium".parse::<Scale>().is_err());
        assert!(run_suite(12, Scale::Quick, &mut HeckeAlgebra::new()).is_err());
    }
}
