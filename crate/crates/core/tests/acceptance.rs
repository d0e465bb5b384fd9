//! The eleven acceptance criteria, each checked at exact equality against the
//! public API with literal expected values. Prints one PASS/FAIL line per
//! criterion and exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use hecke2_core::action::{direct_images, HeckeAction};
use hecke2_core::expalgebra::{decode, encode, s_basis, s_dim};
use hecke2_core::gaussclasses::{build_table, class_of_ideal, dihedral_basis, theta_all, u_poly};
use hecke2_core::heckealgebra::{HeckeAlgebra, XYSeries};
use hecke2_core::heckeop::apply_tp_int;
use hecke2_core::linalg::{rank_of, BitVector};
use hecke2_core::qexpansions::verify_identities;
use hecke2_core::recursions::{verify_modular_equation, T3Recursion, T5Recursion, T7Recursion};
use hecke2_core::{ExponentSet, Level};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn w(exps: &[usize]) -> ExponentSet {
    ExponentSet::new(Level::Three, exps.iter().copied()).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T: std::fmt::Display>(err: T) -> String {
    err.to_string()
}

fn identities() -> Outcome {
    let report = verify_identities(1 << 14).map_err(e)?;
    ensure(report.checks.len() == 15, || format!("{} identities", report.checks.len()))?;
    ensure(report.all_passed(), || format!("failed: {:?}", report.failures().collect::<Vec<_>>()))?;
    for p in [3, 5, 7] {
        ensure(verify_modular_equation(p, 1 << 12).map_err(e)?, || format!("modular equation p={p}"))?;
    }
    Ok(())
}

fn t7_table() -> Outcome {
    let expected = [
        (5, w(&[])),
        (11, w(&[5])),
        (17, w(&[])),
        (23, w(&[17])),
        (29, w(&[11])),
        (35, w(&[5, 29])),
        (41, w(&[23])),
        (47, w(&[17, 41])),
    ];
    let ns: Vec<usize> = expected.iter().map(|(n, _)| *n).collect();
    let direct = direct_images(7, Level::Three, &ns).map_err(e)?;
    let mut rec = T7Recursion::new();
    for ((n, want), got) in expected.iter().zip(&direct) {
        ensure(got == want, || format!("direct T_7(D^{n}) = {got}"))?;
        let r = rec.image(*n).map_err(e)?;
        ensure(&r == want, || format!("recursive T_7(D^{n}) = {r}"))?;
    }
    Ok(())
}

fn beta_table() -> Outcome {
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
    let b = dihedral_basis(8, (3, 1), Level::Three, 24 * 64).map_err(e)?;
    for (i, exps) in expected.iter().enumerate() {
        ensure(b.vector(i + 1) == w(exps), || format!("beta_{} = {}", i + 1, b.vector(i + 1)))?;
    }
    Ok(())
}

fn recursion_oracles() -> Outcome {
    let ns: Vec<usize> = (5..=599).step_by(6).collect();
    let (mut t7, mut t5) = (T7Recursion::new(), T5Recursion::new());
    for (n, d) in ns.iter().zip(direct_images(7, Level::Three, &ns).map_err(e)?) {
        ensure(t7.image(*n).map_err(e)? == d, || format!("T_7 at n={n}"))?;
    }
    for (n, d) in ns.iter().zip(direct_images(5, Level::Three, &ns).map_err(e)?) {
        ensure(t5.image(*n).map_err(e)? == d, || format!("T_5 at n={n}"))?;
    }
    let odd: Vec<usize> = (1..=401).step_by(2).collect();
    let mut t3 = T3Recursion::new();
    for (n, d) in odd.iter().zip(direct_images(3, Level::One, &odd).map_err(e)?) {
        ensure(t3.image(*n).map_err(e)? == d, || format!("T_3 at n={n}"))?;
    }
    Ok(())
}

fn triangularity() -> Outcome {
    let ns: Vec<usize> = (1..200).filter(|n| n % 2 == 1 && n % 3 != 0).collect();
    for p in [5u64, 7, 11, 13, 17, 19, 23, 29, 31] {
        for (n, img) in ns.iter().zip(direct_images(p, Level::Three, &ns).map_err(e)?) {
            for &k in img.exps() {
                ensure(k <= *n && k % 24 == (p as usize * n) % 24, || {
                    format!("T_{p}(D^{n}) contains D^{k}")
                })?;
            }
        }
    }
    Ok(())
}

fn theta_hecke() -> Outcome {
    let trunc = 2000;
    // primes of norm p ≡ 1 mod 4 as (a + 2bi)
    let split = [(5u64, (1i64, 1i64)), (13, (3, 1)), (17, (1, 2)), (29, (5, 1))];
    for q in [2u64, 4] {
        let table = build_table(q).map_err(e)?;
        let narrow = theta_all(q, trunc).map_err(e)?;
        for (p, (a, b)) in split {
            let wide = theta_all(q, p as usize * trunc).map_err(e)?;
            let pc = class_of_ideal(a, b, q).map_err(e)?;
            let pbar = class_of_ideal(a, -b, q).map_err(e)?;
            for r in table.labels() {
                let lhs = apply_tp_int(&wide[r], p).map_err(e)?;
                let rhs = narrow[table.mul(pc, r)].add(&narrow[table.mul(pbar, r)]);
                ensure(lhs.eq_at(&rhs, trunc).map_err(e)?, || format!("T_{p} theta, q={q}, class {r}"))?;
            }
        }
        for p in [3u64, 7, 11, 19] {
            let wide = theta_all(q, p as usize * trunc).map_err(e)?;
            for r in table.labels() {
                let lhs = apply_tp_int(&wide[r], p).map_err(e)?.truncated(trunc).map_err(e)?;
                ensure(lhs.is_zero(), || format!("T_{p} theta nonzero, q={q}, class {r}"))?;
            }
        }
    }
    Ok(())
}

fn y_cyclicity() -> Outcome {
    let b = dihedral_basis(8, (3, 1), Level::Three, 24 * 64).map_err(e)?;
    let mut act = HeckeAction::new();
    let beta8 = b.vector(8);
    for i in 1..=8 {
        let mut acc = ExponentSet::zero(Level::Three);
        for k in u_poly(i).map_err(e)? {
            acc.add_assign(&act.apply_power(13, &beta8, k as u32).map_err(e)?);
        }
        ensure(acc == b.vector(8 - i), || format!("U_{i}(Y) beta_8 = {acc}"))?;
    }
    let y7 = act.apply_power(13, &beta8, 7).map_err(e)?;
    ensure(!y7.is_zero() && y7 == w(&[5]), || format!("Y^7 beta_8 = {y7}"))?;
    ensure(act.apply(13, &y7).map_err(e)?.is_zero(), || "Y^8 beta_8 != 0".into())?;
    for (q, top) in [(1u64, 5usize), (2, 17), (4, 65), (8, 257)] {
        let b = dihedral_basis(q, (3, 1), Level::Three, 24 * (q * q) as usize).map_err(e)?;
        ensure(b.vector(q as usize) == w(&[top]), || format!("beta_{q} = {}", b.vector(q as usize)))?;
    }
    Ok(())
}

fn kernels() -> Outcome {
    let mut alg = HeckeAlgebra::new();
    for q in [1u64, 2, 4, 8] {
        let bound = 12 * (q * q) as usize;
        let kernel = alg.kernel_x(q).map_err(e)?;
        let dihedral = dihedral_basis(q, (3, 1), Level::Three, 2 * bound).map_err(e)?;
        let rows = |vs: &[ExponentSet]| -> Vec<BitVector> {
            vs.iter().map(|v| BitVector::from_indices(bound, v.exps().iter().copied())).collect()
        };
        let (k, d) = (rows(&kernel), rows(&dihedral.vectors));
        ensure(rank_of(&k) == q as usize, || format!("dim ker X = {} for q={q}", rank_of(&k)))?;
        for v in &d {
            ensure(rank_of(&[k.clone(), vec![v.clone()]].concat()) == q as usize, || {
                format!("DI({q}) not in ker X")
            })?;
        }
        for v in &k {
            ensure(rank_of(&[d.clone(), vec![v.clone()]].concat()) == q as usize, || {
                format!("ker X not in DI({q})")
            })?;
        }
    }
    let joint = alg.xy_kernel(767).map_err(e)?;
    ensure(joint == [w(&[5])], || format!("joint kernel {joint:?}"))
}

fn adapted_basis() -> Outcome {
    let mut alg = HeckeAlgebra::new();
    let basis = alg.adapted_basis(8).map_err(e)?;
    ensure(basis.vector(0, 0) == Some(w(&[5])), || "m_(0,0) != D^5".into())?;
    let mut act = HeckeAction::new();
    for (pair, m) in basis.vectors() {
        let x = act.apply(7, &m).map_err(e)?;
        let y = act.apply(13, &m).map_err(e)?;
        let ex = pair.a.checked_sub(1).map_or(w(&[]), |a| basis.vector(a, pair.b).unwrap());
        let ey = pair.b.checked_sub(1).map_or(w(&[]), |b| basis.vector(pair.a, b).unwrap());
        ensure(x == ex && y == ey, || format!("shift relations fail at {pair}"))?;
        let down = act.apply_power(7, &m, pair.a).map_err(e)?;
        let down = act.apply_power(13, &down, pair.b).map_err(e)?;
        ensure(down == w(&[5]), || format!("X^a Y^b m_{pair} = {down}"))?;
    }
    let dim = s_dim(9);
    let rows: Vec<BitVector> = s_basis(9)
        .into_iter()
        .map(|p| {
            let v = basis.vector(p.a, p.b).unwrap();
            BitVector::from_indices(dim, v.exps().iter().map(|&n| decode(n, Level::Three).unwrap().index()))
        })
        .collect();
    let rank = rank_of(&rows);
    ensure(rank == 45, || format!("rank {rank} at k = 8"))
}

fn lambda_epsilon() -> Outcome {
    let mut alg = HeckeAlgebra::new();
    let l2 = alg.lambda_series(2).map_err(e)?;
    ensure(l2 == XYSeries::new(2, [(1, 0), (0, 1)]).unwrap(), || format!("lambda mod deg 2 = {l2}"))?;
    let sq = alg.lambda_series(4).map_err(e)?.square();
    let mut act = HeckeAction::new();
    for n in (5..100).step_by(6) {
        let once = act.apply(5, &w(&[n])).map_err(e)?;
        let twice = act.apply(5, &once).map_err(e)?;
        ensure(alg.apply_xy(&sq, &w(&[n])).map_err(e)? == twice, || format!("T_5^2 vs lambda^2 at D^{n}"))?;
    }
    let pool: Vec<usize> = (1..300).filter(|n| n % 2 == 1 && n % 3 != 0).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(20_261_015);
    let mut tested = 0;
    while tested < 50 {
        let size = rng.gen_range(1..=8);
        let v = ExponentSet::new(Level::Three, (0..size).map(|_| pool[rng.gen_range(0..pool.len())])).unwrap();
        if v.is_zero() {
            continue;
        }
        tested += 1;
        let deg = alg.annihilating_degree(&v).map_err(e)?;
        let once = alg.epsilon_apply(&v, deg).map_err(e)?;
        let twice = alg.epsilon_apply(&once, deg).map_err(e)?;
        ensure(twice.is_zero(), || format!("epsilon^2 {v} = {twice}"))?;
        if v.residue_part(1).is_zero() {
            ensure(!once.is_zero(), || format!("epsilon kills {v} in W5"))?;
        }
    }
    let basis = alg.adapted_basis(6).map_err(e)?;
    let mut vectors = Vec::new();
    for m in basis.vectors().into_values() {
        vectors.push(alg.epsilon_apply(&m, 7).map_err(e)?);
        vectors.push(m);
    }
    let rows: Vec<BitVector> = vectors
        .iter()
        .map(|v| BitVector::from_indices(4096, v.exps().iter().copied()))
        .collect();
    ensure(rank_of(&rows) == 56, || format!("rank {} of 56", rank_of(&rows)))?;
    let ns: Vec<usize> = (0..=50).map(|m| 6 * m + 5).collect();
    for (n, img) in ns.iter().zip(direct_images(5, Level::Three, &ns).map_err(e)?) {
        ensure(img.max() == Some(n - 4) && img.exps().iter().all(|k| k % 6 == 1), || {
            format!("T_5(D^{n}) = {img}")
        })?;
    }
    Ok(())
}

fn series_shadows() -> Outcome {
    let mut alg = HeckeAlgebra::new();
    let space: Vec<ExponentSet> = s_basis(4).into_iter().map(|p| w(&[encode(p, Level::Three)])).collect();
    for p in [19u64, 31] {
        let u = alg.tp_xy_series(p, 4).map_err(e)?;
        ensure(!u.constant_term(), || format!("T_{p} series has constant term"))?;
        for v in &space {
            let lhs = alg.apply_xy(&u, v).map_err(e)?;
            let rhs = alg.action().apply(p, v).map_err(e)?;
            ensure(lhs == rhs, || format!("T_{p} vs u = {u} at {v}"))?;
        }
    }
    for p in [11u64, 17, 23] {
        let t = alg.tp_t5_cofactor(p, 4).map_err(e)?;
        for v in &space {
            let t5 = alg.action().apply(5, v).map_err(e)?;
            let lhs = alg.apply_xy(&t, &t5).map_err(e)?;
            let rhs = alg.action().apply(p, v).map_err(e)?;
            ensure(lhs == rhs, || format!("T_{p} vs t = {t} at {v}"))?;
        }
    }
    let one = alg.tp_t5_cofactor(5, 4).map_err(e)?;
    ensure(one == XYSeries::new(4, [(0, 0)]).unwrap(), || format!("T_5 cofactor {one}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("identities and modular equations", identities),
        ("T_7 on D^5..D^47", t7_table),
        ("beta table for q = 8", beta_table),
        ("recursions agree with the series operator", recursion_oracles),
        ("triangular Hecke images", triangularity),
        ("Hecke operators on theta series", theta_hecke),
        ("T_13-cyclicity of DI(8), beta_q = D^(4q^2+1)", y_cyclicity),
        ("kernel of X and joint kernel", kernels),
        ("adapted basis to r = 8", adapted_basis),
        ("lambda and epsilon", lambda_epsilon),
        ("T_p as series in X and Y", series_shadows),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS {:>2} {name} ({secs:.2}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.2}s): {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
