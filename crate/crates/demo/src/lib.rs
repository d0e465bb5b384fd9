//! Browser bindings. Each function returns a JSON string; failures come back
//! as `{"error": "..."}` so the page never has to catch exceptions.

use hecke2_core::action::direct_images;
use hecke2_core::gaussclasses::{default_generator, dihedral_basis, dihedral_bound};
use hecke2_core::heckealgebra::HeckeAlgebra;
use hecke2_core::{Level, Result};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

const MAX_N: usize = 3000;
const MAX_Q: u64 = 32;
const MAX_DEG: usize = 10;

fn respond(r: Result<Value>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

fn level(number: u32) -> Result<Level> {
    Level::from_number(number as u64)
}

/// T_p of every monomial base^n with n <= n_max, as `[{n, exps}]`.
#[wasm_bindgen]
pub fn tp_images(p: u32, level_number: u32, n_max: u32) -> String {
    respond((|| {
        let level = level(level_number)?;
        let n_max = (n_max as usize).min(MAX_N);
        let ns: Vec<usize> = (1..=n_max)
            .filter(|&n| match level {
                Level::Three => n % 6 == 1 || n % 6 == 5,
                Level::One => n % 2 == 1,
            })
            .collect();
        let images = direct_images(p as u64, level, &ns)?;
        Ok(Value::Array(
            ns.iter()
                .zip(images)
                .map(|(&n, w)| json!({ "n": n, "exps": w.exps() }))
                .collect(),
        ))
    })())
}

/// The dihedral basis for 2-power q with the default generator.
#[wasm_bindgen]
pub fn dihedral_table(q: u32, level_number: u32) -> String {
    respond((|| {
        let level = level(level_number)?;
        let q = q as u64;
        if q > MAX_Q {
            return Err(hecke2_core::Error::InvalidArgument(format!("q must be at most {MAX_Q}")));
        }
        let basis = dihedral_basis(q, default_generator(level), level, 2 * dihedral_bound(q, level))?;
        Ok(json!({ "table": basis.table().trim_end(), "basis": basis }))
    })())
}

/// An expansion in X = T_7, Y = T_13: `kind` is `tp` (p ≡ 1 mod 6),
/// `cofactor` (p ≡ 5 mod 6) or `lambda` (p ignored).
#[wasm_bindgen]
pub fn xy_expansion(kind: &str, p: u32, deg: u32) -> String {
    respond((|| {
        let deg = (deg as usize).min(MAX_DEG);
        let mut alg = HeckeAlgebra::new();
        let u = match kind {
            "tp" => alg.tp_xy_series(p as u64, deg)?,
            "cofactor" => alg.tp_t5_cofactor(p as u64, deg)?,
            "lambda" => alg.lambda_series(deg)?,
            other => return Err(hecke2_core::Error::InvalidArgument(format!("unknown expansion `{other}`"))),
        };
        Ok(json!({ "dump": u.to_string(), "series": u }))
    })())
}
