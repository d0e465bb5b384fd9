//! Hecke operators acting on exponent sets.
//!
//! The direct route expands `base^n` as a power series, applies [`apply_tp`]
//! and decomposes the result. The series is computed far enough that the
//! image is known below `2(n+1)`, so the decomposition is checked on a window
//! twice as long as the largest exponent `T_p` can produce. Where a recursion
//! exists ([`crate::recursions`]) [`HeckeAction`] uses it instead, unless it
//! was built with [`HeckeAction::direct_only`].

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::expalgebra::{decompose_with, ExponentSet, Level, PowerTable};
use crate::heckeop::apply_tp;
use crate::recursions::{T3Recursion, T5Recursion, T7Recursion};
use crate::require_odd_prime;

fn window(n: usize) -> usize {
    2 * (n + 1)
}

fn check_operator(p: u64, level: Level) -> Result<()> {
    require_odd_prime(p)?;
    if level == Level::Three && p == 3 {
        return Err(Error::InvalidArgument("T_3 does not act on the level-3 space".into()));
    }
    Ok(())
}

fn check_exponent(level: Level, n: usize) -> Result<()> {
    if level.admits(n) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{n} is not admissible at level {level}")))
    }
}

fn direct_with_table(p: u64, level: Level, n: usize, table: &PowerTable) -> Result<ExponentSet> {
    let w = window(n);
    let trunc = p as usize * w;
    let series = level.base(trunc).pow(n as u64);
    let image = apply_tp(&series, p)?;
    debug_assert_eq!(image.trunc(), w);
    decompose_with(table, &image, w - 1)
}

/// `T_p(base^n)` for each `n`, by series arithmetic. Independent of every
/// recursion in the crate.
pub fn direct_images(p: u64, level: Level, ns: &[usize]) -> Result<Vec<ExponentSet>> {
    check_operator(p, level)?;
    for &n in ns {
        check_exponent(level, n)?;
    }
    let Some(&max) = ns.iter().max() else {
        return Ok(Vec::new());
    };
    let mut table = PowerTable::new(level, window(max));
    table.ensure(window(max) - 1);
    ns.par_iter()
        .map(|&n| direct_with_table(p, level, n, &table))
        .collect()
}

pub fn direct_image(p: u64, level: Level, n: usize) -> Result<ExponentSet> {
    Ok(direct_images(p, level, &[n])?.remove(0))
}

/// Cached action of `T_p` on exponent sets of either level.
pub struct HeckeAction {
    images: HashMap<(u64, Level, usize), ExponentSet>,
    t7: T7Recursion,
    t5: T5Recursion,
    t3: T3Recursion,
    use_recursions: bool,
}

impl Default for HeckeAction {
    fn default() -> Self {
        Self::new()
    }
}

impl HeckeAction {
    pub fn new() -> Self {
        HeckeAction {
            images: HashMap::new(),
            t7: T7Recursion::new(),
            t5: T5Recursion::new(),
            t3: T3Recursion::new(),
            use_recursions: true,
        }
    }

    /// Every image goes through the series operator.
    pub fn direct_only() -> Self {
        HeckeAction {
            use_recursions: false,
            ..Self::new()
        }
    }

    fn recursive_image(&mut self, p: u64, level: Level, n: usize) -> Option<Result<ExponentSet>> {
        if !self.use_recursions {
            return None;
        }
        match (level, p, n % 6) {
            (Level::Three, 7, 5) => Some(self.t7.image(n)),
            (Level::Three, 5, 5) => Some(self.t5.image(n)),
            (Level::One, 3, _) => Some(self.t3.image(n)),
            _ => None,
        }
    }

    /// Computes and caches the direct images that `apply` will need.
    pub fn prefetch(&mut self, p: u64, level: Level, ns: &[usize]) -> Result<()> {
        let mut missing: Vec<usize> = ns
            .iter()
            .copied()
            .filter(|&n| {
                !self.images.contains_key(&(p, level, n))
                    && !(self.use_recursions && self.recursion_covers(p, level, n))
            })
            .collect();
        missing.sort_unstable();
        missing.dedup();
        let images = direct_images(p, level, &missing)?;
        for (n, img) in missing.into_iter().zip(images) {
            self.images.insert((p, level, n), img);
        }
        Ok(())
    }

    fn recursion_covers(&self, p: u64, level: Level, n: usize) -> bool {
        matches!((level, p, n % 6), (Level::Three, 7, 5) | (Level::Three, 5, 5) | (Level::One, 3, _))
    }

    pub fn monomial_image(&mut self, p: u64, level: Level, n: usize) -> Result<ExponentSet> {
        check_operator(p, level)?;
        check_exponent(level, n)?;
        if let Some(img) = self.recursive_image(p, level, n) {
            return img;
        }
        if let Some(img) = self.images.get(&(p, level, n)) {
            return Ok(img.clone());
        }
        let img = direct_image(p, level, n)?;
        self.images.insert((p, level, n), img.clone());
        Ok(img)
    }

    /// `T_p w`.
    pub fn apply(&mut self, p: u64, w: &ExponentSet) -> Result<ExponentSet> {
        check_operator(p, w.level())?;
        self.prefetch(p, w.level(), w.exps())?;
        let mut acc = ExponentSet::zero(w.level());
        for &n in w.exps() {
            acc.add_assign(&self.monomial_image(p, w.level(), n)?);
        }
        Ok(acc)
    }

    /// `T_p^e w`.
    pub fn apply_power(&mut self, p: u64, w: &ExponentSet, e: u32) -> Result<ExponentSet> {
        let mut acc = w.clone();
        for _ in 0..e {
            if acc.is_zero() {
                break;
            }
            acc = self.apply(p, &acc)?;
        }
        Ok(acc)
    }
}
