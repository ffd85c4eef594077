//! Distribution functions t ↦ ν(O_t(f)) and the Lorentz quasi-norms built on them.
//!
//! With levels 0 = t₀ < t₁ < … < t_m and ν_j = ν(O_{t_{j−1}}) the value of the
//! distribution function on (t_{j−1}, t_j],
//!
//! ```text
//! ‖f‖_{L^{p₀,q₀}(ν)}^{q₀} = Σ_j ν_j^{q₀/p₀} (t_j^{q₀} − t_{j−1}^{q₀})
//! ‖f‖_{L^{p₀,∞}(ν)}       = max_j t_j ν_j^{1/p₀}
//! ```
//!
//! where dt^{q₀} is read as q₀ t^{q₀−1} dt. For the `GridValues` scheme the
//! levels are the distinct sample magnitudes, so both formulas are exact for
//! the sampled function.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::content::Content;
use crate::error::{Error, Result};
use crate::grid::GridFunction;
use crate::params::LorentzParams;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum LevelScheme {
    /// Every distinct sample magnitude.
    GridValues,
    /// `m` levels spaced geometrically from 10⁻⁶·max|f| to max|f|. Left-endpoint
    /// values make the resulting norm an upper bound of the exact one.
    LogUniform(usize),
}

/// Increasing levels t₁ < … < t_m with t_m = max|f|. Empty only for f = 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelPartition {
    pub levels: Vec<f64>,
    pub scheme: LevelScheme,
}

impl LevelPartition {
    pub fn new(f: &GridFunction, scheme: LevelScheme) -> Result<Self> {
        let levels = match scheme {
            LevelScheme::GridValues => {
                let mut v: Vec<f64> = f.values().iter().map(|x| x.abs()).filter(|x| *x > 0.0).collect();
                v.sort_by(f64::total_cmp);
                v.dedup();
                v
            }
            LevelScheme::LogUniform(m) => {
                if m < 2 {
                    return Err(Error::InvalidParams(format!("LogUniform needs at least 2 levels, got {m}")));
                }
                let top = f.max_abs();
                if top == 0.0 {
                    Vec::new()
                } else {
                    (1..=m)
                        .map(|j| top * 1e-6f64.powf((m - j) as f64 / (m - 1) as f64))
                        .collect()
                }
            }
        };
        Ok(Self { levels, scheme })
    }

    pub fn grid_values(f: &GridFunction) -> Self {
        Self::new(f, LevelScheme::GridValues).expect("grid-value partition is infallible")
    }

    fn check_against(&self, f: &GridFunction) -> Result<()> {
        let top = f.max_abs();
        let last = self.levels.last().copied().unwrap_or(0.0);
        if self.levels.windows(2).any(|w| !(w[0] < w[1])) || self.levels.first().is_some_and(|t| *t <= 0.0) {
            return Err(Error::InvalidParams("partition levels must be positive and increasing".into()));
        }
        if last < top * (1.0 - 4.0 * f64::EPSILON) {
            return Err(Error::InvalidParams(format!(
                "partition stops at {last}, below max|f| = {top}"
            )));
        }
        Ok(())
    }

    /// Left endpoints t₀ = 0, t₁, …, t_{m−1}.
    fn left_endpoints(&self) -> Vec<f64> {
        std::iter::once(0.0)
            .chain(self.levels.iter().copied())
            .take(self.levels.len())
            .collect()
    }
}

/// ν(O_t(f)) for O_t(f) = {|f| > t}.
pub fn distribution_value(f: &GridFunction, t: f64, nu: &Content) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::InvalidParams(format!("threshold t = {t} must be positive")));
    }
    superlevel_content(f, t, nu)
}

fn superlevel_content(f: &GridFunction, t: f64, nu: &Content) -> Result<f64> {
    if nu.is_additive() {
        nu.evaluate_cells(f, &f.superlevel_cells(t))
    } else {
        nu.evaluate_cells(f, &f.superlevel_set(t))
    }
}

/// ν(O_t(f)) at each of the given thresholds (t = 0 gives the support).
pub fn distribution_values(f: &GridFunction, thresholds: &[f64], nu: &Content) -> Result<Vec<f64>> {
    if nu.is_additive() {
        // one sort and a cumulative sum serve every level
        let weights = nu.cell_weights(f)?;
        let mut cells: Vec<(f64, f64)> = f
            .values()
            .iter()
            .zip(&weights)
            .filter(|(v, _)| **v != 0.0)
            .map(|(v, w)| (v.abs(), *w))
            .collect();
        cells.sort_by(|a, b| b.0.total_cmp(&a.0));
        let mut cumulative = Vec::with_capacity(cells.len() + 1);
        cumulative.push(0.0);
        let mut acc = 0.0;
        for (_, w) in &cells {
            acc += w;
            cumulative.push(acc);
        }
        Ok(thresholds
            .iter()
            .map(|t| {
                let above = cells.partition_point(|(v, _)| *v > *t);
                cumulative[above]
            })
            .collect())
    } else {
        thresholds.par_iter().map(|t| superlevel_content(f, *t, nu)).collect()
    }
}

/// Σ_j ν_j^{q₀/p₀}(t_j^{q₀} − t_{j−1}^{q₀}) given ν_j on each level interval.
pub(crate) fn lorentz_sum(levels: &[f64], nus: &[f64], p0: f64, q0: f64) -> f64 {
    let mut prev = 0.0;
    let mut total = 0.0;
    for (t, nu) in levels.iter().zip(nus) {
        let tq = t.powf(q0);
        if *nu > 0.0 {
            total += nu.powf(q0 / p0) * (tq - prev);
        }
        prev = tq;
    }
    total
}

/// ‖f‖_{L^{p₀,q₀}(ν)} for finite q₀.
pub fn lorentz_norm(f: &GridFunction, lp: &LorentzParams, nu: &Content, part: &LevelPartition) -> Result<f64> {
    let q0 = lp
        .q0()
        .ok_or_else(|| Error::InvalidParams("q0 = infinity: use weak_norm".into()))?;
    if f.is_zero() {
        return Ok(0.0);
    }
    part.check_against(f)?;
    let nus = distribution_values(f, &part.left_endpoints(), nu)?;
    Ok(lorentz_sum(&part.levels, &nus, lp.p0(), q0).powf(1.0 / q0))
}

/// sup_s s·ν(O_s(f))^{1/p₀}, attained as s ↑ a sample magnitude.
pub fn weak_norm(f: &GridFunction, p0: f64, nu: &Content) -> Result<f64> {
    if !(p0 > 0.0 && p0.is_finite()) {
        return Err(Error::InvalidParams(format!("p0 = {p0} must be positive")));
    }
    if f.is_zero() {
        return Ok(0.0);
    }
    let part = LevelPartition::grid_values(f);
    let nus = distribution_values(f, &part.left_endpoints(), nu)?;
    Ok(part
        .levels
        .iter()
        .zip(&nus)
        .map(|(t, v)| t * v.powf(1.0 / p0))
        .fold(0.0, f64::max))
}
