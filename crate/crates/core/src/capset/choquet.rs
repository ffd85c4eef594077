//! Capacitary (Choquet) Lorentz norms
//!
//! ```text
//! ‖f‖_{L^{p₀,q₀}(cap)} = ( ∫₀^∞ cap(O_t(f))^{q₀/p₀} dt^{q₀} )^{1/q₀}
//! ```
//!
//! on the grid-value partition. The capacity of a superlevel set is evaluated
//! on its geometric stand-in, so f must have ball- or box-shaped superlevel
//! sets (the radial corpus entries do). Sets that digitise to the same cells
//! share one capacity evaluation.

use std::collections::HashMap;

use crate::content::Content;
use crate::error::{Error, Result};
use crate::grid::GridFunction;
use crate::lorentz::{lorentz_sum, LevelPartition};
use crate::params::LorentzParams;

/// The capacitary Lorentz norm; q₀ = ∞ gives sup_t t·cap(O_t)^{1/p₀}.
pub fn choquet_lorentz_norm(f: &GridFunction, lp: &LorentzParams, cap: &Content) -> Result<f64> {
    if cap.is_additive() {
        return Err(Error::InvalidParams(
            "choquet_lorentz_norm expects a capacity or Netrusov content; use lorentz_norm for measures".into(),
        ));
    }
    if f.is_zero() {
        return Ok(0.0);
    }
    let part = LevelPartition::grid_values(f);
    let m = part.levels.len();
    let mut cache: HashMap<Vec<usize>, f64> = HashMap::new();
    let mut caps = Vec::with_capacity(m);
    for j in 0..m {
        let t = if j == 0 { 0.0 } else { part.levels[j - 1] };
        let set = f.superlevel_set(t);
        if let Some(v) = cache.get(&set.cells) {
            caps.push(*v);
            continue;
        }
        let v = cap.evaluate_cells(f, &set)?;
        cache.insert(set.cells, v);
        caps.push(v);
    }
    let p0 = lp.p0();
    Ok(match lp.q0() {
        Some(q0) => lorentz_sum(&part.levels, &caps, p0, q0).powf(1.0 / q0),
        None => part
            .levels
            .iter()
            .zip(&caps)
            .map(|(t, c)| t * c.powf(1.0 / p0))
            .fold(0.0, f64::max),
    })
}
