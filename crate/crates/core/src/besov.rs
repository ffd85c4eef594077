//! k-th order differences and the homogeneous Besov seminorm
//!
//! ```text
//! ‖f‖ = ( ∫ ‖Δᵏ_h f‖_p^q |h|^{−(n+βq)} dh )^{1/q}
//! ```
//!
//! evaluated in polar form ∫_S ∫_0^∞ G(ρθ) ρ^{−1−βq} dρ dθ with
//! G(h) = ‖Δᵏ_h f‖_p^q. Shifts are snapped to grid vectors, so every
//! difference is exact on the sampled function. Along each ray the values of G
//! at the snapped radii are joined linearly and that interpolant is integrated
//! exactly against ρ^{−1−βq}.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::GridFunction;
use crate::params::BesovParams;
use crate::sphere::equal_weight_directions;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BesovQuadConfig {
    /// Log-spaced radii per direction (before snapping and de-duplication).
    pub radial_points: usize,
    /// Directions on the sphere; ignored in one dimension (±1 is used).
    pub angular_points: usize,
    /// Inner cutoff; `None` means one grid spacing.
    pub r_min: Option<f64>,
    /// Outer cutoff; `None` means (k+2) times the support diameter.
    pub r_max: Option<f64>,
    pub tail_correction: bool,
}

impl Default for BesovQuadConfig {
    fn default() -> Self {
        Self {
            radial_points: 128,
            angular_points: 32,
            r_min: None,
            r_max: None,
            tail_correction: true,
        }
    }
}

impl BesovQuadConfig {
    /// Default angular resolution per dimension: 2 / 32 / 20 directions.
    pub fn for_dim(dim: usize) -> Self {
        Self {
            angular_points: match dim {
                1 => 2,
                2 => 32,
                _ => 20,
            },
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.radial_points < 16 {
            return Err(Error::InvalidParams(format!(
                "radial_points = {} must be at least 16",
                self.radial_points
            )));
        }
        if self.angular_points == 0 {
            return Err(Error::InvalidParams("angular_points must be at least 1".into()));
        }
        for (name, r) in [("r_min", self.r_min), ("r_max", self.r_max)] {
            if let Some(r) = r {
                if !(r > 0.0 && r.is_finite()) {
                    return Err(Error::InvalidParams(format!("{name} = {r} must be positive")));
                }
            }
        }
        if let (Some(a), Some(b)) = (self.r_min, self.r_max) {
            if a >= b {
                return Err(Error::InvalidParams(format!("r_min = {a} must be below r_max = {b}")));
            }
        }
        Ok(())
    }
}

fn binomial(k: u32, j: u32) -> f64 {
    (0..j).fold(1.0, |acc, i| acc * (k - i) as f64 / (i + 1) as f64)
}

/// Coefficients c_j of Δᵏ_h f(x) = Σ_j c_j f(x + j h).
fn difference_coefficients(k: u32) -> Vec<f64> {
    (0..=k)
        .map(|j| {
            let s = if (k - j) % 2 == 0 { 1.0 } else { -1.0 };
            s * binomial(k, j)
        })
        .collect()
}

fn snap(f: &GridFunction, h: &[f64]) -> Result<[i64; 3]> {
    if h.len() != f.dim() {
        return Err(Error::DimensionMismatch(format!(
            "shift of length {} for a {}-dimensional grid",
            h.len(),
            f.dim()
        )));
    }
    let mut m = [0i64; 3];
    for (a, x) in h.iter().enumerate() {
        if !x.is_finite() {
            return Err(Error::NonFinite(format!("shift component {x}")));
        }
        m[a] = (x / f.spacing()).round() as i64;
    }
    Ok(m)
}

/// Value of f at a (possibly out-of-range) multi-index, zero outside the grid.
#[inline]
fn value_at(f: &GridFunction, idx: [i64; 3]) -> f64 {
    let sh = f.shape3();
    for a in 0..3 {
        if idx[a] < 0 || idx[a] >= sh[a] as i64 {
            return 0.0;
        }
    }
    f.values()[f.linear_index([idx[0] as usize, idx[1] as usize, idx[2] as usize])]
}

/// Δᵏ_h f with h snapped to the nearest grid vector m·spacing.
///
/// The result lives on the original grid extended by k·|m_a| cells along each
/// axis, which holds the whole support of the difference (zero extension).
pub fn finite_difference(f: &GridFunction, h: &[f64], k: u32) -> Result<GridFunction> {
    if k == 0 {
        return Err(Error::InvalidParams("difference order must be at least 1".into()));
    }
    let m = snap(f, h)?;
    let dim = f.dim();
    let sh = f.shape3();
    let coeffs = difference_coefficients(k);
    let kk = k as i64;
    let mut shape = vec![0usize; dim];
    let mut start = [0i64; 3];
    let mut origin = vec![0.0; dim];
    for a in 0..dim {
        start[a] = -kk * m[a].max(0);
        shape[a] = sh[a] + (kk * m[a].abs()) as usize;
        origin[a] = f.origin()[a] + start[a] as f64 * f.spacing();
    }
    let mut full = [1usize; 3];
    full[..dim].copy_from_slice(&shape);
    let mut values = Vec::with_capacity(full.iter().product());
    for i2 in 0..full[2] {
        for i1 in 0..full[1] {
            for i0 in 0..full[0] {
                let x = [start[0] + i0 as i64, start[1] + i1 as i64, start[2] + i2 as i64];
                let v: f64 = coeffs
                    .iter()
                    .enumerate()
                    .map(|(j, c)| {
                        let j = j as i64;
                        c * value_at(f, [x[0] + j * m[0], x[1] + j * m[1], x[2] + j * m[2]])
                    })
                    .sum();
                values.push(v);
            }
        }
    }
    GridFunction::new(dim, f.spacing(), &origin, &shape, values)
}

/// (Σ |f|^p · spacingⁿ)^{1/p}; a quasi-norm for p < 1.
pub fn lp_norm(f: &GridFunction, p: f64) -> Result<f64> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::InvalidParams(format!("exponent p = {p} must be positive")));
    }
    Ok(lp_power(f.values(), p, f.cell_volume()).powf(1.0 / p))
}

fn lp_power(values: &[f64], p: f64, cell: f64) -> f64 {
    values.iter().map(|v| v.abs().powf(p)).sum::<f64>() * cell
}

/// ‖Δᵏ_{m·s} f‖_p^p computed without materialising the difference.
fn difference_power(f: &GridFunction, m: [i64; 3], coeffs: &[f64], p: f64, far: f64) -> f64 {
    let (lo, hi) = match f.support_index_box() {
        Some(b) => b,
        None => return 0.0,
    };
    let dim = f.dim();
    let k = coeffs.len() as i64 - 1;
    // translates of the support box do not overlap: the norm is the far-field value
    if (0..dim).any(|a| m[a].abs() > (hi[a] - lo[a]) as i64) {
        return far;
    }
    let mut from = [0i64; 3];
    let mut to = [0i64; 3];
    for a in 0..3 {
        if a < dim {
            from[a] = lo[a] as i64 - k * m[a].max(0);
            to[a] = hi[a] as i64 - k * m[a].min(0);
        }
    }
    let mut total = 0.0;
    for x2 in from[2]..=to[2] {
        for x1 in from[1]..=to[1] {
            for x0 in from[0]..=to[0] {
                let mut v = 0.0;
                for (j, c) in coeffs.iter().enumerate() {
                    let j = j as i64;
                    v += c * value_at(f, [x0 + j * m[0], x1 + j * m[1], x2 + j * m[2]]);
                }
                if v != 0.0 {
                    total += v.abs().powf(p);
                }
            }
        }
    }
    total * f.cell_volume()
}

/// m and −m give the same norm.
fn canonical(m: [i64; 3]) -> [i64; 3] {
    let first = m.iter().copied().find(|&c| c != 0).unwrap_or(0);
    if first < 0 {
        [-m[0], -m[1], -m[2]]
    } else {
        m
    }
}

/// ∫_{r0}^{r1} L(r) r^{−1−a} dr for L linear with L(r0) = g0, L(r1) = g1.
fn linear_segment(r0: f64, r1: f64, g0: f64, g1: f64, a: f64) -> f64 {
    let i0 = (r0.powf(-a) - r1.powf(-a)) / a;
    let i1 = if (a - 1.0).abs() < 1e-12 {
        (r1 / r0).ln()
    } else {
        (r1.powf(1.0 - a) - r0.powf(1.0 - a)) / (1.0 - a)
    };
    g0 * i0 + (g1 - g0) / (r1 - r0) * (i1 - r0 * i0)
}

/// The q-th power of the seminorm, ∫ ‖Δᵏ_h f‖_p^q |h|^{−(n+βq)} dh.
pub fn besov_integral(f: &GridFunction, params: &BesovParams, cfg: &BesovQuadConfig) -> Result<f64> {
    cfg.validate()?;
    if params.dim() != f.dim() {
        return Err(Error::DimensionMismatch(format!(
            "parameters for dimension {} applied to a {}-dimensional grid",
            params.dim(),
            f.dim()
        )));
    }
    if f.is_zero() {
        return Ok(0.0);
    }
    let dim = f.dim();
    let s = f.spacing();
    let (p, q, beta, k) = (params.p(), params.q(), params.beta(), params.k());
    let a = beta * q;
    let coeffs = difference_coefficients(k);
    let far = coeffs.iter().map(|c| c.abs().powf(p)).sum::<f64>() * lp_power(f.values(), p, f.cell_volume());
    let g_far = far.powf(q / p);

    let r_min = cfg.r_min.unwrap_or(s);
    let r_max = cfg.r_max.unwrap_or(f.support_diameter() * (k as f64 + 2.0));
    if r_min >= r_max {
        return Err(Error::InvalidParams(format!(
            "r_min = {r_min} must be below r_max = {r_max}"
        )));
    }
    let rule = equal_weight_directions(dim, cfg.angular_points)?;
    let n_r = cfg.radial_points;
    let radii: Vec<f64> = (0..n_r)
        .map(|i| r_min * (r_max / r_min).powf(i as f64 / (n_r - 1) as f64))
        .collect();

    // snapped nodes along every ray, with strictly increasing lengths
    let mut rays: Vec<Vec<(f64, [i64; 3])>> = Vec::with_capacity(rule.len());
    let mut needed: BTreeMap<[i64; 3], usize> = BTreeMap::new();
    for dir in &rule.directions {
        let mut nodes: Vec<(f64, [i64; 3])> = Vec::new();
        for r in &radii {
            let mut m = [0i64; 3];
            for c in 0..dim {
                m[c] = (r * dir[c] / s).round() as i64;
            }
            let len = (m.iter().map(|c| (c * c) as f64).sum::<f64>()).sqrt() * s;
            if len == 0.0 || nodes.last().is_some_and(|(l, _)| len <= *l) {
                continue;
            }
            let key = canonical(m);
            let next = needed.len();
            needed.entry(key).or_insert(next);
            nodes.push((len, key));
        }
        rays.push(nodes);
    }
    let keys: Vec<[i64; 3]> = needed.keys().copied().collect();
    let values: Vec<f64> = keys
        .par_iter()
        .map(|m| difference_power(f, *m, &coeffs, p, far).powf(q / p))
        .collect();
    let lookup: BTreeMap<[i64; 3], f64> = keys.into_iter().zip(values).collect();

    let mut total = 0.0;
    for (nodes, w) in rays.iter().zip(&rule.weights) {
        let Some(&(r_first, m_first)) = nodes.first() else {
            continue;
        };
        let mut ray = 0.0;
        if cfg.tail_correction {
            // G(ρ) ∝ ρ^{kq} below the first node
            ray += lookup[&m_first] * r_first.powf(-a) / ((k as f64 - beta) * q);
        }
        for pair in nodes.windows(2) {
            let (r0, m0) = pair[0];
            let (r1, m1) = pair[1];
            ray += linear_segment(r0, r1, lookup[&m0], lookup[&m1], a);
        }
        if cfg.tail_correction {
            let r_last = nodes.last().expect("nonempty").0;
            ray += g_far * r_last.powf(-a) / a;
        }
        total += w * ray;
    }
    Ok(total)
}

/// ‖f‖_{Λ̇^{p,q}_β}.
pub fn besov_seminorm(f: &GridFunction, params: &BesovParams, cfg: &BesovQuadConfig) -> Result<f64> {
    Ok(besov_integral(f, params, cfg)?.powf(1.0 / params.q()))
}
