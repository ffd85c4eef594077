//! Fractional (β,p,q)-perimeter
//!
//! ```text
//! P(E) = ( ∫_E I(y)^{q/p} dy )^{1/q},   I(y) = ∫_{E^c} |x − y|^{−s} dx,   s = (n + pβ)p/q.
//! ```
//!
//! The inner integral is finite only when s > n, and the outer one only when
//! I(y)^{q/p} ~ dist(y, ∂E)^{nq/p − n − pβ} is integrable, i.e.
//! nq/p − (n + pβ) > −1. Both conditions are checked before any sampling.
//!
//! The outer integral is estimated by importance sampling with a density that
//! grows like dist(y, ∂E)^{−α} near the boundary, α matching the integrand's
//! singularity, so the weighted integrand stays bounded.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{GeometricSet, Point, Shape};
use crate::params::BesovParams;
use crate::sphere::{product_rule, sphere_area, AngularRule};

const BATCH: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum InnerScheme {
    /// Rays from y with the radial integral in closed form; directions from a
    /// fixed product rule (exact in one dimension).
    RadialExact,
    /// `samples` random rays per point with Pareto-distributed lengths
    /// ρ = d·U^{−1/κ}, d the depth of y. `exponent = None` uses κ = s − n,
    /// which makes each ray's weight constant.
    MCImportance { samples: usize, exponent: Option<f64> },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerimeterMCConfig {
    pub outer_samples: usize,
    pub inner_scheme: InnerScheme,
    pub seed: u64,
}

impl Default for PerimeterMCConfig {
    fn default() -> Self {
        Self {
            outer_samples: 10_000,
            inner_scheme: InnerScheme::RadialExact,
            seed: 42,
        }
    }
}

/// A perimeter value with its Monte Carlo standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerimeterEstimate {
    pub value: f64,
    pub stderr: f64,
    /// The outer integral ∫_E I^{q/p} (the q-th power of `value`).
    pub integral: f64,
    pub integral_stderr: f64,
    pub samples: usize,
}

/// Exponent of P under x ↦ λx: P(λE) = λ^{n/p − pβ/q} P(E).
pub fn perimeter_scaling_exponent(params: &BesovParams) -> f64 {
    let (n, p, q, b) = (params.dim() as f64, params.p(), params.q(), params.beta());
    n / p - p * b / q
}

fn check_convergence(params: &BesovParams) -> Result<(f64, f64)> {
    let (n, p, q, b) = (params.dim() as f64, params.p(), params.q(), params.beta());
    let s = (n + p * b) * p / q;
    if s <= n {
        return Err(Error::Divergent(format!(
            "kernel exponent (n+p·beta)p/q = {s} must exceed n = {n} for the inner integral to converge"
        )));
    }
    let outer = n * q / p - (n + p * b);
    if outer <= -1.0 {
        return Err(Error::Divergent(format!(
            "n·q/p − (n + p·beta) = {outer} must exceed −1 for the outer integral to converge"
        )));
    }
    Ok((s, -outer))
}

fn direction(rng: &mut ChaCha8Rng, dim: usize) -> Point {
    match dim {
        1 => [if rng.random::<bool>() { 1.0 } else { -1.0 }, 0.0, 0.0],
        2 => {
            let t = std::f64::consts::TAU * rng.random::<f64>();
            [t.cos(), t.sin(), 0.0]
        }
        _ => {
            let z = 2.0 * rng.random::<f64>() - 1.0;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let t = std::f64::consts::TAU * rng.random::<f64>();
            [r * t.cos(), r * t.sin(), z]
        }
    }
}

/// Uniform in (0, 1].
fn open_unit(rng: &mut ChaCha8Rng) -> f64 {
    1.0 - rng.random::<f64>()
}

/// A point of `shape` and its density, concentrated like dist^{−α} at the boundary.
fn sample_in(shape: &Shape, alpha: f64, rng: &mut ChaCha8Rng) -> (Point, f64) {
    let e = 1.0 - alpha;
    match shape {
        Shape::AxisBox(b) => {
            let mut y = [0.0; 3];
            let mut density = 1.0;
            for a in 0..b.dim {
                let half = 0.5 * (b.hi[a] - b.lo[a]);
                let d = half * open_unit(rng).powf(1.0 / e);
                y[a] = if rng.random::<bool>() { b.lo[a] + d } else { b.hi[a] - d };
                density *= e / (2.0 * half.powf(e)) * d.powf(-alpha);
            }
            (y, density)
        }
        Shape::Ball(ball) => {
            let n = ball.dim;
            let big_r = ball.radius;
            let d = big_r * open_unit(rng).powf(1.0 / e);
            let r = big_r - d;
            let dir = direction(rng, n);
            let mut y = ball.center;
            for a in 0..n {
                y[a] += r * dir[a];
            }
            let radial = e / big_r * (d / big_r).powf(-alpha);
            let density = if n == 1 {
                radial / 2.0
            } else {
                radial / (sphere_area(n) * r.powi(n as i32 - 1))
            };
            (y, density)
        }
    }
}

/// I(y) for y in member `home`, by rays with exact radial integrals.
fn inner_radial(y: &Point, home: usize, members: &[Shape], s: f64, rule: &AngularRule) -> f64 {
    let n = members[0].dim() as f64;
    let k = s - n;
    rule.directions
        .iter()
        .zip(&rule.weights)
        .map(|(dir, w)| {
            let exit = match members[home].ray_interval(y, dir) {
                Some((_, t1)) => t1,
                None => return 0.0,
            };
            let mut ray = exit.powf(-k) / k;
            for (j, m) in members.iter().enumerate() {
                if j == home {
                    continue;
                }
                if let Some((t0, t1)) = m.ray_interval(y, dir) {
                    ray -= (t0.powf(-k) - t1.powf(-k)) / k;
                }
            }
            w * ray
        })
        .sum()
}

/// I(y) by random rays of Pareto length starting at the depth of y.
fn inner_mc(y: &Point, depth: f64, set: &GeometricSet, s: f64, samples: usize, kappa: f64, rng: &mut ChaCha8Rng) -> f64 {
    let dim = set.dim();
    let n = dim as f64;
    let mut acc = 0.0;
    for _ in 0..samples {
        let dir = direction(rng, dim);
        let rho = depth * open_unit(rng).powf(-1.0 / kappa);
        let mut x = *y;
        for a in 0..dim {
            x[a] += rho * dir[a];
        }
        if !set.contains(&x) {
            acc += rho.powf(n - s + kappa);
        }
    }
    sphere_area(dim) * acc / (samples as f64 * kappa * depth.powf(kappa))
}

/// Monte Carlo estimate of P^{p,q}_β(E) with its standard error.
pub fn fractional_perimeter(set: &GeometricSet, params: &BesovParams, cfg: &PerimeterMCConfig) -> Result<PerimeterEstimate> {
    if set.dim() != params.dim() {
        return Err(Error::DimensionMismatch(format!(
            "parameters for dimension {} applied to a {}-dimensional set",
            params.dim(),
            set.dim()
        )));
    }
    let (s, singularity) = check_convergence(params)?;
    if cfg.outer_samples < 1000 {
        return Err(Error::InvalidParams(format!(
            "outer_samples = {} must be at least 1000",
            cfg.outer_samples
        )));
    }
    let members = set.members();
    if members.is_empty() {
        return Ok(PerimeterEstimate {
            value: 0.0,
            stderr: 0.0,
            integral: 0.0,
            integral_stderr: 0.0,
            samples: cfg.outer_samples,
        });
    }
    let dim = set.dim();
    let n = dim as f64;
    let kappa = match cfg.inner_scheme {
        InnerScheme::MCImportance { samples, exponent } => {
            if samples == 0 {
                return Err(Error::InvalidParams("inner samples must be positive".into()));
            }
            let k = exponent.unwrap_or(s - n);
            if !(k > 0.0 && k < 2.0 * (s - n)) {
                return Err(Error::InvalidParams(format!(
                    "boundary exponent {k} must lie in (0, {}) for finite variance",
                    2.0 * (s - n)
                )));
            }
            k
        }
        InnerScheme::RadialExact => s - n,
    };
    let alpha = singularity.clamp(0.0, 0.95);
    let power = params.q() / params.p();
    let volumes: Vec<f64> = members.iter().map(Shape::volume).collect();
    let total_volume: f64 = volumes.iter().sum();
    let rule = product_rule(dim, if dim == 2 { 8 } else { 2 });

    let batches = cfg.outer_samples.div_ceil(BATCH);
    let sums: Vec<(f64, f64, usize)> = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(b as u64);
            let count = BATCH.min(cfg.outer_samples - b * BATCH);
            let (mut s1, mut s2) = (0.0, 0.0);
            for _ in 0..count {
                // member chosen with probability proportional to its volume
                let mut u = rng.random::<f64>() * total_volume;
                let mut home = members.len() - 1;
                for (i, v) in volumes.iter().enumerate() {
                    if u < *v {
                        home = i;
                        break;
                    }
                    u -= v;
                }
                let (y, density) = sample_in(&members[home], alpha, &mut rng);
                let inner = match cfg.inner_scheme {
                    InnerScheme::RadialExact => inner_radial(&y, home, &members, s, &rule),
                    InnerScheme::MCImportance { samples, .. } => {
                        let depth = members[home].depth(&y);
                        inner_mc(&y, depth, set, s, samples, kappa, &mut rng)
                    }
                };
                let x = inner.max(0.0).powf(power) / (density * volumes[home] / total_volume);
                s1 += x;
                s2 += x * x;
            }
            (s1, s2, count)
        })
        .collect();
    let (mut s1, mut s2, mut count) = (0.0, 0.0, 0usize);
    for (a, b, c) in sums {
        s1 += a;
        s2 += b;
        count += c;
    }
    let m = count as f64;
    let mean = s1 / m;
    let var = ((s2 / m - mean * mean) * m / (m - 1.0)).max(0.0);
    let integral_stderr = (var / m).sqrt();
    let q = params.q();
    let value = mean.powf(1.0 / q);
    // delta method for J ↦ J^{1/q}
    let stderr = if mean > 0.0 { value / (q * mean) * integral_stderr } else { 0.0 };
    Ok(PerimeterEstimate {
        value,
        stderr,
        integral: mean,
        integral_stderr,
        samples: count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_interval() -> GeometricSet {
        GeometricSet::axis_box(&[0.0], &[1.0]).unwrap()
    }

    #[test]
    fn rejects_divergent_parameters() {
        // s = (1 + 0.3)·1/2 < 1
        let params = BesovParams::new(0.3, 1.0, 2.0, 1).unwrap();
        assert!(matches!(
            fractional_perimeter(&unit_interval(), &params, &PerimeterMCConfig::default()),
            Err(Error::Divergent(_))
        ));
    }

    #[test]
    fn empty_set_has_zero_perimeter() {
        let params = BesovParams::new(0.5, 1.0, 1.0, 2).unwrap();
        let p = fractional_perimeter(&GeometricSet::empty(2), &params, &PerimeterMCConfig::default()).unwrap();
        assert_eq!(p.value, 0.0);
    }

    #[test]
    fn too_few_samples() {
        let params = BesovParams::new(0.5, 1.0, 1.0, 1).unwrap();
        let cfg = PerimeterMCConfig {
            outer_samples: 10,
            ..Default::default()
        };
        assert!(fractional_perimeter(&unit_interval(), &params, &cfg).is_err());
    }

    #[test]
    fn same_seed_same_bits() {
        let params = BesovParams::new(0.4, 1.0, 1.0, 2).unwrap();
        let set = GeometricSet::ball(&[0.0, 0.0], 0.5).unwrap();
        let cfg = PerimeterMCConfig {
            outer_samples: 2000,
            ..Default::default()
        };
        let a = fractional_perimeter(&set, &params, &cfg).unwrap();
        let b = fractional_perimeter(&set, &params, &cfg).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
    }
}
