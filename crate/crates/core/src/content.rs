//! Set functions ν used as "measures" in Lorentz and Choquet norms.

use serde::{Deserialize, Serialize};

use crate::capset::{capacity_upper_value, netrusov_upper, CapacityFamilyConfig};
use crate::besov::BesovQuadConfig;
use crate::error::{Error, Result};
use crate::geometry::{GeometricSet, Point};
use crate::grid::{GridFunction, SuperlevelSet};
use crate::params::BesovParams;
use crate::sphere::{gauss_legendre, product_rule, sphere_area, unit_ball_volume};

/// A monotone set function with ν(∅) = 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Content {
    /// Lebesgue measure V.
    LebesgueVolume,
    /// dμ = |x|^{−γ} dx, 0 ≤ γ < n.
    RadialWeight { gamma: f64 },
    /// Upper bound on the Besov capacity from the mollified-indicator family.
    CapacityEstimate {
        params: BesovParams,
        family: CapacityFamilyConfig,
        quad: BesovQuadConfig,
    },
    /// Upper bound on the Netrusov content H^{(eps)}_{d,θ}; `eps = None` is ε = ∞.
    NetrusovContent { d: f64, theta: f64, eps: Option<f64> },
}

impl Content {
    /// Additive contents are integrated cell by cell; the others need a
    /// geometric description of the set.
    pub fn is_additive(&self) -> bool {
        matches!(self, Content::LebesgueVolume | Content::RadialWeight { .. })
    }

    fn check(&self, dim: usize) -> Result<()> {
        if let Content::RadialWeight { gamma } = self {
            if !(*gamma >= 0.0 && *gamma < dim as f64) {
                return Err(Error::InvalidParams(format!(
                    "radial weight exponent {gamma} must lie in [0, {dim})"
                )));
            }
        }
        Ok(())
    }

    /// ν(E) for an analytic set.
    pub fn evaluate_set(&self, set: &GeometricSet) -> Result<f64> {
        self.check(set.dim())?;
        if set.is_empty() {
            return Ok(0.0);
        }
        match self {
            Content::LebesgueVolume => Ok(set.volume()),
            Content::RadialWeight { gamma } => Ok(radial_weight_of_set(set, *gamma)),
            Content::CapacityEstimate { params, family, quad } => {
                capacity_upper_value(set, params, family, quad)
            }
            Content::NetrusovContent { d, theta, eps } => netrusov_upper(set, *d, *theta, *eps),
        }
    }

    /// ν of a superlevel set of `f`.
    pub fn evaluate_cells(&self, f: &GridFunction, set: &SuperlevelSet) -> Result<f64> {
        self.check(f.dim())?;
        match self {
            Content::LebesgueVolume => Ok(set.volume),
            Content::RadialWeight { gamma } => Ok(set
                .cells
                .iter()
                .map(|&i| cell_radial_weight(&f.center(i), f.spacing(), f.dim(), *gamma))
                .sum()),
            _ => {
                if set.is_empty() {
                    return Ok(0.0);
                }
                let approx = set.approx.as_ref().ok_or_else(|| {
                    Error::NotEvaluable(format!(
                        "superlevel set at t = {} is not a recognisable ball/box union; use a radial corpus entry",
                        set.threshold
                    ))
                })?;
                self.evaluate_set(approx)
            }
        }
    }

    /// Per-cell weights for additive contents (zero on cells where `f` vanishes).
    pub(crate) fn cell_weights(&self, f: &GridFunction) -> Result<Vec<f64>> {
        self.check(f.dim())?;
        let vol = f.cell_volume();
        match self {
            Content::LebesgueVolume => Ok(f.values().iter().map(|v| if *v != 0.0 { vol } else { 0.0 }).collect()),
            Content::RadialWeight { gamma } => Ok(radial_cell_weights(f, *gamma)),
            _ => Err(Error::NotEvaluable("content is not additive over cells".into())),
        }
    }
}

/// ∫_{B_R(0)} |x|^{−γ} dx
pub fn radial_weight_ball(dim: usize, radius: f64, gamma: f64) -> f64 {
    let e = dim as f64 - gamma;
    sphere_area(dim) * radius.powf(e) / e
}

/// Weights μ_γ(cell) for the nonzero cells of `f`.
pub fn radial_cell_weights(f: &GridFunction, gamma: f64) -> Vec<f64> {
    f.values()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            if *v == 0.0 {
                0.0
            } else {
                cell_radial_weight(&f.center(i), f.spacing(), f.dim(), gamma)
            }
        })
        .collect()
}

const MAX_DEPTH: u32 = 10;
const GL_POINTS: usize = 4;

/// ∫_{cell} |x|^{−γ} dx for the axis-aligned cube with the given centre and side.
///
/// One dimension is integrated in closed form. In two and three dimensions
/// cells at distance ≥ 2·side·√n from the origin use a tensor Gauss–Legendre
/// rule; closer cells are bisected recursively, and at the deepest level the
/// cell holding the origin is replaced by the origin-centred ball of equal volume.
pub fn cell_radial_weight(center: &Point, side: f64, dim: usize, gamma: f64) -> f64 {
    if gamma == 0.0 {
        return side.powi(dim as i32);
    }
    if dim == 1 {
        let a = center[0] - 0.5 * side;
        let b = center[0] + 0.5 * side;
        let e = 1.0 - gamma;
        let prim = |x: f64| x.signum() * x.abs().powf(e) / e;
        return prim(b) - prim(a);
    }
    let (gx, gw) = gauss_legendre(GL_POINTS);
    weight_rec(center, side, dim, gamma, 0, &gx, &gw)
}

fn weight_rec(center: &Point, side: f64, dim: usize, gamma: f64, depth: u32, gx: &[f64], gw: &[f64]) -> f64 {
    let half = 0.5 * side;
    let dist2: f64 = (0..dim)
        .map(|a| {
            let d = (center[a].abs() - half).max(0.0);
            d * d
        })
        .sum();
    let dist = dist2.sqrt();
    if dist >= 2.0 * side * (dim as f64).sqrt() {
        return tensor_gauss(center, side, dim, gamma, gx, gw);
    }
    if depth >= MAX_DEPTH {
        let contains_origin = (0..dim).all(|a| center[a].abs() <= half);
        if contains_origin {
            let vol = side.powi(dim as i32);
            let r = (vol / unit_ball_volume(dim)).powf(1.0 / dim as f64);
            return radial_weight_ball(dim, r, gamma);
        }
        return tensor_gauss(center, side, dim, gamma, gx, gw);
    }
    let q = 0.25 * side;
    let mut total = 0.0;
    for mask in 0..(1usize << dim) {
        let mut c = *center;
        for a in 0..dim {
            c[a] += if mask & (1 << a) != 0 { q } else { -q };
        }
        total += weight_rec(&c, half, dim, gamma, depth + 1, gx, gw);
    }
    total
}

fn tensor_gauss(center: &Point, side: f64, dim: usize, gamma: f64, gx: &[f64], gw: &[f64]) -> f64 {
    let h = 0.5 * side;
    let m = gx.len();
    let mut total = 0.0;
    let count = m.pow(dim as u32);
    for k in 0..count {
        let mut idx = k;
        let mut w = 1.0;
        let mut r2 = 0.0;
        for a in 0..dim {
            let j = idx % m;
            idx /= m;
            let x = center[a] + h * gx[j];
            r2 += x * x;
            w *= gw[j];
        }
        total += w * r2.powf(-0.5 * gamma);
    }
    total * h.powi(dim as i32)
}

/// μ_γ(E) by casting rays from the origin: each ray contributes
/// (t₁^{n−γ} − t₀^{n−γ})/(n−γ) for every member it crosses.
pub fn radial_weight_of_set(set: &GeometricSet, gamma: f64) -> f64 {
    let dim = set.dim();
    let members = set.members();
    if members.is_empty() {
        return 0.0;
    }
    let e = dim as f64 - gamma;
    let rule = product_rule(dim, 16);
    let origin = [0.0; 3];
    rule.directions
        .iter()
        .zip(&rule.weights)
        .map(|(dir, w)| {
            let radial: f64 = members
                .iter()
                .filter_map(|m| m.ray_interval(&origin, dir))
                .map(|(t0, t1)| (t1.powf(e) - t0.powf(e)) / e)
                .sum();
            w * radial
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn one_d_unit_interval_weight() {
        // ∫_{-1}^{1} |x|^{-1/2} dx = 4
        let set = GeometricSet::ball(&[0.0], 1.0).unwrap();
        let v = Content::RadialWeight { gamma: 0.5 }.evaluate_set(&set).unwrap();
        assert!((v - 4.0).abs() < 1e-12);
    }

    #[test]
    fn cell_weights_sum_to_ball_weight_2d() {
        // square [-1,1]^2 tiled by cells, versus a direct polar computation
        let s = 1.0 / 16.0;
        let mut total = 0.0;
        for i in 0..32 {
            for j in 0..32 {
                let c = [-1.0 + (i as f64 + 0.5) * s, -1.0 + (j as f64 + 0.5) * s, 0.0];
                total += cell_radial_weight(&c, s, 2, 0.5);
            }
        }
        let square = GeometricSet::axis_box(&[-1.0, -1.0], &[1.0, 1.0]).unwrap();
        let polar = radial_weight_of_set(&square, 0.5);
        assert!((total - polar).abs() / polar < 1e-5, "{total} vs {polar}");
    }

    #[test]
    fn centred_disc_weight() {
        let set = GeometricSet::ball(&[0.0, 0.0], 0.5).unwrap();
        let v = Content::RadialWeight { gamma: 1.0 }.evaluate_set(&set).unwrap();
        assert!((v - 2.0 * PI * 0.5).abs() < 1e-12);
    }

    #[test]
    fn weight_exponent_must_be_below_dimension() {
        let set = GeometricSet::ball(&[0.0], 1.0).unwrap();
        assert!(Content::RadialWeight { gamma: 1.0 }.evaluate_set(&set).is_err());
    }

    #[test]
    fn contents_are_monotone_on_nested_sets() {
        let small = GeometricSet::ball(&[0.2, 0.1], 0.3).unwrap();
        let big = GeometricSet::ball(&[0.0, 0.0], 0.8).unwrap();
        assert!(small.is_subset_of(&big));
        let empty = GeometricSet::empty(2);
        for nu in [
            Content::LebesgueVolume,
            Content::RadialWeight { gamma: 0.5 },
            Content::NetrusovContent { d: 1.5, theta: 1.0, eps: None },
        ] {
            let a = nu.evaluate_set(&small).unwrap();
            let b = nu.evaluate_set(&big).unwrap();
            assert_eq!(nu.evaluate_set(&empty).unwrap(), 0.0);
            assert!(a >= 0.0 && a <= b, "{nu:?}: {a} > {b}");
        }
    }
}
