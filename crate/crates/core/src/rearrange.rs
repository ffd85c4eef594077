//! Symmetric decreasing rearrangement and radially weighted integrals.
//!
//! Each superlevel set {|f| > t} is replaced by the origin-centred open ball
//! of the same volume, V(B_{r(t)}) = V(O_t(f)). Radii use the unit-ball volume
//! ω_n (not the sphere area), so equimeasurability holds exactly.

use serde::{Deserialize, Serialize};

use crate::content::{cell_radial_weight, radial_weight_ball, Content};
use crate::error::{Error, Result};
use crate::grid::GridFunction;
use crate::lorentz::{distribution_values, LevelPartition};
use crate::sphere::{ball_radius_for_volume, unit_ball_volume};

/// A radial nonincreasing step function.
///
/// `values[i]` is taken on the annulus radii[i] ≤ |x| < radii[i+1]; the last
/// value (beyond the last radius) is 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialProfile {
    pub dim: usize,
    pub radii: Vec<f64>,
    pub values: Vec<f64>,
}

impl RadialProfile {
    pub fn new(dim: usize, radii: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::InvalidParams(format!("dimension {dim} not in 1..=3")));
        }
        if radii.is_empty() || radii[0] != 0.0 || radii.len() != values.len() {
            return Err(Error::InvalidParams(
                "profile needs radii starting at 0 and one value per radius".into(),
            ));
        }
        if radii.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidParams("profile radii must increase strictly".into()));
        }
        if values.windows(2).any(|w| w[1] > w[0]) || values.iter().any(|v| !(*v >= 0.0)) {
            return Err(Error::InvalidParams("profile values must be nonnegative and nonincreasing".into()));
        }
        if *values.last().expect("nonempty") != 0.0 {
            return Err(Error::InvalidParams("profile must vanish beyond its last radius".into()));
        }
        Ok(Self { dim, radii, values })
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            radii: vec![0.0],
            values: vec![0.0],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values[0] == 0.0
    }

    /// f^#(x) at |x| = r.
    pub fn value_at(&self, r: f64) -> f64 {
        let i = self.radii.partition_point(|a| *a <= r);
        self.values[i - 1]
    }

    /// V({f^# > t}).
    pub fn superlevel_volume(&self, t: f64) -> f64 {
        // first annulus whose value is ≤ t; everything inside it exceeds t
        let i = self.values.partition_point(|v| *v > t);
        unit_ball_volume(self.dim) * self.radii[i].powi(self.dim as i32)
    }

    /// (f^#)^s, which is (|f|^s)^# for s > 0.
    pub fn powf(&self, s: f64) -> Self {
        self.map(|v| v.powf(s))
    }

    /// Φ∘f^# for a nondecreasing Φ with Φ(0) = 0, which equals (Φ∘|f|)^#.
    pub fn map<F: Fn(f64) -> f64>(&self, phi: F) -> Self {
        Self {
            dim: self.dim,
            radii: self.radii.clone(),
            values: self.values.iter().map(|v| phi(*v)).collect(),
        }
    }

    /// Radius of the support.
    pub fn support_radius(&self) -> f64 {
        *self.radii.last().expect("nonempty")
    }
}

/// f^# from the exact superlevel volumes at every sample magnitude.
pub fn rearrange(f: &GridFunction) -> RadialProfile {
    let dim = f.dim();
    if f.is_zero() {
        return RadialProfile::zero(dim);
    }
    let part = LevelPartition::grid_values(f);
    let m = part.levels.len();
    // V(O_t) for t = 0, t₁, …, t_{m−1}
    let mut thresholds = vec![0.0];
    thresholds.extend_from_slice(&part.levels[..m - 1]);
    let volumes = distribution_values(f, &thresholds, &Content::LebesgueVolume).expect("Lebesgue content is additive");
    let mut radii = Vec::with_capacity(m + 1);
    let mut values = Vec::with_capacity(m + 1);
    radii.push(0.0);
    values.push(part.levels[m - 1]);
    for j in (0..m - 1).rev() {
        radii.push(ball_radius_for_volume(dim, volumes[j + 1]));
        values.push(part.levels[j]);
    }
    radii.push(ball_radius_for_volume(dim, volumes[0]));
    values.push(0.0);
    RadialProfile { dim, radii, values }
}

/// Outcome of an equimeasurability check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Equimeasurability {
    pub holds: bool,
    /// Largest |V(O_t(f)) − V(O_t(f^#))| over the tested levels.
    pub max_deviation: f64,
}

/// Compares V(O_t(f)) with V(O_t(prof)) at t = 0 and at every sample magnitude
/// of f and every profile value; holds when the deviation is at most one cell.
pub fn equimeasurable(f: &GridFunction, prof: &RadialProfile) -> Result<Equimeasurability> {
    if f.dim() != prof.dim {
        return Err(Error::DimensionMismatch(format!(
            "{}-dimensional function against a {}-dimensional profile",
            f.dim(),
            prof.dim
        )));
    }
    let mut thresholds: Vec<f64> = vec![0.0];
    thresholds.extend(LevelPartition::grid_values(f).levels);
    thresholds.extend(prof.values.iter().copied().filter(|v| *v > 0.0));
    thresholds.sort_by(f64::total_cmp);
    thresholds.dedup();
    let volumes = distribution_values(f, &thresholds, &Content::LebesgueVolume)?;
    let max_deviation = thresholds
        .iter()
        .zip(&volumes)
        .map(|(t, v)| (v - prof.superlevel_volume(*t)).abs())
        .fold(0.0, f64::max);
    let cell = f.cell_volume();
    Ok(Equimeasurability {
        holds: max_deviation <= cell * (1.0 + 1e-9),
        max_deviation,
    })
}

/// Functions that can be integrated against |x|^{−γ}.
pub trait WeightedIntegrand {
    fn dim(&self) -> usize;
    /// ∫ |g|^s |x|^{−γ} dx, with γ already validated.
    fn weighted(&self, s: f64, gamma: f64) -> f64;
}

impl WeightedIntegrand for GridFunction {
    fn dim(&self) -> usize {
        GridFunction::dim(self)
    }

    fn weighted(&self, s: f64, gamma: f64) -> f64 {
        let (dim, h) = (GridFunction::dim(self), self.spacing());
        self.values()
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(i, v)| v.abs().powf(s) * cell_radial_weight(&self.center(i), h, dim, gamma))
            .sum()
    }
}

impl WeightedIntegrand for RadialProfile {
    fn dim(&self) -> usize {
        self.dim
    }

    fn weighted(&self, s: f64, gamma: f64) -> f64 {
        let mut total = 0.0;
        let mut inner = 0.0;
        for i in 0..self.radii.len() - 1 {
            let outer = radial_weight_ball(self.dim, self.radii[i + 1], gamma);
            total += self.values[i].powf(s) * (outer - inner);
            inner = outer;
        }
        total
    }
}

/// ∫ |g(x)|^s |x|^{−γ} dx for a sampled function or a radial profile.
pub fn weighted_integral<G: WeightedIntegrand + ?Sized>(g: &G, s: f64, gamma: f64) -> Result<f64> {
    let n = g.dim() as f64;
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::InvalidParams(format!("exponent s = {s} must be positive")));
    }
    if !(gamma >= 0.0 && gamma < n) {
        return Err(Error::InvalidParams(format!(
            "weight exponent gamma = {gamma} must lie in [0, {n})"
        )));
    }
    Ok(g.weighted(s, gamma))
}

/// The constant C in ∫ (f^#)^p |x|^{−pβ} dx = C · ∫₀^∞ V(O_t(f))^{(n−pβ)/n} dt^p,
/// namely C = n ω_n^{pβ/n} / (n − pβ) under the unit-ball-volume normalisation.
pub fn hardy_identity_constant(dim: usize, p: f64, beta: f64) -> f64 {
    let n = dim as f64;
    n * unit_ball_volume(dim).powf(p * beta / n) / (n - p * beta)
}

/// (∫ f g, ∫ f^# g^#) on a common grid.
pub fn riesz_pairing(f: &GridFunction, g: &GridFunction) -> Result<(f64, f64)> {
    if !f.same_grid(g) {
        return Err(Error::DimensionMismatch("riesz_pairing needs both functions on one grid".into()));
    }
    let direct = f.values().iter().zip(g.values()).map(|(a, b)| a * b).sum::<f64>() * f.cell_volume();
    Ok((direct, profile_pairing(&rearrange(f), &rearrange(g))))
}

/// ∫ a b over ℝⁿ for two radial profiles, exact on the merged annuli.
pub fn profile_pairing(a: &RadialProfile, b: &RadialProfile) -> f64 {
    let dim = a.dim;
    let omega = unit_ball_volume(dim);
    let end = a.support_radius().min(b.support_radius());
    let mut cuts: Vec<f64> = a
        .radii
        .iter()
        .chain(&b.radii)
        .copied()
        .filter(|r| *r <= end)
        .collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    cuts.windows(2)
        .map(|w| {
            let mid = 0.5 * (w[0] + w[1]);
            a.value_at(mid) * b.value_at(mid) * omega * (w[1].powi(dim as i32) - w[0].powi(dim as i32))
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::corpus_entry;
    use crate::geometry::GeometricSet;

    #[test]
    fn ball_indicator_rearranges_to_centred_ball() {
        let set = GeometricSet::ball(&[0.3, -0.2], 0.5).unwrap();
        let f = GridFunction::indicator(&set, 1.0 / 32.0, &[-1.0, -1.0], &[1.0, 1.0]).unwrap();
        let prof = rearrange(&f);
        assert_eq!(prof.values, vec![1.0, 0.0]);
        let r = prof.radii[1];
        // digitised area is within a boundary layer of π/4
        assert!((r - 0.5).abs() < 2.0 / 32.0, "{r}");
    }

    #[test]
    fn two_balls_become_one() {
        let a = GeometricSet::ball(&[-0.5], 0.25).unwrap();
        let b = GeometricSet::ball(&[0.5], 0.125).unwrap();
        let u = GeometricSet::disjoint_union(vec![a, b]).unwrap();
        let f = GridFunction::indicator(&u, 1.0 / 64.0, &[-1.0], &[1.0]).unwrap();
        let prof = rearrange(&f);
        assert!((2.0 * prof.radii[1] - f.support_cells() as f64 / 64.0).abs() < 1e-12);
    }

    #[test]
    fn zero_function() {
        let f = corpus_entry("bump", 2, 16).unwrap().zeros_like();
        let prof = rearrange(&f);
        assert!(prof.is_zero());
        let e = equimeasurable(&f, &prof).unwrap();
        assert!(e.holds && e.max_deviation == 0.0);
        assert_eq!(riesz_pairing(&f, &f).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn dilated_profile_is_not_equimeasurable() {
        let f = corpus_entry("tent", 1, 32).unwrap();
        let g = crate::grid::dilate(&f, 2.0).unwrap();
        assert!(!equimeasurable(&f, &rearrange(&g)).unwrap().holds);
    }

    #[test]
    fn interval_weight() {
        let f = GridFunction::sample(1.0 / 64.0, &[-1.5], &[1.5], |x| if x[0].abs() < 1.0 { 1.0 } else { 0.0 }).unwrap();
        let v = weighted_integral(&f, 1.0, 0.5).unwrap();
        assert!((v - 4.0).abs() < 0.08);
        let p = weighted_integral(&rearrange(&f), 1.0, 0.5).unwrap();
        assert!((p - 4.0).abs() < 0.08);
        assert!(weighted_integral(&f, 1.0, 1.0).is_err());
    }

    #[test]
    fn value_lookup() {
        let prof = RadialProfile::new(1, vec![0.0, 0.5, 1.0], vec![2.0, 1.0, 0.0]).unwrap();
        assert_eq!(prof.value_at(0.0), 2.0);
        assert_eq!(prof.value_at(0.7), 1.0);
        assert_eq!(prof.value_at(1.0), 0.0);
        assert!((prof.superlevel_volume(1.5) - 1.0).abs() < 1e-15);
        assert!((prof.superlevel_volume(0.5) - 2.0).abs() < 1e-15);
        assert!(RadialProfile::new(1, vec![0.0, 1.0], vec![1.0, 2.0]).is_err());
    }
}
