//! The deterministic catalogue of test functions.
//!
//! | name            | profile                                                     | radial |
//! |-----------------|-------------------------------------------------------------|--------|
//! | `bump`          | exp(−1/(1−\|x\|²)) on \|x\| < 1, peak 1/e                     | yes    |
//! | `tent`          | max(0, 1 − \|x\|)                                            | yes    |
//! | `two_bump`      | bumps of radius 1/2 at ∓0.625·e₁ with peaks 1 and 1/2        | no     |
//! | `trunc_power`   | max(0, 1 − \|x\|)^a, a = 2; `trunc_power:<a>` picks a > 1     | yes    |
//! | `plateau`       | smoothed indicator of B₁, transition width 2·0.02 around \|x\| = 1 | yes |
//!
//! Every entry is sampled on the centred grid covering [−1.25, 1.25]ⁿ with
//! `resolution` cells per unit length, one cell centred on the origin. The
//! entries are analytic, so the seed only travels with the spec for
//! provenance in reports.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{norm, Point};
use crate::grid::GridFunction;

pub const MIN_RESOLUTION: usize = 16;

/// Half-width of the sampling box.
pub const HALF_WIDTH: f64 = 1.25;

/// Half-width of the plateau's transition band.
pub const PLATEAU_BAND: f64 = 0.02;

pub const CATALOG: &[&str] = &["bump", "tent", "two_bump", "trunc_power", "plateau"];

/// Catalogue entries whose superlevel sets are origin-centred balls.
pub const RADIAL: &[&str] = &["bump", "tent", "trunc_power", "plateau"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub names: Vec<String>,
    pub dim: usize,
    /// Cells per unit length.
    pub resolution: usize,
    pub seed: u64,
}

impl CorpusSpec {
    pub fn new(names: &[&str], dim: usize, resolution: usize, seed: u64) -> Self {
        Self {
            names: names.iter().map(|s| s.to_string()).collect(),
            dim,
            resolution,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.resolution < MIN_RESOLUTION {
            return Err(Error::ResolutionTooLow {
                got: self.resolution,
                min: MIN_RESOLUTION,
            });
        }
        if !(1..=3).contains(&self.dim) {
            return Err(Error::InvalidParams(format!("dimension {} not in 1..=3", self.dim)));
        }
        for n in &self.names {
            parse_entry(n)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Entry {
    Bump,
    Tent,
    TwoBump,
    TruncPower(f64),
    Plateau,
}

fn parse_entry(name: &str) -> Result<Entry> {
    let unknown = || Error::UnknownCorpusEntry(name.to_string());
    Ok(match name {
        "bump" => Entry::Bump,
        "tent" => Entry::Tent,
        "two_bump" => Entry::TwoBump,
        "trunc_power" => Entry::TruncPower(2.0),
        "plateau" => Entry::Plateau,
        other => {
            let a = other
                .strip_prefix("trunc_power:")
                .ok_or_else(unknown)?
                .parse::<f64>()
                .map_err(|_| unknown())?;
            if !(a > 1.0 && a.is_finite()) {
                return Err(Error::InvalidParams(format!("trunc_power exponent {a} must exceed 1")));
            }
            Entry::TruncPower(a)
        }
    })
}

/// Whether the named entry is radial and nonincreasing.
pub fn is_radial(name: &str) -> bool {
    !matches!(parse_entry(name), Ok(Entry::TwoBump) | Err(_))
}

fn bump_profile(r2: f64) -> f64 {
    if r2 < 1.0 {
        (-1.0 / (1.0 - r2)).exp()
    } else {
        0.0
    }
}

fn smoothstep(u: f64) -> f64 {
    let u = u.clamp(0.0, 1.0);
    u * u * (3.0 - 2.0 * u)
}

fn evaluate(entry: Entry, x: &Point, dim: usize) -> f64 {
    let r = norm(x, dim);
    match entry {
        Entry::Bump => bump_profile(r * r),
        Entry::Tent => (1.0 - r).max(0.0),
        Entry::TruncPower(a) => (1.0 - r).max(0.0).powf(a),
        Entry::Plateau => 1.0 - smoothstep((r - (1.0 - PLATEAU_BAND)) / (2.0 * PLATEAU_BAND)),
        Entry::TwoBump => {
            let lobe = |shift: f64, height: f64| {
                let mut y = *x;
                y[0] -= shift;
                let r = norm(&y, dim) / 0.5;
                height * std::f64::consts::E * bump_profile(r * r)
            };
            lobe(-0.625, 1.0) + lobe(0.625, 0.5)
        }
    }
}

/// Samples each requested entry. Same spec, same bits.
pub fn make_corpus(spec: &CorpusSpec) -> Result<Vec<(String, GridFunction)>> {
    spec.validate()?;
    let spacing = 1.0 / spec.resolution as f64;
    let half_cells = (HALF_WIDTH * spec.resolution as f64).ceil() as usize;
    spec.names
        .iter()
        .map(|name| {
            let entry = parse_entry(name)?;
            let f = GridFunction::sample_centered(spec.dim, spacing, half_cells, |x| evaluate(entry, x, spec.dim))?;
            Ok((name.clone(), f))
        })
        .collect()
}

/// Single entry convenience wrapper.
pub fn corpus_entry(name: &str, dim: usize, resolution: usize) -> Result<GridFunction> {
    let spec = CorpusSpec::new(&[name], dim, resolution, 0);
    Ok(make_corpus(&spec)?.pop().expect("one entry").1)
}

/// A catalogue entry translated by `shift`, on the same grid as the
/// unshifted entry. Fails if the shifted support reaches the padding layer.
pub fn corpus_entry_shifted(name: &str, dim: usize, resolution: usize, shift: &[f64]) -> Result<GridFunction> {
    CorpusSpec::new(&[name], dim, resolution, 0).validate()?;
    if shift.len() != dim {
        return Err(Error::DimensionMismatch(format!("shift of length {} in dimension {dim}", shift.len())));
    }
    let entry = parse_entry(name)?;
    let spacing = 1.0 / resolution as f64;
    let half_cells = (HALF_WIDTH * resolution as f64).ceil() as usize;
    GridFunction::sample_centered(dim, spacing, half_cells, |x| {
        let mut y = *x;
        for (a, s) in shift.iter().enumerate() {
            y[a] -= s;
        }
        evaluate(entry, &y, dim)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bump_peak_is_one_over_e() {
        let out = make_corpus(&CorpusSpec::new(&["bump"], 1, 64, 1)).unwrap();
        assert_eq!(out.len(), 1);
        let m = out[0].1.max_abs();
        assert!((m - (-1f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn empty_spec() {
        assert!(make_corpus(&CorpusSpec::new(&[], 2, 32, 0)).unwrap().is_empty());
    }

    #[test]
    fn determinism() {
        let spec = CorpusSpec::new(&["two_bump"], 2, 32, 7);
        let a = make_corpus(&spec).unwrap();
        let b = make_corpus(&spec).unwrap();
        let bits = |v: &[f64]| v.iter().map(|x| x.to_bits()).collect::<Vec<_>>();
        assert_eq!(bits(a[0].1.values()), bits(b[0].1.values()));
    }

    #[test]
    fn errors() {
        assert!(matches!(
            make_corpus(&CorpusSpec::new(&["nope"], 1, 32, 0)),
            Err(Error::UnknownCorpusEntry(_))
        ));
        assert!(matches!(
            make_corpus(&CorpusSpec::new(&["bump"], 1, 8, 0)),
            Err(Error::ResolutionTooLow { .. })
        ));
        assert!(make_corpus(&CorpusSpec::new(&["trunc_power:0.5"], 1, 32, 0)).is_err());
        assert!(make_corpus(&CorpusSpec::new(&["trunc_power:3"], 1, 32, 0)).is_ok());
    }

    #[test]
    fn all_entries_in_all_dims() {
        for dim in 1..=3 {
            let res = if dim == 3 { 16 } else { 32 };
            let out = make_corpus(&CorpusSpec::new(CATALOG, dim, res, 0)).unwrap();
            for (name, f) in out {
                assert!(f.max_abs() > 0.0, "{name} in dim {dim}");
            }
        }
    }

    #[test]
    fn shifted_entries_share_the_grid() {
        let f = corpus_entry("plateau", 2, 32).unwrap();
        let g = corpus_entry_shifted("plateau", 2, 32, &[0.125, 0.0]).unwrap();
        assert!(f.same_grid(&g));
        assert!(corpus_entry_shifted("plateau", 1, 32, &[0.5]).is_err());
    }

    #[test]
    fn two_bump_heights() {
        let f = corpus_entry("two_bump", 1, 64).unwrap();
        let s = f.superlevel_set(0.75);
        assert!(!s.is_empty());
        assert!(s.cells.iter().all(|&i| f.center(i)[0] < 0.0));
        assert!((f.max_abs() - 1.0).abs() < 1e-12);
    }
}
