//! Suite configuration and its flat `key = value` file format.
//!
//! ```text
//! # comment
//! suites            = scaling, lemma21
//! corpus.names      = bump, tent
//! corpus.dim        = 1
//! corpus.resolution = 64
//! corpus.seed       = 42
//! params            = 0.3/1/1 ; 0.2/2/2        # beta/p/q, dimension from corpus.dim
//! tolerance.scaling = 0.03
//! seed              = 42
//! out_path          = report.json
//! record_timings    = false
//! besov.radial_points = 128                    # also angular_points, r_min, r_max, tail_correction
//! perimeter.outer_samples = 10000
//! capacity.eps_grid   = 0.5, 0.25, 0.125
//! capacity.resolution = 256
//! capacity.profile    = linear                 # or smooth:<odd degree>
//! capacity.optimizer  = grid                   # or golden:<tolerance>
//! ```
//!
//! Unknown keys, repeated keys and malformed values are errors.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::besov::BesovQuadConfig;
use crate::capset::{CapacityFamilyConfig, EpsOptimizer, MollifierProfile};
use crate::corpus::{CorpusSpec, CATALOG};
use crate::error::{Error, Result};
use crate::params::BesovParams;

/// Every suite, in execution order.
pub const SUITES: &[&str] = &[
    "scaling",
    "lemma21",
    "sobolev_chain",
    "capacitary_chain",
    "hardy",
    "rearrange",
    "coarea",
    "perimeter_capacity",
    "isocap_report",
];

/// Relative tolerance used when the config does not set one.
pub fn default_tolerance(suite: &str) -> f64 {
    match suite {
        "lemma21" => 1e-12,
        "rearrange" => 1e-9,
        "scaling" | "hardy" => 0.03,
        _ => 0.05,
    }
}

/// Three Regime A and three Regime B tuples valid in dimension `dim`.
pub fn default_params(dim: usize) -> Vec<BesovParams> {
    let tuples: &[(f64, f64, f64)] = match dim {
        1 => &[
            (0.3, 1.0, 1.0),
            (0.2, 2.0, 2.0),
            (0.4, 1.5, 1.0),
            (0.5, 1.0, 1.0),
            (0.5, 0.8, 0.8),
            (0.3, 0.9, 0.9),
            (0.7, 0.7, 0.7),
        ],
        2 => &[
            (0.3, 1.0, 1.0),
            (0.2, 2.0, 2.0),
            (0.4, 1.5, 1.0),
            (0.5, 0.9, 0.9),
            (0.3, 0.95, 0.95),
            (0.7, 0.85, 0.85),
        ],
        _ => &[
            (0.3, 1.0, 1.0),
            (0.2, 2.0, 2.0),
            (0.4, 1.5, 1.0),
            (0.5, 0.9, 0.9),
            (0.3, 0.95, 0.95),
            (0.7, 0.9, 0.9),
        ],
    };
    tuples
        .iter()
        .map(|(b, p, q)| BesovParams::new(*b, *p, *q, dim).expect("default tuples are valid"))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub suites: Vec<String>,
    pub corpus: CorpusSpec,
    pub params: Vec<BesovParams>,
    /// Per-suite relative tolerance; missing suites use [`default_tolerance`].
    pub tolerances: BTreeMap<String, f64>,
    pub out_path: String,
    /// Seed for every Monte Carlo estimate.
    pub seed: u64,
    pub besov: BesovQuadConfig,
    pub perimeter_samples: usize,
    pub capacity: CapacityFamilyConfig,
    /// Fill `runtime_ms` in reports; off by default so reruns are byte-identical.
    pub record_timings: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self::for_dim(1)
    }
}

impl SuiteConfig {
    /// All suites on the full catalogue in dimension `dim`.
    pub fn for_dim(dim: usize) -> Self {
        Self {
            suites: SUITES.iter().map(|s| s.to_string()).collect(),
            corpus: CorpusSpec::new(CATALOG, dim, 64, 42),
            params: default_params(dim),
            tolerances: BTreeMap::new(),
            out_path: "report.json".into(),
            seed: 42,
            besov: BesovQuadConfig::for_dim(dim),
            perimeter_samples: 10_000,
            capacity: CapacityFamilyConfig::default(),
            record_timings: false,
        }
    }

    pub fn tolerance(&self, suite: &str) -> f64 {
        self.tolerances.get(suite).copied().unwrap_or_else(|| default_tolerance(suite))
    }

    pub fn validate(&self) -> Result<()> {
        for s in &self.suites {
            if !SUITES.contains(&s.as_str()) {
                return Err(Error::UnknownSuite(s.clone()));
            }
        }
        for (s, t) in &self.tolerances {
            if !SUITES.contains(&s.as_str()) {
                return Err(Error::UnknownSuite(s.clone()));
            }
            if !(*t > 0.0 && t.is_finite()) {
                return Err(Error::Config(format!("tolerance for {s} must be positive, got {t}")));
            }
        }
        self.corpus.validate()?;
        for p in &self.params {
            if p.dim() != self.corpus.dim {
                return Err(Error::DimensionMismatch(format!(
                    "parameter tuple for dimension {} with a {}-dimensional corpus",
                    p.dim(),
                    self.corpus.dim
                )));
            }
        }
        self.besov.validate()?;
        self.capacity.validate()?;
        if self.perimeter_samples < 1000 {
            return Err(Error::Config(format!(
                "perimeter.outer_samples = {} must be at least 1000",
                self.perimeter_samples
            )));
        }
        Ok(())
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    /// Parses the flat config format; absent keys keep their defaults.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries: BTreeMap<String, (usize, String)> = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`", n + 1)))?;
            let k = k.trim().to_string();
            if entries.insert(k.clone(), (n + 1, v.trim().to_string())).is_some() {
                return Err(Error::Config(format!("line {}: key `{k}` set twice", n + 1)));
            }
        }
        let take = |entries: &mut BTreeMap<String, (usize, String)>, k: &str| entries.remove(k);

        let dim = match take(&mut entries, "corpus.dim") {
            Some((l, v)) => parse_num::<usize>(l, "corpus.dim", &v)?,
            None => 1,
        };
        let mut cfg = Self::for_dim(dim);
        if let Some((_, v)) = take(&mut entries, "suites") {
            cfg.suites = list(&v);
        }
        if let Some((_, v)) = take(&mut entries, "corpus.names") {
            cfg.corpus.names = list(&v);
        }
        if let Some((l, v)) = take(&mut entries, "corpus.resolution") {
            cfg.corpus.resolution = parse_num(l, "corpus.resolution", &v)?;
        }
        if let Some((l, v)) = take(&mut entries, "corpus.seed") {
            cfg.corpus.seed = parse_num(l, "corpus.seed", &v)?;
        }
        if let Some((l, v)) = take(&mut entries, "seed") {
            cfg.seed = parse_num(l, "seed", &v)?;
        }
        if let Some((_, v)) = take(&mut entries, "out_path") {
            cfg.out_path = v;
        }
        if let Some((l, v)) = take(&mut entries, "record_timings") {
            cfg.record_timings = parse_num(l, "record_timings", &v)?;
        }
        if let Some((l, v)) = take(&mut entries, "params") {
            cfg.params = parse_params(l, &v, dim)?;
        }
        if let Some((l, v)) = take(&mut entries, "besov.radial_points") {
            cfg.besov.radial_points = parse_num(l, "besov.radial_points", &v)?;
        }
        if let Some((l, v)) = take(&mut entries, "besov.angular_points") {
            cfg.besov.angular_points = parse_num(l, "besov.angular_points", &v)?;
        }
        if let Some((l, v)) = take(&mut entries, "besov.r_min") {
            cfg.besov.r_min = Some(parse_num(l, "besov.r_min", &v)?);
        }
        if let Some((l, v)) = take(&mut entries, "besov.r_max") {
            cfg.besov.r_max = Some(parse_num(l, "besov.r_max", &v)?);
        }
        if let Some((l, v)) = take(&mut entries, "besov.tail_correction") {
            cfg.besov.tail_correction = parse_num(l, "besov.tail_correction", &v)?;
        }
        if let Some((l, v)) = take(&mut entries, "perimeter.outer_samples") {
            cfg.perimeter_samples = parse_num(l, "perimeter.outer_samples", &v)?;
        }
        if let Some((l, v)) = take(&mut entries, "capacity.eps_grid") {
            cfg.capacity.eps_grid = list(&v)
                .iter()
                .map(|s| parse_num(l, "capacity.eps_grid", s))
                .collect::<Result<_>>()?;
        }
        if let Some((l, v)) = take(&mut entries, "capacity.resolution") {
            cfg.capacity.resolution = parse_num(l, "capacity.resolution", &v)?;
        }
        if let Some((l, v)) = take(&mut entries, "capacity.profile") {
            cfg.capacity.profile = match v.as_str() {
                "linear" => MollifierProfile::Linear,
                other => match other.strip_prefix("smooth:") {
                    Some(d) => MollifierProfile::SmoothPoly(parse_num(l, "capacity.profile", d)?),
                    None => return Err(Error::Config(format!("line {l}: unknown profile `{other}`"))),
                },
            };
        }
        if let Some((l, v)) = take(&mut entries, "capacity.optimizer") {
            cfg.capacity.optimizer = match v.as_str() {
                "grid" => EpsOptimizer::GridScan,
                other => match other.strip_prefix("golden:") {
                    Some(t) => EpsOptimizer::GoldenSection(parse_num(l, "capacity.optimizer", t)?),
                    None => return Err(Error::Config(format!("line {l}: unknown optimizer `{other}`"))),
                },
            };
        }
        let tolerance_keys: Vec<String> = entries.keys().filter(|k| k.starts_with("tolerance.")).cloned().collect();
        for k in tolerance_keys {
            let (l, v) = entries.remove(&k).expect("present");
            let suite = k.trim_start_matches("tolerance.").to_string();
            cfg.tolerances.insert(suite, parse_num(l, &k, &v)?);
        }
        if let Some((k, (l, _))) = entries.into_iter().next() {
            return Err(Error::Config(format!("line {l}: unknown key `{k}`")));
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn list(v: &str) -> Vec<String> {
    v.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect()
}

fn parse_num<T: std::str::FromStr>(line: usize, key: &str, v: &str) -> Result<T> {
    v.trim()
        .parse()
        .map_err(|_| Error::Config(format!("line {line}: cannot parse `{v}` for {key}")))
}

fn parse_params(line: usize, v: &str, dim: usize) -> Result<Vec<BesovParams>> {
    v.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|t| {
            let parts: Vec<&str> = t.split('/').collect();
            if parts.len() != 3 {
                return Err(Error::Config(format!("line {line}: parameter tuple `{t}` is not beta/p/q")));
            }
            let b = parse_num(line, "params", parts[0])?;
            let p = parse_num(line, "params", parts[1])?;
            let q = parse_num(line, "params", parts[2])?;
            BesovParams::new(b, p, q, dim)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_example() {
        let cfg = SuiteConfig::parse(
            "# demo\nsuites = scaling, lemma21\ncorpus.names = bump, tent\ncorpus.dim = 1\n\
             params = 0.3/1/1 ; 0.2/2/2\ntolerance.scaling = 0.02\nseed = 7\n",
        )
        .unwrap();
        assert_eq!(cfg.suites, vec!["scaling", "lemma21"]);
        assert_eq!(cfg.corpus.names, vec!["bump", "tent"]);
        assert_eq!(cfg.params.len(), 2);
        assert_eq!(cfg.tolerance("scaling"), 0.02);
        assert_eq!(cfg.tolerance("lemma21"), 1e-12);
        assert_eq!(cfg.seed, 7);
    }

    #[test]
    fn rejects_unknown_keys_and_suites() {
        assert!(matches!(SuiteConfig::parse("colour = blue"), Err(Error::Config(_))));
        assert!(matches!(SuiteConfig::parse("suites = nope"), Err(Error::UnknownSuite(_))));
        assert!(SuiteConfig::parse("seed = 1\nseed = 2").is_err());
    }

    #[test]
    fn regime_violation_names_the_constraint() {
        let err = SuiteConfig::parse("params = 0.5/2/2").unwrap_err().to_string();
        assert!(err.contains("n/beta"), "{err}");
    }

    #[test]
    fn defaults_are_valid_in_every_dimension() {
        for d in 1..=3 {
            SuiteConfig::for_dim(d).validate().unwrap();
        }
    }
}
