//! One-parameter sweeps of a single quantity, written as CSV.

use std::io::Write;

use crate::besov::{besov_seminorm, BesovQuadConfig};
use crate::capset::{besov_capacity_upper, fractional_perimeter, CapacityFamilyConfig, PerimeterMCConfig};
use crate::content::Content;
use crate::error::{Error, Result};
use crate::geometry::GeometricSet;
use crate::grid::GridFunction;
use crate::lorentz::{lorentz_norm, LevelPartition};
use crate::params::{BesovParams, LorentzParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    Beta,
    P,
    Q,
}

impl std::str::FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "beta" => Ok(Self::Beta),
            "p" => Ok(Self::P),
            "q" => Ok(Self::Q),
            other => Err(Error::Config(format!("cannot sweep `{other}` (beta, p or q)"))),
        }
    }
}

impl SweepParam {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Beta => "beta",
            Self::P => "p",
            Self::Q => "q",
        }
    }

    fn apply(&self, base: &BesovParams, v: f64) -> Result<BesovParams> {
        let (b, p, q) = match self {
            Self::Beta => (v, base.p(), base.q()),
            Self::P => (base.beta(), v, base.q()),
            Self::Q => (base.beta(), base.p(), v),
        };
        BesovParams::new(b, p, q, base.dim())
    }
}

/// What is evaluated at each sweep point.
#[derive(Debug, Clone)]
pub enum SweepQuantity {
    Besov(GridFunction, BesovQuadConfig),
    /// ‖f‖ in L^{np/(n−pβ), q}, the Lorentz space of the Sobolev embedding.
    SobolevLorentz(GridFunction),
    Perimeter(GeometricSet, PerimeterMCConfig),
    Capacity(GeometricSet, CapacityFamilyConfig, BesovQuadConfig),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    pub result: Option<f64>,
    pub stderr: Option<f64>,
    /// Why `result` is missing (invalid tuple, divergent integral, …).
    pub note: String,
}

fn evaluate(quantity: &SweepQuantity, params: &BesovParams) -> Result<(f64, Option<f64>)> {
    match quantity {
        SweepQuantity::Besov(f, quad) => Ok((besov_seminorm(f, params, quad)?, None)),
        SweepQuantity::SobolevLorentz(f) => {
            let lp = LorentzParams::new(params.sobolev_exponent(), params.q())?;
            Ok((lorentz_norm(f, &lp, &Content::LebesgueVolume, &LevelPartition::grid_values(f))?, None))
        }
        SweepQuantity::Perimeter(set, cfg) => {
            let est = fractional_perimeter(set, params, cfg)?;
            Ok((est.value, Some(est.stderr)))
        }
        SweepQuantity::Capacity(set, fam, quad) => Ok((besov_capacity_upper(set, params, fam, quad)?.value, None)),
    }
}

/// Evaluates `quantity` at `steps` equispaced values of `param` in [from, to].
/// Points where the tuple is invalid or the quantity fails keep a note instead
/// of a result; only a malformed range is an error.
pub fn sweep(
    base: &BesovParams,
    param: SweepParam,
    from: f64,
    to: f64,
    steps: usize,
    quantity: &SweepQuantity,
) -> Result<Vec<SweepRow>> {
    if steps == 0 || !from.is_finite() || !to.is_finite() {
        return Err(Error::Config(format!("sweep range {from}..{to} with {steps} steps")));
    }
    let values: Vec<f64> = if steps == 1 {
        vec![from]
    } else {
        (0..steps)
            .map(|i| from + (to - from) * i as f64 / (steps - 1) as f64)
            .collect()
    };
    Ok(values
        .into_iter()
        .map(|v| match param.apply(base, v).and_then(|p| evaluate(quantity, &p)) {
            Ok((r, se)) => SweepRow {
                value: v,
                result: Some(r),
                stderr: se,
                note: String::new(),
            },
            Err(e) => SweepRow {
                value: v,
                result: None,
                stderr: None,
                note: e.to_string(),
            },
        })
        .collect())
}

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], param: SweepParam, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([param.name(), "result", "stderr", "note"])?;
    let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
    for r in rows {
        w.write_record([r.value.to_string(), opt(r.result), opt(r.stderr), r.note.clone()])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::corpus_entry;

    #[test]
    fn invalid_points_are_noted_not_fatal() {
        let base = BesovParams::new(0.3, 1.0, 1.0, 1).unwrap();
        let f = corpus_entry("tent", 1, 32).unwrap();
        let rows = sweep(&base, SweepParam::Beta, 0.5, 1.5, 3, &SweepQuantity::SobolevLorentz(f)).unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows[0].result.is_some());
        assert!(rows[2].result.is_none() && !rows[2].note.is_empty());
        let mut buf = Vec::new();
        write_sweep_csv(&rows, SweepParam::Beta, &mut buf).unwrap();
        assert!(String::from_utf8(buf).unwrap().starts_with("beta,result,stderr,note\n"));
    }
}
