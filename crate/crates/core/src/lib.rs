//! Numerical tools for homogeneous Besov spaces on ℝⁿ, n ≤ 3: seminorms of
//! sampled functions, Lorentz and capacitary Lorentz norms, symmetric
//! decreasing rearrangement, fractional perimeters, capacity and covering
//! content bounds, and a harness that checks the inequalities relating them.

pub mod besov;
pub mod capset;
pub mod content;
pub mod corpus;
pub mod error;
pub mod geometry;
pub mod grid;
pub mod harness;
pub mod lorentz;
pub mod params;
pub mod rearrange;
pub mod sphere;

pub use besov::{besov_integral, besov_seminorm, finite_difference, lp_norm, BesovQuadConfig};
pub use capset::{
    besov_capacity_upper, capacity_upper_value, choquet_lorentz_norm, fractional_perimeter, netrusov_upper, CapacityBound,
    CapacityFamilyConfig, EpsOptimizer, InnerScheme, MollifierProfile, PerimeterEstimate, PerimeterMCConfig,
};
pub use content::Content;
pub use corpus::{corpus_entry, corpus_entry_shifted, make_corpus, CorpusSpec};
pub use error::{Error, Result};
pub use geometry::{AxisBox, Ball, GeometricSet, Point, Shape};
pub use grid::{dilate, GridFunction, SuperlevelSet};
pub use harness::{emit_report, run_suite, CheckReport, Report, ReportFormat, SuiteConfig};
pub use lorentz::{distribution_value, lorentz_norm, weak_norm, LevelPartition, LevelScheme};
pub use params::{BesovParams, LorentzParams, Regime};
pub use rearrange::{equimeasurable, rearrange, riesz_pairing, weighted_integral, Equimeasurability, RadialProfile};
