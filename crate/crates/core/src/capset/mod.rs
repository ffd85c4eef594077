//! Set functions of geometric sets: fractional perimeters, capacity and
//! Netrusov-content upper bounds, and Choquet-type Lorentz norms.

mod capacity;
mod choquet;
mod netrusov;
mod perimeter;

pub use capacity::{
    besov_capacity_upper, capacity_upper_value, family_member_norm, mollified_indicator, CapacityBound, CapacityFamilyConfig,
    EpsOptimizer, MollifierProfile, MIN_BAND_CELLS,
};
pub use choquet::choquet_lorentz_norm;
pub use netrusov::{netrusov_upper, MAX_LATTICE_BALLS};
pub use perimeter::{
    fractional_perimeter, perimeter_scaling_exponent, InnerScheme, PerimeterEstimate, PerimeterMCConfig,
};
