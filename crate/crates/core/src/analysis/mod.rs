//! Degree statistics, theoretical degree distribution, exponent fitting and
//! random-failure robustness.

mod degree;
mod powerlaw;
pub mod quadrature;
mod robustness;
mod theory;

pub use degree::{degree_stats, DegreeHistogram, DegreeStats};
pub use powerlaw::{fit_power_law, hurwitz_zeta, PowerLawFit};
pub use robustness::{
    components_after_removal, failure_outcomes, failure_trial, giant_components, mean_std,
    random_failure_sweep, summarize_outcomes, RobustnessCurve,
};
pub use theory::{ks_distance, theoretical_pk, TheoreticalModel, QUAD_TOL};
