//! Growth rates, relative entropy, Lyapunov exponents and the bound checks
//! `h(T,R) ≤ ϑ` and `λ_n(x)/n ≤ ϑ'`.

mod bounds;
mod growth;
mod lyapunov;

pub use bounds::{
    bounds_from_levels, check_bounds, regular_sample, relative_entropy, BoundConfig, BoundReport, HypothesisFlags,
    DEFAULT_SAMPLE, DEFAULT_SEED, DEFAULT_TOL,
};
pub use growth::{
    growth_rate, linear_fit, power_law_fit, GrowthEstimate, GrowthSeries, LinearFit, PowerFit, DEFAULT_WINDOW, MIN_LEN,
    SUBEXP_DEGREE, SUBEXP_SLOPE,
};
pub use lyapunov::{derivative_products, lyapunov, lyapunov_log_norms, operator_norm_sq, Mat2, FINSLER_NORM};
