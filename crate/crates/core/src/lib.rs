//! Numerics for quasi-normed and b-metric spaces.
//!
//! * [`metrization`]: the chain-infimum metric `delta` of a generalized
//!   b-metric space, computed exactly as all-pairs shortest paths over `D^p`,
//!   and brackets for the Aoki-Rolewicz `p`-norm.
//! * [`fixed_point`]: contraction iteration with a-posteriori error bounds
//!   and detection of the infinite-distance branch.
//! * [`cubic`]: defect evaluation, hypothesis checks, the cubic approximant
//!   `lim f(m^n x)/m^{3n}` and stability certificates for the Euler-Lagrange
//!   cubic equation.
//! * [`function_spaces`]: `l^r` on `R^n` and a midpoint-discretized
//!   `L^{1/2}[0,1]`.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Matrix code reads best with explicit indices.
#![allow(clippy::needless_range_loop)]

pub mod cubic;
pub mod error;
pub mod ext_real;
pub mod fixed_point;
pub mod function_spaces;
pub mod io;
pub mod metrization;
pub mod reproduction;
pub mod sampled;
pub mod spaces;

pub use error::{Error, Result};
pub use ext_real::ExtReal;
pub use fixed_point::{
    estimate_lipschitz, iterate, ContractionMap, FixedPointResult, IterationError, IterationSettings, Outcome,
};
pub use metrization::{aoki_rolewicz_estimate, chain_metric, chain_metric_with_exponent, p_exponent, ChainMetric};
pub use sampled::{FnMap, PointwisePolynomial, SampledMap, VectorMap};
pub use spaces::{
    validate_b_metric, validate_quasi_norm, BMetricReport, BMetricViolation, GeneralizedBMetricSpace,
    QuasiNormReport, QuasiNormedSpace,
};
