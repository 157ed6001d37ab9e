//! Generalized Hyers-Ulam stability of the Euler-Lagrange cubic equation
//!
//! ```text
//! 2m f(x + my) + 2 f(mx - y) = (m^3 + m)[f(x + y) + f(x - y)] + 2(m^4 - 1) f(y)
//! ```
//!
//! from a quasi-normed `X` into a quasi-Banach `Y` with exponent `p`. If the
//! defect of `f` is bounded by `phi` and `phi(mx, my) <= L |m|^3 phi(x, y)`,
//! then `q(x) = lim f(m^n x) / m^{3n}` solves the equation and
//!
//! ```text
//! ||f(x) - q(x)|| <= (4 / (1 - L^p))^{1/p} phi(x, 0) / (2 |m|^3).
//! ```

pub mod approximant;
pub mod bound;
pub mod certificate;
pub mod defect;
pub mod perturbation;
pub mod symbolic;

pub use approximant::{cubic_approximant, iteration_operator, sup_weighted_distance, Approximant};
pub use bound::{bound_constants, power_law_closed_form, stability_bound, BoundConstants};
pub use certificate::{verify_stability, PointRecord, StabilityCertificate, StabilityConfig};
pub use defect::{
    el_defect, hypothesis_defect_check, junkim_defect, phi_contractivity_check, ContractivityReport, Defect,
    DefectReport,
};
pub use perturbation::{PerturbationBound, PhiDescriptor};
