//! Distance bounds between `f` and its cubic approximant.

use serde::Serialize;

use crate::error::{invalid, Result};

use super::certificate::StabilityConfig;
use super::perturbation::PerturbationBound;

/// The constants `C` in `||f(x) - q(x)|| <= C w(x)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundConstants {
    /// `(4 / (1 - L^p))^{1/p} / (2 |m|^3)`; the headline constant.
    pub headline: f64,
    /// `(4 / (1 - L))^{1/p} / (2 |m|^3)`.
    pub companion: f64,
}

pub fn bound_constants(lipschitz: f64, p: f64, m: f64) -> Result<BoundConstants> {
    let lp = lipschitz.powf(p);
    if !(lp < 1.0) || lipschitz < 0.0 {
        return Err(invalid(format!("L^p = {lp} must be below 1")));
    }
    if !(p > 0.0 && p <= 1.0) {
        return Err(invalid(format!("p must lie in (0, 1], got {p}")));
    }
    let denom = 2.0 * m.abs().powi(3);
    Ok(BoundConstants {
        headline: (4.0 / (1.0 - lp)).powf(1.0 / p) / denom,
        companion: (4.0 / (1.0 - lipschitz)).powf(1.0 / p) / denom,
    })
}

/// `(4 / (1 - L^p))^{1/p} * w(x) / (2 |m|^3)`.
pub fn stability_bound(config: &StabilityConfig, phi: &PerturbationBound, x: &[f64]) -> Result<f64> {
    let c = bound_constants(config.lipschitz(), config.p(), config.m())?;
    Ok(c.headline * phi.axis_weight(x))
}

/// Closed form for the power law `lambda (||x||^s + ||y||^s)`:
/// `(4 / (1 - |m|^{s-3}))^{1/p} * lambda ||x||^s / (2 |m|^3)`.
pub fn power_law_closed_form(lambda: f64, s: f64, m: f64, p: f64, norm_x: f64) -> Result<f64> {
    let l = m.abs().powf(s - 3.0);
    if !(l < 1.0) {
        return Err(invalid(format!("|m|^(s-3) = {l} must be below 1")));
    }
    let weight = if norm_x == 0.0 { 0.0 } else { lambda * norm_x.powf(s) };
    Ok((4.0 / (1.0 - l)).powf(1.0 / p) * weight / (2.0 * m.abs().powi(3)))
}
