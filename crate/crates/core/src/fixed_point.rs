//! Contraction iteration on generalized b-metric structures with
//! a-posteriori error bounds.
//!
//! For `D(Tx, Ty) <= L D(x, y)` on a complete generalized b-metric space with
//! exponent `p`, either every residual `D(T^n x, T^{n+1} x)` is infinite, or
//! the orbit converges to a fixed point `x*` and
//!
//! ```text
//! D(T^N x, x*) <= (4 / (1 - L^p))^{1/p} D(T^N x, T^{N+1} x).
//! ```
//!
//! The companion constant `(4 / (1 - L))^{1/p}` is also reported; it is never
//! larger, and `error_bound` is the maximum of the two.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::error::{invalid, Error, Result};
use crate::ext_real::ExtReal;

/// Slack on the per-step contraction check.
pub const CONTRACTION_SLACK: f64 = 1e-9;

/// A self-map together with its claimed Lipschitz constant `L` in `[0, 1)`.
#[derive(Clone)]
pub struct ContractionMap<F> {
    apply: F,
    lipschitz: f64,
}

impl<F> ContractionMap<F> {
    pub fn new(apply: F, lipschitz: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&lipschitz) {
            return Err(invalid(format!("Lipschitz constant must lie in [0, 1), got {lipschitz}")));
        }
        Ok(ContractionMap { apply, lipschitz })
    }

    pub fn lipschitz(&self) -> f64 {
        self.lipschitz
    }

    pub fn apply<P>(&self, x: &P) -> P
    where
        F: Fn(&P) -> P,
    {
        (self.apply)(x)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Converged,
    DivergentInfinite,
    BudgetExhausted,
}

/// The individual bounds behind `error_bound`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundDiagnostics {
    /// `(4 / (1 - L))^{1/p} * residual`.
    pub bound_one_minus_l: ExtReal,
    /// `(4 / (1 - L^p))^{1/p} * residual`.
    pub bound_one_minus_lp: ExtReal,
    /// `residual / (1 - L)`, only for genuine metrics (`p = 1`).
    pub metric_bound: Option<ExtReal>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FixedPointResult<P> {
    pub outcome: Outcome,
    /// `T^N x0`.
    pub iterate: P,
    /// `N`.
    pub iterations: usize,
    /// `D(T^N x0, T^{N+1} x0)`.
    pub residual: ExtReal,
    pub error_bound: ExtReal,
    pub diagnostics: BoundDiagnostics,
    /// `D(T^k x0, T^{k+1} x0)` for `k = 0..=N`.
    pub residuals: Vec<ExtReal>,
}

#[derive(Debug, Error)]
pub enum IterationError<P: fmt::Debug> {
    #[error("contraction hypothesis violated at step {step}: {lhs} > {lipschitz} * {rhs}")]
    HypothesisViolation {
        step: usize,
        /// `(T^{k-1} x0, T^k x0)`; their images are too far apart.
        witness: (P, P),
        lhs: ExtReal,
        rhs: ExtReal,
        lipschitz: f64,
    },
    #[error(transparent)]
    Invalid(#[from] Error),
}

/// Stopping rule for [`iterate`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IterationSettings {
    /// Exponent of the underlying b-metric, `p = log_{2 kappa} 2`.
    pub p: f64,
    /// Converged once the residual is at most `tol`.
    pub tol: f64,
    /// Largest `N` examined.
    pub max_iter: usize,
}

impl IterationSettings {
    fn check(&self) -> Result<()> {
        if !(self.p > 0.0 && self.p <= 1.0) {
            return Err(invalid(format!("p must lie in (0, 1], got {}", self.p)));
        }
        if !(self.tol > 0.0) {
            return Err(invalid(format!("tol must be positive, got {}", self.tol)));
        }
        if self.max_iter == 0 {
            return Err(invalid("max_iter must be at least 1"));
        }
        Ok(())
    }
}

/// Computes the bounds for a residual at contraction constant `l` and exponent `p`.
pub fn bounds(residual: ExtReal, l: f64, p: f64) -> BoundDiagnostics {
    let c_l = (4.0 / (1.0 - l)).powf(1.0 / p);
    let c_lp = (4.0 / (1.0 - l.powf(p))).powf(1.0 / p);
    BoundDiagnostics {
        bound_one_minus_l: residual.scale(c_l),
        bound_one_minus_lp: residual.scale(c_lp),
        metric_bound: (p == 1.0).then(|| residual.scale(1.0 / (1.0 - l))),
    }
}

fn dist<P, D: Fn(&P, &P) -> f64>(distance: &D, a: &P, b: &P) -> Result<ExtReal> {
    let v = distance(a, b);
    if v.is_nan() {
        return Err(Error::NotANumber("distance"));
    }
    ExtReal::new(v)
}

/// Runs `x_{k+1} = T x_k` from `x0`.
///
/// Stops with `Converged` at the first `N` whose residual is at most `tol`,
/// with `DivergentInfinite` after two consecutive infinite residuals, and with
/// `BudgetExhausted` at `N = max_iter`. Every step checks
/// `r_k <= L r_{k-1} + 1e-9`; a failure aborts with the witness pair.
pub fn iterate<P, F, D>(
    map: &ContractionMap<F>,
    x0: P,
    distance: D,
    settings: IterationSettings,
) -> std::result::Result<FixedPointResult<P>, IterationError<P>>
where
    P: Clone + fmt::Debug,
    F: Fn(&P) -> P,
    D: Fn(&P, &P) -> f64,
{
    settings.check()?;
    let l = map.lipschitz();
    let mut current = x0;
    let mut next = map.apply(&current);
    let mut residuals = Vec::new();

    for k in 0..=settings.max_iter {
        let r = dist(&distance, &current, &next)?;
        if let Some(&prev) = residuals.last() {
            let prev: ExtReal = prev;
            if prev.is_finite() && r.value() > l * prev.value() + CONTRACTION_SLACK {
                return Err(IterationError::HypothesisViolation {
                    step: k,
                    witness: (current.clone(), next.clone()),
                    lhs: r,
                    rhs: prev,
                    lipschitz: l,
                });
            }
        }
        let previous_infinite = residuals.last().is_some_and(|v: &ExtReal| v.is_infinite());
        residuals.push(r);

        let outcome = if r.is_finite() && r.value() <= settings.tol {
            Some(Outcome::Converged)
        } else if r.is_infinite() && previous_infinite {
            Some(Outcome::DivergentInfinite)
        } else if k == settings.max_iter {
            Some(Outcome::BudgetExhausted)
        } else {
            None
        };

        if let Some(outcome) = outcome {
            let diagnostics = bounds(r, l, settings.p);
            return Ok(FixedPointResult {
                outcome,
                iterate: current,
                iterations: k,
                residual: r,
                error_bound: diagnostics.bound_one_minus_l.max(diagnostics.bound_one_minus_lp),
                diagnostics,
                residuals,
            });
        }

        let after = map.apply(&next);
        current = std::mem::replace(&mut next, after);
    }
    unreachable!("loop returns at k == max_iter")
}

/// Largest observed `D(Tx, Ty) / D(x, y)` over pairs with a finite, nonzero
/// denominator.
pub fn estimate_lipschitz<P, F, D>(apply: F, pairs: &[(P, P)], distance: D) -> Result<f64>
where
    F: Fn(&P) -> P,
    D: Fn(&P, &P) -> f64,
{
    let mut worst: Option<f64> = None;
    for (x, y) in pairs {
        let den = dist(&distance, x, y)?;
        if den == ExtReal::ZERO || den.is_infinite() {
            continue;
        }
        let num = dist(&distance, &apply(x), &apply(y))?;
        let ratio = num.value() / den.value();
        worst = Some(worst.map_or(ratio, |w| w.max(ratio)));
    }
    worst.ok_or_else(|| invalid("no sample pair with finite nonzero distance"))
}
