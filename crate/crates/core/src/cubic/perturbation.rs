//! Control functions `phi(x, y)` bounding the equation defect.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::spaces::QuasiNormedSpace;

type PhiFn = Arc<dyn Fn(&[f64], &[f64]) -> f64 + Send + Sync>;

/// A control function `phi: X x X -> [0, inf)`.
#[derive(Clone)]
pub enum PerturbationBound {
    /// `lambda (||x||^s + ||y||^s)` off the axes, `0` when `x = 0` or `y = 0`.
    PowerLaw { lambda: f64, s: f64, domain: QuasiNormedSpace },
    /// `c ||x + m y||`.
    ShiftNorm { c: f64, m: f64, domain: QuasiNormedSpace },
    Custom { name: String, eval: PhiFn },
}

/// Serializable summary of a [`PerturbationBound`].
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PhiDescriptor {
    PowerLaw { lambda: f64, s: f64 },
    ShiftNorm { c: f64, m: f64 },
    Custom { name: String },
}

fn is_zero(x: &[f64]) -> bool {
    x.iter().all(|v| *v == 0.0)
}

impl PerturbationBound {
    pub fn power_law(lambda: f64, s: f64, domain: QuasiNormedSpace) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(invalid(format!("lambda must be positive, got {lambda}")));
        }
        if !(s < 3.0) {
            return Err(invalid(format!("power-law exponent must be below 3, got {s}")));
        }
        Ok(PerturbationBound::PowerLaw { lambda, s, domain })
    }

    pub fn shift_norm(c: f64, m: f64, domain: QuasiNormedSpace) -> Result<Self> {
        if !(c >= 0.0) || !c.is_finite() {
            return Err(invalid(format!("shift-norm constant must be nonnegative, got {c}")));
        }
        Ok(PerturbationBound::ShiftNorm { c, m, domain })
    }

    pub fn custom<F>(name: impl Into<String>, eval: F) -> Self
    where
        F: Fn(&[f64], &[f64]) -> f64 + Send + Sync + 'static,
    {
        PerturbationBound::Custom { name: name.into(), eval: Arc::new(eval) }
    }

    /// `phi == value` everywhere.
    pub fn constant(value: f64) -> Result<Self> {
        if !(value >= 0.0) || !value.is_finite() {
            return Err(invalid(format!("constant phi must be nonnegative, got {value}")));
        }
        Ok(Self::custom(format!("constant {value}"), move |_, _| value))
    }

    pub fn eval(&self, x: &[f64], y: &[f64]) -> f64 {
        match self {
            PerturbationBound::PowerLaw { lambda, s, domain } => {
                if is_zero(x) || is_zero(y) {
                    0.0
                } else {
                    lambda * (domain.norm(x).powf(*s) + domain.norm(y).powf(*s))
                }
            }
            PerturbationBound::ShiftNorm { c, m, domain } => {
                let shifted = crate::sampled::lin2(1.0, x, *m, y);
                c * domain.norm(&shifted)
            }
            PerturbationBound::Custom { eval, .. } => eval(x, y),
        }
    }

    /// The weight `w(x)` in `||f(x) - q(x)|| <= C w(x)` and in the weighted
    /// distance on maps. This is `phi(x, 0)`, except for the power law where
    /// it is `lambda ||x||^s` (`0` at `x = 0`).
    pub fn axis_weight(&self, x: &[f64]) -> f64 {
        match self {
            PerturbationBound::PowerLaw { lambda, s, domain } => {
                if is_zero(x) {
                    0.0
                } else {
                    lambda * domain.norm(x).powf(*s)
                }
            }
            _ => {
                let zero = vec![0.0; x.len()];
                self.eval(x, &zero)
            }
        }
    }

    /// The power law only constrains the defect off the axes.
    pub fn excludes_axes(&self) -> bool {
        matches!(self, PerturbationBound::PowerLaw { .. })
    }

    /// For the power law, the contraction constant `|m|^{s-3}` it satisfies.
    pub fn implied_lipschitz(&self, m: f64) -> Option<f64> {
        match self {
            PerturbationBound::PowerLaw { s, .. } => Some(m.abs().powf(s - 3.0)),
            PerturbationBound::ShiftNorm { .. } => Some(1.0 / (m * m)),
            PerturbationBound::Custom { .. } => None,
        }
    }

    pub fn descriptor(&self) -> PhiDescriptor {
        match self {
            PerturbationBound::PowerLaw { lambda, s, .. } => PhiDescriptor::PowerLaw { lambda: *lambda, s: *s },
            PerturbationBound::ShiftNorm { c, m, .. } => PhiDescriptor::ShiftNorm { c: *c, m: *m },
            PerturbationBound::Custom { name, .. } => PhiDescriptor::Custom { name: name.clone() },
        }
    }

    /// `|c| phi`.
    pub fn scaled(&self, c: f64) -> Self {
        let c = c.abs();
        match self {
            PerturbationBound::PowerLaw { lambda, s, domain } => PerturbationBound::PowerLaw {
                lambda: lambda * c,
                s: *s,
                domain: domain.clone(),
            },
            PerturbationBound::ShiftNorm { c: k, m, domain } => PerturbationBound::ShiftNorm {
                c: k * c,
                m: *m,
                domain: domain.clone(),
            },
            PerturbationBound::Custom { name, eval } => {
                let inner = eval.clone();
                PerturbationBound::Custom {
                    name: format!("{c} * {name}"),
                    eval: Arc::new(move |x, y| c * inner(x, y)),
                }
            }
        }
    }
}

impl fmt::Debug for PerturbationBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.descriptor().fmt(f)
    }
}
