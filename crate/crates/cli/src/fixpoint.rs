//! Built-in contraction scenarios for `fixpoint`.

use std::fmt;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};

use quasistab::fixed_point::IterationSettings;
use quasistab::{iterate, ContractionMap, IterationError, Outcome};

use crate::{input, CliError, CommandOutput, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    /// `T(x) = x/2` on the reals with `|x - y|`; true `L = 1/2`.
    Halving,
    /// `T(x) = x/2` under the b-metric `|x - y|^2` (`kappa = 2`, `p = 1/2`); true `L = 1/4`.
    HalvingBmetric,
    /// The constant map `T(x) = 0`; true `L = 0`.
    Zero,
    /// `T(x) = -x` where points of opposite sign are at infinite distance.
    Split,
    /// `g -> g(2x)/8` on `a x^3 + b x`, with the weighted distance
    /// `sup |g - h|(x) / (12 |x|)`; true `L = 1/4`, fixed point `x^3`.
    CubicOperator,
}

impl Scenario {
    pub fn true_lipschitz(self) -> f64 {
        match self {
            Scenario::Halving | Scenario::Split => 0.5,
            Scenario::HalvingBmetric | Scenario::CubicOperator => 0.25,
            Scenario::Zero => 0.0,
        }
    }

    fn p(self) -> f64 {
        match self {
            Scenario::HalvingBmetric => 0.5,
            _ => 1.0,
        }
    }
}

pub fn run(
    scenario: Scenario,
    lipschitz: Option<f64>,
    tol: f64,
    max_iter: usize,
    x0: Option<f64>,
) -> Result<CommandOutput, CliError> {
    let l = lipschitz.unwrap_or(scenario.true_lipschitz());
    let settings = IterationSettings { p: scenario.p(), tol, max_iter };
    let config = json!({
        "scenario": scenario,
        "L": l,
        "tol": tol,
        "max_iter": max_iter,
        "x0": x0,
        "p": settings.p,
    });
    let x0 = x0.unwrap_or(1.0);
    if !x0.is_finite() {
        return Err(input("--x0 must be finite"));
    }
    let abs = |a: &f64, b: &f64| (a - b).abs();
    let (verdict, result) = match scenario {
        Scenario::Halving => solve(ContractionMap::new(|x: &f64| x / 2.0, l)?, x0, abs, settings)?,
        Scenario::HalvingBmetric => {
            solve(ContractionMap::new(|x: &f64| x / 2.0, l)?, x0, |a: &f64, b: &f64| (a - b).powi(2), settings)?
        }
        Scenario::Zero => solve(ContractionMap::new(|_: &f64| 0.0, l)?, x0, abs, settings)?,
        Scenario::Split => {
            let split = |a: &f64, b: &f64| {
                if (*a >= 0.0) == (*b >= 0.0) {
                    (a - b).abs()
                } else {
                    f64::INFINITY
                }
            };
            solve(ContractionMap::new(|x: &f64| -x, l)?, x0, split, settings)?
        }
        Scenario::CubicOperator => {
            // [a, b] stands for a x^3 + b x
            let op = |g: &[f64; 2]| [g[0], g[1] / 4.0];
            let weighted = |g: &[f64; 2], h: &[f64; 2]| {
                if g[0] != h[0] {
                    f64::INFINITY
                } else {
                    (g[1] - h[1]).abs() / 12.0
                }
            };
            solve(ContractionMap::new(op, l)?, [1.0, x0], weighted, settings)?
        }
    };
    Ok(CommandOutput { verdict, config, result })
}

fn solve<P, F, D>(
    map: ContractionMap<F>,
    x0: P,
    distance: D,
    settings: IterationSettings,
) -> Result<(Verdict, Value), CliError>
where
    P: Clone + fmt::Debug + Serialize,
    F: Fn(&P) -> P,
    D: Fn(&P, &P) -> f64,
{
    match iterate(&map, x0, distance, settings) {
        Ok(res) => {
            let verdict = if res.outcome == Outcome::Converged { Verdict::Pass } else { Verdict::Fail };
            let value = serde_json::to_value(&res).map_err(|e| input(e.to_string()))?;
            Ok((verdict, value))
        }
        Err(IterationError::HypothesisViolation { step, witness, lhs, rhs, lipschitz }) => Ok((
            Verdict::Fail,
            json!({
                "outcome": "HypothesisViolation",
                "step": step,
                "witness": witness,
                "residual": lhs,
                "previous_residual": rhs,
                "lipschitz": lipschitz,
            }),
        )),
        Err(IterationError::Invalid(e)) => Err(e.into()),
    }
}
