//! Defects of the Euler-Lagrange cubic equation
//!
//! ```text
//! 2m f(x + my) + 2 f(mx - y) = (m^3 + m)[f(x + y) + f(x - y)] + 2(m^4 - 1) f(y)
//! ```
//!
//! and of the cubic equation `f(2x+y) + f(2x-y) = 2f(x+y) + 2f(x-y) + 12f(x)`,
//! plus the hypothesis checks built on them.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sampled::{lin2, VectorMap};
use crate::spaces::{slack, QuasiNormedSpace};

use super::perturbation::PerturbationBound;

/// A defect value and the magnitude of the terms that produced it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Defect {
    pub value: f64,
    /// `max(1, sum of ||coefficient * term||)`; round-off in `value` is
    /// relative to this.
    pub scale: f64,
}

/// Arguments `[x + my, mx - y, x + y, x - y, y]`.
pub fn el_arguments(m: f64, x: &[f64], y: &[f64]) -> [Vec<f64>; 5] {
    [
        lin2(1.0, x, m, y),
        lin2(m, x, -1.0, y),
        lin2(1.0, x, 1.0, y),
        lin2(1.0, x, -1.0, y),
        y.to_vec(),
    ]
}

/// Arguments `[2x + y, 2x - y, x + y, x - y, x]`.
pub fn junkim_arguments(x: &[f64], y: &[f64]) -> [Vec<f64>; 5] {
    [
        lin2(2.0, x, 1.0, y),
        lin2(2.0, x, -1.0, y),
        lin2(1.0, x, 1.0, y),
        lin2(1.0, x, -1.0, y),
        x.to_vec(),
    ]
}

fn combine<M: VectorMap + ?Sized>(
    f: &M,
    codomain: &QuasiNormedSpace,
    args: &[Vec<f64>; 5],
    coeffs: [f64; 5],
) -> Result<Defect> {
    let mut total: Option<Vec<f64>> = None;
    let mut scale = 0.0;
    for (arg, c) in args.iter().zip(coeffs) {
        let v = f.eval(arg)?;
        if v.iter().any(|t| t.is_nan()) {
            return Err(Error::NotANumber("map value"));
        }
        scale += c.abs() * codomain.norm(&v);
        match total.as_mut() {
            None => total = Some(v.iter().map(|t| c * t).collect()),
            Some(acc) => acc.iter_mut().zip(&v).for_each(|(a, t)| *a += c * t),
        }
    }
    let total = total.expect("five terms");
    Ok(Defect { value: codomain.norm(&total), scale: scale.max(1.0) })
}

/// `||2m f(x+my) + 2f(mx-y) - (m^3+m)[f(x+y) + f(x-y)] - 2(m^4-1) f(y)||`.
pub fn el_defect<M: VectorMap + ?Sized>(
    f: &M,
    codomain: &QuasiNormedSpace,
    m: f64,
    x: &[f64],
    y: &[f64],
) -> Result<Defect> {
    let m3m = m * m * m + m;
    let coeffs = [2.0 * m, 2.0, -m3m, -m3m, -2.0 * (m.powi(4) - 1.0)];
    combine(f, codomain, &el_arguments(m, x, y), coeffs)
}

/// `||f(2x+y) + f(2x-y) - 2f(x+y) - 2f(x-y) - 12f(x)||`.
pub fn junkim_defect<M: VectorMap + ?Sized>(
    f: &M,
    codomain: &QuasiNormedSpace,
    x: &[f64],
    y: &[f64],
) -> Result<Defect> {
    combine(f, codomain, &junkim_arguments(x, y), [1.0, 1.0, -2.0, -2.0, -12.0])
}

/// Outcome of [`phi_contractivity_check`].
#[derive(Clone, Debug, Serialize)]
pub struct ContractivityReport {
    pub passed: bool,
    /// Largest `phi(mx, my) / (L |m|^3 phi(x, y))`; `inf` if the right-hand
    /// side vanishes while the left does not.
    pub worst_ratio: f64,
    pub witness: Option<(Vec<f64>, Vec<f64>)>,
    pub samples: usize,
}

/// Checks `phi(mx, my) <= L |m|^3 phi(x, y)` on every sample pair.
pub fn phi_contractivity_check(
    phi: &PerturbationBound,
    m: f64,
    lipschitz: f64,
    samples: &[(Vec<f64>, Vec<f64>)],
) -> Result<ContractivityReport> {
    if samples.is_empty() {
        return Err(crate::error::invalid("no samples"));
    }
    if !(0.0..1.0).contains(&lipschitz) {
        return Err(crate::error::invalid(format!("L must lie in [0, 1), got {lipschitz}")));
    }
    let factor = lipschitz * m.abs().powi(3);
    let mut passed = true;
    let mut worst_ratio = 0.0f64;
    let mut witness = None;
    for (x, y) in samples {
        let lhs = phi.eval(&crate::sampled::scale(m, x), &crate::sampled::scale(m, y));
        let rhs = factor * phi.eval(x, y);
        if lhs.is_nan() || rhs.is_nan() {
            return Err(Error::NotANumber("phi"));
        }
        let ratio = if rhs > 0.0 {
            lhs / rhs
        } else if lhs > 0.0 {
            f64::INFINITY
        } else {
            0.0
        };
        let ok = lhs <= rhs + slack(rhs);
        passed &= ok;
        if ratio > worst_ratio || (witness.is_none() && !ok) {
            worst_ratio = worst_ratio.max(ratio);
            witness = Some((x.clone(), y.clone()));
        }
    }
    Ok(ContractivityReport { passed, worst_ratio, witness, samples: samples.len() })
}

/// Outcome of [`hypothesis_defect_check`].
#[derive(Clone, Debug, Serialize)]
pub struct DefectReport {
    pub passed: bool,
    /// Largest `defect / phi` over pairs with `phi > 0`.
    pub worst_ratio: f64,
    /// The pair attaining `worst_ratio`, or the first failing pair.
    pub witness: Option<(Vec<f64>, Vec<f64>)>,
    /// Pairs actually checked.
    pub checked: usize,
    /// Pairs skipped because `phi` does not constrain the axes.
    pub skipped_axes: usize,
}

/// Verifies `f(0) = 0` (to `tol`), then `defect(x, y) <= phi(x, y) + tol * scale`
/// on every sample pair.
pub fn hypothesis_defect_check<M: VectorMap + ?Sized>(
    f: &M,
    codomain: &QuasiNormedSpace,
    phi: &PerturbationBound,
    m: f64,
    samples: &[(Vec<f64>, Vec<f64>)],
    tol: f64,
) -> Result<DefectReport> {
    check_f_zero(f, codomain, samples.first().map_or(codomain.dim(), |s| s.0.len()), tol)?;
    let mut report = DefectReport { passed: true, worst_ratio: 0.0, witness: None, checked: 0, skipped_axes: 0 };
    let mut first_failure = None;
    let mut worst_witness = None;
    for (x, y) in samples {
        let axis = x.iter().all(|v| *v == 0.0) || y.iter().all(|v| *v == 0.0);
        if axis && phi.excludes_axes() {
            report.skipped_axes += 1;
            continue;
        }
        report.checked += 1;
        let d = el_defect(f, codomain, m, x, y)?;
        let bound = phi.eval(x, y);
        let ok = d.value <= bound + tol * d.scale;
        if !ok {
            report.passed = false;
            first_failure.get_or_insert_with(|| (x.clone(), y.clone()));
        }
        let ratio = if bound > 0.0 {
            d.value / bound
        } else if ok {
            0.0
        } else {
            f64::INFINITY
        };
        if ratio > report.worst_ratio {
            report.worst_ratio = ratio;
            worst_witness = Some((x.clone(), y.clone()));
        }
    }
    report.witness = first_failure.or(worst_witness);
    Ok(report)
}

pub(crate) fn check_f_zero<M: VectorMap + ?Sized>(
    f: &M,
    codomain: &QuasiNormedSpace,
    domain_dim: usize,
    tol: f64,
) -> Result<()> {
    let f0 = f.eval(&vec![0.0; domain_dim])?;
    let n = codomain.norm(&f0);
    if !(n <= tol) {
        return Err(Error::HypothesisViolation(format!("f(0) = 0 fails: ||f(0)|| = {n}")));
    }
    Ok(())
}
