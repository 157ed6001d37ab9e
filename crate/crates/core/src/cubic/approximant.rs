//! The cubic approximant `q = lim_n f(m^n x) / m^{3n}` and the weighted
//! distance on maps under which `(Tg)(x) = g(mx)/m^3` contracts.

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::ext_real::ExtReal;
use crate::sampled::{scale, sub, SampledMap, VectorMap};
use crate::spaces::QuasiNormedSpace;

use super::perturbation::PerturbationBound;

#[derive(Clone, Debug)]
pub struct Approximant {
    /// `q_n = f(m^n x) / m^{3n}` on the grid.
    pub map: SampledMap,
    /// The `n` at which iteration stopped.
    pub iterations: usize,
    /// `sup_x ||q_n(x) - q_{n-1}(x)||` at the stopping `n`.
    pub last_change: f64,
    pub converged: bool,
}

/// Summary of an [`Approximant`] for reports.
#[derive(Clone, Debug, Serialize)]
pub struct ApproximantSummary {
    pub iterations: usize,
    pub last_change: f64,
    pub converged: bool,
    pub points: usize,
}

impl Approximant {
    pub fn summary(&self) -> ApproximantSummary {
        ApproximantSummary {
            iterations: self.iterations,
            last_change: self.last_change,
            converged: self.converged,
            points: self.map.len(),
        }
    }
}

/// Iterates `q_n(x) = f(m^n x) / m^{3n}` on `grid` until the sup over the
/// grid of `||q_n - q_{n-1}||` is at most `tol`, or `n = n_max`.
///
/// Requires `|m| > 1`. A non-finite `m^{3n}`, argument or value raises
/// [`Error::Overflow`] naming the last finite iterate.
pub fn cubic_approximant<M: VectorMap + ?Sized>(
    f: &M,
    codomain: &QuasiNormedSpace,
    m: f64,
    grid: &[Vec<f64>],
    n_max: usize,
    tol: f64,
) -> Result<Approximant> {
    if !(m.abs() > 1.0) || !m.is_finite() {
        return Err(invalid(format!("the approximant needs |m| > 1, got m = {m}")));
    }
    if !(tol > 0.0) {
        return Err(invalid(format!("tol must be positive, got {tol}")));
    }
    let mut current = grid.iter().map(|x| f.eval(x)).collect::<Result<Vec<_>>>()?;
    if current.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::Overflow { last_safe_iteration: 0, detail: "f is not finite on the grid".into() });
    }
    let mut last_change = f64::INFINITY;
    let mut n = 0;
    let mut converged = false;
    while n < n_max {
        let step = n + 1;
        let overflow = |detail: String| Error::Overflow { last_safe_iteration: n, detail };
        let arg_scale = m.powi(step as i32);
        let denom = m.powi(3 * step as i32);
        if !arg_scale.is_finite() || !denom.is_finite() || denom == 0.0 {
            return Err(overflow(format!("m^{} is not representable", 3 * step)));
        }
        let mut next = Vec::with_capacity(grid.len());
        let mut change = 0.0f64;
        for (x, prev) in grid.iter().zip(&current) {
            let arg = scale(arg_scale, x);
            if arg.iter().any(|v| !v.is_finite()) {
                return Err(overflow(format!("argument m^{step} x is not finite")));
            }
            let q: Vec<f64> = f.eval(&arg)?.into_iter().map(|v| v / denom).collect();
            if q.iter().any(|v| !v.is_finite()) {
                return Err(overflow(format!("f(m^{step} x) / m^{} is not finite", 3 * step)));
            }
            change = change.max(codomain.norm(&sub(&q, prev)));
            next.push(q);
        }
        current = next;
        last_change = change;
        n = step;
        if change <= tol {
            converged = true;
            break;
        }
    }
    Ok(Approximant {
        map: SampledMap::new(grid.to_vec(), current)?,
        iterations: n,
        last_change,
        converged,
    })
}

/// `sup_x ||g(x) - h(x)|| / w(x)` with `0/0 = 0` and `a/0 = inf` for `a > 0`,
/// where `w` is the axis weight of `phi`.
pub fn sup_weighted_distance(
    g: &SampledMap,
    h: &SampledMap,
    phi: &PerturbationBound,
    codomain: &QuasiNormedSpace,
) -> Result<ExtReal> {
    if !g.same_grid(h) {
        return Err(invalid("maps are sampled on different grids"));
    }
    let mut sup = ExtReal::ZERO;
    for ((x, gv), hv) in g.domain().iter().zip(g.values()).zip(h.values()) {
        let num = codomain.norm(&sub(gv, hv));
        if num == 0.0 {
            continue;
        }
        let w = phi.axis_weight(x);
        let ratio = if w > 0.0 { ExtReal::new(num / w)? } else { ExtReal::INFINITY };
        sup = sup.max(ratio);
    }
    Ok(sup)
}

/// `(Tg)(x) = g(mx) / m^3` on the grid points `x` whose `mx` is on the grid.
pub fn iteration_operator(g: &SampledMap, m: f64) -> Result<SampledMap> {
    let m3 = m * m * m;
    let mut domain = Vec::new();
    let mut values = Vec::new();
    for x in g.domain() {
        if let Some(v) = g.get(&scale(m, x)) {
            domain.push(x.clone());
            values.push(v.iter().map(|t| t / m3).collect());
        }
    }
    SampledMap::new(domain, values)
}

/// Restriction of `g` to the points of `grid` (all of which must be on `g`'s grid).
pub fn restrict(g: &SampledMap, grid: &[Vec<f64>]) -> Result<SampledMap> {
    let values = grid.iter().map(|x| g.eval(x)).collect::<Result<Vec<_>>>()?;
    SampledMap::new(grid.to_vec(), values)
}
