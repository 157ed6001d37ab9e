//! End-to-end stability verification on a sampled domain.

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::ext_real::ExtReal;
use crate::sampled::{scale, sub, SampledMap, VectorMap};
use crate::spaces::QuasiNormedSpace;

use super::approximant::{cubic_approximant, restrict, sup_weighted_distance, ApproximantSummary};
use super::bound::{bound_constants, BoundConstants};
use super::defect::{
    check_f_zero, el_arguments, el_defect, hypothesis_defect_check, junkim_arguments, junkim_defect,
    phi_contractivity_check, ContractivityReport, DefectReport,
};
use super::perturbation::{PerturbationBound, PhiDescriptor};

pub const DEFAULT_N_MAX: usize = 200;

/// Parameters of a stability run. `p` is derived from the codomain.
#[derive(Clone, Debug)]
pub struct StabilityConfig {
    m: f64,
    lipschitz: f64,
    p: f64,
    tol: f64,
    n_max: usize,
    codomain: QuasiNormedSpace,
}

impl StabilityConfig {
    pub fn new(m: f64, lipschitz: f64, codomain: QuasiNormedSpace, tol: f64) -> Result<Self> {
        if !m.is_finite() || m == 0.0 || m == 1.0 {
            return Err(invalid(format!("m must be a finite scalar other than 0 and 1, got {m}")));
        }
        if !(m.abs() > 1.0) {
            return Err(invalid(format!("the iteration needs |m| > 1, got m = {m}")));
        }
        if !(0.0..1.0).contains(&lipschitz) {
            return Err(invalid(format!("L must lie in [0, 1), got {lipschitz}")));
        }
        if !(tol > 0.0) || !tol.is_finite() {
            return Err(invalid(format!("tol must be positive, got {tol}")));
        }
        Ok(StabilityConfig { m, lipschitz, p: codomain.p(), tol, n_max: DEFAULT_N_MAX, codomain })
    }

    pub fn with_n_max(mut self, n_max: usize) -> Self {
        self.n_max = n_max;
        self
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn lipschitz(&self) -> f64 {
        self.lipschitz
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn codomain(&self) -> &QuasiNormedSpace {
        &self.codomain
    }
}

/// Per-grid-point values, in grid order.
#[derive(Clone, Debug, Serialize)]
pub struct PointRecord {
    pub index: usize,
    /// The coordinate for one-dimensional domains, otherwise `||x||` (domain
    /// and codomain coincide in every model used here).
    pub x: f64,
    /// `defect(x, 0) = ||2 f(mx) - 2 m^3 f(x)||`.
    pub defect: f64,
    /// The bound weight `w(x)`.
    pub phi: f64,
    /// `||f(x) - q(x)||`.
    pub error: f64,
    pub bound: f64,
    pub companion_bound: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct OneStepReport {
    pub passed: bool,
    /// Largest `||f(mx)/m^3 - f(x)|| / (w(x) / (2|m|^3))`.
    pub worst_ratio: f64,
}

/// Everything checked by [`verify_stability`].
#[derive(Clone, Debug, Serialize)]
pub struct StabilityCertificate {
    pub passed: bool,
    pub m: f64,
    pub lipschitz: f64,
    pub p: f64,
    pub tol: f64,
    pub codomain: String,
    pub phi: PhiDescriptor,
    pub hypothesis_phi: ContractivityReport,
    pub hypothesis_defect: DefectReport,
    pub one_step: OneStepReport,
    pub approximant: ApproximantSummary,
    pub bound_constants: BoundConstants,
    pub bound_per_point: Vec<f64>,
    pub error_per_point: Vec<f64>,
    pub max_error_ratio: f64,
    /// Largest `||q(mx) - m^3 q(x)|| / max(1, ||q(mx)||)`.
    pub homogeneity_defect: f64,
    /// Largest equation defect of `q` over grid pairs, relative to its term scale.
    pub el_defect_of_q: f64,
    /// Same for the cubic equation `f(2x+y) + f(2x-y) = 2f(x+y) + 2f(x-y) + 12f(x)`.
    pub junkim_defect_of_q: f64,
    /// `d(f, q) = sup ||f - q|| / w` on the grid.
    pub weighted_distance_f_q: ExtReal,
    pub points: Vec<PointRecord>,
    #[serde(skip)]
    pub grid: Vec<Vec<f64>>,
    /// `q` on the grid and on every derived argument used by the checks.
    #[serde(skip)]
    pub q: SampledMap,
}

impl StabilityCertificate {
    /// `q` restricted to the grid.
    pub fn q_on_grid(&self) -> Result<SampledMap> {
        restrict(&self.q, &self.grid)
    }
}

fn dedup_push(seen: &mut std::collections::HashSet<Vec<u64>>, out: &mut Vec<Vec<f64>>, x: Vec<f64>) {
    let k: Vec<u64> = x.iter().map(|v| (v + 0.0).to_bits()).collect();
    if seen.insert(k) {
        out.push(x);
    }
}

/// Runs every check of the stability theorem on `grid` (the zero vector is
/// added if missing) and all ordered pairs of grid points.
///
/// Hypothesis failures produce a certificate with `passed = false` and the
/// witnesses; `f(0) != 0`, evaluation failures and overflow are errors.
pub fn verify_stability<M: VectorMap + ?Sized>(
    f: &M,
    phi: &PerturbationBound,
    config: &StabilityConfig,
    grid: &[Vec<f64>],
) -> Result<StabilityCertificate> {
    let codomain = config.codomain();
    let (m, tol) = (config.m(), config.tol());
    let dim = grid.first().map(Vec::len).ok_or_else(|| invalid("empty grid"))?;
    if grid.iter().any(|x| x.len() != dim) {
        return Err(invalid("grid points have differing lengths"));
    }

    let mut seen = std::collections::HashSet::new();
    let mut points = Vec::with_capacity(grid.len() + 1);
    for x in grid {
        dedup_push(&mut seen, &mut points, x.clone());
    }
    dedup_push(&mut seen, &mut points, vec![0.0; dim]);
    let grid = points.clone();

    check_f_zero(f, codomain, dim, tol)?;

    let pairs: Vec<(Vec<f64>, Vec<f64>)> = grid
        .iter()
        .flat_map(|x| grid.iter().map(move |y| (x.clone(), y.clone())))
        .collect();

    let hypothesis_phi = phi_contractivity_check(phi, m, config.lipschitz(), &pairs)?;
    let hypothesis_defect = hypothesis_defect_check(f, codomain, phi, m, &pairs, tol)?;

    // every argument any check will evaluate q at
    for x in &grid {
        dedup_push(&mut seen, &mut points, scale(m, x));
    }
    for (x, y) in &pairs {
        for a in el_arguments(m, x, y).into_iter().chain(junkim_arguments(x, y)) {
            dedup_push(&mut seen, &mut points, a);
        }
    }
    let approx = cubic_approximant(f, codomain, m, &points, config.n_max(), tol / m.abs().powi(3))?;
    let q = &approx.map;

    let constants = bound_constants(config.lipschitz(), config.p(), m)?;
    let m3 = m.abs().powi(3);
    let mut records = Vec::with_capacity(grid.len());
    let mut max_error_ratio = 0.0f64;
    let mut one_step = OneStepReport { passed: true, worst_ratio: 0.0 };
    let mut homogeneity_defect = 0.0f64;
    for (index, x) in grid.iter().enumerate() {
        let fx = f.eval(x)?;
        let fmx = f.eval(&scale(m, x))?;
        let qx = q.eval(x)?;
        let qmx = q.eval(&scale(m, x))?;
        let w = phi.axis_weight(x);
        let error = codomain.norm(&sub(&fx, &qx));
        let bound = constants.headline * w;
        let ratio = if bound > 0.0 {
            error / bound
        } else if error <= tol * codomain.norm(&fx).max(1.0) {
            0.0
        } else {
            f64::INFINITY
        };
        max_error_ratio = max_error_ratio.max(ratio);

        let step = codomain.norm(&sub(&scale(1.0 / (m * m * m), &fmx), &fx));
        let step_bound = w / (2.0 * m3);
        let step_scale = codomain.norm(&fx).max(1.0);
        if step > step_bound + tol * step_scale {
            one_step.passed = false;
        }
        if step_bound > 0.0 {
            one_step.worst_ratio = one_step.worst_ratio.max(step / step_bound);
        }

        let hom = codomain.norm(&sub(&qmx, &scale(m * m * m, &qx)));
        homogeneity_defect = homogeneity_defect.max(hom / codomain.norm(&qmx).max(1.0));

        let zero = vec![0.0; dim];
        records.push(PointRecord {
            index,
            x: if dim == 1 { x[0] } else { codomain.norm(x) },
            defect: el_defect(f, codomain, m, x, &zero)?.value,
            phi: w,
            error,
            bound,
            companion_bound: constants.companion * w,
        });
    }

    let mut el_defect_of_q = 0.0f64;
    let mut junkim_defect_of_q = 0.0f64;
    for (x, y) in &pairs {
        let d = el_defect(q, codomain, m, x, y)?;
        el_defect_of_q = el_defect_of_q.max(d.value / d.scale);
        let j = junkim_defect(q, codomain, x, y)?;
        junkim_defect_of_q = junkim_defect_of_q.max(j.value / j.scale);
    }

    let f_grid = SampledMap::tabulate(f, grid.clone())?;
    let q_grid = restrict(q, &grid)?;
    let weighted_distance_f_q = sup_weighted_distance(&f_grid, &q_grid, phi, codomain)?;

    let passed = hypothesis_phi.passed
        && hypothesis_defect.passed
        && max_error_ratio <= 1.0 + tol
        && homogeneity_defect <= tol
        && el_defect_of_q <= tol;

    Ok(StabilityCertificate {
        passed,
        m,
        lipschitz: config.lipschitz(),
        p: config.p(),
        tol,
        codomain: codomain.name().to_string(),
        phi: phi.descriptor(),
        hypothesis_phi,
        hypothesis_defect,
        one_step,
        approximant: approx.summary(),
        bound_constants: constants,
        bound_per_point: records.iter().map(|r| r.bound).collect(),
        error_per_point: records.iter().map(|r| r.error).collect(),
        max_error_ratio,
        homogeneity_defect,
        el_defect_of_q,
        junkim_defect_of_q,
        weighted_distance_f_q,
        points: records,
        grid,
        q: approx.map,
    })
}
