//! Quasi-normed spaces and generalized b-metric spaces, with axiom checks.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::ext_real::ExtReal;
use crate::function_spaces::{ell_r_kappa, ell_r_unchecked, lhalf_norm_unchecked};
use crate::metrization::p_exponent;

/// Slack added to every `<=` axiom, scaled by `max(1, rhs)`.
pub const AXIOM_SLACK: f64 = 1e-12;

pub(crate) fn slack(rhs: f64) -> f64 {
    AXIOM_SLACK * rhs.abs().max(1.0)
}

pub type CustomNorm = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// How a [`QuasiNormedSpace`] evaluates `||x||`.
#[derive(Clone)]
pub enum NormKind {
    /// `(sum |x_i|^r)^{1/r}`.
    EllR { r: f64 },
    /// Midpoint-discretized `(int |x|^{1/2})^2` over `quadrature_n` panels.
    LHalf { quadrature_n: usize },
    Custom(CustomNorm),
}

impl fmt::Debug for NormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormKind::EllR { r } => write!(f, "EllR {{ r: {r} }}"),
            NormKind::LHalf { quadrature_n } => write!(f, "LHalf {{ quadrature_n: {quadrature_n} }}"),
            NormKind::Custom(_) => f.write_str("Custom"),
        }
    }
}

/// A finite-dimensional (sampled) quasi-normed space over the reals.
#[derive(Clone, Debug)]
pub struct QuasiNormedSpace {
    name: String,
    dim: usize,
    kind: NormKind,
    kappa: f64,
    p: f64,
}

impl QuasiNormedSpace {
    /// `R` with the absolute value.
    pub fn reals() -> Self {
        Self::ell_r(1, 1.0).expect("valid")
    }

    pub fn ell_r(dim: usize, r: f64) -> Result<Self> {
        if dim == 0 {
            return Err(invalid("dimension must be positive"));
        }
        if !(r > 0.0) || !r.is_finite() {
            return Err(invalid(format!("l^r exponent must be positive, got {r}")));
        }
        let kappa = ell_r_kappa(r);
        Ok(QuasiNormedSpace {
            name: if dim == 1 && r >= 1.0 { "reals".into() } else { format!("l^{r}(R^{dim})") },
            dim,
            kind: NormKind::EllR { r },
            kappa,
            p: p_exponent(kappa)?,
        })
    }

    /// Discretized `L^{1/2}[0,1]`, `kappa = 2`, `p = 1/2`.
    pub fn lhalf(quadrature_n: usize) -> Result<Self> {
        if quadrature_n == 0 {
            return Err(invalid("quadrature_n must be positive"));
        }
        Ok(QuasiNormedSpace {
            name: format!("L^1/2[0,1] (n={quadrature_n})"),
            dim: quadrature_n,
            kind: NormKind::LHalf { quadrature_n },
            kappa: 2.0,
            p: 0.5,
        })
    }

    pub fn custom<F>(name: impl Into<String>, dim: usize, kappa: f64, norm: F) -> Result<Self>
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        if dim == 0 {
            return Err(invalid("dimension must be positive"));
        }
        Ok(QuasiNormedSpace {
            name: name.into(),
            dim,
            kind: NormKind::Custom(Arc::new(norm)),
            kappa,
            p: p_exponent(kappa)?,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// The exponent `p` with `(2 kappa)^p = 2`.
    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn kind(&self) -> &NormKind {
        &self.kind
    }

    /// Evaluates `||x||`.
    ///
    /// Panics if `x` has the wrong length.
    pub fn norm(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.dim, "vector length does not match space dimension");
        match &self.kind {
            NormKind::EllR { r } => ell_r_unchecked(x, *r),
            NormKind::LHalf { .. } => lhalf_norm_unchecked(x),
            NormKind::Custom(f) => f(x),
        }
    }

    /// `||x - y||`.
    pub fn distance(&self, x: &[f64], y: &[f64]) -> f64 {
        let d: Vec<f64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.norm(&d)
    }

    pub fn zero(&self) -> Vec<f64> {
        vec![0.0; self.dim]
    }
}

/// Outcome of [`validate_quasi_norm`].
#[derive(Clone, Debug, Serialize)]
pub struct QuasiNormReport {
    pub passed: bool,
    pub zero_ok: bool,
    /// Largest `| ||r x|| - |r| ||x|| |` over the sampled scalars.
    pub homogeneity_defect: f64,
    /// Largest `||x+y|| / (||x|| + ||y||)` over sampled pairs.
    pub worst_ratio: f64,
    /// Sample indices of the first pair breaking the kappa-triangle inequality.
    pub triangle_witness: Option<(usize, usize)>,
}

const HOMOGENEITY_SCALARS: [f64; 6] = [-3.0, -1.0, -0.5, 0.0, 0.25, 2.0];

/// Checks the quasi-norm axioms on `samples`: definiteness, absolute
/// homogeneity on a fixed set of scalars, and the kappa-triangle inequality on
/// every sampled pair.
pub fn validate_quasi_norm(space: &QuasiNormedSpace, samples: &[Vec<f64>]) -> Result<QuasiNormReport> {
    if samples.is_empty() {
        return Err(invalid("no samples"));
    }
    if let Some(bad) = samples.iter().find(|s| s.len() != space.dim()) {
        return Err(invalid(format!("sample of length {} in a {}-dimensional space", bad.len(), space.dim())));
    }
    let norms: Vec<f64> = samples.iter().map(|s| space.norm(s)).collect();

    let mut zero_ok = space.norm(&space.zero()) == 0.0;
    for (s, n) in samples.iter().zip(&norms) {
        let is_zero = s.iter().all(|v| *v == 0.0);
        if is_zero != (*n == 0.0) {
            zero_ok = false;
        }
    }

    let mut homogeneity_defect = 0.0f64;
    let mut homogeneity_ok = true;
    for (s, n) in samples.iter().zip(&norms) {
        for r in HOMOGENEITY_SCALARS {
            let scaled: Vec<f64> = s.iter().map(|v| r * v).collect();
            let expected = r.abs() * n;
            let defect = (space.norm(&scaled) - expected).abs();
            homogeneity_defect = homogeneity_defect.max(defect);
            if defect > slack(expected) {
                homogeneity_ok = false;
            }
        }
    }

    let mut worst_ratio = 0.0f64;
    let mut triangle_witness = None;
    for i in 0..samples.len() {
        for j in i..samples.len() {
            let sum: Vec<f64> = samples[i].iter().zip(&samples[j]).map(|(a, b)| a + b).collect();
            let lhs = space.norm(&sum);
            let denom = norms[i] + norms[j];
            if denom > 0.0 {
                worst_ratio = worst_ratio.max(lhs / denom);
            }
            let rhs = space.kappa() * denom;
            if triangle_witness.is_none() && lhs > rhs + slack(rhs) {
                triangle_witness = Some((i, j));
            }
        }
    }

    Ok(QuasiNormReport {
        passed: zero_ok && homogeneity_ok && triangle_witness.is_none(),
        zero_ok,
        homogeneity_defect,
        worst_ratio,
        triangle_witness,
    })
}

/// A finite point set `{0, .., n-1}` with an extended distance matrix and a
/// relaxation constant `kappa >= 1`. Construction checks shape only; use
/// [`validate_b_metric`] for the axioms.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeneralizedBMetricSpace {
    kappa: f64,
    #[serde(rename = "D")]
    d: Vec<Vec<ExtReal>>,
}

impl GeneralizedBMetricSpace {
    pub fn new(d: Vec<Vec<ExtReal>>, kappa: f64) -> Result<Self> {
        check_shape(&d)?;
        check_kappa(kappa)?;
        Ok(GeneralizedBMetricSpace { kappa, d })
    }

    /// Builds from raw reals; negative entries and NaN are input errors.
    pub fn from_f64(d: &[Vec<f64>], kappa: f64) -> Result<Self> {
        let rows = d
            .iter()
            .map(|row| row.iter().map(|&v| ExtReal::new(v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows, kappa)
    }

    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn get(&self, i: usize, j: usize) -> ExtReal {
        self.d[i][j]
    }

    pub fn matrix(&self) -> &[Vec<ExtReal>] {
        &self.d
    }

    pub fn validate(&self) -> BMetricReport {
        validate_matrix(&self.d, self.kappa)
    }
}

fn check_shape<T>(d: &[Vec<T>]) -> Result<()> {
    let n = d.len();
    if let Some((i, row)) = d.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(invalid(format!(
            "distance matrix is not square: row {i} has {} entries, expected {n}",
            row.len()
        )));
    }
    Ok(())
}

fn check_kappa(kappa: f64) -> Result<()> {
    if !(kappa >= 1.0) || !kappa.is_finite() {
        return Err(invalid(format!("kappa must be a finite real >= 1, got {kappa}")));
    }
    Ok(())
}

/// The first axiom found to fail.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum BMetricViolation {
    /// `D(i,i) != 0`.
    Identity { i: usize, value: ExtReal },
    /// `D(i,j) = 0` for `i != j`.
    Indiscernibles { i: usize, j: usize },
    Symmetry { i: usize, j: usize },
    /// `D(i,j) > kappa (D(i,k) + D(k,j))`.
    Triangle { i: usize, j: usize, k: usize, lhs: ExtReal, rhs: ExtReal },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BMetricReport {
    pub passed: bool,
    pub violation: Option<BMetricViolation>,
}

/// Checks the (generalized) b-metric axioms of `d` with constant `kappa`.
///
/// Identity, indiscernibles and symmetry are checked first; then the relaxed
/// triangle inequality over all triples in `(i, j, k)` lexicographic order.
pub fn validate_b_metric(d: &[Vec<ExtReal>], kappa: f64) -> Result<BMetricReport> {
    check_shape(d)?;
    check_kappa(kappa)?;
    Ok(validate_matrix(d, kappa))
}

fn validate_matrix(d: &[Vec<ExtReal>], kappa: f64) -> BMetricReport {
    let fail = |v| BMetricReport { passed: false, violation: Some(v) };
    let n = d.len();
    for i in 0..n {
        if d[i][i].value() > AXIOM_SLACK {
            return fail(BMetricViolation::Identity { i, value: d[i][i] });
        }
        for j in 0..n {
            if i != j && d[i][j].value() <= AXIOM_SLACK {
                return fail(BMetricViolation::Indiscernibles { i, j });
            }
            let (a, b) = (d[i][j], d[j][i]);
            let symmetric = if a.is_infinite() || b.is_infinite() {
                a == b
            } else {
                (a.value() - b.value()).abs() <= slack(a.value().max(b.value()))
            };
            if !symmetric {
                return fail(BMetricViolation::Symmetry { i, j });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            let lhs = d[i][j];
            if lhs == ExtReal::ZERO {
                continue;
            }
            for k in 0..n {
                let rhs = (d[i][k] + d[k][j]).scale(kappa);
                if rhs.is_infinite() {
                    continue;
                }
                if lhs.value() > rhs.value() + slack(rhs.value()) {
                    return fail(BMetricViolation::Triangle { i, j, k, lhs, rhs });
                }
            }
        }
    }
    BMetricReport { passed: true, violation: None }
}
