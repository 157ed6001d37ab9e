//! Chain-infimum metrization of generalized b-metric spaces and brackets for
//! the Aoki-Rolewicz `p`-norm.
//!
//! For a b-metric `D` with constant `kappa` and `p = log_{2 kappa} 2`,
//!
//! ```text
//! delta(x, y) = inf { sum_i D(x_{i-1}, x_i)^p : x_0 = x, .., x_n = y }
//! ```
//!
//! is a (generalized) metric with `D^p / 4 <= delta <= D^p`. On a finite set
//! the infimum is a shortest-path distance over edge weights `D^p`, so it is
//! computed exactly by Floyd-Warshall. Pairs with no finite chain stay at
//! `+inf`.

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::ext_real::ExtReal;
use crate::spaces::{slack, GeneralizedBMetricSpace, QuasiNormedSpace};

/// `p` with `(2 kappa)^p = 2`.
pub fn p_exponent(kappa: f64) -> Result<f64> {
    if !(kappa >= 1.0) || !kappa.is_finite() {
        return Err(invalid(format!("kappa must be a finite real >= 1, got {kappa}")));
    }
    Ok(1.0 / (2.0 * kappa).log2())
}

/// The metric `delta` derived from a generalized b-metric space.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainMetric {
    pub delta: Vec<Vec<ExtReal>>,
    pub p: f64,
    pub source_kappa: f64,
}

impl ChainMetric {
    pub fn len(&self) -> usize {
        self.delta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.delta.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> ExtReal {
        self.delta[i][j]
    }

    /// First pair `(i, j)` where `D^p/4 <= delta <= D^p` fails, if any.
    pub fn sandwich_violation(&self, space: &GeneralizedBMetricSpace) -> Option<(usize, usize)> {
        let n = self.len();
        for i in 0..n {
            for j in 0..n {
                let dp = space.get(i, j).powf(self.p);
                let delta = self.delta[i][j];
                let upper_ok = delta <= dp || delta.value() <= dp.value() + slack(dp.value());
                let lower = dp.scale(0.25);
                let lower_ok = if lower.is_infinite() {
                    delta.is_infinite()
                } else {
                    lower.value() <= delta.value() + slack(lower.value())
                };
                if !(upper_ok && lower_ok) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// First triple `(i, j, k)` with `delta(i,j) > delta(i,k) + delta(k,j)`.
    pub fn triangle_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let rhs = self.delta[i][k] + self.delta[k][j];
                    if rhs.is_finite() && self.delta[i][j].value() > rhs.value() + slack(rhs.value()) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }
}

/// Metrizes `space` with `p = p_exponent(kappa)`.
///
/// Rejects spaces failing the b-metric axioms. When `kappa = 1` the input
/// already is a generalized metric and is returned unchanged.
pub fn chain_metric(space: &GeneralizedBMetricSpace) -> Result<ChainMetric> {
    let p = p_exponent(space.kappa())?;
    let report = space.validate();
    if !report.passed {
        return Err(Error::NotABMetric(report));
    }
    if space.kappa() == 1.0 {
        return Ok(ChainMetric {
            delta: space.matrix().to_vec(),
            p,
            source_kappa: 1.0,
        });
    }
    Ok(ChainMetric {
        delta: shortest_chains(space, p),
        p,
        source_kappa: space.kappa(),
    })
}

/// Metrizes `space` with an explicit exponent `p` in `(0, 1]`.
pub fn chain_metric_with_exponent(space: &GeneralizedBMetricSpace, p: f64) -> Result<ChainMetric> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(invalid(format!("p must lie in (0, 1], got {p}")));
    }
    let report = space.validate();
    if !report.passed {
        return Err(Error::NotABMetric(report));
    }
    Ok(ChainMetric {
        delta: shortest_chains(space, p),
        p,
        source_kappa: space.kappa(),
    })
}

/// All-pairs shortest paths over weights `D^p`.
///
/// Each relaxation adds `w[i][k] + w[k][j]` in that order; IEEE addition is
/// commutative, so the output is exactly symmetric.
fn shortest_chains(space: &GeneralizedBMetricSpace, p: f64) -> Vec<Vec<ExtReal>> {
    let n = space.len();
    let mut w: Vec<Vec<ExtReal>> = space
        .matrix()
        .iter()
        .map(|row| row.iter().map(|d| d.powf(p)).collect())
        .collect();
    for k in 0..n {
        for i in 0..n {
            let wik = w[i][k];
            if wik.is_infinite() {
                continue;
            }
            for j in 0..n {
                let cand = wik + w[k][j];
                if cand < w[i][j] {
                    w[i][j] = cand;
                }
            }
        }
    }
    w
}

/// A certified bracket `lo <= |||x||| <= hi`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

/// Brackets the Aoki-Rolewicz `p`-norm of `x`.
///
/// The upper end is the smallest of `||x||` and `(sum ||x_i||^p)^{1/p}` over
/// the supplied decompositions `x = sum x_i`; the lower end is
/// `||x|| / (2 kappa)`.
pub fn aoki_rolewicz_estimate(
    space: &QuasiNormedSpace,
    x: &[f64],
    decompositions: &[Vec<Vec<f64>>],
) -> Result<Interval> {
    if x.len() != space.dim() {
        return Err(invalid(format!("vector of length {} in a {}-dimensional space", x.len(), space.dim())));
    }
    let norm = space.norm(x);
    let p = space.p();
    let mut hi = norm;
    for (idx, parts) in decompositions.iter().enumerate() {
        if parts.is_empty() {
            return Err(invalid(format!("decomposition {idx} has no parts")));
        }
        let mut sum = vec![0.0; x.len()];
        for part in parts {
            if part.len() != x.len() {
                return Err(invalid(format!("decomposition {idx} has a part of the wrong length")));
            }
            for (s, v) in sum.iter_mut().zip(part) {
                *s += v;
            }
        }
        if sum.iter().zip(x).any(|(s, v)| (s - v).abs() > 1e-9 * v.abs().max(1.0)) {
            return Err(invalid(format!("decomposition {idx} does not sum to x")));
        }
        let candidate = parts.iter().map(|part| space.norm(part).powf(p)).sum::<f64>().powf(1.0 / p);
        hi = hi.min(candidate);
    }
    let lo = norm / (2.0 * space.kappa());
    Ok(Interval { lo: lo.min(hi), hi })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(rows: &[&[f64]], kappa: f64) -> GeneralizedBMetricSpace {
        let d: Vec<Vec<f64>> = rows.iter().map(|r| r.to_vec()).collect();
        GeneralizedBMetricSpace::from_f64(&d, kappa).unwrap()
    }

    #[test]
    fn p_exponent_examples() {
        assert_eq!(p_exponent(1.0).unwrap(), 1.0);
        assert_eq!(p_exponent(2.0).unwrap(), 0.5);
        let p = p_exponent(4.0).unwrap();
        assert!((p - 1.0 / 3.0).abs() < 1e-15);
        assert!((8f64.powf(p) - 2.0).abs() < 1e-14);
        assert!(p_exponent(0.99).is_err());
        assert!(p_exponent(f64::NAN).is_err());
    }

    #[test]
    fn p_exponent_is_strictly_decreasing() {
        let ks = [1.0, 1.001, 1.5, 2.0, 3.0, 8.0, 100.0];
        let ps: Vec<f64> = ks.iter().map(|&k| p_exponent(k).unwrap()).collect();
        assert!(ps.windows(2).all(|w| w[1] < w[0]));
        assert!(ps[1] < 1.0);
    }

    #[test]
    fn two_points_take_the_pth_power() {
        let m = chain_metric(&space(&[&[0.0, 4.0], &[4.0, 0.0]], 2.0)).unwrap();
        assert_eq!(m.p, 0.5);
        assert_eq!(m.get(0, 1).value(), 2.0);
        assert_eq!(m.get(1, 0).value(), 2.0);
    }

    #[test]
    fn three_point_chain_ties_direct_edge() {
        let s = space(&[&[0.0, 1.0, 16.0], &[1.0, 0.0, 1.0], &[16.0, 1.0, 0.0]], 8.0);
        let m = chain_metric(&s).unwrap();
        assert_eq!(m.p, 0.25);
        assert!((m.get(0, 2).value() - 2.0).abs() <= 1e-12);
        assert_eq!(m.sandwich_violation(&s), None);
        assert_eq!(m.triangle_violation(), None);
    }

    #[test]
    fn metric_input_is_returned_unchanged() {
        let s = space(&[&[0.0, 3.0, 4.0], &[3.0, 0.0, 5.0], &[4.0, 5.0, 0.0]], 1.0);
        assert_eq!(chain_metric(&s).unwrap().delta, s.matrix());
    }

    #[test]
    fn disconnected_components_stay_infinite() {
        let inf = f64::INFINITY;
        let s = space(&[&[0.0, inf, inf], &[inf, 0.0, 2.0], &[inf, 2.0, 0.0]], 2.0);
        let m = chain_metric(&s).unwrap();
        assert!(m.get(0, 1).is_infinite());
        assert!(m.get(0, 2).is_infinite());
        assert!((m.get(1, 2).value() - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn invalid_space_is_rejected_with_report() {
        let s = space(&[&[0.0, 1.0, 16.0], &[1.0, 0.0, 1.0], &[16.0, 1.0, 0.0]], 2.0);
        match chain_metric(&s) {
            Err(Error::NotABMetric(r)) => assert!(!r.passed && r.violation.is_some()),
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn explicit_exponent_must_be_in_unit_interval() {
        let s = space(&[&[0.0, 4.0], &[4.0, 0.0]], 2.0);
        assert!(chain_metric_with_exponent(&s, 0.0).is_err());
        assert!(chain_metric_with_exponent(&s, 1.5).is_err());
        assert_eq!(chain_metric_with_exponent(&s, 0.25).unwrap().get(0, 1).value(), 4f64.powf(0.25));
    }

    #[test]
    fn aoki_rolewicz_brackets() {
        let l_half = QuasiNormedSpace::ell_r(2, 0.5).unwrap();
        assert_eq!(
            aoki_rolewicz_estimate(&l_half, &[0.0, 0.0], &[]).unwrap(),
            Interval { lo: 0.0, hi: 0.0 }
        );
        let bare = aoki_rolewicz_estimate(&l_half, &[1.0, 1.0], &[]).unwrap();
        assert_eq!(bare, Interval { lo: 1.0, hi: 4.0 });

        let split = vec![vec![vec![1.0, 0.0], vec![0.0, 1.0]]];
        assert_eq!(aoki_rolewicz_estimate(&l_half, &[1.0, 1.0], &split).unwrap().hi, 4.0);

        let bad = vec![vec![vec![1.0, 0.0]], vec![vec![1.0, 0.0], vec![0.5, 1.0]]];
        let err = aoki_rolewicz_estimate(&l_half, &[1.0, 1.0], &bad).unwrap_err();
        assert!(err.to_string().contains("decomposition 0"), "{err}");
    }

    #[test]
    fn more_decompositions_never_raise_the_upper_end() {
        let space = QuasiNormedSpace::ell_r(2, 0.25).unwrap();
        let x = [2.0, -1.0];
        let decomps: Vec<Vec<Vec<f64>>> = vec![
            vec![vec![1.0, 0.0], vec![1.0, -1.0]],
            vec![vec![2.0, 0.0], vec![0.0, -1.0]],
            vec![vec![1.0, -0.5], vec![1.0, -0.5]],
            vec![vec![0.5, 0.0], vec![0.5, 0.0], vec![1.0, 0.0], vec![0.0, -1.0]],
        ];
        let mut last = f64::INFINITY;
        for k in 0..=decomps.len() {
            let iv = aoki_rolewicz_estimate(&space, &x, &decomps[..k]).unwrap();
            assert!(iv.hi <= last);
            assert!(iv.lo <= iv.hi);
            last = iv.hi;
        }
    }
}
