//! Deterministic inputs for the benchmarks.

use quasistab::{ExtReal, GeneralizedBMetricSpace};

/// `n` points on a line at `D(i, j) = |x_i - x_j|^2` (`kappa = 2`), with
/// the last quarter of the points in a separate component.
pub fn squared_line(n: usize) -> GeneralizedBMetricSpace {
    let xs: Vec<f64> = (0..n).map(|i| (i as f64 * 0.7548776662466927).fract() * 10.0 + i as f64 * 1e-3).collect();
    let cut = n - n / 4;
    let d = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if (i < cut) != (j < cut) {
                        ExtReal::INFINITY
                    } else {
                        ExtReal::finite((xs[i] - xs[j]).powi(2))
                    }
                })
                .collect()
        })
        .collect();
    GeneralizedBMetricSpace::new(d, 2.0).expect("valid b-metric")
}
