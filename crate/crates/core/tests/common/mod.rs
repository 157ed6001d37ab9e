#![allow(dead_code)]

use quasistab::{ExtReal, GeneralizedBMetricSpace};
use rand::Rng;

/// A random generalized b-metric space on `n` points.
///
/// Points live in the plane; `D = |x - y|^q * f_ij` with symmetric factors
/// `f_ij` in `[1, 1.25]`, so `D` is a b-metric with constant at most
/// `1.25 * 2^{q-1}`. Points are split into clusters with infinite distance
/// across clusters. The declared `kappa` is the smallest valid one, or a
/// larger random value up to 8.
pub fn random_space<R: Rng>(rng: &mut R, n: usize, metric: bool) -> GeneralizedBMetricSpace {
    loop {
        let pts: Vec<(f64, f64)> = (0..n).map(|_| (rng.gen_range(0.0..10.0), rng.gen_range(0.0..10.0))).collect();
        let close = (0..n).any(|i| (0..i).any(|j| dist(pts[i], pts[j]) < 1e-3));
        if close {
            continue;
        }
        let q = if metric { 1.0 } else { rng.gen_range(1.0..3.0) };
        let spread = if metric { 0.0 } else { 0.25 };
        // 40% of spaces split into two clusters; on average about 10%
        // of the off-diagonal entries become infinite
        let cluster: Vec<usize> = if n > 1 && rng.gen_bool(0.4) {
            (0..n).map(|_| usize::from(rng.gen_bool(0.15))).collect()
        } else {
            vec![0; n]
        };
        let mut d = vec![vec![ExtReal::ZERO; n]; n];
        for i in 0..n {
            for j in 0..i {
                let v = if cluster[i] != cluster[j] {
                    ExtReal::INFINITY
                } else {
                    ExtReal::finite(dist(pts[i], pts[j]).powf(q) * (1.0 + spread * rng.gen::<f64>()))
                };
                d[i][j] = v;
                d[j][i] = v;
            }
        }
        if metric {
            return GeneralizedBMetricSpace::new(d, 1.0).unwrap();
        }
        let needed = minimal_kappa(&d);
        if needed > 8.0 {
            continue;
        }
        let kappa = if rng.gen_bool(0.5) { needed } else { rng.gen_range(needed..=8.0) };
        return GeneralizedBMetricSpace::new(d, kappa).unwrap();
    }
}

fn dist(a: (f64, f64), b: (f64, f64)) -> f64 {
    ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt()
}

/// Smallest `kappa >= 1` with `D(i,j) <= kappa (D(i,k) + D(k,j))`.
pub fn minimal_kappa(d: &[Vec<ExtReal>]) -> f64 {
    let n = d.len();
    let mut kappa = 1.0f64;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let rhs = d[i][k] + d[k][j];
                if i != j && rhs.is_finite() && rhs.value() > 0.0 {
                    kappa = kappa.max(d[i][j].value() / rhs.value());
                }
            }
        }
    }
    kappa
}

/// Minimum over all simple chains `i = z_0, ..., z_k = j` of
/// `sum D(z_t, z_{t+1})^p`, by exhaustive enumeration.
pub fn brute_force_chain(d: &[Vec<ExtReal>], p: f64) -> Vec<Vec<f64>> {
    let n = d.len();
    let w: Vec<Vec<f64>> = d
        .iter()
        .map(|row| row.iter().map(|v| if v.is_infinite() { f64::INFINITY } else { v.value().powf(p) }).collect())
        .collect();
    let mut out = vec![vec![f64::INFINITY; n]; n];
    for (i, row) in out.iter_mut().enumerate() {
        let mut visited = vec![false; n];
        visited[i] = true;
        row[i] = 0.0;
        extend(&w, i, 0.0, &mut visited, row);
    }
    out
}

fn extend(w: &[Vec<f64>], at: usize, cost: f64, visited: &mut [bool], best: &mut [f64]) {
    for next in 0..w.len() {
        if visited[next] {
            continue;
        }
        let c = cost + w[at][next];
        if c.is_infinite() {
            continue;
        }
        best[next] = best[next].min(c);
        visited[next] = true;
        extend(w, next, c, visited, best);
        visited[next] = false;
    }
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    if a.is_infinite() || b.is_infinite() {
        return a == b;
    }
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}
