//! Concrete quasi-normed models: `R^n` with `l^r` functionals and the
//! midpoint-discretized `L^{1/2}[0,1]`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Result};

/// Default number of midpoint panels used for `L^{1/2}[0,1]`.
pub const DEFAULT_QUADRATURE_N: usize = 1024;

/// Panel midpoints `t_i = (i + 1/2)/n` of `[0,1]`.
pub fn midpoints(quadrature_n: usize) -> Vec<f64> {
    let h = 1.0 / quadrature_n as f64;
    (0..quadrature_n).map(|i| (i as f64 + 0.5) * h).collect()
}

/// Samples `signal` at the panel midpoints.
pub fn sample<F: Fn(f64) -> f64>(signal: F, quadrature_n: usize) -> Vec<f64> {
    midpoints(quadrature_n).into_iter().map(signal).collect()
}

/// Composite-midpoint value of `(int_0^1 |x(t)|^{1/2} dt)^2`.
pub fn lhalf_norm(x: &[f64], quadrature_n: usize) -> Result<f64> {
    if x.len() != quadrature_n {
        return Err(invalid(format!(
            "L^1/2 element has {} samples, expected {quadrature_n}",
            x.len()
        )));
    }
    Ok(lhalf_norm_unchecked(x))
}

pub(crate) fn lhalf_norm_unchecked(x: &[f64]) -> f64 {
    let h = 1.0 / x.len() as f64;
    let integral: f64 = x.iter().map(|v| v.abs().sqrt()).sum::<f64>() * h;
    integral * integral
}

/// `(sum |x_i|^r)^{1/r}`; a norm for `r >= 1`, a quasi-norm with modulus of
/// concavity `2^{1/r - 1}` for `0 < r < 1`.
pub fn ell_r_quasi_norm(x: &[f64], r: f64) -> Result<f64> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(invalid(format!("l^r exponent must be positive and finite, got {r}")));
    }
    Ok(ell_r_unchecked(x, r))
}

pub(crate) fn ell_r_unchecked(x: &[f64], r: f64) -> f64 {
    if r == 1.0 {
        x.iter().map(|v| v.abs()).sum()
    } else if r == 2.0 {
        x.iter().map(|v| v * v).sum::<f64>().sqrt()
    } else {
        x.iter().map(|v| v.abs().powf(r)).sum::<f64>().powf(1.0 / r)
    }
}

/// Smallest valid modulus of concavity of the `l^r` functional.
pub fn ell_r_kappa(r: f64) -> f64 {
    if r >= 1.0 {
        1.0
    } else {
        2f64.powf(1.0 / r - 1.0)
    }
}

/// One member of the deterministic signal corpus.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub enum SignalShape {
    Polynomial { coeffs: Vec<f64> },
    Sinusoid { amplitude: f64, frequency: f64, phase: f64 },
    Step { at: f64, low: f64, high: f64 },
}

impl SignalShape {
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            SignalShape::Polynomial { coeffs } => coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c),
            SignalShape::Sinusoid { amplitude, frequency, phase } => {
                amplitude * (2.0 * std::f64::consts::PI * frequency * t + phase).sin()
            }
            SignalShape::Step { at, low, high } => {
                if t < *at {
                    *low
                } else {
                    *high
                }
            }
        }
    }
}

/// The fixed test corpus: ten polynomials of degree 0..=3, nine sinusoids and
/// one step signal, drawn from a ChaCha stream seeded with `seed`.
pub fn signal_corpus(seed: u64) -> Vec<SignalShape> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(20);
    for i in 0..10 {
        let degree = i % 4;
        let coeffs = (0..=degree).map(|_| rng.gen_range(-1.0..1.0)).collect();
        out.push(SignalShape::Polynomial { coeffs });
    }
    for _ in 0..9 {
        out.push(SignalShape::Sinusoid {
            amplitude: rng.gen_range(0.25..1.5),
            frequency: rng.gen_range(1..=4) as f64,
            phase: rng.gen_range(0.0..std::f64::consts::TAU),
        });
    }
    out.push(SignalShape::Step { at: 0.5, low: 0.0, high: 1.0 });
    out
}

/// Samples every corpus signal at `quadrature_n` midpoints.
pub fn sampled_corpus(seed: u64, quadrature_n: usize) -> Vec<Vec<f64>> {
    signal_corpus(seed)
        .iter()
        .map(|s| sample(|t| s.eval(t), quadrature_n))
        .collect()
}
