//! Exact expansion of the equation defect for polynomial maps acting
//! pointwise.
//!
//! For `f(t) = sum_k a_k t^k` and integer `m`, the defect
//! `2m f(x+my) + 2f(mx-y) - (m^3+m)[f(x+y) + f(x-y)] - 2(m^4-1) f(y)` is a
//! bivariate polynomial in `(x, y)` with integer coefficients, computed here
//! without rounding.

use std::collections::BTreeMap;

use serde::Serialize;

/// `coeffs[(i, j)]` multiplies `x^i y^j`; zero coefficients are omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Bivariate {
    pub coeffs: BTreeMap<(u32, u32), i128>,
}

impl Bivariate {
    fn add_power(&mut self, weight: i128, a: i128, b: i128, k: u32) {
        // weight * (a x + b y)^k
        for i in 0..=k {
            let c = weight * binomial(k, i) * a.pow(i) * b.pow(k - i);
            if c != 0 {
                *self.coeffs.entry((i, k - i)).or_insert(0) += c;
            }
        }
        self.coeffs.retain(|_, v| *v != 0);
    }

    pub fn coefficient(&self, i: u32, j: u32) -> i128 {
        self.coeffs.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

fn binomial(n: u32, k: u32) -> i128 {
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// Exact defect polynomial of `f(t) = sum_k coeffs[k] t^k`.
pub fn el_expansion(coeffs: &[i64], m: i64) -> Bivariate {
    let m = m as i128;
    let terms: [(i128, i128, i128); 5] = [
        (2 * m, 1, m),
        (2, m, -1),
        (-(m * m * m + m), 1, 1),
        (-(m * m * m + m), 1, -1),
        (-2 * (m.pow(4) - 1), 0, 1),
    ];
    let mut out = Bivariate::default();
    for (k, &a_k) in coeffs.iter().enumerate() {
        if a_k == 0 {
            continue;
        }
        for &(w, a, b) in &terms {
            out.add_power(w * a_k as i128, a, b, k as u32);
        }
    }
    out
}

/// If the expansion is `c (x + m y)`, returns `|c|`, so that the defect of the
/// pointwise map in any absolutely homogeneous quasi-norm is `|c| ||x + m y||`.
pub fn shift_constant(expansion: &Bivariate, m: i64) -> Option<i128> {
    let cx = expansion.coefficient(1, 0);
    let cy = expansion.coefficient(0, 1);
    let only_linear = expansion.coeffs.keys().all(|&k| k == (1, 0) || k == (0, 1));
    (only_linear && cy == cx * m as i128).then_some(cx.abs())
}
