//! Maps between coordinate spaces: callables and maps sampled on a grid.

use std::collections::HashMap;

use crate::error::{invalid, Error, Result};

/// Something that can be evaluated at a coordinate vector.
pub trait VectorMap: Send + Sync {
    fn eval(&self, x: &[f64]) -> Result<Vec<f64>>;
}

impl<T: VectorMap + ?Sized> VectorMap for &T {
    fn eval(&self, x: &[f64]) -> Result<Vec<f64>> {
        (**self).eval(x)
    }
}

/// Wraps a closure as a [`VectorMap`].
pub struct FnMap<F>(pub F);

impl<F> VectorMap for FnMap<F>
where
    F: Fn(&[f64]) -> Vec<f64> + Send + Sync,
{
    fn eval(&self, x: &[f64]) -> Result<Vec<f64>> {
        Ok((self.0)(x))
    }
}

/// `x(t) -> sum_k c_k x(t)^k`, applied to every coordinate.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PointwisePolynomial {
    pub coeffs: Vec<f64>,
}

impl PointwisePolynomial {
    pub fn new(coeffs: Vec<f64>) -> Self {
        PointwisePolynomial { coeffs }
    }

    /// `a t^3 + b t`.
    pub fn cubic_plus_linear(a: f64, b: f64) -> Self {
        Self::new(vec![0.0, b, 0.0, a])
    }

    pub fn scalar(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c)
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self::new(self.coeffs.iter().map(|v| v * c).collect())
    }
}

impl VectorMap for PointwisePolynomial {
    fn eval(&self, x: &[f64]) -> Result<Vec<f64>> {
        Ok(x.iter().map(|&t| self.scalar(t)).collect())
    }
}

/// `a * x + b * y`, coordinatewise. Every derived argument (`x + m y`,
/// `m x - y`, ..) goes through here so grid lookups match bit for bit.
pub fn lin2(a: f64, x: &[f64], b: f64, y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(u, v)| a * u + b * v).collect()
}

pub fn scale(a: f64, x: &[f64]) -> Vec<f64> {
    x.iter().map(|u| a * u).collect()
}

pub fn sub(x: &[f64], y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(u, v)| u - v).collect()
}

fn key(x: &[f64]) -> Vec<u64> {
    // -0.0 and 0.0 are the same point
    x.iter().map(|v| (v + 0.0).to_bits()).collect()
}

/// A map known only on a finite grid. Evaluation off the grid is an error.
#[derive(Clone, Debug)]
pub struct SampledMap {
    domain: Vec<Vec<f64>>,
    values: Vec<Vec<f64>>,
    index: HashMap<Vec<u64>, usize>,
}

impl SampledMap {
    pub fn new(domain: Vec<Vec<f64>>, values: Vec<Vec<f64>>) -> Result<Self> {
        if domain.len() != values.len() {
            return Err(invalid(format!(
                "grid has {} points but {} values",
                domain.len(),
                values.len()
            )));
        }
        if let Some(first) = domain.first() {
            let dim = first.len();
            if domain.iter().any(|x| x.len() != dim) {
                return Err(invalid("grid points have differing lengths"));
            }
        }
        let mut index = HashMap::with_capacity(domain.len());
        for (i, x) in domain.iter().enumerate() {
            if x.iter().any(|v| !v.is_finite()) {
                return Err(invalid(format!("grid point {i} is not finite")));
            }
            if index.insert(key(x), i).is_some() {
                return Err(invalid(format!("duplicate grid point at index {i}")));
            }
        }
        Ok(SampledMap { domain, values, index })
    }

    /// Samples `f` on `grid`.
    pub fn tabulate<M: VectorMap + ?Sized>(f: &M, grid: Vec<Vec<f64>>) -> Result<Self> {
        let values = grid.iter().map(|x| f.eval(x)).collect::<Result<Vec<_>>>()?;
        Self::new(grid, values)
    }

    pub fn len(&self) -> usize {
        self.domain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domain.is_empty()
    }

    pub fn domain(&self) -> &[Vec<f64>] {
        &self.domain
    }

    pub fn values(&self) -> &[Vec<f64>] {
        &self.values
    }

    pub fn position(&self, x: &[f64]) -> Option<usize> {
        self.index.get(&key(x)).copied()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        self.position(x).is_some()
    }

    pub fn get(&self, x: &[f64]) -> Option<&[f64]> {
        self.position(x).map(|i| self.values[i].as_slice())
    }

    /// Image of the zero vector, when it is on the grid.
    pub fn zero_image(&self) -> Option<&[f64]> {
        let dim = self.domain.first()?.len();
        self.get(&vec![0.0; dim])
    }

    pub fn same_grid(&self, other: &SampledMap) -> bool {
        self.domain.len() == other.domain.len()
            && self.domain.iter().zip(&other.domain).all(|(a, b)| key(a) == key(b))
    }

    /// Replaces every value by `c` times itself.
    pub fn scaled(&self, c: f64) -> SampledMap {
        SampledMap {
            domain: self.domain.clone(),
            values: self.values.iter().map(|v| scale(c, v)).collect(),
            index: self.index.clone(),
        }
    }
}

impl VectorMap for SampledMap {
    fn eval(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.get(x).map(<[f64]>::to_vec).ok_or_else(|| Error::Evaluation {
            point: x.to_vec(),
            reason: "point is not on the sample grid".into(),
        })
    }
}
