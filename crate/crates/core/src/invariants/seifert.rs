//! Alexander polynomials from Seifert matrices.
//!
//! `det(V - t·Vᵀ)` has degree at most `2g` in `t`. It is recovered exactly by
//! evaluating the integer determinant at `t = 0, 1, …, 2g` and interpolating
//! in Newton form, then centered by `t^(-g)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use super::laurent::LaurentPolynomial;
use crate::exactlin::{IntMatrix, MatrixError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeifertError {
    #[error("invalid Seifert matrix: det(V - Vᵀ) = {det}, expected 1")]
    InvalidSeifertMatrix { det: BigInt },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Square integer matrix `V` with `det(V - Vᵀ) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertMatrix(IntMatrix);

impl SeifertMatrix {
    pub fn new(v: IntMatrix) -> Result<Self, SeifertError> {
        let det = v.sub(&v.transpose()).det();
        if !det.is_one() {
            return Err(SeifertError::InvalidSeifertMatrix { det });
        }
        Ok(Self(v))
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self, SeifertError> {
        Self::new(IntMatrix::from_i64_rows(rows)?)
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn genus(&self) -> usize {
        self.0.dim() / 2
    }

    /// `det(V - t·Vᵀ)` at an integer point.
    fn det_at(&self, t: i64) -> BigInt {
        let v = &self.0;
        let n = v.dim();
        let t = BigInt::from(t);
        let mut m = IntMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, v.get(i, j) - &t * v.get(j, i));
            }
        }
        m.det()
    }
}

/// Normalized Alexander polynomial: symmetric under `t ↦ t⁻¹`, with `Δ(1) = 1`.
pub fn alexander_from_seifert(v: &SeifertMatrix) -> LaurentPolynomial {
    let degree = v.matrix().dim();
    let samples: Vec<BigRational> = (0..=degree as i64)
        .map(|t| BigRational::from_integer(v.det_at(t)))
        .collect();
    let coeffs = interpolate(&samples);
    let poly = LaurentPolynomial::from_coeffs(
        -(v.genus() as i64),
        coeffs.into_iter().map(|c| {
            assert!(c.is_integer(), "determinant polynomial has integer coefficients");
            c.to_integer()
        }),
    );
    debug_assert!(poly.is_symmetric());
    debug_assert!(poly.eval_at_one().is_one());
    poly
}

/// Monomial coefficients of the polynomial through `(k, samples[k])`, `k = 0..len`.
fn interpolate(samples: &[BigRational]) -> Vec<BigRational> {
    let n = samples.len();
    // Divided differences on nodes 0, 1, …, n-1.
    let mut dd = samples.to_vec();
    for level in 1..n {
        for k in (level..n).rev() {
            dd[k] = (&dd[k] - &dd[k - 1]) / BigRational::from_integer(BigInt::from(level));
        }
    }
    // Horner on the Newton form: p = dd[n-1]; p = p·(t - k) + dd[k].
    let mut coeffs: Vec<BigRational> = Vec::new();
    for k in (0..n).rev() {
        let node = BigRational::from_integer(BigInt::from(k));
        let mut next = vec![BigRational::zero(); coeffs.len() + 1];
        for (d, c) in coeffs.iter().enumerate() {
            next[d + 1] += c;
            next[d] -= &node * c;
        }
        next[0] += &dd[k];
        coeffs = next;
    }
    coeffs
}
