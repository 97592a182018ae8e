//! The Casson invariant of `(1, n)` surgeries on a knot in S³, from
//! `λ(S³) = 0` and `λ(M(K_n)) - λ(M(K_{n-1})) = ½Δ″_K(1)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use thiserror::Error;

use super::laurent::LaurentPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CassonError {
    #[error("Alexander polynomial {0} is not normalized (need Δ(1) = 1 and Δ(t) = Δ(t⁻¹))")]
    NotNormalized(LaurentPolynomial),
    #[error("Δ''(1) = {0} is odd; not an Alexander polynomial")]
    OddSecondDerivative(BigInt),
}

/// `½Δ″(1) = ½ Σ_k a_k·k·(k-1)` for a normalized Alexander polynomial.
pub fn half_second_derivative_at_1(d: &LaurentPolynomial) -> Result<BigInt, CassonError> {
    if !d.eval_at_one().is_one() || !d.is_symmetric() {
        return Err(CassonError::NotNormalized(d.clone()));
    }
    let second: BigInt = d.terms().map(|(k, a)| a * BigInt::from(k) * BigInt::from(k - 1)).sum();
    let (half, rem) = second.div_rem(&BigInt::from(2));
    if rem != BigInt::default() {
        return Err(CassonError::OddSecondDerivative(second));
    }
    Ok(half)
}

/// `λ(M(K_n)) = n·½Δ″(1)`, the recursion telescoped from `λ(M(K_0)) = λ(S³) = 0`.
pub fn casson(d: &LaurentPolynomial, n: i64) -> Result<BigInt, CassonError> {
    Ok(BigInt::from(n) * half_second_derivative_at_1(d)?)
}
