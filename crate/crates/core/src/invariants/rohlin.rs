//! The mod-2 invariant `I(M, s) = n + cᵀBc (mod 2)`.
//!
//! With `c = 0` every framing is even and the surgery trace is a spin
//! 4-manifold built from one 0-handle and `n` 2-handles, so `n` is its Euler
//! characteristic minus one. The `cᵀBc` term makes the value invariant under
//! every spin Kirby move: a blow-up adds 1 to `n` and ±1 to `cᵀBc`, and a
//! slide changes neither.

use num_bigint::BigInt;
use num_integer::Integer;
use thiserror::Error;

use super::value::{InvariantValue, SpinInvariant, ValueGroup};
use crate::exactlin::{BitVector, IntSymMatrix};
use crate::presentation::{PresentationError, SpinPresentation};

#[derive(Clone, Copy, Debug, Default)]
pub struct RohlinMod2;

impl SpinInvariant for RohlinMod2 {
    fn value_group(&self) -> ValueGroup {
        ValueGroup::IntegersMod2
    }

    fn evaluate(&self, p: &SpinPresentation) -> InvariantValue {
        rohlin_mod2(p)
    }
}

pub fn rohlin_mod2(p: &SpinPresentation) -> InvariantValue {
    let c_b_c = p.matrix().quadratic_form(p.characteristic());
    InvariantValue::Mod2((p.len() % 2 == 1) ^ c_b_c.is_odd())
}

/// Validates the raw pair first; fails with the validation error.
pub fn rohlin_mod2_checked(b: IntSymMatrix, c: BitVector) -> Result<InvariantValue, PresentationError> {
    SpinPresentation::validate(b, c).map(|p| rohlin_mod2(&p))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaRankReport {
    pub signature: i64,
    pub rank: usize,
    pub n: usize,
    pub det: BigInt,
}

impl SigmaRankReport {
    /// Whether `signature ≡ rank ≡ n (mod 2)`.
    pub fn consistent(&self) -> bool {
        let s = self.signature.rem_euclid(2) as usize;
        s == self.rank % 2 && s == self.n % 2
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConsistencyError {
    #[error("linking matrix is degenerate (det = 0); the parity claim does not apply")]
    DegeneratePresentation,
}

/// Signature, rank and size of a nondegenerate linking matrix, for the
/// parity check `signature ≡ rank ≡ n (mod 2)`.
pub fn check_sigma_rank_consistency(p: &SpinPresentation) -> Result<SigmaRankReport, ConsistencyError> {
    let b = p.matrix();
    let det = b.det();
    if det == BigInt::default() {
        return Err(ConsistencyError::DegeneratePresentation);
    }
    let inertia = b.inertia();
    Ok(SigmaRankReport {
        signature: inertia.signature(),
        rank: inertia.rank(),
        n: b.dim(),
        det,
    })
}
