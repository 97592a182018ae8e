//! Surgery presentations and their spin structures.
//!
//! A spin structure on the surgered manifold is recorded as a characteristic
//! vector `c` of the linking matrix `B`: `B·c ≡ diag(B) (mod 2)`.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_integer::Integer;
use thiserror::Error;

use crate::exactlin::{BitVector, IntSymMatrix, MatrixError, Mod2AffineSolutionSet};

/// Above this mod-2 nullity, spin structures are reported by their affine description.
pub const MAX_ENUMERATED_NULLITY: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("characteristic vector has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("characteristic vector entries must be 0 or 1")]
    InvalidBit,
    #[error("characteristic condition fails at row {row}")]
    NotCharacteristic { row: usize },
    #[error("component index {index} out of range for {n} components")]
    IndexOutOfRange { index: usize, n: usize },
}

/// A linking matrix with a characteristic vector: one spin 3-manifold.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SpinPresentation {
    b: IntSymMatrix,
    c: BitVector,
}

impl SpinPresentation {
    /// Checks the characteristic condition and wraps the pair.
    pub fn validate(b: IntSymMatrix, c: BitVector) -> Result<Self, PresentationError> {
        if c.len() != b.dim() {
            return Err(PresentationError::LengthMismatch {
                expected: b.dim(),
                found: c.len(),
            });
        }
        if let Some(row) = first_violation(&b, &c) {
            return Err(PresentationError::NotCharacteristic { row });
        }
        Ok(Self { b, c })
    }

    pub fn from_i64(rows: &[Vec<i64>], c: &[u8]) -> Result<Self, PresentationError> {
        let b = IntSymMatrix::from_i64_rows(rows)?;
        let c = BitVector::from_u8s(c).ok_or(PresentationError::InvalidBit)?;
        Self::validate(b, c)
    }

    /// S³, the empty surgery.
    pub fn empty() -> Self {
        Self::default()
    }

    pub(crate) fn from_parts_unchecked(b: IntSymMatrix, c: BitVector) -> Self {
        debug_assert_eq!(first_violation(&b, &c), None);
        Self { b, c }
    }

    pub fn matrix(&self) -> &IntSymMatrix {
        &self.b
    }

    pub fn characteristic(&self) -> &BitVector {
        &self.c
    }

    /// Number of link components.
    pub fn len(&self) -> usize {
        self.b.dim()
    }

    pub fn is_empty(&self) -> bool {
        self.b.is_empty()
    }

    pub fn into_parts(self) -> (IntSymMatrix, BitVector) {
        (self.b, self.c)
    }
}

/// First row where `B·c ≢ diag(B) (mod 2)`, if any.
pub fn first_violation(b: &IntSymMatrix, c: &BitVector) -> Option<usize> {
    (0..b.dim()).find(|&i| {
        let row_parity = c.support().filter(|&j| b.get(i, j).is_odd()).count() % 2 == 1;
        row_parity != b.get(i, i).is_odd()
    })
}

/// Affine description of every characteristic vector of `b`.
pub fn characteristic_solutions(b: &IntSymMatrix) -> Mod2AffineSolutionSet {
    b.mod2().solve_affine(&b.diagonal_mod2())
}

/// Spin structures of a presentation: listed when few, otherwise described affinely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpinStructures {
    Enumerated(Vec<BitVector>),
    Affine(Mod2AffineSolutionSet),
}

impl SpinStructures {
    pub fn count(&self) -> BigUint {
        match self {
            Self::Enumerated(v) => BigUint::from(v.len()),
            Self::Affine(s) => s.count(),
        }
    }

    pub fn as_list(&self) -> Option<&[BitVector]> {
        match self {
            Self::Enumerated(v) => Some(v),
            Self::Affine(_) => None,
        }
    }
}

/// All characteristic vectors of `b` in lexicographic order.
///
/// Never empty: the diagonal of a symmetric matrix mod 2 lies in its column space.
pub fn characteristic_vectors(b: &IntSymMatrix) -> SpinStructures {
    let solutions = characteristic_solutions(b);
    debug_assert!(!solutions.is_empty());
    if solutions.nullity() <= MAX_ENUMERATED_NULLITY {
        SpinStructures::Enumerated(solutions.enumerate())
    } else {
        SpinStructures::Affine(solutions)
    }
}

/// Mod-2 nullity of `b`, the dimension of H¹(M; Z/2).
pub fn spin_nullity(b: &IntSymMatrix) -> usize {
    b.dim() - b.mod2().rank()
}

/// Number of spin structures, `2^(n - rank₂ b)`.
pub fn spin_count(b: &IntSymMatrix) -> BigUint {
    BigUint::from(1u8) << spin_nullity(b)
}

/// Split union of two presentations, which presents the connected sum.
pub fn block_sum(p: &SpinPresentation, q: &SpinPresentation) -> SpinPresentation {
    SpinPresentation::from_parts_unchecked(p.b.block_sum(&q.b), p.c.concat(&q.c))
}

/// A set of component indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SublinkSelector(BTreeSet<usize>);

impl SublinkSelector {
    pub fn full(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromIterator<usize> for SublinkSelector {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

/// Linking matrix of the sublink on `s`.
///
/// The spin structure is not carried over; sublinks re-solve the
/// characteristic condition where needed.
pub fn sublink(p: &SpinPresentation, s: &SublinkSelector) -> Result<IntSymMatrix, PresentationError> {
    let n = p.len();
    if let Some(index) = s.indices().find(|&i| i >= n) {
        return Err(PresentationError::IndexOutOfRange { index, n });
    }
    let idx: Vec<usize> = s.indices().collect();
    Ok(p.b.principal_submatrix(&idx))
}
