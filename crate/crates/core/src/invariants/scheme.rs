//! Alternating sums of an invariant over the sublinks of a surgery scheme.
//!
//! A scheme is a base presentation bordered by `m` extra components. For each
//! subset `T` of the extras, surgery on `base ∪ T` gives a manifold whose spin
//! structure must extend the base one; an [`ExtensionPolicy`] decides which
//! extension is used. The alternating sum is `Σ_T (-1)^|T| v(M_T)`.

use num_integer::Integer;
use rayon::prelude::*;
use thiserror::Error;

use super::value::{InvariantValue, SpinInvariant, ValueGroup};
use crate::exactlin::{BitVector, IntSymMatrix, Mod2Matrix};
use crate::presentation::SpinPresentation;

/// Largest number of extras a single alternating sum will expand.
pub const MAX_EXTRAS: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error("scheme matrix of size {full} cannot extend a base of size {base}")]
    SizeMismatch { base: usize, full: usize },
    #[error("leading block of the scheme matrix differs from the base at ({row},{col})")]
    BaseMismatch { row: usize, col: usize },
    #[error("declared extra membership has length {found}, expected {expected}")]
    DeclaredLength { expected: usize, found: usize },
    #[error("index {index} is not an extra component")]
    NotAnExtra { index: usize },
    #[error("sublink on extras {subset:?} has {count} characteristic extensions, expected exactly one")]
    AmbiguousExtension { subset: Vec<usize>, count: usize },
    #[error("sublink on extras {subset:?} has no admissible characteristic extension")]
    NoExtension { subset: Vec<usize> },
    #[error("sublink on extras {subset:?} has an even number ({count}) of extensions; mod-2 average undefined")]
    EvenExtensionCount { subset: Vec<usize>, count: usize },
    #[error("averaging over extensions needs a mod-2 valued invariant")]
    AverageNeedsMod2,
    #[error("declared policy needs declared membership bits for the extras")]
    MissingDeclaration,
    #[error("scheme {scheme} has {extras} extras, fewer than the {needed} required")]
    InsufficientExtras {
        scheme: usize,
        extras: usize,
        needed: usize,
    },
    #[error("{extras} extras exceed the limit of {max}")]
    TooManyExtras { extras: usize, max: usize },
}

/// How a sublink `base ∪ T` picks its spin structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtensionPolicy {
    /// The characteristic extension of the base vector must be unique.
    Unique,
    /// Sum over all extensions; only for mod-2 invariants with an odd count.
    AverageMod2,
    /// Use the scheme's declared membership bits on the extras.
    Declared,
}

/// A base presentation bordered by extra components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurgeryScheme {
    base: SpinPresentation,
    full: IntSymMatrix,
    declared: Option<BitVector>,
}

impl SurgeryScheme {
    pub fn new(base: SpinPresentation, full: IntSymMatrix, declared: Option<BitVector>) -> Result<Self, SchemeError> {
        let n = base.len();
        if full.dim() < n {
            return Err(SchemeError::SizeMismatch {
                base: n,
                full: full.dim(),
            });
        }
        for row in 0..n {
            for col in 0..n {
                if full.get(row, col) != base.matrix().get(row, col) {
                    return Err(SchemeError::BaseMismatch { row, col });
                }
            }
        }
        if let Some(d) = &declared {
            if d.len() != full.dim() - n {
                return Err(SchemeError::DeclaredLength {
                    expected: full.dim() - n,
                    found: d.len(),
                });
            }
        }
        Ok(Self { base, full, declared })
    }

    pub fn base(&self) -> &SpinPresentation {
        &self.base
    }

    pub fn full(&self) -> &IntSymMatrix {
        &self.full
    }

    pub fn declared(&self) -> Option<&BitVector> {
        self.declared.as_ref()
    }

    pub fn extra_count(&self) -> usize {
        self.full.dim() - self.base.len()
    }

    /// Absolute indices of the extra components.
    pub fn extras(&self) -> std::ops::Range<usize> {
        self.base.len()..self.full.dim()
    }

    /// The scheme keeping only the listed extras (absolute indices, in the given order).
    pub fn restrict(&self, keep: &[usize]) -> Result<SurgeryScheme, SchemeError> {
        self.check_extras(keep)?;
        let n = self.base.len();
        let idx: Vec<usize> = (0..n).chain(keep.iter().copied()).collect();
        let declared = self
            .declared
            .as_ref()
            .map(|d| keep.iter().map(|&k| d.get(k - n)).collect());
        Ok(Self {
            base: self.base.clone(),
            full: self.full.principal_submatrix(&idx),
            declared,
        })
    }

    fn check_extras(&self, subset: &[usize]) -> Result<(), SchemeError> {
        match subset.iter().find(|&&i| !self.extras().contains(&i)) {
            Some(&index) => Err(SchemeError::NotAnExtra { index }),
            None => Ok(()),
        }
    }

    fn sublink_indices(&self, subset: &[usize]) -> Vec<usize> {
        (0..self.base.len()).chain(subset.iter().copied()).collect()
    }
}

/// Characteristic vectors of the sublink on `base ∪ subset` that restrict to
/// the base vector, in lexicographic order.
pub fn characteristic_extensions(s: &SurgeryScheme, subset: &[usize]) -> Result<Vec<BitVector>, SchemeError> {
    s.check_extras(subset)?;
    let idx = s.sublink_indices(subset);
    let b = s.full.principal_submatrix(&idx);
    let n = s.base.len();
    let k = subset.len();
    let c_base = s.base.characteristic();

    // Row r: Σ_{j<n} b[r][j] c_j + Σ_{t} b[r][n+t] x_t ≡ b[r][r].
    let system = Mod2Matrix::from_fn(n + k, k, |r, t| b.get(r, n + t).is_odd());
    let rhs: BitVector = (0..n + k)
        .map(|r| {
            let fixed = c_base.support().filter(|&j| b.get(r, j).is_odd()).count() % 2 == 1;
            fixed ^ b.get(r, r).is_odd()
        })
        .collect();
    let solutions = system.solve_affine(&rhs);
    if solutions.nullity() > MAX_EXTRAS {
        return Err(SchemeError::TooManyExtras {
            extras: k,
            max: MAX_EXTRAS,
        });
    }
    Ok(solutions.enumerate().into_iter().map(|x| c_base.concat(&x)).collect())
}

fn term_value(
    s: &SurgeryScheme,
    v: &dyn SpinInvariant,
    policy: ExtensionPolicy,
    subset: &[usize],
) -> Result<InvariantValue, SchemeError> {
    let b = s.full.principal_submatrix(&s.sublink_indices(subset));
    let presentation = |c: BitVector| SpinPresentation::from_parts_unchecked(b.clone(), c);
    match policy {
        ExtensionPolicy::Unique => {
            let mut ext = characteristic_extensions(s, subset)?;
            match ext.len() {
                0 => Err(SchemeError::NoExtension {
                    subset: subset.to_vec(),
                }),
                1 => Ok(v.evaluate(&presentation(ext.pop().unwrap()))),
                count => Err(SchemeError::AmbiguousExtension {
                    subset: subset.to_vec(),
                    count,
                }),
            }
        }
        ExtensionPolicy::AverageMod2 => {
            if v.value_group() != ValueGroup::IntegersMod2 {
                return Err(SchemeError::AverageNeedsMod2);
            }
            let ext = characteristic_extensions(s, subset)?;
            match ext.len() {
                0 => Err(SchemeError::NoExtension {
                    subset: subset.to_vec(),
                }),
                count if count % 2 == 0 => Err(SchemeError::EvenExtensionCount {
                    subset: subset.to_vec(),
                    count,
                }),
                _ => Ok(ext
                    .into_iter()
                    .map(|c| v.evaluate(&presentation(c)))
                    .fold(InvariantValue::zero(ValueGroup::IntegersMod2), |a, x| a + x)),
            }
        }
        ExtensionPolicy::Declared => {
            let declared = s.declared.as_ref().ok_or(SchemeError::MissingDeclaration)?;
            let n = s.base.len();
            let tail: BitVector = subset.iter().map(|&k| declared.get(k - n)).collect();
            let c = s.base.characteristic().concat(&tail);
            SpinPresentation::validate(b, c)
                .map(|p| v.evaluate(&p))
                .map_err(|_| SchemeError::NoExtension {
                    subset: subset.to_vec(),
                })
        }
    }
}

/// `Σ_T (-1)^|T| v(base ∪ T)` over all subsets `T` of the extras.
///
/// Terms are evaluated in parallel; when several subsets fail, the error of
/// the one with the smallest bitmask is reported.
pub fn vassiliev_sum(
    s: &SurgeryScheme,
    v: &dyn SpinInvariant,
    policy: ExtensionPolicy,
) -> Result<InvariantValue, SchemeError> {
    let m = s.extra_count();
    if m > MAX_EXTRAS {
        return Err(SchemeError::TooManyExtras {
            extras: m,
            max: MAX_EXTRAS,
        });
    }
    let extras: Vec<usize> = s.extras().collect();
    let terms: Vec<Result<InvariantValue, SchemeError>> = (0..1u64 << m)
        .into_par_iter()
        .map(|mask| {
            let subset: Vec<usize> = (0..m).filter(|&t| mask >> t & 1 == 1).map(|t| extras[t]).collect();
            let value = term_value(s, v, policy, &subset)?;
            Ok(if subset.len() % 2 == 1 { -value } else { value })
        })
        .collect();
    terms
        .into_iter()
        .try_fold(InvariantValue::zero(v.value_group()), |acc, t| Ok(acc + t?))
}

/// One alternating sum taken by the order tester.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderTerm {
    /// Position of the scheme in the tested list.
    pub scheme: usize,
    /// Absolute indices of the extras kept.
    pub extras: Vec<usize>,
    pub sum: InvariantValue,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderReport {
    pub order: usize,
    pub terms: Vec<OrderTerm>,
}

impl OrderReport {
    pub fn passed(&self) -> bool {
        self.terms.iter().all(|t| t.sum.is_zero())
    }

    pub fn failures(&self) -> impl Iterator<Item = &OrderTerm> {
        self.terms.iter().filter(|t| !t.sum.is_zero())
    }
}

/// Index subsets of `0..n` of size `k`, lexicographic.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Tests whether `v` has order at most `k`: every alternating sum over
/// `k + 1` extras of every scheme must vanish.
pub fn order_at_most(
    v: &dyn SpinInvariant,
    k: usize,
    schemes: &[SurgeryScheme],
    policy: ExtensionPolicy,
) -> Result<OrderReport, SchemeError> {
    let mut terms = Vec::new();
    for (index, s) in schemes.iter().enumerate() {
        let m = s.extra_count();
        if m < k + 1 {
            return Err(SchemeError::InsufficientExtras {
                scheme: index,
                extras: m,
                needed: k + 1,
            });
        }
        let extras: Vec<usize> = s.extras().collect();
        for combo in combinations(m, k + 1) {
            let keep: Vec<usize> = combo.iter().map(|&t| extras[t]).collect();
            let sum = vassiliev_sum(&s.restrict(&keep)?, v, policy)?;
            terms.push(OrderTerm {
                scheme: index,
                extras: keep,
                sum,
            });
        }
    }
    Ok(OrderReport { order: k, terms })
}

/// Order reports for `k = 0..=max_order`.
///
/// Order `k` is tested on the schemes with at least `k + 1` extras; the
/// profile stops at the first `k` no scheme can test. Term scheme indices
/// refer to positions in `schemes`.
pub fn order_profile(
    v: &dyn SpinInvariant,
    max_order: usize,
    schemes: &[SurgeryScheme],
    policy: ExtensionPolicy,
) -> Result<Vec<OrderReport>, SchemeError> {
    let mut reports = Vec::new();
    for k in 0..=max_order {
        let eligible: Vec<usize> = (0..schemes.len()).filter(|&i| schemes[i].extra_count() > k).collect();
        if eligible.is_empty() {
            break;
        }
        let subset: Vec<SurgeryScheme> = eligible.iter().map(|&i| schemes[i].clone()).collect();
        let mut report = order_at_most(v, k, &subset, policy)?;
        for t in &mut report.terms {
            t.scheme = eligible[t.scheme];
        }
        reports.push(report);
    }
    Ok(reports)
}

/// Least order that passes, if any.
pub fn least_passing_order(reports: &[OrderReport]) -> Option<usize> {
    reports.iter().find(|r| r.passed()).map(|r| r.order)
}
