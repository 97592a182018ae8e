//! Integer matrices with arbitrary-precision entries.
//!
//! Symmetric forms are diagonalized by congruence over the rationals; the
//! determinant uses fraction-free (Bareiss) elimination over the integers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::{BitVector, Mod2Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("row {row} has {found} entries, expected {expected}")]
    Ragged { row: usize, expected: usize, found: usize },
    #[error("matrix is not symmetric: entry ({row},{col}) differs from ({col},{row})")]
    NotSymmetric { row: usize, col: usize },
}

/// Square integer matrix, not necessarily symmetric.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            entries: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self, MatrixError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(MatrixError::Ragged {
                    row: r,
                    expected: n,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Self { n, entries })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self, MatrixError> {
        Self::from_rows(to_big_rows(rows))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.n + j] = v;
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut t = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                t.entries[j * n + i] = self.entries[i * n + j].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * &other.entries[k * n + j];
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n);
        Self {
            n: self.n,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn det(&self) -> BigInt {
        bareiss_det(self.n, self.entries.clone())
    }

    /// `selfᵀ · b · self`.
    pub fn congruence(&self, b: &IntSymMatrix) -> IntSymMatrix {
        assert_eq!(self.n, b.n);
        let prod = self.transpose().mul(&b.as_int_matrix()).mul(self);
        IntSymMatrix {
            n: prod.n,
            entries: prod.entries,
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        self.entries
            .chunks(self.n.max(1))
            .take(self.n)
            .map(<[_]>::to_vec)
            .collect()
    }
}

/// Symmetric integer matrix: a linking matrix or an intersection form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntSymMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

/// Counts of positive, negative and zero directions of a symmetric form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub nullity: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }

    pub fn rank(&self) -> usize {
        self.positive + self.negative
    }
}

impl IntSymMatrix {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            entries: vec![BigInt::zero(); n * n],
        }
    }

    pub fn diagonal(values: &[i64]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n);
        for (i, &v) in values.iter().enumerate() {
            m.entries[i * n + i] = BigInt::from(v);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self, MatrixError> {
        let m = IntMatrix::from_rows(rows)?;
        let n = m.n;
        for i in 0..n {
            for j in i + 1..n {
                if m.get(i, j) != m.get(j, i) {
                    return Err(MatrixError::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(Self { n, entries: m.entries })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self, MatrixError> {
        Self::from_rows(to_big_rows(rows))
    }

    /// Builds a symmetric matrix from the upper triangle produced by `f(i, j)` for `i <= j`.
    pub fn from_upper_fn(n: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                m.entries[j * n + i] = v.clone();
                m.entries[i * n + j] = v;
            }
        }
        m
    }

    /// Cartan matrix of E8: even, unimodular and positive definite.
    pub fn e8() -> Self {
        // Chain 0-1-2-3-4-5-6 with node 7 attached to node 4.
        const EDGES: [(usize, usize); 7] = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)];
        let mut m = Self::zeros(8);
        for i in 0..8 {
            m.entries[i * 8 + i] = BigInt::from(2);
        }
        for (a, b) in EDGES {
            m.entries[a * 8 + b] = BigInt::from(-1);
            m.entries[b * 8 + a] = BigInt::from(-1);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    /// Sets entries `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[j * self.n + i] = v.clone();
        self.entries[i * self.n + j] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.n)
            .map(|i| self.entries[i * self.n..(i + 1) * self.n].to_vec())
            .collect()
    }

    pub fn as_int_matrix(&self) -> IntMatrix {
        IntMatrix {
            n: self.n,
            entries: self.entries.clone(),
        }
    }

    pub fn principal_submatrix(&self, indices: &[usize]) -> Self {
        let k = indices.len();
        let mut m = Self::zeros(k);
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                m.entries[a * k + b] = self.get(i, j).clone();
            }
        }
        m
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn block_sum(&self, other: &IntSymMatrix) -> Self {
        let n = self.n + other.n;
        let mut m = Self::zeros(n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.entries[i * n + j] = self.get(i, j).clone();
            }
        }
        for i in 0..other.n {
            for j in 0..other.n {
                m.entries[(self.n + i) * n + self.n + j] = other.get(i, j).clone();
            }
        }
        m
    }

    /// Removes row and column `k`.
    pub fn remove(&self, k: usize) -> Self {
        let keep: Vec<usize> = (0..self.n).filter(|&i| i != k).collect();
        self.principal_submatrix(&keep)
    }

    pub fn mod2(&self) -> Mod2Matrix {
        Mod2Matrix::from_fn(self.n, self.n, |i, j| self.get(i, j).is_odd())
    }

    pub fn diagonal_mod2(&self) -> BitVector {
        (0..self.n).map(|i| self.get(i, i).is_odd()).collect()
    }

    /// `cᵀ · self · c` for a 0/1 vector `c`.
    pub fn quadratic_form(&self, c: &BitVector) -> BigInt {
        assert_eq!(c.len(), self.n);
        let support: Vec<usize> = c.support().collect();
        let mut total = BigInt::zero();
        for &i in &support {
            for &j in &support {
                total += self.get(i, j);
            }
        }
        total
    }

    pub fn det(&self) -> BigInt {
        bareiss_det(self.n, self.entries.clone())
    }

    pub fn inertia(&self) -> Inertia {
        congruence_inertia(self)
    }

    pub fn signature(&self) -> i64 {
        self.inertia().signature()
    }

    pub fn rank_q(&self) -> usize {
        self.inertia().rank()
    }
}

impl fmt::Display for IntSymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.n {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.n {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

fn to_big_rows(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| r.iter().copied().map(BigInt::from).collect())
        .collect()
}

fn bareiss_det(n: usize, mut a: Vec<BigInt>) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                return BigInt::zero();
            };
            for c in 0..n {
                a.swap(k * n + c, p * n + c);
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                // Exact by Sylvester's identity.
                a[i * n + j] = v / &prev;
            }
        }
        prev = a[k * n + k].clone();
    }
    sign * &a[n * n - 1]
}

fn congruence_inertia(b: &IntSymMatrix) -> Inertia {
    let mut live: Vec<usize> = (0..b.n).collect();
    let mut a: Vec<Vec<BigRational>> = b
        .to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(BigRational::from_integer).collect())
        .collect();
    let mut inertia = Inertia {
        positive: 0,
        negative: 0,
        nullity: 0,
    };

    while !live.is_empty() {
        if let Some(pos) = live.iter().position(|&i| !a[i][i].is_zero()) {
            let p = live.swap_remove(pos);
            let pivot = a[p][p].clone();
            if pivot.is_positive() {
                inertia.positive += 1;
            } else {
                inertia.negative += 1;
            }
            for &i in &live {
                if a[i][p].is_zero() {
                    continue;
                }
                let factor = &a[i][p] / &pivot;
                for &j in &live {
                    let delta = &factor * &a[p][j];
                    a[i][j] -= delta;
                }
            }
            continue;
        }

        // Every remaining diagonal entry vanishes; look for a hyperbolic pair.
        let pair = live
            .iter()
            .enumerate()
            .find_map(|(x, &i)| live[x + 1..].iter().find(|&&j| !a[i][j].is_zero()).map(|&j| (i, j)));
        let Some((p, q)) = pair else {
            inertia.nullity += live.len();
            break;
        };
        live.retain(|&k| k != p && k != q);
        inertia.positive += 1;
        inertia.negative += 1;
        // Schur complement of the block [[0, h], [h, 0]] whose inverse is [[0, 1/h], [1/h, 0]].
        let h_inv = a[p][q].recip();
        let snapshot: Vec<(usize, BigRational, BigRational)> =
            live.iter().map(|&i| (i, a[i][p].clone(), a[i][q].clone())).collect();
        for (i, aip, aiq) in &snapshot {
            for (j, ajp, ajq) in &snapshot {
                let delta = (aip * ajq + aiq * ajp) * &h_inv;
                a[*i][*j] -= delta;
            }
        }
    }
    inertia
}
