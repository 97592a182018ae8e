#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use spinsurgery::exactlin::{BitVector, IntMatrix, IntSymMatrix};
use spinsurgery::presentation::characteristic_vectors;
use spinsurgery::SpinPresentation;

pub fn sym_from_upper(n: usize, upper: &[i64]) -> IntSymMatrix {
    let mut it = upper.iter();
    IntSymMatrix::from_upper_fn(n, |_, _| BigInt::from(*it.next().unwrap()))
}

/// Symmetric integer matrices of size `0..=max_n` with entries in `[-bound, bound]`.
pub fn sym_matrix(max_n: usize, bound: i64) -> impl Strategy<Value = IntSymMatrix> {
    (0..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(-bound..=bound, n * (n + 1) / 2).prop_map(move |u| sym_from_upper(n, &u))
    })
}

/// Elementary row operations composed into a unimodular matrix.
#[derive(Clone, Debug)]
pub enum Elementary {
    AddMultiple { from: usize, to: usize, k: i64 },
    Swap(usize, usize),
    Negate(usize),
}

pub fn unimodular(n: usize, ops: &[Elementary]) -> IntMatrix {
    let mut p = IntMatrix::identity(n);
    if n == 0 {
        return p;
    }
    for op in ops {
        let mut e = IntMatrix::identity(n);
        match *op {
            Elementary::AddMultiple { from, to, k } => {
                let (from, to) = (from % n, to % n);
                if from != to {
                    e.set(to, from, BigInt::from(k));
                }
            }
            Elementary::Swap(a, b) => {
                let (a, b) = (a % n, b % n);
                if a != b {
                    e.set(a, a, BigInt::zero());
                    e.set(b, b, BigInt::zero());
                    e.set(a, b, BigInt::one());
                    e.set(b, a, BigInt::one());
                }
            }
            Elementary::Negate(a) => e.set(a % n, a % n, -BigInt::one()),
        }
        p = p.mul(&e);
    }
    p
}

pub fn elementary() -> impl Strategy<Value = Elementary> {
    prop_oneof![
        (0..8usize, 0..8usize, -2..=2i64).prop_map(|(from, to, k)| Elementary::AddMultiple { from, to, k }),
        (0..8usize, 0..8usize).prop_map(|(a, b)| Elementary::Swap(a, b)),
        (0..8usize).prop_map(Elementary::Negate),
    ]
}

/// Every 0/1 vector of length `n`, lexicographic.
pub fn all_bit_vectors(n: usize) -> Vec<BitVector> {
    (0..1u32 << n)
        .map(|mask| (0..n).map(|i| mask >> (n - 1 - i) & 1 == 1).collect())
        .collect()
}

/// Brute-force characteristic test, written from the definition.
pub fn is_characteristic_brute(b: &IntSymMatrix, c: &BitVector) -> bool {
    (0..b.dim()).all(|i| {
        let lhs: BigInt = (0..b.dim()).filter(|&j| c.get(j)).map(|j| b.get(i, j).clone()).sum();
        let diff: BigInt = lhs - b.get(i, i);
        diff.is_even()
    })
}

/// Presentation with the lexicographically first spin structure of `b`.
pub fn first_spin(b: IntSymMatrix) -> SpinPresentation {
    let c = characteristic_vectors(&b).as_list().unwrap()[0].clone();
    SpinPresentation::validate(b, c).unwrap()
}

/// Characteristic polynomial `det(xI - B)` by Faddeev–LeVerrier, ascending coefficients.
pub fn charpoly(b: &IntSymMatrix) -> Vec<BigRational> {
    let n = b.dim();
    let a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| BigRational::from_integer(b.get(i, j).clone())).collect())
        .collect();
    let matmul = |x: &Vec<Vec<BigRational>>, y: &Vec<Vec<BigRational>>| -> Vec<Vec<BigRational>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(BigRational::zero(), |acc, k| acc + &x[i][k] * &y[k][j]))
                    .collect()
            })
            .collect()
    };
    // coeffs[n] = 1; M_0 = 0; M_k = A M_{k-1} + c_{n-k+1} I; c_{n-k} = -tr(A M_k)/k.
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        let mut next = matmul(&a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        m = next;
        let am = matmul(&a, &m);
        let trace = (0..n).fold(BigRational::zero(), |acc, i| acc + &am[i][i]);
        coeffs[n - k] = -trace / BigRational::from_integer(BigInt::from(k as i64));
    }
    coeffs
}

fn sign_changes(coeffs: &[BigRational]) -> usize {
    let signs: Vec<bool> = coeffs
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| c.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// `(positive, negative)` eigenvalue counts via Descartes' rule, exact for real-rooted polynomials.
pub fn descartes_inertia(b: &IntSymMatrix) -> (usize, usize) {
    let p = charpoly(b);
    let flipped: Vec<BigRational> = p
        .iter()
        .enumerate()
        .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
        .collect();
    (sign_changes(&p), sign_changes(&flipped))
}

/// Determinant by the Leibniz permutation expansion.
pub fn leibniz_det(m: &IntMatrix) -> BigInt {
    fn permute(k: usize, perm: &mut Vec<usize>, used: &mut Vec<bool>, sign: i64, m: &IntMatrix, acc: &mut BigInt) {
        let n = m.dim();
        if k == n {
            let prod = (0..n).fold(BigInt::one(), |p, i| p * m.get(i, perm[i]));
            *acc += prod * sign;
            return;
        }
        for j in 0..n {
            if used[j] {
                continue;
            }
            // Sign flips by the number of unused indices before j.
            let inversions = (0..j).filter(|&x| !used[x]).count();
            used[j] = true;
            perm.push(j);
            let s = if inversions % 2 == 1 { -sign } else { sign };
            permute(k + 1, perm, used, s, m, acc);
            perm.pop();
            used[j] = false;
        }
    }
    let mut acc = BigInt::zero();
    permute(0, &mut Vec::new(), &mut vec![false; m.dim()], 1, m, &mut acc);
    acc
}
