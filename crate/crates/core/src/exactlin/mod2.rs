//! Dense matrices over the field with two elements, packed into 64-bit words.

use num_bigint::BigUint;

use super::BitVector;

const WORD: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mod2Matrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl Mod2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(WORD);
        Self {
            rows,
            cols,
            words,
            data: vec![0; rows * words],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if f(r, c) {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols);
        (self.data[r * self.words + c / WORD] >> (c % WORD)) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols);
        let w = &mut self.data[r * self.words + c / WORD];
        let mask = 1u64 << (c % WORD);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.words..(r + 1) * self.words]
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        for k in 0..self.words {
            let v = self.data[src * self.words + k];
            self.data[dst * self.words + k] ^= v;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.words {
            self.data.swap(a * self.words + k, b * self.words + k);
        }
    }

    pub fn mul_vec(&self, x: &BitVector) -> BitVector {
        assert_eq!(x.len(), self.cols, "vector length must equal column count");
        let packed = pack(x, self.words);
        (0..self.rows)
            .map(|r| {
                self.row_words(r)
                    .iter()
                    .zip(&packed)
                    .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
                    & 1
                    == 1
            })
            .collect()
    }

    /// Rank over the field with two elements.
    pub fn rank(&self) -> usize {
        self.clone().eliminate().len()
    }

    /// Reduces in place to reduced row echelon form; returns pivot columns in row order.
    fn eliminate(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| self.get(r, col)) else {
                continue;
            };
            self.swap_rows(row, p);
            for r in 0..self.rows {
                if r != row && self.get(r, col) {
                    self.xor_row_into(row, r);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Solves `self * x = d` over the field with two elements.
    pub fn solve_affine(&self, d: &BitVector) -> Mod2AffineSolutionSet {
        assert_eq!(d.len(), self.rows, "right-hand side length must equal row count");
        // Augment with d as an extra column.
        let mut aug = Mod2Matrix::from_fn(self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self.get(r, c)
            } else {
                d.get(r)
            }
        });
        let pivots = aug.eliminate();
        let consistent = pivots.last() != Some(&self.cols);
        let pivots: Vec<usize> = pivots.into_iter().filter(|&c| c < self.cols).collect();

        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }

        let particular = consistent.then(|| {
            let mut x = BitVector::zeros(self.cols);
            for (r, &p) in pivots.iter().enumerate() {
                x.set(p, aug.get(r, self.cols));
            }
            x
        });

        let kernel_basis = (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = BitVector::zeros(self.cols);
                v.set(f, true);
                for (r, &p) in pivots.iter().enumerate() {
                    if aug.get(r, f) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect();

        Mod2AffineSolutionSet {
            dim: self.cols,
            particular,
            kernel_basis,
        }
    }
}

fn pack(x: &BitVector, words: usize) -> Vec<u64> {
    let mut out = vec![0u64; words];
    for i in x.support() {
        out[i / WORD] |= 1 << (i % WORD);
    }
    out
}

/// Solution set `particular + span(kernel_basis)` of a linear system mod 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mod2AffineSolutionSet {
    dim: usize,
    particular: Option<BitVector>,
    kernel_basis: Vec<BitVector>,
}

impl Mod2AffineSolutionSet {
    /// Length of each solution vector.
    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn particular(&self) -> Option<&BitVector> {
        self.particular.as_ref()
    }

    pub fn kernel_basis(&self) -> &[BitVector] {
        &self.kernel_basis
    }

    pub fn is_empty(&self) -> bool {
        self.particular.is_none()
    }

    /// Dimension of the kernel.
    pub fn nullity(&self) -> usize {
        self.kernel_basis.len()
    }

    pub fn count(&self) -> BigUint {
        match self.particular {
            Some(_) => BigUint::from(1u8) << self.nullity(),
            None => BigUint::default(),
        }
    }

    /// All solutions in lexicographic order.
    ///
    /// Panics when the nullity is at least `usize::BITS`; callers cap it first.
    pub fn enumerate(&self) -> Vec<BitVector> {
        let Some(p) = &self.particular else {
            return Vec::new();
        };
        let k = self.nullity();
        assert!(k < usize::BITS as usize, "solution set too large to enumerate");
        let mut out: Vec<BitVector> = (0..1usize << k)
            .map(|mask| {
                let mut x = p.clone();
                for (bit, v) in self.kernel_basis.iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        x.xor_assign(v);
                    }
                }
                x
            })
            .collect();
        out.sort();
        out
    }
}
