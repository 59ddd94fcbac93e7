//! Dense complex matrices and the antisymmetrized products everything
//! else is built from.
//!
//! Entries are stored row-major. The Kronecker convention is fixed:
//! the first factor is the slow index, `(A ⊗ B)[(i*rb + k, j*cb + l)] =
//! A[(i,j)] * B[(k,l)]`. Product-manifold code depends on this.

use num_complex::Complex64;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::ZERO; rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * c).collect(),
        }
    }

    pub fn scale_re(&self, c: f64) -> Self {
        self.scale(Complex64::new(c, 0.0))
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> Complex64 {
        debug_assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// max |M - M†|, zero for Hermitian matrices.
    pub fn hermiticity_defect(&self) -> f64 {
        (self - &self.adjoint()).max_abs()
    }

    /// Frobenius norm (unnormalized).
    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    fn check_same_dims(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: format!("{}x{}", self.rows, self.cols),
                got: format!("{}x{}", other.rows, other.cols),
            });
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

/// Kronecker product, first factor on the slow index.
pub fn kronecker(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let mut out = CMatrix::zeros(a.rows * b.rows, a.cols * b.cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let aij = a[(i, j)];
            if aij == Complex64::ZERO {
                continue;
            }
            for k in 0..b.rows {
                for l in 0..b.cols {
                    out[(i * b.rows + k, j * b.cols + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    &(a * b) - &(b * a)
}

pub fn anticommutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    &(a * b) + &(b * a)
}

fn permutation_sign(perm: &[usize]) -> f64 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1.0;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    // Heap's algorithm, iterative.
    let mut c = vec![0usize; k];
    out.push(cur.clone());
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                cur.swap(0, i);
            } else {
                cur.swap(c[i], i);
            }
            out.push(cur.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Totally antisymmetrized product over all k! orderings:
/// `sum_sigma sign(sigma) F_{sigma(1)} ... F_{sigma(k)}`.
pub fn k_commutator(matrices: &[&CMatrix]) -> Result<CMatrix> {
    let k = matrices.len();
    if k < 2 {
        return Err(Error::TooFewArguments(k));
    }
    let dim = matrices[0].rows;
    for m in matrices {
        if !m.is_square() || m.rows != dim {
            return Err(Error::DimensionMismatch {
                expected: format!("{dim}x{dim}"),
                got: format!("{}x{}", m.rows, m.cols),
            });
        }
    }
    let mut acc = CMatrix::zeros(dim, dim);
    for perm in permutations(k) {
        let sign = permutation_sign(&perm);
        let mut prod = matrices[perm[0]].clone();
        for &p in &perm[1..] {
            prod = &prod * matrices[p];
        }
        if sign > 0.0 {
            acc = &acc + &prod;
        } else {
            acc = &acc - &prod;
        }
    }
    Ok(acc)
}

/// 4-commutator via the six-term anticommutator resolution:
/// `{[F1,F2],[F3,F4]}+ - {[F1,F3],[F2,F4]}+ + {[F1,F4],[F2,F3]}+`.
///
/// Identical to [`k_commutator`] with four arguments but four times
/// cheaper; the 24-term sum is kept as the test oracle.
pub fn four_commutator(f1: &CMatrix, f2: &CMatrix, f3: &CMatrix, f4: &CMatrix) -> Result<CMatrix> {
    let dim = f1.rows;
    for m in [f1, f2, f3, f4] {
        if !m.is_square() || m.rows != dim {
            return Err(Error::DimensionMismatch {
                expected: format!("{dim}x{dim}"),
                got: format!("{}x{}", m.rows, m.cols),
            });
        }
    }
    let c12 = commutator(f1, f2);
    let c34 = commutator(f3, f4);
    let c13 = commutator(f1, f3);
    let c24 = commutator(f2, f4);
    let c14 = commutator(f1, f4);
    let c23 = commutator(f2, f3);
    let t1 = anticommutator(&c12, &c34);
    let t2 = anticommutator(&c13, &c24);
    let t3 = anticommutator(&c14, &c23);
    Ok(&(&t1 - &t2) + &t3)
}

/// Hilbert-Schmidt inner product `trace(A† B) / dim`, so `<1,1> = 1`.
pub fn hs_inner(a: &CMatrix, b: &CMatrix) -> Result<Complex64> {
    a.check_same_dims(b)?;
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: "square".into(),
            got: format!("{}x{}", a.rows, a.cols),
        });
    }
    let mut acc = Complex64::ZERO;
    for (x, y) in a.data.iter().zip(&b.data) {
        acc += x.conj() * y;
    }
    Ok(acc / a.rows as f64)
}

pub fn hs_norm(a: &CMatrix) -> f64 {
    (a.data.iter().map(|z| z.norm_sqr()).sum::<f64>() / a.rows as f64).sqrt()
}
