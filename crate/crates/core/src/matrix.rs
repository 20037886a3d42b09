//! Small dense row-major matrix generic over the scalar backend.

use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    /// Builds from nested rows; panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
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

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b.clone()).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, k: &S) -> Self {
        self.map(|x| x.clone() * k.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j].add_mul_assign(a, &other[(k, j)]);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = S::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    acc.add_mul_assign(a, x);
                }
                acc
            })
            .collect()
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        Self::from_fn(r, c, |i, j| {
            let a = &self[(i / other.rows, j / other.cols)];
            if a.is_zero() {
                S::zero()
            } else {
                a.clone() * other[(i % other.rows, j % other.cols)].clone()
            }
        })
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Largest absolute entry, as a float.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.abs().to_f64()).fold(0.0, f64::max)
    }

    /// Index of the pivot row for column `col` among rows `from..`.
    fn pivot_row(&self, col: usize, from: usize) -> Option<usize> {
        if S::EXACT {
            (from..self.rows).find(|&r| !self[(r, col)].is_zero())
        } else {
            (from..self.rows)
                .map(|r| (r, self[(r, col)].abs()))
                .filter(|(_, a)| !a.is_zero())
                .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal))
                .map(|(r, _)| r)
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// `row[target] -= factor * row[source]` over columns `from..`.
    fn eliminate(&mut self, target: usize, source: usize, factor: &S, from: usize) {
        let cols = self.cols;
        let (t, s) = (target * cols, source * cols);
        for j in from..cols {
            let (src, dst) = if s < t {
                let (lo, hi) = self.data.split_at_mut(t);
                (&lo[s + j], &mut hi[j])
            } else {
                let (lo, hi) = self.data.split_at_mut(s);
                (&hi[j], &mut lo[t + j])
            };
            dst.sub_mul_assign(factor, src);
        }
    }

    /// Reduces `[self | rhs]` so that the left block becomes the identity;
    /// returns the transformed right block.
    fn gauss_jordan(mut self, rhs: Self) -> Result<Self> {
        let n = self.rows;
        if !self.is_square() {
            return Err(Error::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        if rhs.rows != n {
            return Err(Error::DimensionMismatch { expected: n, found: rhs.rows });
        }
        let width = n + rhs.cols;
        let mut aug = Self::from_fn(n, width, |i, j| {
            if j < n {
                std::mem::replace(&mut self.data[i * n + j], S::zero())
            } else {
                rhs[(i, j - n)].clone()
            }
        });
        for col in 0..n {
            let p = aug.pivot_row(col, col).ok_or(Error::Singular)?;
            aug.swap_rows(col, p);
            let inv = S::one() / aug[(col, col)].clone();
            for j in col..width {
                let v = aug[(col, j)].clone() * inv.clone();
                aug[(col, j)] = v;
            }
            for r in 0..n {
                if r == col || aug[(r, col)].is_zero() {
                    continue;
                }
                let factor = aug[(r, col)].clone();
                aug.eliminate(r, col, &factor, col);
            }
        }
        Ok(Self::from_fn(n, rhs.cols, |i, j| aug[(i, n + j)].clone()))
    }

    /// Inverse by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        self.clone().gauss_jordan(Self::identity(self.rows))
    }

    /// Solves `self · x = b`.
    pub fn solve(&self, b: &[S]) -> Result<Vec<S>> {
        let rhs = Matrix { rows: b.len(), cols: 1, data: b.to_vec() };
        Ok(self.clone().gauss_jordan(rhs)?.data)
    }

    /// Rank by row reduction (exact under the rational backend).
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(p) = m.pivot_row(col, rank) else { continue };
            m.swap_rows(rank, p);
            let pivot = m[(rank, col)].clone();
            for r in rank + 1..m.rows {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone() / pivot.clone();
                m.eliminate(r, rank, &factor, col);
            }
            rank += 1;
        }
        rank
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;

    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

impl Matrix<f64> {
    pub(crate) fn to_nalgebra(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }

    pub(crate) fn from_nalgebra(m: &nalgebra::DMatrix<f64>) -> Self {
        Self::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
    }
}

/// Exact inverse by fraction-free Gauss–Jordan over the integers after
/// clearing denominators. Every intermediate division is exact, so no gcds
/// are taken until the final entries are formed.
pub(crate) fn rational_inverse(m: &Matrix<Rational>) -> Result<Matrix<Rational>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch { expected: m.rows, found: m.cols });
    }
    let n = m.rows;
    let width = 2 * n;
    let scale = m.data.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut a = vec![BigInt::zero(); n * width];
    for i in 0..n {
        for j in 0..n {
            a[i * width + j] = (&m[(i, j)] * &scale).to_integer();
        }
        a[i * width + n + i] = BigInt::one();
    }
    let mut prev = BigInt::one();
    for k in 0..n {
        let p = (k..n).find(|&r| !a[r * width + k].is_zero()).ok_or(Error::Singular)?;
        if p != k {
            for j in 0..width {
                a.swap(k * width + j, p * width + j);
            }
        }
        let pivot_row = a[k * width..(k + 1) * width].to_vec();
        let pk = pivot_row[k].clone();
        for i in (0..n).filter(|&i| i != k) {
            let row = &mut a[i * width..(i + 1) * width];
            let f = std::mem::take(&mut row[k]);
            for j in 0..width {
                if j == k || (row[j].is_zero() && pivot_row[j].is_zero()) {
                    continue;
                }
                let mut v = &pk * &row[j];
                if !f.is_zero() {
                    v -= &f * &pivot_row[j];
                }
                row[j] = v / &prev;
            }
        }
        prev = pk;
    }
    // the left block is now `prev · I`
    Ok(Matrix::from_fn(n, n, |i, j| Rational::new(&scale * &a[i * width + n + j], prev.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn fraction_free_inverse_matches_gauss_jordan() {
        let mut seed = 7u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) % 19) as i64 - 9
        };
        for n in 1..7 {
            let m = Matrix::from_fn(n, n, |_, _| q(next(), next().abs() + 1));
            match m.inverse() {
                Ok(inv) => assert_eq!(rational_inverse(&m).unwrap(), inv),
                Err(e) => assert_eq!(rational_inverse(&m), Err(e)),
            }
        }
        let m = Matrix::from_rows(vec![vec![q(0, 1), q(1, 2)], vec![q(3, 1), q(0, 1)]]);
        assert_eq!(rational_inverse(&m).unwrap(), m.inverse().unwrap());
    }

    #[test]
    fn exact_inverse_round_trips() {
        let m = Matrix::from_rows(vec![
            vec![q(0, 1), q(2, 1), q(1, 1)],
            vec![q(1, 1), q(1, 3), q(0, 1)],
            vec![q(4, 1), q(0, 1), q(1, 2)],
        ]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(3));
    }

    #[test]
    fn singular_matrix_is_reported() {
        let m = Matrix::from_rows(vec![vec![1.0, 2.0], vec![2.0, 4.0]]);
        assert_eq!(m.inverse(), Err(Error::Singular));
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let a = Matrix::<f64>::identity(2);
        let b = Matrix::<f64>::identity(3);
        assert_eq!(a.kron(&b), Matrix::identity(6));
    }

    #[test]
    fn kron_block_layout() {
        let a = Matrix::from_rows(vec![vec![1.0, 2.0], vec![3.0, 4.0]]);
        let b = Matrix::from_rows(vec![vec![0.0, 1.0], vec![1.0, 0.0]]);
        let k = a.kron(&b);
        assert_eq!(k.row(0), &[0.0, 1.0, 0.0, 2.0]);
        assert_eq!(k.row(3), &[3.0, 0.0, 4.0, 0.0]);
    }

    #[test]
    fn solve_matches_inverse() {
        let m = Matrix::from_rows(vec![vec![q(2, 1), q(1, 1)], vec![q(1, 1), q(3, 1)]]);
        let x = m.solve(&[q(1, 1), q(2, 1)]).unwrap();
        assert_eq!(x, vec![q(1, 5), q(3, 5)]);
    }
}
