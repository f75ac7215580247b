use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::field::Prime;
use crate::error::{Error, Result};

/// Dense row-major matrix with fixed dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix { rows: nrows, cols: ncols, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Submatrix on the given row and column index lists, in order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> =
                self.data[i * self.cols..(i + 1) * self.cols].iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

pub type IntMatrix = Matrix<BigInt>;

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| BigInt::from((i == j) as i64))
    }

    pub fn from_i64(m: &Matrix<i64>) -> Self {
        m.map(|&v| BigInt::from(v))
    }

    pub fn matmul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(BigInt::zero(), |acc, t| acc + self.get(i, t) * rhs.get(t, j))
        }))
    }
}

/// Rank and reduced-echelon kernel basis of a matrix over a prime field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankKernel {
    pub rank: usize,
    pub kernel_basis: Vec<Vec<u64>>,
}

/// Dense matrix over the prime field of order `modulus`, entries stored as canonical residues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    modulus: Prime,
    inner: Matrix<u64>,
}

impl FpMatrix {
    pub fn new(modulus: Prime, rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        let data = entries.iter().map(|&v| modulus.reduce(v)).collect();
        Ok(FpMatrix { modulus, inner: Matrix::new(rows, cols, data)? })
    }

    pub fn from_rows(modulus: Prime, rows: &[Vec<i64>]) -> Result<Self> {
        let reduced = rows.iter().map(|r| r.iter().map(|&v| modulus.reduce(v)).collect()).collect();
        Ok(FpMatrix { modulus, inner: Matrix::from_rows(reduced)? })
    }

    pub fn from_fn(modulus: Prime, rows: usize, cols: usize, f: impl Fn(usize, usize) -> i64) -> Self {
        FpMatrix { modulus, inner: Matrix::from_fn(rows, cols, |i, j| modulus.reduce(f(i, j))) }
    }

    /// Reduces an integer matrix modulo the prime.
    pub fn reduce(modulus: Prime, m: &Matrix<i64>) -> Self {
        FpMatrix { modulus, inner: m.map(|&v| modulus.reduce(v)) }
    }

    pub fn zeros(modulus: Prime, rows: usize, cols: usize) -> Self {
        FpMatrix { modulus, inner: Matrix::zeros(rows, cols) }
    }

    pub fn identity(modulus: Prime, n: usize) -> Self {
        Self::from_fn(modulus, n, n, |i, j| (i == j) as i64)
    }

    pub fn modulus(&self) -> Prime {
        self.modulus
    }

    pub fn rows(&self) -> usize {
        self.inner.rows()
    }

    pub fn cols(&self) -> usize {
        self.inner.cols()
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        *self.inner.get(i, j)
    }

    pub fn as_matrix(&self) -> &Matrix<u64> {
        &self.inner
    }

    pub fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    pub fn transpose(&self) -> Self {
        FpMatrix { modulus: self.modulus, inner: self.inner.transpose() }
    }

    pub fn matmul(&self, rhs: &FpMatrix) -> Result<FpMatrix> {
        if self.modulus != rhs.modulus || self.cols() != rhs.rows() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} (mod {}) times {}x{} (mod {})",
                self.rows(),
                self.cols(),
                self.modulus,
                rhs.rows(),
                rhs.cols(),
                rhs.modulus
            )));
        }
        let p = self.modulus;
        Ok(FpMatrix {
            modulus: p,
            inner: Matrix::from_fn(self.rows(), rhs.cols(), |i, j| {
                (0..self.cols()).fold(0, |acc, t| p.add(acc, p.mul(self.get(i, t), rhs.get(t, j))))
            }),
        })
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols(), "vector length must equal column count");
        let p = self.modulus;
        (0..self.rows())
            .map(|i| (0..self.cols()).fold(0, |acc, j| p.add(acc, p.mul(self.get(i, j), v[j]))))
            .collect()
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix<u64>, Vec<usize>) {
        let p = self.modulus;
        let mut m = self.inner.clone();
        let (rows, cols) = (m.rows(), m.cols());
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pivot_row) = (r..rows).find(|&i| *m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, pivot_row);
            let inv = p.inv(*m.get(r, c)).expect("pivot is nonzero");
            for j in c..cols {
                let v = p.mul(*m.get(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..rows {
                let factor = *m.get(i, c);
                if i == r || factor == 0 {
                    continue;
                }
                for j in c..cols {
                    let v = p.sub(*m.get(i, j), p.mul(factor, *m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Rank together with a kernel basis read off the reduced echelon form:
    /// one vector per free column, with a 1 in that column.
    pub fn rank_kernel(&self) -> RankKernel {
        let p = self.modulus;
        let (r, pivots) = self.rref();
        let cols = self.cols();
        let mut is_pivot = vec![false; cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let kernel_basis = (0..cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![0; cols];
                v[f] = 1;
                for (row, &c) in pivots.iter().enumerate() {
                    v[c] = p.neg(*r.get(row, f));
                }
                v
            })
            .collect();
        RankKernel { rank: pivots.len(), kernel_basis }
    }
}

impl fmt::Display for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.inner)
    }
}
