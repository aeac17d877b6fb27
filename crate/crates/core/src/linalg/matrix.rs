use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense row-major matrix over an exact ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<BigInt>;
pub type RatMatrix = Matrix<BigRational>;

impl<T> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries supplied for a {}x{} matrix",
                data.len(),
                rows,
                cols
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

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }
}

impl<T: Clone> Matrix<T> {
    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    /// Rows `r0..r1` and columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Matrix::from_fn(r1 - r0, c1 - c0, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Matrix::from_fn(self.rows, cols.len(), |i, j| self[(i, cols[j])].clone())
    }

    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot place {} rows beside {} rows",
                self.rows, other.rows
            )));
        }
        Ok(Matrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        }))
    }

    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Self {
        Matrix::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn block_diagonal(blocks: &[Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(r + i, c + j)] = b[(i, j)].clone();
                }
            }
            r += b.rows;
            c += b.cols;
        }
        out
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let n = entries.len();
        Matrix::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { T::zero() })
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + One + Neg<Output = T>,
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| c * x)
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    pub fn is_symmetric(&self) -> bool
    where
        T: PartialEq,
    {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Antisymmetric with a zero diagonal.
    pub fn is_alternating(&self) -> bool
    where
        T: PartialEq,
    {
        self.is_square()
            && (0..self.rows).all(|i| {
                self[(i, i)].is_zero() && (0..i).all(|j| self[(i, j)] == -self[(j, i)].clone())
            })
    }

    /// `selfᵀ · middle · self`.
    pub fn congruence(&self, middle: &Self) -> Self {
        &(&self.transpose() * middle) * self
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<'a, T> Mul<&'a Matrix<T>> for &'a Matrix<T>
where
    T: Clone + Zero,
    for<'b> &'b T: Add<&'b T, Output = T> + Mul<&'b T, Output = T>,
{
    type Output = Matrix<T>;

    fn mul(self, rhs: &'a Matrix<T>) -> Matrix<T> {
        assert_eq!(
            self.cols, rhs.rows,
            "matrix product of {}x{} by {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut data = Vec::with_capacity(self.rows * rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = T::zero();
                for k in 0..self.cols {
                    if self[(i, k)].is_zero() {
                        continue;
                    }
                    acc = &acc + &(&self[(i, k)] * &rhs[(k, j)]);
                }
                data.push(acc);
            }
        }
        Matrix { rows: self.rows, cols: rhs.cols, data }
    }
}

impl<'a, T> Add<&'a Matrix<T>> for &'a Matrix<T>
where
    for<'b> &'b T: Add<&'b T, Output = T>,
{
    type Output = Matrix<T>;

    fn add(self, rhs: &'a Matrix<T>) -> Matrix<T> {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols);
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a, T> Sub<&'a Matrix<T>> for &'a Matrix<T>
where
    for<'b> &'b T: Sub<&'b T, Output = T>,
{
    type Output = Matrix<T>;

    fn sub(self, rhs: &'a Matrix<T>) -> Matrix<T> {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols);
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<T: Clone + Neg<Output = T>> Neg for &Matrix<T> {
    type Output = Matrix<T>;

    fn neg(self) -> Matrix<T> {
        self.map(|x| -x.clone())
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Result<Self> {
        Matrix::new(rows, cols, data.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Convenience constructor for literals; panics on ragged input.
    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix literal");
        Matrix::from_fn(rows.len(), cols, |i, j| BigInt::from(rows[i][j]))
    }

    pub fn to_rational(&self) -> RatMatrix {
        self.map(|x| BigRational::from_integer(x.clone()))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(p) => {
                        a.swap_rows(k, p);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    pub fn rank(&self) -> usize {
        self.to_rational().rank()
    }

    /// Content (gcd of all entries); zero for the zero matrix.
    pub fn content(&self) -> BigInt {
        self.data.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }
}

impl RatMatrix {
    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Result<Self> {
        Matrix::new(
            rows,
            cols,
            data.iter().map(|&x| BigRational::from_integer(x.into())).collect(),
        )
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn to_integer(&self) -> Option<IntMatrix> {
        if self.is_integral() {
            Some(self.map(|x| x.to_integer()))
        } else {
            None
        }
    }

    /// Row-reduced echelon form together with the pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(r, p);
            let inv = a[(r, c)].recip();
            for j in c..a.cols {
                a[(r, j)] = &a[(r, j)] * &inv;
            }
            for i in 0..a.rows {
                if i != r && !a[(i, c)].is_zero() {
                    let f = a[(i, c)].clone();
                    for j in c..a.cols {
                        let v = &a[(i, j)] - &(&f * &a[(r, j)]);
                        a[(i, j)] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn det(&self) -> BigRational {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = BigRational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[(i, c)].is_zero()) else {
                return BigRational::zero();
            };
            if p != c {
                a.swap_rows(c, p);
                det = -det;
            }
            det *= a[(c, c)].clone();
            let inv = a[(c, c)].recip();
            for i in c + 1..n {
                if a[(i, c)].is_zero() {
                    continue;
                }
                let f = &a[(i, c)] * &inv;
                for j in c..n {
                    let v = &a[(i, j)] - &(&f * &a[(c, j)]);
                    a[(i, j)] = v;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = self.hstack(&RatMatrix::identity(n)).ok()?;
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.submatrix(0, n, n, 2 * n))
    }

    pub fn abs_max(&self) -> BigRational {
        self.data
            .iter()
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(BigRational::zero)
    }
}

/// Inverse of a matrix with determinant ±1, as an integer matrix.
pub fn unimodular_inverse(u: &IntMatrix) -> Option<IntMatrix> {
    if !u.is_square() || !u.det().abs().is_one() {
        return None;
    }
    u.to_rational().inverse()?.to_integer()
}
