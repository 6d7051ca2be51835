//! Dense exact linear algebra over a field, with fraction-free (Bareiss)
//! elimination for ranks, kernels and determinants.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rational::{ComplexRational, Rational};

/// Exact field scalar.
pub trait Field: Clone + PartialEq + Debug + Zero + One + Neg<Output = Self>
where
    for<'a> &'a Self: Add<&'a Self, Output = Self>
        + Sub<&'a Self, Output = Self>
        + Mul<&'a Self, Output = Self>,
{
    fn div_exact(&self, other: &Self) -> Self;

    /// Rough size of the exact representation, used to pick cheap pivots.
    fn height(&self) -> u64;
}

impl Field for Rational {
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }

    fn height(&self) -> u64 {
        self.numer().bits() + self.denom().bits()
    }
}

impl Field for ComplexRational {
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }

    fn height(&self) -> u64 {
        // a non-real pivot spreads denominators `a² + b²` through the row
        let im = if self.im.is_zero() { 0 } else { 64 + self.im.height() };
        self.re.height() + im
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<F>,
}

impl<F: Field> Matrix<F>
where
    for<'a> &'a F: Add<&'a F, Output = F> + Sub<&'a F, Output = F> + Mul<&'a F, Output = F>,
{
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_cols(rows: usize, cols: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m.data[i * m.cols + j] = v.clone();
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &F) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Fraction-free row echelon form in place; returns the pivot columns.
    ///
    /// Each update is `a[i][j] = (p·a[i][j] − a[i][c]·a[r][j]) / prev`, where
    /// `p` is the current pivot and `prev` the previous one.
    pub fn bareiss_echelon(&mut self) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut prev = F::one();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let pivot = self.get(r, c).clone();
            for i in r + 1..rows {
                let lead = self.get(i, c).clone();
                for j in c + 1..cols {
                    let a = self.get(i, j);
                    let b = self.get(r, j);
                    let num = if lead.is_zero() {
                        &pivot * a
                    } else {
                        &(&pivot * a) - &(&lead * b)
                    };
                    let v = num.div_exact(&prev);
                    self.set(i, j, v);
                }
                self.set(i, c, F::zero());
            }
            prev = pivot;
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().bareiss_echelon().len()
    }

    /// Basis of the right kernel `{x : A x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let mut m = self.clone();
        let pivots = m.bareiss_echelon();
        let cols = m.cols;
        let mut is_pivot = vec![false; cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..cols).filter(|&c| !is_pivot[c]) {
            let mut x = vec![F::zero(); cols];
            x[free] = F::one();
            for (k, &pc) in pivots.iter().enumerate().rev() {
                let mut acc = F::zero();
                for j in pc + 1..cols {
                    let a = m.get(k, j);
                    if !a.is_zero() && !x[j].is_zero() {
                        acc = &acc + &(a * &x[j]);
                    }
                }
                x[pc] = (-acc).div_exact(m.get(k, pc));
            }
            basis.push(x);
        }
        basis
    }

    /// Exact determinant via Bareiss: the last pivot of the fraction-free
    /// elimination, with the sign of the row permutation.
    pub fn determinant(&self) -> F {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return F::one();
        }
        let mut m = self.clone();
        let mut sign = F::one();
        let mut prev = F::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return F::zero();
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                sign = -sign;
            }
            let pivot = m.get(c, c).clone();
            for i in c + 1..n {
                let lead = m.get(i, c).clone();
                for j in c + 1..n {
                    let num = &(&pivot * m.get(i, j)) - &(&lead * m.get(c, j));
                    m.set(i, j, num.div_exact(&prev));
                }
                m.set(i, c, F::zero());
            }
            prev = pivot;
        }
        &sign * m.get(n - 1, n - 1)
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, F::one());
        }
        // Gauss-Jordan
        for c in 0..n {
            let p = (c..n).find(|&i| !aug.get(i, c).is_zero())?;
            if p != c {
                for j in 0..2 * n {
                    aug.data.swap(p * 2 * n + j, c * 2 * n + j);
                }
            }
            let inv = F::one().div_exact(aug.get(c, c));
            for j in 0..2 * n {
                let v = aug.get(c, j) * &inv;
                aug.set(c, j, v);
            }
            for i in 0..n {
                if i == c || aug.get(i, c).is_zero() {
                    continue;
                }
                let f = aug.get(i, c).clone();
                for j in 0..2 * n {
                    let v = aug.get(i, j) - &(&f * aug.get(c, j));
                    aug.set(i, j, v);
                }
            }
        }
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Some(out)
    }

    /// Leading principal minors `det A[0..k, 0..k]` for `k = 1..=n`.
    pub fn leading_principal_minors(&self) -> Vec<F> {
        (1..=self.rows.min(self.cols))
            .map(|k| {
                let mut sub = Self::zeros(k, k);
                for i in 0..k {
                    for j in 0..k {
                        sub.set(i, j, self.get(i, j).clone());
                    }
                }
                sub.determinant()
            })
            .collect()
    }
}

/// Rank of a family of vectors of common length `dim`.
pub fn span_rank<F: Field>(dim: usize, vectors: &[Vec<F>]) -> usize
where
    for<'a> &'a F: Add<&'a F, Output = F> + Sub<&'a F, Output = F> + Mul<&'a F, Output = F>,
{
    if vectors.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<F>> = vectors.to_vec();
    debug_assert!(rows.iter().all(|r| r.len() == dim));
    Matrix::from_rows(rows).rank()
}

/// Extracts a maximal linearly independent subfamily (greedy, order preserving).
pub fn independent_subset<F: Field>(vectors: &[Vec<F>]) -> Vec<usize>
where
    for<'a> &'a F: Add<&'a F, Output = F> + Sub<&'a F, Output = F> + Mul<&'a F, Output = F>,
{
    if vectors.is_empty() {
        return Vec::new();
    }
    // columns = vectors; pivot columns of the echelon form are independent
    let dim = vectors[0].len();
    let mut m = Matrix::from_cols(dim, vectors);
    m.bareiss_echelon()
}

/// Kernel of the matrix whose rows are streamed in, over a field. Rows are
/// reduced incrementally against a reduced echelon form; the stream stops
/// being consumed once the rank reaches `ncols`.
pub fn kernel_of_rows<F: Field, I: IntoIterator<Item = Vec<F>>>(ncols: usize, rows: I) -> Vec<Vec<F>>
where
    for<'a> &'a F: Add<&'a F, Output = F> + Sub<&'a F, Output = F> + Mul<&'a F, Output = F>,
{
    // (pivot column, row normalized to 1 at the pivot)
    let mut echelon: Vec<(usize, Vec<F>)> = Vec::new();
    for mut row in rows {
        if echelon.len() == ncols {
            break;
        }
        debug_assert_eq!(row.len(), ncols);
        for (p, r) in &echelon {
            if row[*p].is_zero() {
                continue;
            }
            let c = row[*p].clone();
            for (x, y) in row.iter_mut().zip(r) {
                if !y.is_zero() {
                    *x = &*x - &(&c * y);
                }
            }
        }
        let Some(p) = (0..ncols).filter(|&c| !row[c].is_zero()).min_by_key(|&c| row[c].height()) else { continue };
        let inv = row[p].clone();
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x = x.div_exact(&inv);
            }
        }
        for (_, r) in echelon.iter_mut() {
            if r[p].is_zero() {
                continue;
            }
            let c = r[p].clone();
            for (x, y) in r.iter_mut().zip(&row) {
                if !y.is_zero() {
                    *x = &*x - &(&c * y);
                }
            }
        }
        echelon.push((p, row));
    }
    let mut is_pivot = vec![false; ncols];
    for (p, _) in &echelon {
        is_pivot[*p] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut x = vec![F::zero(); ncols];
            x[free] = F::one();
            for (p, r) in &echelon {
                x[*p] = -r[free].clone();
            }
            x
        })
        .collect()
}

/// A solution `x` of `A x = b`, if one exists.
pub fn solve<F: Field>(a: &Matrix<F>, b: &[F]) -> Option<Vec<F>>
where
    for<'a> &'a F: Add<&'a F, Output = F> + Sub<&'a F, Output = F> + Mul<&'a F, Output = F>,
{
    assert_eq!(a.rows, b.len());
    let mut aug = Matrix::zeros(a.rows, a.cols + 1);
    for i in 0..a.rows {
        for j in 0..a.cols {
            aug.set(i, j, a.get(i, j).clone());
        }
        aug.set(i, a.cols, b[i].clone());
    }
    // the last unknown is free exactly when b lies in the column space
    let kernel = aug.nullspace();
    let v = kernel.into_iter().find(|v| !v[a.cols].is_zero())?;
    let scale = -v[a.cols].clone();
    Some(v[..a.cols].iter().map(|x| x.div_exact(&scale)).collect())
}
