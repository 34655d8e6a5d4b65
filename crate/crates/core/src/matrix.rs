//! Dense row-major matrices over an arbitrary ring-like scalar.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }
}

impl<T: Clone> Matrix<T> {
    /// Builds a matrix from rows. `cols` is only consulted when `rows` is empty.
    pub fn from_rows_with_cols(rows: Vec<Vec<T>>, cols: usize) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(cols, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix rows");
        Self { rows: nrows, cols: ncols, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        Self::from_rows_with_cols(rows, 0)
    }

    pub fn from_columns(columns: &[Vec<T>], rows: usize) -> Self {
        let cols = columns.len();
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for c in columns {
                data.push(c[i].clone());
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hconcat(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "row count mismatch in hconcat");
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn select_rows(&self, idx: impl IntoIterator<Item = usize>) -> Self {
        let rows: Vec<Vec<T>> = idx.into_iter().map(|i| self.row(i).to_vec()).collect();
        Self::from_rows_with_cols(rows, self.cols)
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.rows, idx.len(), |i, j| self[(i, idx[j])].clone())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for k in 0..self.cols {
                self.data.swap(a * self.cols + k, b * self.cols + k);
            }
        }
    }

    pub fn swap_columns(&mut self, a: usize, b: usize) {
        if a != b {
            for k in 0..self.rows {
                self.data.swap(k * self.cols + a, k * self.cols + b);
            }
        }
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + std::ops::Mul<Output = T>,
{
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out[(i, j)].clone() + a.clone() * rhs[(k, j)].clone();
                    out[(i, j)] = v;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
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

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for i in 0..self.rows {
            list.entry(&&self.data[i * self.cols..(i + 1) * self.cols]);
        }
        list.finish()
    }
}

impl<T: Serialize + Clone> Serialize for Matrix<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de, T: Deserialize<'de> + Clone> Deserialize<'de> for Matrix<T> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<T>>::deserialize(d)?;
        if let Some(first) = rows.first() {
            if rows.iter().any(|r| r.len() != first.len()) {
                return Err(serde::de::Error::custom("ragged matrix rows"));
            }
        }
        Ok(Self::from_rows(rows))
    }
}
