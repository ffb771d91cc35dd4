//! Dense exact matrices and the row reductions everything else is built on.

use std::fmt;

use crate::field::{Field, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row echelon form together with its pivot columns.
pub struct Echelon {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Matrix {
        assert_eq!(data.len(), rows * cols);
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
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

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { data, ..*self }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { data, ..*self }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * c).collect();
        Matrix { data, ..*self }
    }

    /// Columns `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Matrix::zeros(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            data,
            ..*self
        }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                m.set(i, k, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            data.extend(self.row(i).iter().cloned());
        }
        Matrix {
            rows: rows.len(),
            data,
            ..*self
        }
    }

    /// Block-diagonal matrix.
    pub fn block_diagonal(field: Field, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().unwrap();
            if !inv.is_one() {
                for j in c..m.cols {
                    let x = m.get(r, j) * &inv;
                    m.set(r, j, x);
                }
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let b = m.get(r, j);
                    if b.is_zero() {
                        continue;
                    }
                    let x = m.get(i, j) - &(&f * b);
                    m.set(i, j, x);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the null space, as the columns of the returned matrix.
    pub fn kernel(&self) -> Matrix {
        let ech = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !ech.pivots.contains(c)).collect();
        let mut k = Matrix::zeros(self.field, self.cols, free.len());
        for (col, &f) in free.iter().enumerate() {
            k.set(f, col, self.field.one());
            for (row, &p) in ech.pivots.iter().enumerate() {
                let x = -ech.matrix.get(row, f);
                k.set(p, col, x);
            }
        }
        k
    }

    /// A basis of the column space, chosen among the columns of `self`.
    pub fn column_basis(&self) -> Matrix {
        let ech = self.echelon();
        self.select_columns(&ech.pivots)
    }

    /// Solves `self * x = b` for a matrix `x`, if a solution exists.
    pub fn solve(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, b.rows);
        let aug = self.hstack(b);
        let ech = aug.echelon();
        if ech.pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.field, self.cols, b.cols);
        for (row, &p) in ech.pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, ech.matrix.get(row, self.cols + j).clone());
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let x = self.solve(&Matrix::identity(self.field, self.rows))?;
        if self.rank() == self.rows {
            Some(x)
        } else {
            None
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn trace(&self) -> Scalar {
        let mut t = self.field.zero();
        for i in 0..self.rows.min(self.cols) {
            t = &t + self.get(i, i);
        }
        t
    }

    /// Indices of standard basis vectors completing the column space of
    /// `self` (assumed of full column rank) to the whole ambient space.
    pub fn complement_indices(&self) -> Vec<usize> {
        let pivots = self.transpose().echelon().pivots;
        (0..self.rows).filter(|i| !pivots.contains(i)).collect()
    }

    pub fn unit_columns(field: Field, n: usize, indices: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(field, n, indices.len());
        for (j, &i) in indices.iter().enumerate() {
            m.set(i, j, field.one());
        }
        m
    }
}

impl fmt::Debug for Matrix {
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
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]({}x{})", self.rows, self.cols)
    }
}

/// Incrementally maintained span of vectors in `field^dim`, kept in reduced
/// echelon form so membership and coordinates are cheap.
#[derive(Clone, Debug)]
pub struct SpanBuilder {
    field: Field,
    dim: usize,
    // (pivot column, reduced row) sorted by insertion
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl SpanBuilder {
    pub fn new(field: Field, dim: usize) -> SpanBuilder {
        SpanBuilder {
            field,
            dim,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            let f = v[*p].clone();
            if f.is_zero() {
                continue;
            }
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = &*x - &(&f * r);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Adds `v`; returns `false` when it was already in the span.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().unwrap();
        for x in r.iter_mut() {
            *x = &*x * &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            let f = row[p].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        self.rows.push((p, r));
        true
    }

    /// Basis of the span as columns of a `dim x rank` matrix.
    pub fn basis(&self) -> Matrix {
        let cols: Vec<Vec<Scalar>> = self.rows.iter().map(|(_, r)| r.clone()).collect();
        Matrix::from_columns(self.field, self.dim, &cols)
    }
}
