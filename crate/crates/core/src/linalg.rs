//! Dense exact linear algebra over a [`Field`].
//!
//! Matrices do not carry their field; every operation that needs arithmetic
//! takes the field explicitly.

use crate::ffield::{Fe, Field};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Fe::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Fe::ONE;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Fe>) -> Matrix {
        assert_eq!(rows * cols, data.len());
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from its rows; `cols` is needed when there are no rows.
    pub fn from_rows(rows: &[Vec<Fe>], cols: usize) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend_from_slice(r);
        }
        Matrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_cols(cols: &[Vec<Fe>], rows: usize) -> Matrix {
        Matrix::from_rows(cols, rows).transpose()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Fe] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Fe] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Fe> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Fe>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn map(&self, f: impl Fn(Fe) -> Fe) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn mul(&self, field: &Field, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if !a.is_zero() {
                    field.axpy(dst, a, other.row(k));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, field: &Field, v: &[Fe]) -> Vec<Fe> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Fe::ZERO, |acc, (&a, &b)| field.add(acc, field.mul(a, b)))
            })
            .collect()
    }

    pub fn add(&self, field: &Field, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| field.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, field: &Field, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| field.sub(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, field: &Field, s: Fe) -> Matrix {
        self.map(|x| field.mul(x, s))
    }

    pub fn pow(&self, field: &Field, k: usize) -> Matrix {
        let mut out = Matrix::identity(self.rows);
        for _ in 0..k {
            out = out.mul(field, self);
        }
        out
    }

    pub fn block_diag(blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(r0 + i, c0 + j)] = b[(i, j)];
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn vstack(blocks: &[&Matrix]) -> Matrix {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols);
            data.extend_from_slice(&b.data);
            rows += b.rows;
        }
        Matrix { rows, cols, data }
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    /// Zero rows end up at the bottom.
    pub fn rref(&mut self, field: &Field) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        let cols = self.cols;
        let mut pivot_row = vec![Fe::ZERO; cols];
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(sel) = (r..self.rows).find(|&i| !self.data[i * cols + c].is_zero()) else {
                continue;
            };
            if sel != r {
                for j in c..cols {
                    self.data.swap(sel * cols + j, r * cols + j);
                }
            }
            let inv = field.inv(self.data[r * cols + c]);
            for j in c..cols {
                let v = field.mul(self.data[r * cols + j], inv);
                self.data[r * cols + j] = v;
                pivot_row[j] = v;
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.data[i * cols + c];
                if !factor.is_zero() {
                    let dst = &mut self.data[i * cols + c..(i + 1) * cols];
                    field.axpy(dst, field.neg(factor), &pivot_row[c..]);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, field: &Field) -> usize {
        let mut m = if self.rows > self.cols {
            self.transpose()
        } else {
            self.clone()
        };
        m.rref(field).len()
    }

    /// Basis of the right null space `{v : self * v = 0}`, one vector per row.
    ///
    /// Each basis vector is 1 at one free column and 0 at every other free
    /// column, so the free columns serve as coordinates on the kernel.
    pub fn kernel(&self, field: &Field) -> Subspace {
        let mut r = self.clone();
        let pivots = r.rref(field);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&j| !is_pivot[j]).collect();
        let mut basis = Matrix::zeros(free.len(), self.cols);
        for (k, &j) in free.iter().enumerate() {
            basis[(k, j)] = Fe::ONE;
            for (row, &p) in pivots.iter().enumerate() {
                basis[(k, p)] = field.neg(r[(row, j)]);
            }
        }
        Subspace {
            basis,
            selectors: free,
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Fe;
    fn index(&self, (i, j): (usize, usize)) -> &Fe {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Fe {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// A subspace of `F^n` given by basis rows that restrict to the identity on
/// a set of selector columns.
///
/// The selector entries of a vector in the subspace are its coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    basis: Matrix,
    selectors: Vec<usize>,
}

impl Subspace {
    /// Row space of `rows` in reduced echelon form (selectors are the pivots).
    pub fn span(field: &Field, rows: &Matrix) -> Subspace {
        let mut m = rows.clone();
        let pivots = m.rref(field);
        let basis = Matrix::from_vec(
            pivots.len(),
            m.cols,
            m.data[..pivots.len() * m.cols].to_vec(),
        );
        Subspace {
            basis,
            selectors: pivots,
        }
    }

    pub fn zero(ambient: usize) -> Subspace {
        Subspace {
            basis: Matrix::zeros(0, ambient),
            selectors: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Subspace {
        Subspace {
            basis: Matrix::identity(ambient),
            selectors: (0..ambient).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn selectors(&self) -> &[usize] {
        &self.selectors
    }

    pub fn vector(&self, k: usize) -> &[Fe] {
        self.basis.row(k)
    }

    /// Ambient columns outside the selector set, in increasing order.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut sel = vec![false; self.ambient()];
        for &s in &self.selectors {
            sel[s] = true;
        }
        (0..self.ambient()).filter(|&j| !sel[j]).collect()
    }

    /// `v` minus its projection along the basis; zero at every selector.
    pub fn reduce(&self, field: &Field, v: &[Fe]) -> Vec<Fe> {
        let mut w = v.to_vec();
        for (k, &s) in self.selectors.iter().enumerate() {
            let c = w[s];
            if !c.is_zero() {
                field.axpy(&mut w, field.neg(c), self.basis.row(k));
            }
        }
        w
    }

    pub fn contains(&self, field: &Field, v: &[Fe]) -> bool {
        self.reduce(field, v).iter().all(|x| x.is_zero())
    }

    /// Coordinates of a vector known to lie in the subspace.
    pub fn coords(&self, v: &[Fe]) -> Vec<Fe> {
        self.selectors.iter().map(|&s| v[s]).collect()
    }

    /// Coordinates, or `None` when `v` is outside the subspace.
    pub fn try_coords(&self, field: &Field, v: &[Fe]) -> Option<Vec<Fe>> {
        self.contains(field, v).then(|| self.coords(v))
    }

    pub fn combination(&self, field: &Field, coords: &[Fe]) -> Vec<Fe> {
        let mut out = vec![Fe::ZERO; self.ambient()];
        for (k, &c) in coords.iter().enumerate() {
            field.axpy(&mut out, c, self.basis.row(k));
        }
        out
    }
}

/// Precomputed solver for `A x = b` with a fixed matrix `A`.
#[derive(Clone, Debug)]
pub struct Solver {
    rows: usize,
    cols: usize,
    pivots: Vec<usize>,
    // transform * A = rref(A)
    transform: Matrix,
    kernel: Subspace,
}

impl Solver {
    pub fn new(field: &Field, a: &Matrix) -> Solver {
        let (m, n) = (a.rows, a.cols);
        let mut aug = Matrix::zeros(m, n + m);
        for i in 0..m {
            aug.row_mut(i)[..n].copy_from_slice(a.row(i));
            aug[(i, n + i)] = Fe::ONE;
        }
        // Pivoting only on the first n columns keeps the transform invertible.
        let mut left = aug.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..n {
            if r == m {
                break;
            }
            let Some(sel) = (r..m).find(|&i| !left[(i, c)].is_zero()) else {
                continue;
            };
            for j in 0..n + m {
                left.data.swap(sel * (n + m) + j, r * (n + m) + j);
            }
            let inv = field.inv(left[(r, c)]);
            field.scale_in_place(left.row_mut(r), inv);
            let prow = left.row(r).to_vec();
            for i in 0..m {
                if i != r {
                    let f = left[(i, c)];
                    if !f.is_zero() {
                        field.axpy(left.row_mut(i), field.neg(f), &prow);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let mut transform = Matrix::zeros(m, m);
        for i in 0..m {
            transform.row_mut(i).copy_from_slice(&left.row(i)[n..]);
        }
        Solver {
            rows: m,
            cols: n,
            pivots,
            transform,
            kernel: a.kernel(field),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn kernel(&self) -> &Subspace {
        &self.kernel
    }

    /// The particular solution supported on pivot columns, if one exists.
    pub fn solve(&self, field: &Field, b: &[Fe]) -> Option<Vec<Fe>> {
        assert_eq!(b.len(), self.rows);
        let y = self.transform.mul_vec(field, b);
        if y[self.pivots.len()..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut x = vec![Fe::ZERO; self.cols];
        for (k, &p) in self.pivots.iter().enumerate() {
            x[p] = y[k];
        }
        Some(x)
    }
}
