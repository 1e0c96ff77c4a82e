//! Dense exact linear algebra over F_p.
//!
//! Row-major matrices of u64 residues with deterministic Gauss-Jordan
//! elimination (first nonzero pivot, no reordering beyond row swaps), plus a
//! `Span` type for incrementally grown column spaces: the substrate for
//! submodule closures, quotients and hom-space solves.

use crate::scalars::{Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    pub field: Field,
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Mat {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in &rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().map(|&v| field.reduce(v)));
        }
        Mat {
            field,
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn from_vec(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Mat {
            field,
            rows,
            cols,
            data: data.into_iter().map(|v| field.reduce(v)).collect(),
        }
    }

    /// Column vector from entries.
    pub fn col_vec(field: Field, entries: &[Scalar]) -> Self {
        Mat::from_vec(field, entries.len(), 1, entries.to_vec())
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j] = self.field.reduce(v);
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.at(i, j)).collect()
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.at(i, j));
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Mat {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Mat {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn neg(&self) -> Mat {
        let f = self.field;
        Mat {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.neg(a)).collect(),
        }
    }

    pub fn scale(&self, s: Scalar) -> Mat {
        let f = self.field;
        Mat {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, s)).collect(),
        }
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let f = self.field;
        let mut out = Mat::zeros(f, self.rows, other.cols);
        // Accumulate u64 products with periodic reduction; p^2 * cols stays
        // far below 2^63 for desk-scale p.
        for i in 0..self.rows {
            let arow = &self.data[i * self.cols..(i + 1) * self.cols];
            let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for (k, &a) in arow.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, &b) in orow.iter_mut().zip(brow) {
                    *o = f.reduce(*o + a * b);
                }
            }
        }
        out
    }

    /// Square matrix power by repeated squaring.
    pub fn pow(&self, mut n: u64) -> Mat {
        assert!(self.is_square());
        let mut acc = Mat::identity(self.field, self.rows);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square());
        let mut t = 0;
        for i in 0..self.rows {
            t = self.field.add(t, self.at(i, i));
        }
        t
    }

    pub fn hstack(parts: &[&Mat]) -> Mat {
        assert!(!parts.is_empty());
        let field = parts[0].field;
        let rows = parts[0].rows;
        let cols: usize = parts.iter().map(|m| m.cols).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let mut off = 0;
        for m in parts {
            assert_eq!(m.rows, rows);
            for i in 0..rows {
                for j in 0..m.cols {
                    out.set(i, off + j, m.at(i, j));
                }
            }
            off += m.cols;
        }
        out
    }

    pub fn vstack(parts: &[&Mat]) -> Mat {
        assert!(!parts.is_empty());
        let field = parts[0].field;
        let cols = parts[0].cols;
        let rows: usize = parts.iter().map(|m| m.rows).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let mut off = 0;
        for m in parts {
            assert_eq!(m.cols, cols);
            for i in 0..m.rows {
                for j in 0..cols {
                    out.set(off + i, j, m.at(i, j));
                }
            }
            off += m.rows;
        }
        out
    }

    pub fn block_diag(field: Field, parts: &[&Mat]) -> Mat {
        let rows: usize = parts.iter().map(|m| m.rows).sum();
        let cols: usize = parts.iter().map(|m| m.cols).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let (mut ro, mut co) = (0, 0);
        for m in parts {
            for i in 0..m.rows {
                for j in 0..m.cols {
                    out.set(ro + i, co + j, m.at(i, j));
                }
            }
            ro += m.rows;
            co += m.cols;
        }
        out
    }

    /// Keep the listed columns, in order.
    pub fn select_cols(&self, cols: &[usize]) -> Mat {
        let mut out = Mat::zeros(self.field, self.rows, cols.len());
        for (jj, &j) in cols.iter().enumerate() {
            for i in 0..self.rows {
                out.set(i, jj, self.at(i, j));
            }
        }
        out
    }

    /// Row-major flattening, used as the coordinate vector of a hom.
    pub fn vectorize(&self) -> Vec<Scalar> {
        self.data.clone()
    }

    /// Reduced row echelon form with the pivot column of each pivot row.
    pub fn rref(&self) -> Echelon {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for j in 0..m.cols {
            if r == m.rows {
                break;
            }
            // find pivot
            let mut pr = None;
            for i in r..m.rows {
                if m.at(i, j) != 0 {
                    pr = Some(i);
                    break;
                }
            }
            let Some(pr) = pr else { continue };
            m.swap_rows(r, pr);
            let inv = f.inv(m.at(r, j));
            m.scale_row(r, inv);
            for i in 0..m.rows {
                if i != r && m.at(i, j) != 0 {
                    let factor = m.at(i, j);
                    m.axpy_rows(i, r, f.neg(factor), j);
                }
            }
            pivots.push(j);
            r += 1;
        }
        Echelon { mat: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, i: usize, s: Scalar) {
        let f = self.field;
        for j in 0..self.cols {
            let v = self.data[i * self.cols + j];
            self.data[i * self.cols + j] = f.mul(v, s);
        }
    }

    /// row_i += s * row_src, starting at column `from`.
    fn axpy_rows(&mut self, i: usize, src: usize, s: Scalar, from: usize) {
        let f = self.field;
        let cols = self.cols;
        let (ci, cs) = (i * cols, src * cols);
        debug_assert_ne!(i, src);
        let (dst, srcrow) = if ci > cs {
            let (head, tail) = self.data.split_at_mut(ci);
            (&mut tail[..cols], &head[cs..cs + cols])
        } else {
            let (head, tail) = self.data.split_at_mut(cs);
            (&mut head[ci..ci + cols], &tail[..cols])
        };
        for (d, &b) in dst[from..].iter_mut().zip(&srcrow[from..]) {
            *d = f.reduce(*d + s * b);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right kernel, as columns. Deterministic.
    pub fn kernel(&self) -> Mat {
        let ech = self.rref();
        let pivots = &ech.pivots;
        let free: Vec<usize> = (0..self.cols).filter(|j| !pivots.contains(j)).collect();
        let mut out = Mat::zeros(self.field, self.cols, free.len());
        for (k, &fj) in free.iter().enumerate() {
            out.set(fj, k, 1);
            for (r, &pj) in pivots.iter().enumerate() {
                out.set(pj, k, self.field.neg(ech.mat.at(r, fj)));
            }
        }
        out
    }

    /// A basis of the column space: the original columns at pivot positions.
    pub fn column_space(&self) -> Mat {
        let ech = self.rref();
        self.select_cols(&ech.pivots)
    }

    /// Solve `self * X = rhs`; `None` when any column is inconsistent.
    pub fn solve(&self, rhs: &Mat) -> Option<Mat> {
        assert_eq!(self.rows, rhs.rows);
        let aug = Mat::hstack(&[self, rhs]);
        let ech = aug.rref();
        // pivots landing in the rhs block certify inconsistency
        if ech.pivots.iter().any(|&j| j >= self.cols) {
            return None;
        }
        let mut x = Mat::zeros(self.field, self.cols, rhs.cols);
        for (r, &pj) in ech.pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pj, j, ech.mat.at(r, self.cols + j));
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Mat> {
        assert!(self.is_square());
        let x = self.solve(&Mat::identity(self.field, self.rows))?;
        if self.mul(&x) == Mat::identity(self.field, self.rows) {
            Some(x)
        } else {
            None
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

#[derive(Debug, Clone)]
pub struct Echelon {
    pub mat: Mat,
    pub pivots: Vec<usize>,
}

/// A column space kept in reduced column-echelon form, supporting incremental
/// insertion, membership tests, and quotient coordinates on the complement of
/// the pivot rows.
#[derive(Debug, Clone)]
pub struct Span {
    pub field: Field,
    pub ambient: usize,
    /// Echelonized basis columns; `basis[k]` has a 1 at `pivot_rows[k]` and
    /// zeros at every other pivot row.
    basis: Vec<Vec<Scalar>>,
    pivot_rows: Vec<usize>,
}

impl Span {
    pub fn empty(field: Field, ambient: usize) -> Self {
        Span {
            field,
            ambient,
            basis: Vec::new(),
            pivot_rows: Vec::new(),
        }
    }

    pub fn from_cols(m: &Mat) -> Self {
        let mut s = Span::empty(m.field, m.rows);
        for j in 0..m.cols {
            s.insert(&m.col(j));
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Reduce `v` against the basis; the residual vanishes on pivot rows.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient);
        let f = self.field;
        let mut r: Vec<Scalar> = v.iter().map(|&x| f.reduce(x)).collect();
        for (k, &pr) in self.pivot_rows.iter().enumerate() {
            let c = r[pr];
            if c != 0 {
                let cneg = f.neg(c);
                for (ri, &bi) in r.iter_mut().zip(&self.basis[k]) {
                    *ri = f.reduce(*ri + cneg * bi);
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Insert a vector; returns true when the span grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let f = self.field;
        let mut r = self.reduce(v);
        let Some(pr) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(r[pr]);
        for x in r.iter_mut() {
            *x = f.mul(*x, inv);
        }
        // clear the new pivot row from existing basis vectors
        for k in 0..self.basis.len() {
            let c = self.basis[k][pr];
            if c != 0 {
                for i in 0..self.ambient {
                    let sub = f.mul(c, r[i]);
                    self.basis[k][i] = f.sub(self.basis[k][i], sub);
                }
            }
        }
        self.basis.push(r);
        self.pivot_rows.push(pr);
        true
    }

    pub fn pivot_rows(&self) -> &[usize] {
        &self.pivot_rows
    }

    /// Rows not used as pivots, in ascending order: a deterministic
    /// complement basis for the quotient.
    pub fn complement_rows(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|i| !self.pivot_rows.contains(i))
            .collect()
    }

    /// Quotient coordinates of `v`: the residual restricted to the
    /// complement rows.
    pub fn quotient_coords(&self, v: &[Scalar]) -> Vec<Scalar> {
        let r = self.reduce(v);
        self.complement_rows().iter().map(|&i| r[i]).collect()
    }

    /// Basis as matrix columns (echelonized, deterministic order).
    pub fn basis_matrix(&self) -> Mat {
        let mut m = Mat::zeros(self.field, self.ambient, self.basis.len());
        for (k, b) in self.basis.iter().enumerate() {
            for i in 0..self.ambient {
                m.set(i, k, b[i]);
            }
        }
        m
    }

    /// Express `v` in the echelon basis; `None` when `v` is outside the span.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let f = self.field;
        let mut r: Vec<Scalar> = v.iter().map(|&x| f.reduce(x)).collect();
        let mut coords = vec![0; self.basis.len()];
        for (k, &pr) in self.pivot_rows.iter().enumerate() {
            let c = r[pr];
            coords[k] = c;
            if c != 0 {
                for i in 0..self.ambient {
                    r[i] = f.sub(r[i], f.mul(c, self.basis[k][i]));
                }
            }
        }
        if r.iter().any(|&x| x != 0) {
            return None;
        }
        Some(coords)
    }
}
