//! Dense matrices over [`QScalar`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Index, IndexMut};

use crate::qscalar::QScalar;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<QScalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![QScalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = QScalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<QScalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> QScalar) -> Self {
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

    pub fn to_rows(&self) -> Vec<Vec<QScalar>> {
        self.data.chunks(self.cols.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let v = a * b;
                    out[(i, j)] += &v;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &other[(i, j)])
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &other[(i, j)])
    }

    pub fn scale(&self, c: &QScalar) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] * c)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        Matrix::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            &self[(i / other.rows, j / other.cols)] * &other[(i % other.rows, j % other.cols)]
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn map(&self, f: impl Fn(&QScalar) -> QScalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = self[(row, col)].inv().expect("nonzero pivot");
            for j in 0..self.cols {
                let v = &self[(row, j)] * &inv;
                self[(row, j)] = v;
            }
            for r in 0..self.rows {
                if r == row || self[(r, col)].is_zero() {
                    continue;
                }
                let f = self[(r, col)].clone();
                for j in 0..self.cols {
                    if self[(row, j)].is_zero() {
                        continue;
                    }
                    let v = &self[(r, j)] - &(&f * &self[(row, j)]);
                    self[(r, j)] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Exact inverse, or `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let mut aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                QScalar::one()
            } else {
                QScalar::zero()
            }
        });
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| aug[(i, j + n)].clone()))
    }

    /// Basis of the right kernel `{x : A x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<QScalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![QScalar::zero(); self.cols];
            v[free] = QScalar::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -&m[(r, free)];
            }
            out.push(v);
        }
        out
    }

    /// Some `x` with `A x = b`, if one exists.
    pub fn solve(&self, b: &[QScalar]) -> Option<Vec<QScalar>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                b[i].clone()
            }
        });
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![QScalar::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug[(r, self.cols)].clone();
        }
        Some(x)
    }

    /// First entry where the two matrices differ.
    pub fn first_difference(&self, other: &Matrix) -> Option<(usize, usize)> {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self[(i, j)] != other[(i, j)] {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = QScalar;
    fn index(&self, (i, j): (usize, usize)) -> &QScalar {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut QScalar {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in self.to_rows() {
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}


/// Square sparse matrix stored by rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseMatrix {
    n: usize,
    rows: Vec<BTreeMap<usize, QScalar>>,
}

impl SparseMatrix {
    pub fn zero(n: usize) -> Self {
        SparseMatrix {
            n,
            rows: vec![BTreeMap::new(); n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SparseMatrix::zero(n);
        for i in 0..n {
            m.rows[i].insert(i, QScalar::one());
        }
        m
    }

    pub fn from_dense(d: &Matrix) -> Self {
        assert_eq!(d.rows(), d.cols());
        let mut m = SparseMatrix::zero(d.rows());
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                if !d[(i, j)].is_zero() {
                    m.rows[i].insert(j, d[(i, j)].clone());
                }
            }
        }
        m
    }

    pub fn to_dense(&self) -> Matrix {
        let mut d = Matrix::zeros(self.n, self.n);
        for (i, row) in self.rows.iter().enumerate() {
            for (&j, v) in row {
                d[(i, j)] = v.clone();
            }
        }
        d
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &BTreeMap<usize, QScalar> {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> QScalar {
        self.rows[i].get(&j).cloned().unwrap_or_else(QScalar::zero)
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    fn add_at(row: &mut BTreeMap<usize, QScalar>, j: usize, v: QScalar) {
        use std::collections::btree_map::Entry;
        match row.entry(j) {
            Entry::Vacant(e) => {
                if !v.is_zero() {
                    e.insert(v);
                }
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + &v;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn mul(&self, o: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.n, o.n);
        let mut out = SparseMatrix::zero(self.n);
        for (i, row) in self.rows.iter().enumerate() {
            for (&k, a) in row {
                for (&j, b) in &o.rows[k] {
                    SparseMatrix::add_at(&mut out.rows[i], j, a * b);
                }
            }
        }
        out
    }

    pub fn add(&self, o: &SparseMatrix) -> SparseMatrix {
        let mut out = self.clone();
        for (i, row) in o.rows.iter().enumerate() {
            for (&j, v) in row {
                SparseMatrix::add_at(&mut out.rows[i], j, v.clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &QScalar) -> SparseMatrix {
        let mut out = SparseMatrix::zero(self.n);
        if c.is_zero() {
            return out;
        }
        for (i, row) in self.rows.iter().enumerate() {
            out.rows[i] = row.iter().map(|(&j, v)| (j, v * c)).collect();
        }
        out
    }

    pub fn sub(&self, o: &SparseMatrix) -> SparseMatrix {
        self.add(&o.scale(&QScalar::from_int(-1)))
    }

    /// `1 ⊗ op ⊗ 1` acting on `len = log_d(op.size())` consecutive slots of a
    /// `slots`-fold tensor power of a `d`-dimensional space, starting at `start`
    /// (slot 0 is the most significant digit).
    pub fn embed(op: &SparseMatrix, d: usize, slots: usize, start: usize) -> SparseMatrix {
        let mut len = 0;
        let mut size = 1;
        while size < op.n {
            size *= d;
            len += 1;
        }
        assert_eq!(size, op.n, "operator size is not a power of the base");
        assert!(start + len <= slots);
        let post = d.pow((slots - start - len) as u32);
        let mid = op.n;
        let pre = d.pow(start as u32);
        let mut out = SparseMatrix::zero(pre * mid * post);
        for a in 0..pre {
            for (r, row) in op.rows.iter().enumerate() {
                for (&c, v) in row {
                    for z in 0..post {
                        let i = (a * mid + r) * post + z;
                        let j = (a * mid + c) * post + z;
                        out.rows[i].insert(j, v.clone());
                    }
                }
            }
        }
        out
    }
}
