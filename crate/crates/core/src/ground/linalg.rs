//! Dense matrices and subspaces over GF(2^k).

use std::fmt;

use super::field::{Fe, Field};
use crate::error::{Error, Result};

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Matrix {}x{} over {}",
            self.rows,
            self.cols,
            self.field.name()
        )?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|c| format!("{c}")).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![Fe::ZERO; rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Fe::ONE);
        }
        m
    }

    pub fn from_data(field: Field, rows: usize, cols: usize, data: Vec<Fe>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(field: Field, cols: usize, rows: &[Vec<Fe>]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend_from_slice(r);
        }
        Matrix {
            field,
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_columns(field: Field, rows: usize, cols: &[Vec<Fe>]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged columns");
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v);
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

    pub fn data(&self) -> &[Fe] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Fe {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Fe) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Fe] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Fe> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Fe>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn require_square(&self) -> Result<()> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        Ok(())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                got: other.rows * other.cols,
            });
        }
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Ok(Matrix {
            data,
            ..self.clone()
        })
    }

    pub fn scale(&self, s: Fe) -> Matrix {
        let f = self.field;
        Matrix {
            data: self.data.iter().map(|&a| f.mul(a, s)).collect(),
            ..self.clone()
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] = f.add(out.data[idx], f.mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Fe]) -> Result<Vec<Fe>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        let f = self.field;
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(Fe::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect())
    }

    /// Reduced row-echelon form in place; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..self.cols {
            if prow == self.rows {
                break;
            }
            let Some(sel) = (prow..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            if sel != prow {
                for c in 0..self.cols {
                    self.data.swap(sel * self.cols + c, prow * self.cols + c);
                }
            }
            let inv = f.inv(self.get(prow, col)).expect("pivot is nonzero");
            for c in col..self.cols {
                let v = self.get(prow, c);
                self.set(prow, c, f.mul(v, inv));
            }
            for r in 0..self.rows {
                if r == prow {
                    continue;
                }
                let factor = self.get(r, col);
                if factor.is_zero() {
                    continue;
                }
                for c in col..self.cols {
                    let v = f.add(self.get(r, c), f.mul(factor, self.get(prow, c)));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            prow += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place();
        (m, p)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : M x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Fe>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Fe::ZERO; self.cols];
            v[free] = Fe::ONE;
            for (row, &p) in pivots.iter().enumerate() {
                // char 2: -a = a
                v[p] = r.get(row, free);
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `M x = b` with all free variables set to zero.
    pub fn solve(&self, b: &[Fe]) -> Result<Vec<Fe>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: b.len(),
            });
        }
        let mut aug = Matrix::zeros(self.field, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, self.cols, b[r]);
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return Err(Error::Inconsistent);
        }
        let mut x = vec![Fe::ZERO; self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(row, self.cols);
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        self.require_square()?;
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, Fe::ONE);
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::DivideByZero);
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, aug.get(r, n + c));
            }
        }
        Ok(inv)
    }

    pub fn map_entries(&self, field: Field, f: impl Fn(Fe) -> Fe) -> Matrix {
        Matrix {
            field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f(a)).collect(),
        }
    }
}

/// Vector helpers over a field.
pub fn vec_add(f: &Field, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

pub fn vec_scale(f: &Field, s: Fe, a: &[Fe]) -> Vec<Fe> {
    a.iter().map(|&x| f.mul(s, x)).collect()
}

pub fn vec_axpy(f: &Field, acc: &mut [Fe], s: Fe, a: &[Fe]) {
    if s.is_zero() {
        return;
    }
    for (x, &y) in acc.iter_mut().zip(a) {
        *x = f.add(*x, f.mul(s, y));
    }
}

pub fn is_zero_vec(a: &[Fe]) -> bool {
    a.iter().all(|c| c.is_zero())
}

pub fn unit_vec(n: usize, i: usize) -> Vec<Fe> {
    let mut v = vec![Fe::ZERO; n];
    v[i] = Fe::ONE;
    v
}

/// A subspace of `F^ambient`, stored as the rows of a reduced row-echelon
/// basis. Equal subspaces have identical representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}) ", self.dim(), self.ambient)?;
        fmt::Debug::fmt(&self.basis, f)
    }
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace {
            field,
            ambient,
            basis: Matrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace {
            field,
            ambient,
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(field: Field, ambient: usize, vectors: &[Vec<Fe>]) -> Subspace {
        let mut m = Matrix::from_rows(field, ambient, vectors);
        let pivots = m.rref_in_place();
        let rows: Vec<Vec<Fe>> = (0..pivots.len()).map(|r| m.row(r).to_vec()).collect();
        Subspace {
            field,
            ambient,
            basis: Matrix::from_rows(field, ambient, &rows),
            pivots,
        }
    }

    /// Column space of a matrix.
    pub fn column_space(m: &Matrix) -> Subspace {
        let cols: Vec<Vec<Fe>> = (0..m.cols()).map(|c| m.column(c)).collect();
        Subspace::span(m.field(), m.rows(), &cols)
    }

    pub fn kernel(m: &Matrix) -> Subspace {
        Subspace::span(m.field(), m.cols(), &m.nullspace())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis(&self) -> Vec<Vec<Fe>> {
        self.basis.row_vectors()
    }

    pub fn basis_matrix(&self) -> &Matrix {
        &self.basis
    }

    pub fn vector(&self, i: usize) -> &[Fe] {
        self.basis.row(i)
    }

    /// Coordinates of `v` in the RREF basis; `None` if `v` is not in the subspace.
    pub fn coords(&self, v: &[Fe]) -> Option<Vec<Fe>> {
        let c: Vec<Fe> = self.pivots.iter().map(|&p| v[p]).collect();
        let mut rebuilt = vec![Fe::ZERO; self.ambient];
        for (i, &ci) in c.iter().enumerate() {
            vec_axpy(&self.field, &mut rebuilt, ci, self.basis.row(i));
        }
        (rebuilt == v).then_some(c)
    }

    pub fn contains(&self, v: &[Fe]) -> bool {
        v.len() == self.ambient && self.coords(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|i| self.contains(other.vector(i)))
    }

    pub fn with_vectors(&self, extra: &[Vec<Fe>]) -> Subspace {
        let mut all = self.basis();
        all.extend_from_slice(extra);
        Subspace::span(self.field, self.ambient, &all)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        self.with_vectors(&other.basis())
    }

    /// Intersection by the Zassenhaus construction: row-reduce `[[U, U], [W, 0]]`;
    /// rows whose left half vanishes carry a basis of `U ∩ W` on the right.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let n = self.ambient;
        let f = self.field;
        let mut rows = Vec::with_capacity(self.dim() + other.dim());
        for u in self.basis() {
            let mut r = u.clone();
            r.extend_from_slice(&u);
            rows.push(r);
        }
        for w in other.basis() {
            let mut r = w;
            r.extend(std::iter::repeat_n(Fe::ZERO, n));
            rows.push(r);
        }
        let mut m = Matrix::from_rows(f, 2 * n, &rows);
        let pivots = m.rref_in_place();
        let inter: Vec<Vec<Fe>> = pivots
            .iter()
            .enumerate()
            .filter(|(_, &p)| p >= n)
            .map(|(r, _)| m.row(r)[n..].to_vec())
            .collect();
        Subspace::span(f, n, &inter)
    }

    /// Standard basis vectors completing this subspace to the whole space
    /// (the non-pivot columns of the RREF basis).
    pub fn quotient_basis(&self) -> Vec<Vec<Fe>> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient)
            .filter(|&c| !is_pivot[c])
            .map(|c| unit_vec(self.ambient, c))
            .collect()
    }

    /// Vectors of `larger` that extend this subspace's basis to a basis of `larger`.
    pub fn extend_basis(&self, larger: &Subspace) -> Vec<Vec<Fe>> {
        let mut cur = self.clone();
        let mut out = Vec::new();
        for v in larger.basis() {
            if !cur.contains(&v) {
                cur = cur.with_vectors(std::slice::from_ref(&v));
                out.push(v);
            }
        }
        out
    }

    /// Image under a linear map.
    pub fn image(&self, m: &Matrix) -> Result<Subspace> {
        let imgs = self
            .basis()
            .iter()
            .map(|v| m.mul_vec(v))
            .collect::<Result<Vec<_>>>()?;
        Ok(Subspace::span(self.field, m.rows(), &imgs))
    }
}

/// An ordered, linearly independent list of vectors with fast coordinate
/// extraction: for `v` in the span, the coordinates come from the pivot
/// entries of `v` through a precomputed `k x k` matrix.
#[derive(Clone, Debug)]
pub struct Frame {
    field: Field,
    ambient: usize,
    vectors: Vec<Vec<Fe>>,
    pivots: Vec<usize>,
    // coords[j] = sum_i conv[i][j] * v[pivots[i]]
    conv: Matrix,
}

impl Frame {
    pub fn new(field: Field, ambient: usize, vectors: Vec<Vec<Fe>>) -> Result<Frame> {
        let k = vectors.len();
        let mut aug = Matrix::zeros(field, k, ambient + k);
        for (i, v) in vectors.iter().enumerate() {
            if v.len() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    got: v.len(),
                });
            }
            for (c, &x) in v.iter().enumerate() {
                aug.set(i, c, x);
            }
            aug.set(i, ambient + i, Fe::ONE);
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < k || pivots.last().is_some_and(|&p| p >= ambient) {
            return Err(Error::Degenerate("frame vectors are linearly dependent"));
        }
        let mut conv = Matrix::zeros(field, k, k);
        for i in 0..k {
            for j in 0..k {
                conv.set(i, j, aug.get(i, ambient + j));
            }
        }
        Ok(Frame {
            field,
            ambient,
            vectors,
            pivots,
            conv,
        })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn vectors(&self) -> &[Vec<Fe>] {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> &[Fe] {
        &self.vectors[i]
    }

    pub fn combine(&self, coords: &[Fe]) -> Vec<Fe> {
        let mut out = vec![Fe::ZERO; self.ambient];
        for (c, v) in coords.iter().zip(&self.vectors) {
            vec_axpy(&self.field, &mut out, *c, v);
        }
        out
    }

    /// Coordinates assuming `v` lies in the span (not checked).
    pub fn coords_unchecked(&self, v: &[Fe]) -> Vec<Fe> {
        let f = self.field;
        let k = self.len();
        let mut c = vec![Fe::ZERO; k];
        for (i, &p) in self.pivots.iter().enumerate() {
            let x = v[p];
            if x.is_zero() {
                continue;
            }
            for (j, cj) in c.iter_mut().enumerate() {
                *cj = f.add(*cj, f.mul(self.conv.get(i, j), x));
            }
        }
        c
    }

    pub fn coords(&self, v: &[Fe]) -> Option<Vec<Fe>> {
        if v.len() != self.ambient {
            return None;
        }
        let c = self.coords_unchecked(v);
        (self.combine(&c) == v).then_some(c)
    }

    pub fn span(&self) -> Subspace {
        Subspace::span(self.field, self.ambient, &self.vectors)
    }

    /// The matrix whose columns are the frame vectors.
    pub fn matrix(&self) -> Matrix {
        Matrix::from_columns(self.field, self.ambient, &self.vectors)
    }
}
