//! Dense matrices over a [`Field`]: row reduction, rank, kernels, solving and
//! column-subset queries.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::galois::{Field, FieldDescriptor, FieldElement, FieldError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("column index {index} out of range for {cols} columns")]
    IndexOutOfRange { index: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrices are over different fields")]
    FieldMismatch,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Row-major dense matrix over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<u32> = self.row(r).iter().map(|x| x.index()).collect();
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![FieldElement::ZERO; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::ONE);
        }
        m
    }

    pub fn from_vec(
        field: &Field,
        rows: usize,
        cols: usize,
        data: Vec<FieldElement>,
    ) -> Result<Matrix, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch { expected: rows * cols, got: data.len() });
        }
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    /// Builds a matrix from rows; an empty row list gives a `0 x cols` matrix.
    pub fn from_rows(
        field: &Field,
        cols: usize,
        rows: &[Vec<FieldElement>],
    ) -> Result<Matrix, LinalgError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LinalgError::DimensionMismatch { expected: cols, got: r.len() });
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix { field: field.clone(), rows: rows.len(), cols, data })
    }

    /// Convenience constructor from element indices, mostly for tests.
    pub fn from_indices(field: &Field, rows: &[&[u64]]) -> Result<Matrix, LinalgError> {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&i| field.element(i)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Matrix::from_rows(field, cols, &rows)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(
        field: &Field,
        rows: usize,
        columns: &[Vec<FieldElement>],
    ) -> Result<Matrix, LinalgError> {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(LinalgError::DimensionMismatch { expected: rows, got: c.len() });
            }
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j);
                    out.set(i, j, f.add(cur, f.mul(a, other.get(k, j))));
                }
            }
        }
        Ok(out)
    }

    /// `A·v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        Ok((0..self.rows).map(|r| self.field.dot(self.row(r), v)).collect())
    }

    /// `vᵀ·A` for a row vector `v`.
    pub fn vec_mul(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>, LinalgError> {
        if v.len() != self.rows {
            return Err(LinalgError::DimensionMismatch { expected: self.rows, got: v.len() });
        }
        let f = &self.field;
        let mut out = vec![f.zero(); self.cols];
        for (r, &c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(self.row(r)) {
                *o = f.add(*o, f.mul(c, x));
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form and the pivot columns. Pivots are taken as
    /// the first nonzero entry scanning columns left to right.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pr = 0;
        for c in 0..m.cols {
            if pr == m.rows {
                break;
            }
            let Some(sel) = (pr..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            m.swap_rows(pr, sel);
            let inv = f.inv(m.get(pr, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = m.get(pr, j);
                m.set(pr, j, f.mul(inv, v));
            }
            for r in 0..m.rows {
                if r == pr {
                    continue;
                }
                let factor = m.get(r, c);
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(r, j), f.mul(factor, m.get(pr, j)));
                    m.set(r, j, v);
                }
            }
            pivots.push(c);
            pr += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        // Forward elimination only; cheaper than a full rref for the many
        // small subset-rank queries.
        let f = &self.field;
        let mut m = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for c in 0..cols {
            if rank == rows {
                break;
            }
            let Some(sel) = (rank..rows).find(|&r| !m[r * cols + c].is_zero()) else {
                continue;
            };
            if sel != rank {
                for j in 0..cols {
                    m.swap(sel * cols + j, rank * cols + j);
                }
            }
            let inv = f.inv(m[rank * cols + c]).expect("pivot is nonzero");
            for r in rank + 1..rows {
                let factor = m[r * cols + c];
                if factor.is_zero() {
                    continue;
                }
                let factor = f.mul(factor, inv);
                for j in c..cols {
                    m[r * cols + j] = f.sub(m[r * cols + j], f.mul(factor, m[rank * cols + j]));
                }
            }
            rank += 1;
        }
        rank
    }

    /// Basis of the right null space, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<FieldElement>> {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![f.zero(); self.cols];
                v[free] = f.one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = f.neg(r.get(row, free));
                }
                v
            })
            .collect()
    }

    /// One solution of `A·x = b`, or `None` when `b` is outside the column
    /// span. Free variables are set to zero.
    pub fn solve(&self, b: &[FieldElement]) -> Result<Option<Vec<FieldElement>>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::DimensionMismatch { expected: self.rows, got: b.len() });
        }
        let f = &self.field;
        let aug = self.with_column(b)?;
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![f.zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = red.get(row, self.cols);
        }
        Ok(Some(x))
    }

    /// Columns `indices` in ascending order; duplicates are collapsed.
    pub fn column_submatrix(&self, indices: &[usize]) -> Result<Matrix, LinalgError> {
        let mut idx = indices.to_vec();
        idx.sort_unstable();
        idx.dedup();
        if let Some(&bad) = idx.iter().find(|&&i| i >= self.cols) {
            return Err(LinalgError::IndexOutOfRange { index: bad, cols: self.cols });
        }
        let mut m = Matrix::zeros(&self.field, self.rows, idx.len());
        for r in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                m.set(r, j, self.get(r, c));
            }
        }
        Ok(m)
    }

    /// Appends one column on the right.
    pub fn with_column(&self, col: &[FieldElement]) -> Result<Matrix, LinalgError> {
        if col.len() != self.rows {
            return Err(LinalgError::DimensionMismatch { expected: self.rows, got: col.len() });
        }
        let mut m = Matrix::zeros(&self.field, self.rows, self.cols + 1);
        for (r, &x) in col.iter().enumerate() {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c));
            }
            m.set(r, self.cols, x);
        }
        Ok(m)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn to_record(&self) -> MatrixRecord {
        MatrixRecord {
            field: self.field.descriptor(),
            rows: self.rows,
            cols: self.cols,
            entries: self.data.iter().map(|x| x.index()).collect(),
        }
    }

    pub fn from_record(rec: &MatrixRecord) -> Result<Matrix, LinalgError> {
        let field = Field::from_descriptor(&rec.field)?;
        let data = rec
            .entries
            .iter()
            .map(|&i| field.element(i as u64))
            .collect::<Result<Vec<_>, _>>()?;
        Matrix::from_vec(&field, rec.rows, rec.cols, data)
    }
}

/// Serialized matrix: field header plus row-major element indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixRecord {
    pub field: FieldDescriptor,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<u32>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn rref_examples() {
        let f = gf(7);
        let id = Matrix::identity(&f, 3);
        assert_eq!(id.rref(), (id.clone(), vec![0, 1, 2]));
        assert_eq!(id.rank(), 3);

        let z = Matrix::zeros(&f, 2, 3);
        assert_eq!(z.rref(), (z.clone(), vec![]));
        assert_eq!(z.rank(), 0);

        let a = Matrix::from_indices(&f, &[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(a.rank(), 1);
        assert_eq!(a.rref().1, vec![0]);
    }

    #[test]
    fn kernel_examples() {
        let f = gf(7);
        assert!(Matrix::identity(&f, 3).kernel().is_empty());
        assert_eq!(Matrix::zeros(&f, 2, 3).kernel().len(), 3);

        let f2 = gf(2);
        let a = Matrix::from_indices(&f2, &[&[1, 1]]).unwrap();
        let k = a.kernel();
        assert_eq!(k, vec![vec![f2.one(), f2.one()]]);
    }

    #[test]
    fn solve_examples() {
        let f = gf(7);
        let id = Matrix::identity(&f, 3);
        let b: Vec<_> = [4, 0, 6].iter().map(|&i| f.from_int(i)).collect();
        assert_eq!(id.solve(&b).unwrap(), Some(b.clone()));

        let z = Matrix::zeros(&f, 3, 3);
        assert_eq!(z.solve(&b).unwrap(), None);

        let two = Matrix::from_indices(&f, &[&[2]]).unwrap();
        assert_eq!(two.solve(&[f.from_int(3)]).unwrap(), Some(vec![f.from_int(5)]));

        assert!(matches!(id.solve(&b[..2]), Err(LinalgError::DimensionMismatch { .. })));
    }

    #[test]
    fn column_submatrix_examples() {
        let f = gf(5);
        let a = Matrix::from_indices(&f, &[&[1, 2, 3], &[4, 0, 1]]).unwrap();
        assert_eq!(a.column_submatrix(&[2, 0, 1]).unwrap(), a);
        let empty = a.column_submatrix(&[]).unwrap();
        assert_eq!((empty.rows(), empty.cols()), (2, 0));
        assert_eq!(empty.rank(), 0);
        let single = a.column_submatrix(&[1]).unwrap();
        assert_eq!(single.column(0), a.column(1));
        assert_eq!(
            a.column_submatrix(&[3]),
            Err(LinalgError::IndexOutOfRange { index: 3, cols: 3 })
        );
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let a = Matrix::identity(&gf(5), 2);
        let b = Matrix::identity(&gf(7), 2);
        assert_eq!(a.mul(&b), Err(LinalgError::FieldMismatch));
    }

    #[test]
    fn record_roundtrip() {
        let f = Field::new(2, 2, &[1, 1, 1]).unwrap();
        let a = Matrix::from_indices(&f, &[&[0, 1, 2], &[3, 2, 1]]).unwrap();
        let json = serde_json::to_string(&a.to_record()).unwrap();
        let back: MatrixRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(Matrix::from_record(&back).unwrap(), a);
    }
}
