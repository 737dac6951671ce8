//! Dense vectors and matrices over a prime field, with exact Gaussian
//! elimination for rank, reduced row-echelon form and column-span tests.
//!
//! All instances this crate handles are tiny (tens of rows/columns), so the
//! representation is a flat row-major `Vec<u8>` and elimination is the plain
//! schoolbook algorithm. Indices in the API are 0-based; reports and file
//! formats convert to the 1-based convention at the boundary.

use crate::error::{Error, Result};
use crate::field::PrimeField;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FieldVector {
    field: PrimeField,
    entries: Vec<u8>,
}

impl FieldVector {
    pub fn new(field: PrimeField, entries: impl IntoIterator<Item = i64>) -> Self {
        FieldVector {
            field,
            entries: entries.into_iter().map(|v| field.reduce(v)).collect(),
        }
    }

    pub fn from_reduced(field: PrimeField, entries: Vec<u8>) -> Self {
        debug_assert!(entries.iter().all(|&e| (e as u16) < field.q()));
        FieldVector { field, entries }
    }

    pub fn zero(field: PrimeField, len: usize) -> Self {
        FieldVector {
            field,
            entries: vec![0; len],
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> u8 {
        self.entries[i]
    }

    pub fn set(&mut self, i: usize, v: u8) {
        debug_assert!((v as u16) < self.field.q());
        self.entries[i] = v;
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    /// Hamming weight |supp(v)|.
    pub fn weight(&self) -> usize {
        self.entries.iter().filter(|&&e| e != 0).count()
    }

    /// 0-based indices of the nonzero entries, increasing.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.entries[i] != 0).collect()
    }

    pub fn add(&self, other: &FieldVector) -> Result<FieldVector> {
        check_fields(self.field, other.field)?;
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch(format!(
                "vector lengths {} vs {}",
                self.len(),
                other.len()
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        Ok(FieldVector {
            field: self.field,
            entries,
        })
    }

    pub fn sub(&self, other: &FieldVector) -> Result<FieldVector> {
        check_fields(self.field, other.field)?;
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch(format!(
                "vector lengths {} vs {}",
                self.len(),
                other.len()
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| self.field.sub(a, b))
            .collect();
        Ok(FieldVector {
            field: self.field,
            entries,
        })
    }
}

impl std::fmt::Display for FieldVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FieldMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    entries: Vec<u8>, // row-major, rows*cols
}

fn check_fields(a: PrimeField, b: PrimeField) -> Result<()> {
    if a != b {
        return Err(Error::FieldMismatch {
            left: a.q(),
            right: b.q(),
        });
    }
    Ok(())
}

impl FieldMatrix {
    pub fn zero(field: PrimeField, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            field,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Build from integer rows, reducing mod q. Rows must all have the same
    /// length.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {} has length {}, expected {}",
                    i + 1,
                    r.len(),
                    cols
                )));
            }
        }
        let entries = rows.iter().flatten().map(|&v| field.reduce(v)).collect();
        Ok(FieldMatrix {
            field,
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn from_columns(field: PrimeField, cols: &[FieldVector]) -> Result<Self> {
        let rows = cols.first().map_or(0, |c| c.len());
        let mut m = Self::zero(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            check_fields(field, c.field())?;
            if c.len() != rows {
                return Err(Error::DimensionMismatch(format!(
                    "column {} has length {}, expected {}",
                    j + 1,
                    c.len(),
                    rows
                )));
            }
            for i in 0..rows {
                m.set(i, j, c.get(i));
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        debug_assert!((v as u16) < self.field.q());
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> FieldVector {
        FieldVector::from_reduced(self.field, (0..self.rows).map(|r| self.get(r, c)).collect())
    }

    pub fn is_zero_column(&self, c: usize) -> bool {
        (0..self.rows).all(|r| self.get(r, c) == 0)
    }

    pub fn transpose(&self) -> FieldMatrix {
        let mut t = Self::zero(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Submatrix keeping the given rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> FieldMatrix {
        let mut m = Self::zero(self.field, rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            for c in 0..self.cols {
                m.set(i, c, self.get(r, c));
            }
        }
        m
    }

    /// Submatrix keeping the given columns, in the given order.
    pub fn select_cols(&self, cols: &[usize]) -> FieldMatrix {
        let mut m = Self::zero(self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                m.set(r, j, self.get(r, c));
            }
        }
        m
    }

    pub fn hstack(&self, right: &FieldMatrix) -> Result<FieldMatrix> {
        check_fields(self.field, right.field)?;
        if self.rows != right.rows {
            return Err(Error::DimensionMismatch(format!(
                "hstack rows {} vs {}",
                self.rows, right.rows
            )));
        }
        let mut m = Self::zero(self.field, self.rows, self.cols + right.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c));
            }
            for c in 0..right.cols {
                m.set(r, self.cols + c, right.get(r, c));
            }
        }
        Ok(m)
    }

    pub fn vstack(&self, below: &FieldMatrix) -> Result<FieldMatrix> {
        check_fields(self.field, below.field)?;
        if self.cols != below.cols {
            return Err(Error::DimensionMismatch(format!(
                "vstack cols {} vs {}",
                self.cols, below.cols
            )));
        }
        let mut m = Self::zero(self.field, self.rows + below.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c));
            }
        }
        for r in 0..below.rows {
            for c in 0..self.cols {
                m.set(self.rows + r, c, below.get(r, c));
            }
        }
        Ok(m)
    }

    /// Append a column on the right.
    pub fn with_column(&self, v: &FieldVector) -> Result<FieldMatrix> {
        check_fields(self.field, v.field())?;
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "column length {} vs {} rows",
                v.len(),
                self.rows
            )));
        }
        let mut m = Self::zero(self.field, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c));
            }
            m.set(r, self.cols, v.get(r));
        }
        Ok(m)
    }

    // -- elementary row/column operations ------------------------------------

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    /// Row i *= factor (factor nonzero).
    pub fn scale_row(&mut self, i: usize, factor: u8) {
        assert!(factor != 0, "row scaling by zero");
        for c in 0..self.cols {
            let v = self.field.mul(self.get(i, c), factor);
            self.set(i, c, v);
        }
    }

    /// Row dst += factor * row src.
    pub fn add_scaled_row(&mut self, src: usize, factor: u8, dst: usize) {
        if factor == 0 {
            return;
        }
        for c in 0..self.cols {
            let v = self
                .field
                .add(self.get(dst, c), self.field.mul(self.get(src, c), factor));
            self.set(dst, c, v);
        }
    }

    /// Column j *= factor (factor nonzero).
    pub fn scale_col(&mut self, j: usize, factor: u8) {
        assert!(factor != 0, "column scaling by zero");
        for r in 0..self.rows {
            let v = self.field.mul(self.get(r, j), factor);
            self.set(r, j, v);
        }
    }

    pub fn push_zero_row(&mut self) {
        self.entries.extend(std::iter::repeat_n(0, self.cols));
        self.rows += 1;
    }

    pub fn remove_row(&mut self, i: usize) {
        let start = i * self.cols;
        self.entries.drain(start..start + self.cols);
        self.rows -= 1;
    }

    pub fn remove_col(&mut self, j: usize) {
        let mut out = Vec::with_capacity((self.cols - 1) * self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if c != j {
                    out.push(self.get(r, c));
                }
            }
        }
        self.entries = out;
        self.cols -= 1;
    }

    // -- elimination ----------------------------------------------------------

    /// Row-space dimension, by exact Gaussian elimination mod q.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Reduced row-echelon form and the pivot columns (0-based, increasing).
    pub fn rref(&self) -> (FieldMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(r) = (pivot_row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            m.swap_rows(pivot_row, r);
            let inv = m.field.inv(m.get(pivot_row, col));
            m.scale_row(pivot_row, inv);
            for r in 0..m.rows {
                if r != pivot_row && m.get(r, col) != 0 {
                    let factor = m.field.neg(m.get(r, col));
                    m.add_scaled_row(pivot_row, factor, r);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (m, pivots)
    }

    /// Matrix product self * rhs.
    pub fn mat_mul(&self, rhs: &FieldMatrix) -> Result<FieldMatrix> {
        check_fields(self.field, rhs.field)?;
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "product of {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zero(self.field, self.rows, rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = 0u32;
                for k in 0..self.cols {
                    acc += self.get(r, k) as u32 * rhs.get(k, c) as u32;
                }
                out.set(r, c, (acc % self.field.q() as u32) as u8);
            }
        }
        Ok(out)
    }
}

impl std::fmt::Display for FieldMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for r in 0..self.rows {
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            if r + 1 < self.rows {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

/// Row vector times matrix, z·M.
pub fn vec_mat_mul(z: &FieldVector, m: &FieldMatrix) -> Result<FieldVector> {
    check_fields(z.field(), m.field)?;
    if z.len() != m.rows {
        return Err(Error::DimensionMismatch(format!(
            "vector length {} vs {} matrix rows",
            z.len(),
            m.rows
        )));
    }
    let q = m.field.q() as u32;
    let entries = (0..m.cols)
        .map(|c| {
            let mut acc = 0u32;
            for r in 0..m.rows {
                acc += z.get(r) as u32 * m.get(r, c) as u32;
            }
            (acc % q) as u8
        })
        .collect();
    Ok(FieldVector::from_reduced(m.field, entries))
}

/// Exact membership test v ∈ ⟨M⟩ (the span of M's columns), decided by
/// comparing rank(M) with rank([M | v]).
pub fn in_column_span(m: &FieldMatrix, v: &FieldVector) -> Result<bool> {
    check_fields(m.field(), v.field())?;
    if v.len() != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "span test: vector length {} vs {} matrix rows",
            v.len(),
            m.rows()
        )));
    }
    let augmented = m.with_column(v)?;
    Ok(augmented.rank() == m.rank())
}

/// Two matrices have the same row space (same column count assumed checked by
/// the caller via dimension errors here).
pub fn same_row_space(a: &FieldMatrix, b: &FieldMatrix) -> Result<bool> {
    check_fields(a.field(), b.field())?;
    if a.cols() != b.cols() {
        return Err(Error::DimensionMismatch(format!(
            "row-space comparison of {} vs {} columns",
            a.cols(),
            b.cols()
        )));
    }
    let ra = a.rank();
    let rb = b.rank();
    Ok(ra == rb && a.vstack(b)?.rank() == ra)
}
