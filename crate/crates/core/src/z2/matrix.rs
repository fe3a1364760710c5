use super::Z2Vector;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("dimension mismatch: expected {expected}, found {found}")]
pub struct DimensionMismatch {
    pub expected: usize,
    pub found: usize,
}

/// Dense matrix over Z2 stored as packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Z2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Z2Vector>,
}

/// Reduced row echelon form with the pivot column of each nonzero row.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rows: Vec<Z2Vector>,
    pub pivots: Vec<usize>,
}

impl Z2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Z2Matrix {
            rows,
            cols,
            data: vec![Z2Vector::zeros(cols); rows],
        }
    }

    pub fn identity(k: usize) -> Self {
        let mut m = Self::zeros(k, k);
        for i in 0..k {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows of equal length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Z2Vector>) -> Result<Self, DimensionMismatch> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Z2Matrix {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Z2Vector]) -> Result<Self, DimensionMismatch> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(DimensionMismatch {
                    expected: rows,
                    found: c.len(),
                });
            }
            for i in c.ones() {
                m.set(i, j, true);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i].get(j)
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.data[i].set(j, value);
    }

    #[inline]
    pub fn flip(&mut self, i: usize, j: usize) {
        self.data[i].flip(j);
    }

    pub fn row(&self, i: usize) -> &Z2Vector {
        &self.data[i]
    }

    pub fn row_vectors(&self) -> &[Z2Vector] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Z2Vector {
        Z2Vector::from_bits((0..self.rows).map(|i| self.get(i, j)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Z2Vector::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (i, row) in self.data.iter().enumerate() {
            for j in row.ones() {
                t.set(j, i, true);
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &Z2Vector) -> Result<Z2Vector, DimensionMismatch> {
        if v.len() != self.cols {
            return Err(DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok(Z2Vector::from_bits(self.data.iter().map(|r| r.dot(v))))
    }

    pub fn mul(&self, other: &Z2Matrix) -> Result<Z2Matrix, DimensionMismatch> {
        if other.rows != self.cols {
            return Err(DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Z2Matrix::zeros(self.rows, other.cols);
        for (i, row) in self.data.iter().enumerate() {
            for k in row.ones() {
                out.data[i] ^= &other.data[k];
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form; pivots are chosen at the lowest available
    /// row for each column in turn.
    pub fn echelon(&self) -> Echelon {
        let mut rows = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| rows[i].get(c)) else {
                continue;
            };
            rows.swap(r, p);
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row.get(c) {
                    *row ^= &pivot_row;
                }
            }
            pivots.push(c);
            r += 1;
        }
        rows.truncate(r);
        Echelon { rows, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of `{v : self·v = 0}`, one vector per non-pivot column in
    /// increasing column order.
    pub fn kernel_basis(&self) -> Vec<Z2Vector> {
        let ech = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = Z2Vector::unit(self.cols, f);
                for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
                    if row.get(f) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }
}

impl Echelon {
    /// Whether `v` lies in the row space.
    pub fn contains(&self, v: &Z2Vector) -> bool {
        let mut w = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if w.get(p) {
                w ^= row;
            }
        }
        w.is_zero()
    }
}

impl fmt::Debug for Z2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Z2Matrix {}x{}", self.rows, self.cols)?;
        for r in &self.data {
            writeln!(f, "  {r}")?;
        }
        Ok(())
    }
}
