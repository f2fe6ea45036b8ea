//! Dense exact matrices over a [`Field`].
//!
//! Desk-scale dimensions only; everything is straightforward Gauss–Jordan
//! with exact arithmetic. Row-reduction is deterministic (first usable pivot
//! in row/column order), which downstream code relies on for reproducible
//! kernel bases and generator choices.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::scalar::{format_rat, parse_rat, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_cols(cols: Vec<Vec<Rat>>) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |x| x.len());
        assert!(cols.iter().all(|x| x.len() == r), "ragged cols");
        let mut m = Matrix::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    /// Single-column matrix from a vector.
    pub fn column(v: Vec<Rat>) -> Self {
        let r = v.len();
        Matrix {
            rows: r,
            cols: 1,
            data: v,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Rat> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn is_zero(&self, field: &Field) -> bool {
        self.data.iter().all(|v| field.is_zero(v))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix, field: &Field) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Rat::zero();
                for k in 0..self.cols {
                    acc += self.get(i, k) * other.get(k, j);
                }
                out.set(i, j, field.reduce(&acc));
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat], field: &Field) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for k in 0..self.cols {
                    acc += self.get(i, k) * &v[k];
                }
                field.reduce(&acc)
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix, field: &Field) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| field.add(a, b))
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &Matrix, field: &Field) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| field.sub(a, b))
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn neg(&self, field: &Field) -> Matrix {
        let data = self.data.iter().map(|a| field.neg(a)).collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, c: &Rat, field: &Field) -> Matrix {
        let data = self.data.iter().map(|a| field.mul(c, a)).collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut out = Matrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    /// Submatrix on the given row and column indices, in the given order.
    pub fn select(&self, row_idx: &[usize], col_idx: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(row_idx.len(), col_idx.len());
        for (i, &r) in row_idx.iter().enumerate() {
            for (j, &c) in col_idx.iter().enumerate() {
                out.set(i, j, self.get(r, c).clone());
            }
        }
        out
    }

    /// Reduced row echelon form; returns the reduced matrix and the pivot
    /// column of each pivot row.
    pub fn rref(&self, field: &Field) -> (Matrix, Vec<usize>) {
        let mut m = Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| field.reduce(v)).collect(),
        };
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let pivot_row = (r..m.rows).find(|&i| !field.is_zero(m.get(i, c)));
            let Some(p) = pivot_row else { continue };
            if p != r {
                for j in 0..m.cols {
                    let a = m.get(r, j).clone();
                    let b = m.get(p, j).clone();
                    m.set(r, j, b);
                    m.set(p, j, a);
                }
            }
            let inv = field.inv(m.get(r, c));
            for j in 0..m.cols {
                let v = field.mul(&inv, m.get(r, j));
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !field.is_zero(m.get(i, c)) {
                    let f = m.get(i, c).clone();
                    for j in 0..m.cols {
                        let v = field.sub(m.get(i, j), &field.mul(&f, m.get(r, j)));
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, field: &Field) -> usize {
        self.rref(field).1.len()
    }

    /// Columns spanning the null space `{x : self · x = 0}`, with free
    /// variables taken in column-index order.
    pub fn kernel_basis(&self, field: &Field) -> Matrix {
        let (r, pivots) = self.rref(field);
        let pivot_set: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &c in &pivots {
                v[c] = true;
            }
            v
        };
        let free: Vec<usize> = (0..self.cols).filter(|&c| !pivot_set[c]).collect();
        let mut out = Matrix::zeros(self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            out.set(f, j, Rat::one());
            for (pr, &pc) in pivots.iter().enumerate() {
                out.set(pc, j, field.neg(r.get(pr, f)));
            }
        }
        out
    }

    /// Solve `self · X = b` exactly; `None` when inconsistent. Free
    /// variables are set to zero, so the solution is deterministic.
    pub fn solve(&self, b: &Matrix, field: &Field) -> Option<Matrix> {
        assert_eq!(self.rows, b.rows, "solve: row mismatch");
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref(field);
        // Any pivot in the appended block means inconsistency.
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.cols, b.cols);
        for (pr, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, r.get(pr, self.cols + j).clone());
            }
        }
        Some(x)
    }

    /// Row indices of the lexicographically-first maximal independent set of
    /// rows of the column span (pivot rows under column reduction). The
    /// standard basis vectors at the *other* indices complete the span to the
    /// whole space.
    pub fn pivot_rows_of_column_span(&self, field: &Field) -> Vec<usize> {
        let (_, pivots) = self.transpose().rref(field);
        pivots
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| format_rat(self.get(i, j))).collect())
            .collect()
    }

    /// Parse from row-major rational strings; `(rows, cols)` fixes the shape
    /// when there are zero rows.
    pub fn from_strings(rows: &[Vec<String>], shape: (usize, usize), field: &Field) -> Result<Matrix> {
        if rows.len() != shape.0 {
            return Err(Error::Input(format!(
                "matrix has {} rows, expected {}",
                rows.len(),
                shape.0
            )));
        }
        let mut out = Matrix::zeros(shape.0, shape.1);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != shape.1 {
                return Err(Error::Input(format!(
                    "matrix row {i} has {} entries, expected {}",
                    row.len(),
                    shape.1
                )));
            }
            for (j, s) in row.iter().enumerate() {
                out.set(i, j, field.normalize(&parse_rat(s)?)?);
            }
        }
        Ok(out)
    }
}
