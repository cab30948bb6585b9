//! Dense matrices over [`Scalar`].

use crate::field::Field;
use crate::scalar::{Prec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![Scalar::exact_zero(); rows * cols] }
    }

    pub fn filled(rows: usize, cols: usize, s: Scalar) -> Matrix {
        Matrix { rows, cols, data: vec![s; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = field.one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend(row);
        }
        Matrix { rows: r, cols: c, data }
    }

    pub fn from_cols(dim: usize, cols: Vec<Vec<Scalar>>) -> Matrix {
        let c = cols.len();
        let mut m = Matrix::zero(dim, c);
        for (j, col) in cols.into_iter().enumerate() {
            assert_eq!(col.len(), dim);
            for (i, s) in col.into_iter().enumerate() {
                *m.at_mut(i, j) = s;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn set_col(&mut self, j: usize, col: Vec<Scalar>) {
        assert_eq!(col.len(), self.rows);
        for (i, s) in col.into_iter().enumerate() {
            *self.at_mut(i, j) = s;
        }
    }

    pub fn col_iter(&self) -> impl Iterator<Item = Vec<Scalar>> + '_ {
        (0..self.cols).map(|j| self.col(j))
    }

    pub fn hcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut cols: Vec<Vec<Scalar>> = self.col_iter().collect();
        cols.extend(other.col_iter());
        Matrix::from_cols(self.rows, cols)
    }

    pub fn mul(&self, field: &Field, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Scalar::exact_zero();
                for k in 0..self.cols {
                    acc = field.add(&acc, &field.mul(self.at(i, k), other.at(k, j)));
                }
                *out.at_mut(i, j) = acc;
            }
        }
        out
    }

    pub fn mul_vec(&self, field: &Field, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::exact_zero();
                for k in 0..self.cols {
                    acc = field.add(&acc, &field.mul(self.at(i, k), &v[k]));
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, field: &Field, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = field.add(a, b);
        }
        out
    }

    pub fn sub(&self, field: &Field, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = field.sub(a, b);
        }
        out
    }

    pub fn scale(&self, field: &Field, s: &Scalar) -> Matrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = field.mul(a, s);
        }
        out
    }

    /// Multiplies every entry by `eta^k`.
    pub fn shift(&self, field: &Field, k: i64) -> Matrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = field.shift(a, k);
        }
        out
    }

    pub fn entries(&self) -> impl Iterator<Item = &Scalar> {
        self.data.iter()
    }

    /// Minimal finite absolute precision over the entries, if any is finite.
    pub fn min_finite_prec(&self) -> Option<i64> {
        self.data
            .iter()
            .filter_map(|s| match s.prec() {
                Prec::Finite(n) => Some(n),
                Prec::Inf => None,
            })
            .min()
    }

    /// Entry-wise certified agreement modulo `eta^n`.
    pub fn agree_at(&self, field: &Field, other: &Matrix, n: i64) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| field.agree_at(a, b, n))
    }

    /// Row-major text rendering for debugging.
    pub fn format(&self, field: &Field) -> String {
        let mut s = String::new();
        for i in 0..self.rows {
            let row: Vec<String> =
                (0..self.cols).map(|j| field.format_scalar(self.at(i, j))).collect();
            s.push_str(&format!("[{}]\n", row.join(", ")));
        }
        s
    }
}
