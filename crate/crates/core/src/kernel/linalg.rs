//! Dense matrices over the exact rationals, sized for structure data
//! (dimensions here never exceed single digits). Inversion is plain
//! Gauss–Jordan with exact pivots; integer powers accept negative exponents
//! once the inverse exists.

use crate::error::{Error, Result};
use crate::kernel::rational::{rat_int, Rational};
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    n_rows: usize,
    n_cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zero(n_rows: usize, n_cols: usize) -> QMatrix {
        QMatrix {
            n_rows,
            n_cols,
            data: vec![rat_int(0); n_rows * n_cols],
        }
    }

    pub fn identity(n: usize) -> QMatrix {
        let mut m = QMatrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = rat_int(1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<QMatrix> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(n_rows * n_cols);
        for row in rows {
            if row.len() != n_cols {
                return Err(Error::shape("ragged matrix rows".to_string()));
            }
            data.extend(row);
        }
        Ok(QMatrix {
            n_rows,
            n_cols,
            data,
        })
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.n_cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rational {
        &mut self.data[i * self.n_cols + j]
    }

    /// Column `j` as a coordinate vector (the image of basis vector j under
    /// the usual action-on-columns convention).
    pub fn col(&self, j: usize) -> Vec<Rational> {
        (0..self.n_rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.n_rows == self.n_cols && *self == QMatrix::identity(self.n_rows)
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.n_cols, other.n_rows, "matrix dimension mismatch");
        let mut out = QMatrix::zero(self.n_rows, other.n_cols);
        for i in 0..self.n_rows {
            for k in 0..self.n_cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.n_cols {
                    let v = out.at(i, j) + &(a * other.at(k, j));
                    *out.at_mut(i, j) = v;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.n_rows, self.n_cols), (other.n_rows, other.n_cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = &*a + b;
        }
        out
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.n_rows, self.n_cols), (other.n_rows, other.n_cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = &*a - b;
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> QMatrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = &*a * c;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.n_cols, v.len(), "matrix/vector dimension mismatch");
        (0..self.n_rows)
            .map(|i| {
                let mut s = rat_int(0);
                for j in 0..self.n_cols {
                    s += self.at(i, j) * &v[j];
                }
                s
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        if self.n_rows != self.n_cols {
            return None;
        }
        let n = self.n_rows;
        let mut a = self.clone();
        let mut inv = QMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.at(r, col).is_zero())?;
            if pivot != col {
                for j in 0..n {
                    let tmp = a.at(pivot, j).clone();
                    *a.at_mut(pivot, j) = a.at(col, j).clone();
                    *a.at_mut(col, j) = tmp;
                    let tmp = inv.at(pivot, j).clone();
                    *inv.at_mut(pivot, j) = inv.at(col, j).clone();
                    *inv.at_mut(col, j) = tmp;
                }
            }
            let p = a.at(col, col).clone();
            for j in 0..n {
                *a.at_mut(col, j) = a.at(col, j) / &p;
                *inv.at_mut(col, j) = inv.at(col, j) / &p;
            }
            for r in 0..n {
                if r == col || a.at(r, col).is_zero() {
                    continue;
                }
                let f = a.at(r, col).clone();
                for j in 0..n {
                    let av = a.at(r, j) - &(&f * a.at(col, j));
                    *a.at_mut(r, j) = av;
                    let iv = inv.at(r, j) - &(&f * inv.at(col, j));
                    *inv.at_mut(r, j) = iv;
                }
            }
        }
        Some(inv)
    }

    /// Integer power; negative exponents require invertibility.
    pub fn pow(&self, e: i64) -> Result<QMatrix> {
        assert_eq!(self.n_rows, self.n_cols, "power of a non-square matrix");
        let base = if e < 0 {
            self.inverse()
                .ok_or_else(|| Error::Singular("negative power of a singular matrix".into()))?
        } else {
            self.clone()
        };
        let mut out = QMatrix::identity(self.n_rows);
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        Ok(out)
    }
}
