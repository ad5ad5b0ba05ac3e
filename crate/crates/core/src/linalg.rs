//! Dense matrices over [`Rational`] and over [`Poly`].

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::Rational;

pub type QVec = Vec<Rational>;
pub type PVec = Vec<Poly>;

pub fn qvec_zero(n: usize) -> QVec {
    vec![Rational::zero(); n]
}

pub fn qvec_unit(n: usize, i: usize) -> QVec {
    let mut v = qvec_zero(n);
    v[i] = Rational::one();
    v
}

pub fn qvec_add(a: &[Rational], b: &[Rational]) -> QVec {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn qvec_sub(a: &[Rational], b: &[Rational]) -> QVec {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn qvec_neg(a: &[Rational]) -> QVec {
    a.iter().map(|x| -x).collect()
}

pub fn qvec_scale(a: &[Rational], c: &Rational) -> QVec {
    a.iter().map(|x| x * c).collect()
}

pub fn qvec_is_zero(a: &[Rational]) -> bool {
    a.iter().all(Rational::is_zero)
}

pub fn pvec_zero(num_vars: usize, len: usize) -> PVec {
    vec![Poly::zero(num_vars); len]
}

pub fn pvec_add(a: &[Poly], b: &[Poly]) -> PVec {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn pvec_sub(a: &[Poly], b: &[Poly]) -> PVec {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn pvec_neg(a: &[Poly]) -> PVec {
    a.iter().map(|x| -x).collect()
}

pub fn pvec_scale(a: &[Poly], f: &Poly) -> PVec {
    a.iter().map(|x| x * f).collect()
}

pub fn pvec_is_zero(a: &[Poly]) -> bool {
    a.iter().all(Poly::is_zero)
}

/// Row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMat {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn scalar(n: usize, c: Rational) -> Self {
        let mut m = QMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::structural("ragged matrix rows"));
        }
        Ok(QMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_ints(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        QMat {
            rows,
            cols,
            data: entries.iter().map(|&x| Rational::from_int(x)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn transpose(&self) -> QMat {
        let mut t = QMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn try_mul(&self, other: &QMat) -> Result<QMat> {
        if self.cols != other.rows {
            return Err(Error::structural(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = QMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        self.try_mul(other).expect("compatible matrix shapes")
    }

    fn check_shape(&self, other: &QMat) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::structural(format!(
                "shape {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &QMat) -> QMat {
        self.check_shape(other).expect("same matrix shapes");
        QMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &QMat) -> QMat {
        self.check_shape(other).expect("same matrix shapes");
        QMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> QMat {
        self.scale(&Rational::from_int(-1))
    }

    pub fn scale(&self, c: &Rational) -> QMat {
        QMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn apply(&self, v: &[Rational]) -> QVec {
        assert_eq!(v.len(), self.cols, "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    /// Gauss-Jordan inverse; `None` if singular or not square.
    pub fn inverse(&self) -> Option<QMat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = QMat::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            if pivot != col {
                for j in 0..n {
                    a.data.swap(pivot * n + j, col * n + j);
                    inv.data.swap(pivot * n + j, col * n + j);
                }
            }
            let p = a.get(col, col).recip()?;
            for j in 0..n {
                a.set(col, j, a.get(col, j) * &p);
                inv.set(col, j, inv.get(col, j) * &p);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = a.get(r, j) - &(&f * a.get(col, j));
                    a.set(r, j, v);
                    let w = inv.get(r, j) - &(&f * inv.get(col, j));
                    inv.set(r, j, w);
                }
            }
        }
        Some(inv)
    }

    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..self.rows).find(|&r| !a.get(r, col).is_zero()) else {
                continue;
            };
            for j in 0..self.cols {
                a.data.swap(pivot * self.cols + j, rank * self.cols + j);
            }
            let p = a.get(rank, col).recip().expect("nonzero pivot");
            for r in rank + 1..self.rows {
                let f = a.get(r, col) * &p;
                if f.is_zero() {
                    continue;
                }
                for j in 0..self.cols {
                    let v = a.get(r, j) - &(&f * a.get(rank, j));
                    a.set(r, j, v);
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn to_pmat(&self, num_vars: usize) -> PMat {
        PMat {
            rows: self.rows,
            cols: self.cols,
            num_vars,
            data: self.data.iter().map(|c| Poly::constant(num_vars, c.clone())).collect(),
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }
}

impl fmt::Debug for QMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

/// Row-major matrix of polynomials, all over the same `num_vars`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PMat {
    rows: usize,
    cols: usize,
    num_vars: usize,
    data: Vec<Poly>,
}

impl PMat {
    pub fn zeros(num_vars: usize, rows: usize, cols: usize) -> Self {
        PMat {
            rows,
            cols,
            num_vars,
            data: vec![Poly::zero(num_vars); rows * cols],
        }
    }

    pub fn identity(num_vars: usize, n: usize) -> Self {
        let mut m = PMat::zeros(num_vars, n, n);
        for i in 0..n {
            m.set(i, i, Poly::one(num_vars));
        }
        m
    }

    pub fn from_entries(num_vars: usize, rows: usize, cols: usize, data: Vec<Poly>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::structural(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|p| p.num_vars() != num_vars) {
            return Err(Error::structural("matrix entry over the wrong number of variables"));
        }
        Ok(PMat {
            rows,
            cols,
            num_vars,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Poly) {
        assert_eq!(v.num_vars(), self.num_vars, "entry over the wrong number of variables");
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Poly] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Poly::is_zero)
    }

    pub fn is_constant(&self) -> bool {
        self.data.iter().all(Poly::is_constant)
    }

    pub fn transpose(&self) -> PMat {
        let mut t = PMat::zeros(self.num_vars, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn try_mul(&self, other: &PMat) -> Result<PMat> {
        if self.cols != other.rows || self.num_vars != other.num_vars {
            return Err(Error::structural(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = PMat::zeros(self.num_vars, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &PMat) -> PMat {
        self.try_mul(other).expect("compatible matrix shapes")
    }

    fn zip_with(&self, other: &PMat, f: impl Fn(&Poly, &Poly) -> Poly) -> PMat {
        assert!(
            self.rows == other.rows && self.cols == other.cols,
            "shape {}x{} vs {}x{}",
            self.rows,
            self.cols,
            other.rows,
            other.cols
        );
        PMat {
            rows: self.rows,
            cols: self.cols,
            num_vars: self.num_vars,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &PMat) -> PMat {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &PMat) -> PMat {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn neg(&self) -> PMat {
        self.map(|p| -p)
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> PMat {
        PMat {
            rows: self.rows,
            cols: self.cols,
            num_vars: self.num_vars,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, f: &Poly) -> PMat {
        self.map(|p| p * f)
    }

    pub fn partial(&self, i: usize) -> PMat {
        self.map(|p| p.partial(i))
    }

    pub fn apply(&self, v: &[Poly]) -> PVec {
        assert_eq!(v.len(), self.cols, "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Poly::zero(self.num_vars);
                for j in 0..self.cols {
                    if !self.get(i, j).is_zero() && !v[j].is_zero() {
                        acc = &acc + &(self.get(i, j) * &v[j]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn column(&self, j: usize) -> PVec {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Constant matrix, if every entry is constant.
    pub fn to_qmat(&self) -> Option<QMat> {
        if !self.is_constant() {
            return None;
        }
        let mut m = QMat::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).constant_term());
            }
        }
        Some(m)
    }

    /// First entry that is nonzero, with its position.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &Poly)> {
        self.data
            .iter()
            .enumerate()
            .find(|(_, p)| !p.is_zero())
            .map(|(k, p)| (k / self.cols, k % self.cols, p))
    }
}

impl fmt::Debug for PMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_round_trip() {
        let m = QMat::from_ints(3, 3, &[2, 1, 0, 0, 1, 3, 1, 0, 1]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), QMat::identity(3));
        assert!(QMat::from_ints(2, 2, &[1, 2, 2, 4]).inverse().is_none());
    }

    #[test]
    fn rank_counts_pivots() {
        assert_eq!(QMat::from_ints(2, 3, &[1, 2, 3, 2, 4, 6]).rank(), 1);
        assert_eq!(QMat::identity(4).rank(), 4);
        assert_eq!(QMat::zeros(2, 2).rank(), 0);
    }

    #[test]
    fn poly_matrix_product() {
        let q = Poly::var(1, 0);
        let mut a = PMat::identity(1, 2);
        a.set(0, 1, q.clone());
        let sq = a.mul(&a);
        assert_eq!(sq.get(0, 1), &(&q + &q));
        assert_eq!(a.transpose().get(1, 0), &q);
    }
}
