use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{denominator_lcm, fmt_rat, IntMat};
use crate::{Error, Result};

/// Dense row-major matrix of exact rationals. Entries are always reduced
/// with positive denominator, which `BigRational` guarantees.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMat {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RatMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMat {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
    }

    pub fn from_fn<F: FnMut(usize, usize) -> BigRational>(
        rows: usize,
        cols: usize,
        mut f: F,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RatMat { rows, cols, data }
    }

    pub fn try_from_rows(rows: Vec<Vec<BigRational>>, cols_if_empty: usize) -> Result<Self> {
        let cols = rows.first().map_or(cols_if_empty, |r| r.len());
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            data.extend(r);
        }
        Ok(RatMat {
            rows: nrows,
            cols,
            data,
        })
    }

    /// Column vector.
    pub fn column(v: Vec<BigRational>) -> Self {
        RatMat {
            rows: v.len(),
            cols: 1,
            data: v,
        }
    }

    pub fn diag(entries: Vec<BigRational>) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.data
    }

    pub fn diagonal(&self) -> Vec<BigRational> {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)].clone())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        RatMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    /// Integer matrix if every entry is integral.
    pub fn to_intmat(&self) -> Option<IntMat> {
        if !self.is_integral() {
            return None;
        }
        IntMat::from_vec(
            self.rows,
            self.cols,
            self.data.iter().map(|x| x.to_integer()).collect(),
        )
        .ok()
    }

    /// Least common multiple of all denominators.
    pub fn common_denominator(&self) -> BigInt {
        denominator_lcm(&self.data)
    }

    pub fn checked_mul(&self, rhs: &RatMat) -> Result<RatMat> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = RatMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![BigRational::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o += vi * &self[(i, j)];
            }
        }
        out
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<RatMat> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(
                "inverse of non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RatMat::identity(n);
        for c in 0..n {
            let p = (c..n)
                .find(|&r| !a[(r, c)].is_zero())
                .ok_or(Error::Singular)?;
            a.swap_rows(c, p);
            inv.swap_rows(c, p);
            let pivot = a[(c, c)].clone();
            for j in 0..n {
                a[(c, j)] /= &pivot;
                inv[(c, j)] /= &pivot;
            }
            for r in 0..n {
                if r == c || a[(r, c)].is_zero() {
                    continue;
                }
                let f = a[(r, c)].clone();
                for j in 0..n {
                    let d = &f * &a[(c, j)];
                    a[(r, j)] -= d;
                    let d = &f * &inv[(c, j)];
                    inv[(r, j)] -= d;
                }
            }
        }
        Ok(inv)
    }

    pub fn det(&self) -> Result<BigRational> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(
                "determinant of non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = BigRational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[(r, c)].is_zero()) else {
                return Ok(BigRational::zero());
            };
            if p != c {
                a.swap_rows(c, p);
                det = -det;
            }
            let pivot = a[(c, c)].clone();
            det *= &pivot;
            for r in c + 1..n {
                if a[(r, c)].is_zero() {
                    continue;
                }
                let f = &a[(r, c)] / &pivot;
                for j in c..n {
                    let d = &f * &a[(c, j)];
                    a[(r, j)] -= d;
                }
            }
        }
        Ok(det)
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl From<&IntMat> for RatMat {
    fn from(m: &IntMat) -> Self {
        m.to_ratmat()
    }
}

impl Index<(usize, usize)> for RatMat {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &RatMat {
    type Output = RatMat;
    fn mul(self, rhs: &RatMat) -> RatMat {
        self.checked_mul(rhs)
            .expect("dimension mismatch in RatMat product")
    }
}

impl fmt::Debug for RatMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatMat{}x{}{}", self.rows, self.cols, self)
    }
}

impl fmt::Display for RatMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", fmt_rat(x))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
