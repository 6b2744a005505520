//! Rationals viewed inside Q_p, and dense matrices over Q.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Q = num_rational::BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn vp_int(x: &BigInt, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    let mut x = x.clone();
    let mut v = 0;
    loop {
        let (qt, r) = x.div_rem(&pb);
        if !r.is_zero() {
            return Some(v);
        }
        x = qt;
        v += 1;
    }
}

/// p-adic valuation, `None` for zero.
pub fn vp(x: &Q, p: u64) -> Option<i64> {
    Some(vp_int(x.numer(), p)? - vp_int(x.denom(), p).unwrap_or(0))
}

pub fn is_integral(x: &Q, p: u64) -> bool {
    vp(x, p).is_none_or(|v| v >= 0)
}

/// p^k as a rational, k may be negative.
pub fn ppow(p: u64, k: i64) -> Q {
    let b = num_traits::pow(BigInt::from(p), k.unsigned_abs() as usize);
    if k >= 0 {
        Q::from_integer(b)
    } else {
        Q::new(BigInt::one(), b)
    }
}

pub fn ipow(p: u64, k: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), k as usize)
}

pub fn floor_q(x: &Q) -> i64 {
    i64::try_from(x.floor().to_integer()).expect("floor out of range")
}

pub fn ceil_q(x: &Q) -> i64 {
    i64::try_from(x.ceil().to_integer()).expect("ceil out of range")
}

pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Residue of a p-integral rational modulo p^k, in [0, p^k).
pub fn residue(x: &Q, p: u64, k: u32) -> BigInt {
    let m = ipow(p, k);
    let inv = mod_inverse(x.denom(), &m).expect("denominator divisible by p");
    (x.numer() * inv).mod_floor(&m)
}

pub fn residue_u64(x: &Q, p: u64) -> u64 {
    let r = residue(x, p, 1);
    u64::try_from(r).unwrap()
}

/// Dense row-major matrix over Q.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Q>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "]")
    }
}

impl core::ops::Index<(usize, usize)> for Mat {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        &mut self.data[i * self.cols + j]
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn diag(entries: &[Q]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Q>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().cloned());
        }
        Mat { rows: r, cols: c, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let v: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        Self::from_rows(&v)
    }

    pub fn from_cols(cols: &[Vec<Q>]) -> Self {
        let c = cols.len();
        let r = if c == 0 { 0 } else { cols[0].len() };
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r, "ragged columns");
            for i in 0..r {
                m[(i, j)] = col[i].clone();
            }
        }
        m
    }

    pub fn col(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Q> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn cols_vec(&self) -> Vec<Vec<Q>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut s = Q::zero();
                for j in 0..self.cols {
                    if !v[j].is_zero() {
                        s += &self[(i, j)] * &v[j];
                    }
                }
                s
            })
            .collect()
    }

    pub fn scale(&self, c: &Q) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    /// Row echelon by Gaussian elimination; returns (echelon form, pivot columns, sign of permutation).
    fn echelon(&self) -> (Mat, Vec<usize>, bool) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut neg = false;
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else { continue };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
                neg = !neg;
            }
            let piv = m[(r, c)].clone();
            for i in r + 1..m.rows {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] / &piv;
                for j in c..m.cols {
                    let t = &f * &m[(r, j)];
                    m[(i, j)] -= t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots, neg)
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    pub fn det(&self) -> Q {
        assert_eq!(self.rows, self.cols);
        let (e, piv, neg) = self.echelon();
        if piv.len() < self.rows {
            return Q::zero();
        }
        let mut d = Q::one();
        for i in 0..self.rows {
            d *= &e[(i, i)];
        }
        if neg {
            -d
        } else {
            d
        }
    }

    pub fn inverse(&self) -> Result<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Mat::identity(n);
        for c in 0..n {
            let pr = (c..n).find(|&i| !a[(i, c)].is_zero()).ok_or(Error::SingularMatrix)?;
            if pr != c {
                for j in 0..n {
                    a.data.swap(pr * n + j, c * n + j);
                    inv.data.swap(pr * n + j, c * n + j);
                }
            }
            let piv = a[(c, c)].clone();
            for j in 0..n {
                a[(c, j)] /= &piv;
                inv[(c, j)] /= &piv;
            }
            for i in 0..n {
                if i == c || a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone();
                for j in 0..n {
                    let t = &f * &a[(c, j)];
                    a[(i, j)] -= t;
                    let t = &f * &inv[(c, j)];
                    inv[(i, j)] -= t;
                }
            }
        }
        Ok(inv)
    }

    /// Smallest valuation of any entry, `None` for the zero matrix.
    pub fn min_val(&self, p: u64) -> Option<i64> {
        self.data.iter().filter_map(|x| vp(x, p)).min()
    }

    pub fn is_integral(&self, p: u64) -> bool {
        self.data.iter().all(|x| is_integral(x, p))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }
}

/// Ultrametric absolute value exponent: the smallest valuation among entries.
pub fn vec_min_val(v: &[Q], p: u64) -> Option<i64> {
    v.iter().filter_map(|x| vp(x, p)).min()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        assert_eq!(vp(&qf(18, 5), 3), Some(2));
        assert_eq!(vp(&qf(5, 27), 3), Some(-3));
        assert_eq!(vp(&q(0), 3), None);
        assert_eq!(residue(&qf(1, 4), 3, 4), BigInt::from(61));
    }

    #[test]
    fn inverse_and_det() {
        let m = Mat::from_i64(&[&[2, 1], &[7, 4]]);
        assert_eq!(m.det(), q(1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(2));
        assert_eq!(Mat::from_i64(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert!(Mat::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_err());
    }
}
