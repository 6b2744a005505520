//! Dense matrices over a truncated Witt ring, and F_p-linear algebra on their reductions.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::fq::{inv_mod_p, FqElement};
use crate::arith::{WittElement, WittRingSpec};
use crate::error::{Error, Result};
use crate::rat::{is_integral, residue, Mat};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<WittElement>,
}

impl WMat {
    pub fn zeros(w: &WittRingSpec, rows: usize, cols: usize) -> Self {
        WMat { rows, cols, data: vec![w.zero(); rows * cols] }
    }

    pub fn identity(w: &WittRingSpec, n: usize) -> Self {
        let mut m = Self::zeros(w, n, n);
        for i in 0..n {
            m.data[i * n + i] = w.one();
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> &WittElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: WittElement) {
        self.data[i * self.cols + j] = x;
    }

    /// Reduce a p-integral rational matrix into the Witt ring (entries land in Z/p^N).
    pub fn from_rational(w: &WittRingSpec, m: &Mat) -> Result<Self> {
        if !m.is_integral(w.p) {
            return Err(Error::InvalidParameters("matrix is not p-integral".into()));
        }
        let data = m
            .data
            .iter()
            .map(|x| {
                debug_assert!(is_integral(x, w.p));
                let r = residue(x, w.p, w.n);
                w.from_int(i64::try_from(r).unwrap())
            })
            .collect();
        Ok(WMat { rows: m.rows, cols: m.cols, data })
    }

    pub fn from_ints(w: &WittRingSpec, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows[0].len();
        WMat { rows: r, cols: c, data: rows.iter().flat_map(|row| row.iter().map(|&x| w.from_int(x))).collect() }
    }

    pub fn mul(&self, w: &WittRingSpec, o: &WMat) -> WMat {
        assert_eq!(self.cols, o.rows);
        let mut out = Self::zeros(w, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if w.is_zero(a) {
                    continue;
                }
                for j in 0..o.cols {
                    let t = w.mul(a, o.at(k, j));
                    let s = w.add(out.at(i, j), &t);
                    out.set(i, j, s);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, w: &WittRingSpec, v: &[WittElement]) -> Vec<WittElement> {
        (0..self.rows)
            .map(|i| (0..self.cols).fold(w.zero(), |acc, j| w.add(&acc, &w.mul(self.at(i, j), &v[j]))))
            .collect()
    }

    pub fn add(&self, w: &WittRingSpec, o: &WMat) -> WMat {
        WMat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| w.add(a, b)).collect() }
    }

    pub fn sub(&self, w: &WittRingSpec, o: &WMat) -> WMat {
        WMat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| w.sub(a, b)).collect() }
    }

    pub fn scale(&self, w: &WittRingSpec, c: &WittElement) -> WMat {
        WMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| w.mul(a, c)).collect() }
    }

    /// Entrywise sigma^k.
    pub fn frob(&self, w: &WittRingSpec, k: i64) -> WMat {
        WMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| w.frobenius(a, k)).collect() }
    }

    pub fn is_scalar(&self, w: &WittRingSpec, c: &WittElement) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| if i == j { self.at(i, j) == c } else { w.is_zero(self.at(i, j)) }))
    }

    pub fn col(&self, j: usize) -> Vec<WittElement> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn from_cols(w: &WittRingSpec, cols: &[Vec<WittElement>]) -> WMat {
        let r = cols.first().map_or(0, |c| c.len());
        let mut m = Self::zeros(w, r, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    /// Characteristic polynomial det(X - A) by Berkowitz's division-free algorithm,
    /// coefficients lowest degree first (monic, length n + 1).
    pub fn charpoly(&self, w: &WittRingSpec) -> Vec<WittElement> {
        let n = self.rows;
        assert_eq!(n, self.cols);
        // vector c for the leading principal submatrix, highest degree first
        let mut c: Vec<WittElement> = vec![w.one(), w.neg(self.at(0, 0))];
        for r in 1..n {
            // A_r = [[M, R], [S, a]] with M the r x r leading block
            let a = self.at(r, r).clone();
            let rcol: Vec<WittElement> = (0..r).map(|i| self.at(i, r).clone()).collect();
            let srow: Vec<WittElement> = (0..r).map(|j| self.at(r, j).clone()).collect();
            // Toeplitz first column: 1, -a, -S R, -S M R, -S M^2 R, ...
            let mut t = vec![w.one(), w.neg(&a)];
            let mut v = rcol.clone();
            for _ in 0..r {
                let s = srow.iter().zip(&v).fold(w.zero(), |acc, (x, y)| w.add(&acc, &w.mul(x, y)));
                t.push(w.neg(&s));
                let nv: Vec<WittElement> =
                    (0..r).map(|i| (0..r).fold(w.zero(), |acc, j| w.add(&acc, &w.mul(self.at(i, j), &v[j])))).collect();
                v = nv;
            }
            // new c = T * c where T is (r+2) x (r+1) lower Toeplitz with first column t
            let mut nc = vec![w.zero(); r + 2];
            for (i, slot) in nc.iter_mut().enumerate() {
                for (j, cj) in c.iter().enumerate() {
                    if i >= j {
                        *slot = w.add(slot, &w.mul(&t[i - j], cj));
                    }
                }
            }
            c = nc;
        }
        c.reverse();
        c
    }

    pub fn det(&self, w: &WittRingSpec) -> WittElement {
        let cp = self.charpoly(w);
        if self.rows % 2 == 0 {
            cp[0].clone()
        } else {
            w.neg(&cp[0])
        }
    }

    /// Adjugate via the characteristic polynomial: adj(A) = (-1)^{n+1} (A^{n-1} + c_{n-1} A^{n-2} + ... + c_1).
    pub fn adjugate(&self, w: &WittRingSpec) -> WMat {
        let n = self.rows;
        let cp = self.charpoly(w);
        // q(A) = A^{n-1} + c_{n-1} A^{n-2} + ... + c_1, and A q(A) = -c_0 I
        let mut acc = WMat::identity(w, n);
        for k in (1..n).rev() {
            acc = self.mul(w, &acc).add(w, &WMat::identity(w, n).scale(w, &cp[k]));
        }
        // A * acc = -c_0, so adj = (-1)^{n+1} acc with det = (-1)^n c_0
        if n % 2 == 1 {
            acc
        } else {
            acc.scale(w, &w.from_int(-1))
        }
    }

    pub fn reduce(&self, w: &WittRingSpec) -> Vec<Vec<FqElement>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| w.reduce(self.at(i, j))).collect()).collect()
    }

    pub fn is_zero(&self, w: &WittRingSpec) -> bool {
        self.data.iter().all(|x| w.is_zero(x))
    }
}

/// Rank over F_{p^m} of a matrix of residues.
pub fn fq_rank(w: &WittRingSpec, m: &[Vec<FqElement>]) -> usize {
    let k = &w.residue;
    let mut a: Vec<Vec<FqElement>> = m.to_vec();
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..rows).find(|&i| !k.is_zero(&a[i][c])) else { continue };
        a.swap(pr, rank);
        let inv = k.inv(&a[rank][c]).unwrap();
        for i in 0..rows {
            if i != rank && !k.is_zero(&a[i][c]) {
                let f = k.mul(&a[i][c], &inv);
                for t in 0..cols {
                    let s = k.mul(&f, &a[rank][t]);
                    a[i][t] = k.sub(&a[i][t], &s);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Dense F_p matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMat {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl FpMat {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        FpMat { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    /// Reduced row echelon form with pivot columns.
    fn rref(&self) -> (FpMat, Vec<usize>) {
        let p = self.p;
        let mut a = self.clone();
        let mut piv = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            let Some(pr) = (r..a.rows).find(|&i| a.get(i, c) != 0) else { continue };
            for j in 0..a.cols {
                a.data.swap(pr * a.cols + j, r * a.cols + j);
            }
            let inv = inv_mod_p(a.get(r, c), p);
            for j in 0..a.cols {
                let v = a.get(r, j) * inv % p;
                a.set(r, j, v);
            }
            for i in 0..a.rows {
                let f = a.get(i, c);
                if i != r && f != 0 {
                    for j in 0..a.cols {
                        let v = (a.get(i, j) + p * p - f * a.get(r, j) % p) % p;
                        a.set(i, j, v);
                    }
                }
            }
            piv.push(c);
            r += 1;
            if r == a.rows {
                break;
            }
        }
        (a, piv)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the kernel.
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        let (a, piv) = self.rref();
        let p = self.p;
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u64; self.cols];
                v[f] = 1;
                for (r, &pc) in piv.iter().enumerate() {
                    v[pc] = (p - a.get(r, f)) % p;
                }
                v
            })
            .collect()
    }

    /// One solution of A x = b with free variables set to zero.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        let p = self.p;
        let mut aug = FpMat::zeros(p, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let (r, piv) = aug.rref();
        if piv.contains(&self.cols) {
            return None;
        }
        let mut x = vec![0u64; self.cols];
        for (row, &pc) in piv.iter().enumerate() {
            x[pc] = r.get(row, self.cols);
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_and_adjugate() {
        let w = WittRingSpec::build(3, 2, 5).unwrap();
        let a = WMat::from_ints(&w, &[&[1, 2, 0], &[0, 3, 1], &[4, 0, 2]]);
        let cp = a.charpoly(&w);
        // trace 6, det = 1*6 - 2*(0 - 4) = 14
        assert_eq!(cp[3], w.one());
        assert_eq!(cp[2], w.from_int(-6));
        assert_eq!(a.det(&w), w.from_int(14));
        let adj = a.adjugate(&w);
        assert!(a.mul(&w, &adj).is_scalar(&w, &w.from_int(14)));
        let b = WMat::from_ints(&w, &[&[0, 3], &[1, 0]]);
        assert!(b.mul(&w, &b.adjugate(&w)).is_scalar(&w, &w.from_int(-3)));
    }

    #[test]
    fn fp_kernel_and_solve() {
        let mut m = FpMat::zeros(3, 2, 3);
        for (i, v) in [1, 1, 0, 0, 1, 2].iter().enumerate() {
            m.data[i] = *v;
        }
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert_eq!(m.solve(&[1, 1]).unwrap(), vec![0, 1, 0]);
        assert_eq!(m.rank(), 2);
    }
}
