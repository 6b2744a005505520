//! O-lattices in Q_p^d held in column Hermite form.
//!
//! Canonical form: upper triangular, diagonal entries p^{a_i}, an entry above the pivot of
//! row i is the representative of its class mod p^{a_i} with finitely many base-p digits,
//! all in [0, p^{a_i}).

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rat::{ppow, residue, vp, Mat, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeBasis {
    pub p: u64,
    pub d: usize,
    pub hermite: Mat,
    /// log [eta : O^d] = -v(det).
    pub index: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantFactors {
    /// Weakly decreasing.
    pub exponents: Vec<i64>,
    /// Columns form a basis of the first lattice with the second equal to the span of
    /// p^{exponents[i]} * column i.
    pub adapted_basis: Mat,
}

/// Class representative of x modulo p^a Z_p with digits in [0, p), possibly with negative powers.
pub fn reduce_mod_pa(x: &Q, p: u64, a: i64) -> Q {
    match vp(x, p) {
        None => Q::zero(),
        Some(v) if v >= a => Q::zero(),
        Some(v) => {
            let u = x / ppow(p, v);
            Q::from_integer(residue(&u, p, (a - v) as u32)) * ppow(p, v)
        }
    }
}

fn swap_cols(m: &mut Mat, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..m.rows {
        let c = m.cols;
        m.data.swap(i * c + a, i * c + b);
    }
}

/// col_dst -= c * col_src
fn col_axpy(m: &mut Mat, dst: usize, src: usize, c: &Q) {
    if c.is_zero() {
        return;
    }
    for i in 0..m.rows {
        let t = c * &m[(i, src)];
        if !t.is_zero() {
            m[(i, dst)] -= t;
        }
    }
}

/// Column Hermite form of an invertible square matrix. Returns the form and the exponents a_i.
pub fn hermite_form(cols: &Mat, p: u64) -> Result<(Mat, Vec<i64>)> {
    let d = cols.rows;
    if cols.cols != d {
        return Err(Error::RankMismatch { expected: d, got: cols.cols });
    }
    let mut m = cols.clone();
    let mut a = alloc::vec![0i64; d];
    for i in (0..d).rev() {
        // pivot among columns 0..=i on row i
        let (best, v) = (0..=i)
            .filter_map(|j| vp(&m[(i, j)], p).map(|v| (j, v)))
            .min_by_key(|&(j, v)| (v, j))
            .ok_or(Error::SingularMatrix)?;
        swap_cols(&mut m, best, i);
        let unit = &m[(i, i)] / ppow(p, v);
        let inv = Q::one() / unit;
        for r in 0..d {
            let t = &m[(r, i)] * &inv;
            m[(r, i)] = t;
        }
        a[i] = v;
        for j in 0..i {
            if m[(i, j)].is_zero() {
                continue;
            }
            let c = &m[(i, j)] / ppow(p, v);
            col_axpy(&mut m, j, i, &c);
        }
    }
    for j in 1..d {
        for i in (0..j).rev() {
            let x = m[(i, j)].clone();
            let r = reduce_mod_pa(&x, p, a[i]);
            if r != x {
                let c = (&x - &r) / ppow(p, a[i]);
                col_axpy(&mut m, j, i, &c);
            }
        }
    }
    Ok((m, a))
}

impl LatticeBasis {
    pub fn from_columns(cols: &Mat, p: u64) -> Result<Self> {
        let (hermite, a) = hermite_form(cols, p)?;
        Ok(LatticeBasis { p, d: cols.rows, hermite, index: -a.iter().sum::<i64>() })
    }

    pub fn standard(p: u64, d: usize) -> Self {
        LatticeBasis { p, d, hermite: Mat::identity(d), index: 0 }
    }

    /// The diagonal lattice with p^{n_i} on the diagonal.
    pub fn diagonal(p: u64, n: &[i64]) -> Self {
        let m = Mat::diag(&n.iter().map(|&k| ppow(p, k)).collect::<Vec<_>>());
        Self::from_columns(&m, p).unwrap()
    }

    pub fn exponents(&self) -> Vec<i64> {
        (0..self.d).map(|i| vp(&self.hermite[(i, i)], self.p).unwrap()).collect()
    }

    pub fn v_det(&self) -> i64 {
        -self.index
    }

    /// Multiply by p^k; index drops by k*d.
    pub fn scale(&self, k: i64) -> Self {
        Self::from_columns(&self.hermite.scale(&ppow(self.p, k)), self.p).unwrap()
    }

    pub fn contains(&self, other: &Self) -> bool {
        let inv = self.hermite.inverse().expect("lattice basis invertible");
        inv.mul(&other.hermite).is_integral(self.p)
    }

    pub fn contains_vector(&self, v: &[Q]) -> bool {
        let inv = self.hermite.inverse().expect("lattice basis invertible");
        inv.mul_vec(v).iter().all(|x| crate::rat::is_integral(x, self.p))
    }

    /// Representative of the homothety class with index in [0, d), plus k with self = p^k * rep.
    pub fn homothety_normal(&self) -> (Self, i64) {
        let d = self.d as i64;
        let k = -self.index.div_euclid(d);
        // index(self) = index(rep) - k d
        (self.scale(-k), k)
    }

    pub fn label(&self) -> String {
        let mut s = String::new();
        for i in 0..self.d {
            if i > 0 {
                s.push(';');
            }
            for j in 0..self.d {
                if j > 0 {
                    s.push(',');
                }
                write!(s, "{}", self.hermite[(i, j)]).unwrap();
            }
        }
        s
    }

    /// Parse a label produced by [`LatticeBasis::label`] (or any row list of rationals).
    pub fn parse_label(s: &str, p: u64) -> Result<Self> {
        let m = parse_matrix_rows(s)?;
        Self::from_columns(&m, p)
    }
}

pub fn parse_matrix_rows(s: &str) -> Result<Mat> {
    let bad = || Error::InvalidParameters(alloc::format!("cannot parse matrix '{s}'"));
    let mut rows = Vec::new();
    for r in s.split(';') {
        let row: Result<Vec<Q>> = r.split(',').map(|x| x.trim().parse::<Q>().map_err(|_| bad())).collect();
        rows.push(row?);
    }
    if rows.is_empty() || rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(bad());
    }
    Ok(Mat::from_rows(&rows))
}

pub fn lattice_from_columns(cols: &Mat, p: u64) -> Result<LatticeBasis> {
    LatticeBasis::from_columns(cols, p)
}

/// The Z_(p)-span of any number of columns, which must have full row rank.
pub fn lattice_of_span(cols: &Mat, p: u64) -> Result<LatticeBasis> {
    let d = cols.rows;
    let mut m = cols.clone();
    let mut active: Vec<usize> = (0..m.cols).collect();
    let mut basis = Vec::with_capacity(d);
    for i in (0..d).rev() {
        let (pos, piv) = active
            .iter()
            .enumerate()
            .filter_map(|(k, &j)| vp(&m[(i, j)], p).map(|v| (k, j, v)))
            .min_by_key(|&(_, j, v)| (v, j))
            .map(|(k, j, _)| (k, j))
            .ok_or(Error::SingularMatrix)?;
        active.remove(pos);
        for &j in &active {
            if !m[(i, j)].is_zero() {
                let c = &m[(i, j)] / &m[(i, piv)];
                col_axpy(&mut m, j, piv, &c);
            }
        }
        basis.push(m.col(piv));
    }
    basis.reverse();
    LatticeBasis::from_columns(&Mat::from_cols(&basis), p)
}

/// v(det b) - v(det a).
pub fn relative_index(a: &LatticeBasis, b: &LatticeBasis) -> i64 {
    a.index - b.index
}

pub fn lattice_contains(a: &LatticeBasis, b: &LatticeBasis) -> bool {
    a.contains(b)
}

/// Smith normal form over Z_(p). Returns (exponents in pivot order, L^{-1}) with
/// M = L^{-1} * diag(p^e) * R^{-1} for some R in GL_d(Z_(p)).
pub fn smith(m: &Mat, p: u64) -> Result<(Vec<i64>, Mat)> {
    let d = m.rows;
    let mut a = m.clone();
    let mut linv = Mat::identity(d);
    let mut ex = Vec::with_capacity(d);
    for k in 0..d {
        let mut best: Option<(usize, usize, i64)> = None;
        for i in k..d {
            for j in k..a.cols {
                if let Some(v) = vp(&a[(i, j)], p) {
                    if best.is_none_or(|(_, _, bv)| v < bv) {
                        best = Some((i, j, v));
                    }
                }
            }
        }
        let (bi, bj, v) = best.ok_or(Error::SingularMatrix)?;
        // row swap k <-> bi, column swap k <-> bj
        if bi != k {
            for j in 0..a.cols {
                let c = a.cols;
                a.data.swap(bi * c + j, k * c + j);
            }
            swap_cols(&mut linv, bi, k);
        }
        swap_cols(&mut a, bj, k);
        let piv = a[(k, k)].clone();
        for i in k + 1..d {
            if a[(i, k)].is_zero() {
                continue;
            }
            let c = &a[(i, k)] / &piv;
            for j in 0..a.cols {
                let t = &c * &a[(k, j)];
                a[(i, j)] -= t;
            }
            // row_i -= c row_k  =>  Linv col_k += c col_i
            col_axpy(&mut linv, k, i, &(-c));
        }
        for j in k + 1..a.cols {
            a[(k, j)] = Q::zero();
        }
        ex.push(v);
    }
    Ok((ex, linv))
}

pub fn invariant_factors(a: &LatticeBasis, b: &LatticeBasis) -> Result<InvariantFactors> {
    if a.d != b.d || a.p != b.p {
        return Err(Error::InvalidParameters("lattices over different ambient data".into()));
    }
    let m = a.hermite.inverse()?.mul(&b.hermite);
    let (ex, linv) = smith(&m, a.p)?;
    let basis = a.hermite.mul(&linv);
    let mut order: Vec<usize> = (0..a.d).collect();
    order.sort_by_key(|&i| (core::cmp::Reverse(ex[i]), i));
    let exponents = order.iter().map(|&i| ex[i]).collect();
    let cols: Vec<Vec<Q>> = order.iter().map(|&i| basis.col(i)).collect();
    Ok(InvariantFactors { exponents, adapted_basis: Mat::from_cols(&cols) })
}

/// The matrix with ones below the diagonal and p in the top right corner.
pub fn g_pi(p: u64, d: usize) -> Mat {
    let mut g = Mat::zeros(d, d);
    for i in 1..d {
        g[(i, i - 1)] = Q::one();
    }
    g[(0, d - 1)] = Q::from_integer(p.into());
    g
}

/// eta_i = g_Pi^{-i} O^d for any integer i; index i.
pub fn eta(p: u64, d: usize, i: i64) -> LatticeBasis {
    let g = g_pi(p, d);
    let base = if i >= 0 { g.inverse().unwrap() } else { g };
    let mut m = Mat::identity(d);
    for _ in 0..i.unsigned_abs() {
        m = base.mul(&m);
    }
    LatticeBasis::from_columns(&m, p).unwrap()
}

pub fn reference_chain(p: u64, d: usize) -> Result<Vec<LatticeBasis>> {
    if d < 2 {
        return Err(Error::InvalidParameters("reference chain needs d >= 2".into()));
    }
    Ok((0..d as i64).map(|i| eta(p, d, i)).collect())
}

/// g * a. The index moves by -v(det g).
pub fn gl_act(g: &Mat, a: &LatticeBasis) -> Result<LatticeBasis> {
    if g.rows != a.d || g.cols != a.d {
        return Err(Error::InvalidParameters("matrix size does not match lattice".into()));
    }
    if g.det().is_zero() {
        return Err(Error::SingularMatrix);
    }
    LatticeBasis::from_columns(&g.mul(&a.hermite), a.p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{q, qf};

    #[test]
    fn small_hermite_examples() {
        let l = LatticeBasis::from_columns(&Mat::from_i64(&[&[3, 1], &[0, 1]]), 3).unwrap();
        assert_eq!(l.hermite, Mat::from_i64(&[&[3, 1], &[0, 1]]));
        assert_eq!(l.index, -1);
        let swapped = LatticeBasis::from_columns(&Mat::from_i64(&[&[1, 3], &[1, 0]]), 3).unwrap();
        assert_eq!(swapped, l);
        assert_eq!(LatticeBasis::standard(3, 2).scale(1).index, -2);
        let again = LatticeBasis::from_columns(&l.hermite, 3).unwrap();
        assert_eq!(again, l);
    }

    #[test]
    fn above_pivot_reduction() {
        // columns (9, 0), (5/2, 1): entry 5/2 reduces mod 9 to 7 (since 5/2 = 7 mod 9).
        let l = LatticeBasis::from_columns(
            &Mat::from_rows(&[alloc::vec![q(9), qf(5, 2)], alloc::vec![q(0), q(1)]]),
            3,
        )
        .unwrap();
        assert_eq!(l.hermite, Mat::from_i64(&[&[9, 7], &[0, 1]]));
        let neg = LatticeBasis::from_columns(
            &Mat::from_rows(&[alloc::vec![q(1), qf(-1, 3)], alloc::vec![q(0), q(1)]]),
            3,
        )
        .unwrap();
        let mut expect = Mat::identity(2);
        expect[(0, 1)] = qf(2, 3);
        assert_eq!(neg.hermite, expect);
    }

    #[test]
    fn reference_chain_d2() {
        let c = reference_chain(3, 2).unwrap();
        assert_eq!(c[0], LatticeBasis::standard(3, 2));
        assert_eq!(c[1], LatticeBasis::diagonal(3, &[0, -1]));
        assert_eq!(c[1].index, 1);
        assert_eq!(eta(3, 2, 2), LatticeBasis::standard(3, 2).scale(-1));
    }

    #[test]
    fn smith_examples() {
        let a = LatticeBasis::standard(3, 2);
        let b = LatticeBasis::diagonal(3, &[2, 0]);
        let f = invariant_factors(&a, &b).unwrap();
        assert_eq!(f.exponents, [2, 0]);
        let f = invariant_factors(&b, &a).unwrap();
        assert_eq!(f.exponents, [0, -2]);
        assert_eq!(relative_index(&a, &LatticeBasis::diagonal(3, &[1, 0])), 1);
    }

    #[test]
    fn diag_action() {
        let g = Mat::diag(&[q(3), q(1)]);
        let l = gl_act(&g, &LatticeBasis::standard(3, 2)).unwrap();
        assert_eq!(l, LatticeBasis::diagonal(3, &[1, 0]));
        assert_eq!(l.index, -1);
    }

    #[test]
    fn label_round_trip() {
        let l = eta(2, 3, 2);
        assert_eq!(LatticeBasis::parse_label(&l.label(), 2).unwrap(), l);
    }
}
