//! Finite extensions K = Q_p[y]/(g) with g Eisenstein or an unramified lift, computed
//! inside the number field Q[y]/(g) (g stays irreducible over Q_p, so there is one prime
//! above p and v_p of the norm determines the valuation).

use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Zero};

use super::fq::{is_irreducible, lex_smallest_irreducible};
use crate::error::{Error, Result};
use crate::rat::{is_integral, q, residue_u64, vp, Mat, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldKind {
    /// K = Q_p.
    Rational,
    /// g Eisenstein of degree e; y is a uniformizer.
    Eisenstein,
    /// g reduces to an irreducible polynomial mod p.
    Unramified,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtField {
    pub p: u64,
    pub kind: FieldKind,
    /// Monic, lowest degree first, length n + 1.
    pub modulus: Vec<Q>,
}

pub type KElem = Vec<Q>;

impl ExtField {
    pub fn rational(p: u64) -> Self {
        ExtField { p, kind: FieldKind::Rational, modulus: vec![q(0), q(1)] }
    }

    /// y^e = p.
    pub fn eisenstein(p: u64, e: usize) -> Result<Self> {
        if !(1..=4).contains(&e) {
            return Err(Error::InvalidParameters(alloc::format!("ramification degree {e} outside 1..=4")));
        }
        if e == 1 {
            return Ok(Self::rational(p));
        }
        let mut m = vec![Q::zero(); e + 1];
        m[0] = -q(p as i64);
        m[e] = Q::one();
        Ok(ExtField { p, kind: FieldKind::Eisenstein, modulus: m })
    }

    /// Degree f unramified extension, modulus the lex-smallest irreducible mod p lifted as is.
    pub fn unramified(p: u64, f: usize) -> Result<Self> {
        if !(1..=3).contains(&f) {
            return Err(Error::InvalidParameters(alloc::format!("unramified degree {f} outside 1..=3")));
        }
        if f == 1 {
            return Ok(Self::rational(p));
        }
        let m = lex_smallest_irreducible(p, f as u32).into_iter().map(|c| q(c as i64)).collect();
        Ok(ExtField { p, kind: FieldKind::Unramified, modulus: m })
    }

    /// Any monic modulus that is Eisenstein or irreducible mod p.
    pub fn from_modulus(p: u64, modulus: Vec<Q>) -> Result<Self> {
        let n = modulus.len().saturating_sub(1);
        if n == 0 || modulus[n] != Q::one() {
            return Err(Error::InvalidParameters("modulus must be monic of positive degree".into()));
        }
        if n == 1 {
            return Ok(Self::rational(p));
        }
        if n > 4 {
            return Err(Error::InvalidParameters("extension degree above 4".into()));
        }
        if !modulus.iter().all(|c| is_integral(c, p)) {
            return Err(Error::InvalidParameters("modulus must have p-integral coefficients".into()));
        }
        let eis = modulus[..n].iter().all(|c| vp(c, p).is_none_or(|v| v >= 1)) && vp(&modulus[0], p) == Some(1);
        if eis {
            return Ok(ExtField { p, kind: FieldKind::Eisenstein, modulus });
        }
        let red: Vec<u64> = modulus.iter().map(|c| residue_u64(c, p)).collect();
        if is_irreducible(&red, p) {
            return Ok(ExtField { p, kind: FieldKind::Unramified, modulus });
        }
        Err(Error::InvalidParameters("modulus is neither Eisenstein nor unramified".into()))
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn ramification(&self) -> usize {
        match self.kind {
            FieldKind::Eisenstein => self.degree(),
            _ => 1,
        }
    }

    pub fn residue_degree(&self) -> usize {
        match self.kind {
            FieldKind::Unramified => self.degree(),
            _ => 1,
        }
    }

    pub fn from_rational(&self, x: Q) -> KElem {
        let mut v = vec![Q::zero(); self.degree()];
        v[0] = x;
        v
    }

    pub fn gen(&self) -> KElem {
        if self.degree() == 1 {
            return vec![-self.modulus[0].clone()];
        }
        let mut v = vec![Q::zero(); self.degree()];
        v[1] = Q::one();
        v
    }

    pub fn add(&self, a: &KElem, b: &KElem) -> KElem {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn scale(&self, c: &Q, a: &KElem) -> KElem {
        a.iter().map(|x| x * c).collect()
    }

    pub fn mul(&self, a: &KElem, b: &KElem) -> KElem {
        let n = self.degree();
        let mut r = vec![Q::zero(); 2 * n - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                r[i + j] += x * y;
            }
        }
        for k in (n..r.len()).rev() {
            let top = core::mem::take(&mut r[k]);
            if top.is_zero() {
                continue;
            }
            for i in 0..n {
                r[k - n + i] -= &top * &self.modulus[i];
            }
        }
        r.truncate(n);
        r
    }

    /// Matrix of multiplication by a in the power basis.
    pub fn mult_matrix(&self, a: &KElem) -> Mat {
        let n = self.degree();
        let mut cols = Vec::with_capacity(n);
        let mut basis = self.from_rational(Q::one());
        for _ in 0..n {
            cols.push(self.mul(a, &basis));
            basis = self.mul(&basis, &self.gen());
        }
        Mat::from_cols(&cols)
    }

    pub fn norm(&self, a: &KElem) -> Q {
        self.mult_matrix(a).det()
    }

    /// Valuation normalized by v(p) = 1, via v_p of the norm. `None` for zero.
    pub fn valuation(&self, a: &KElem) -> Option<Q> {
        let v = vp(&self.norm(a), self.p)?;
        Some(crate::rat::qf(v, self.degree() as i64))
    }

    pub fn inv(&self, a: &KElem) -> Result<KElem> {
        let m = self.mult_matrix(a);
        let inv = m.inverse().map_err(|_| Error::InversionOfZero)?;
        Ok(inv.col(0))
    }

    /// Exponents c_j with |sum a_j y^j| = max p^{c_j} |a_j|: the power basis is orthogonal.
    pub fn power_basis_exponents(&self) -> Vec<Q> {
        let n = self.degree();
        match self.kind {
            FieldKind::Eisenstein => (0..n).map(|j| crate::rat::qf(-(j as i64), n as i64)).collect(),
            _ => vec![Q::zero(); n],
        }
    }

    /// Uniformizer: y for Eisenstein, p otherwise.
    pub fn uniformizer(&self) -> KElem {
        match self.kind {
            FieldKind::Eisenstein => self.gen(),
            _ => self.from_rational(q(self.p as i64)),
        }
    }

    /// Residue of an integral element as coordinates over F_p in the basis
    /// 1, y, ..., y^{f-1} of the residue field (length f).
    pub fn residue(&self, a: &KElem) -> Result<Vec<u64>> {
        match self.kind {
            FieldKind::Eisenstein => {
                if !is_integral(&a[0], self.p) {
                    return Err(Error::InvalidParameters("residue of a non-integral element".into()));
                }
                Ok(vec![residue_u64(&a[0], self.p)])
            }
            _ => {
                if !a.iter().all(|c| is_integral(c, self.p)) {
                    return Err(Error::InvalidParameters("residue of a non-integral element".into()));
                }
                Ok(a.iter().map(|c| residue_u64(c, self.p)).collect())
            }
        }
    }

    /// Residue field modulus over F_p (x for the totally ramified cases).
    pub fn residue_modulus(&self) -> Vec<u64> {
        match self.kind {
            FieldKind::Unramified => self.modulus.iter().map(|c| residue_u64(c, self.p)).collect(),
            _ => vec![0, 1],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::qf;

    #[test]
    fn valuations_in_sqrt_p() {
        let k = ExtField::eisenstein(3, 2).unwrap();
        let y = k.gen();
        assert_eq!(k.valuation(&y), Some(qf(1, 2)));
        assert_eq!(k.valuation(&k.mul(&y, &y)), Some(q(1)));
        assert_eq!(k.mul(&y, &y), k.from_rational(q(3)));
        let a = vec![q(1), q(1)];
        assert_eq!(k.valuation(&a), Some(q(0)));
        let inv = k.inv(&y).unwrap();
        assert_eq!(k.mul(&inv, &y), k.from_rational(q(1)));
    }

    #[test]
    fn unramified_units() {
        let k = ExtField::unramified(3, 2).unwrap();
        assert_eq!(k.modulus, vec![q(1), q(0), q(1)]);
        assert_eq!(k.valuation(&k.gen()), Some(q(0)));
        assert_eq!(k.valuation(&vec![q(3), q(6)]), Some(q(1)));
    }

    #[test]
    fn classification_of_moduli() {
        assert_eq!(ExtField::from_modulus(3, vec![q(3), q(3), q(1)]).unwrap().kind, FieldKind::Eisenstein);
        assert_eq!(ExtField::from_modulus(3, vec![q(1), q(0), q(1)]).unwrap().kind, FieldKind::Unramified);
        assert!(ExtField::from_modulus(3, vec![q(2), q(0), q(1)]).is_err());
    }
}
