//! Bounded-precision elements of Q_p.
//!
//! A nonzero value is `p^val * (d_0 + d_1 p + ...)` with `digits` holding exactly the
//! residues that are known; `d_0 != 0`. A value with `val = Some(v)` and no digits is only
//! known to lie in `p^v Z_p` (this is what cancellation produces).

use alloc::vec::Vec;
use core::cmp::Ordering;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rat::{ipow, mod_inverse, ppow, residue, vp, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PadicScalar {
    pub p: u64,
    pub precision: u32,
    pub val: Option<i64>,
    pub digits: Vec<u32>,
}

fn to_digits(mut u: BigInt, p: u64, len: u32) -> Vec<u32> {
    let pb = BigInt::from(p);
    let mut out = Vec::with_capacity(len as usize);
    for _ in 0..len {
        let (qt, r) = u.div_mod_floor(&pb);
        out.push(r.to_u32().unwrap());
        u = qt;
    }
    out
}

fn from_digits(d: &[u32], p: u64) -> BigInt {
    let pb = BigInt::from(p);
    d.iter().rev().fold(BigInt::zero(), |acc, &x| acc * &pb + BigInt::from(x))
}

impl PadicScalar {
    pub fn zero(p: u64, precision: u32) -> Self {
        PadicScalar { p, precision, val: None, digits: Vec::new() }
    }

    pub fn from_rational(x: &Q, p: u64, precision: u32) -> Self {
        match vp(x, p) {
            None => Self::zero(p, precision),
            Some(v) => {
                let u = x / ppow(p, v);
                let r = residue(&u, p, precision);
                PadicScalar { p, precision, val: Some(v), digits: to_digits(r, p, precision) }
            }
        }
    }

    pub fn from_int(n: i64, p: u64, precision: u32) -> Self {
        Self::from_rational(&Q::from_integer(n.into()), p, precision)
    }

    /// Assemble from a value known modulo p^abs (absolute precision), rescaled by p^shift.
    fn normalize(p: u64, precision: u32, shift: i64, s: BigInt, abs: i64) -> Self {
        let span = abs - shift;
        if span <= 0 {
            return PadicScalar { p, precision, val: Some(abs), digits: Vec::new() };
        }
        let m = ipow(p, span as u32);
        let s = s.mod_floor(&m);
        if s.is_zero() {
            return PadicScalar { p, precision, val: Some(abs), digits: Vec::new() };
        }
        let v = crate::rat::vp_int(&s, p).unwrap();
        let unit = s / ipow(p, v as u32);
        let len = ((span - v) as u32).min(precision);
        PadicScalar { p, precision, val: Some(shift + v), digits: to_digits(unit, p, len) }
    }

    pub fn is_zero(&self) -> bool {
        self.val.is_none()
    }

    /// True when nothing beyond a valuation bound is known.
    pub fn is_indeterminate(&self) -> bool {
        self.val.is_some() && self.digits.is_empty()
    }

    /// Last power of p that is known, `None` for exact zero.
    pub fn absolute_precision(&self) -> Option<i64> {
        self.val.map(|v| v + self.digits.len() as i64)
    }

    /// Valuation; `None` means zero.
    pub fn valuation(&self) -> Result<Option<i64>> {
        if self.is_indeterminate() {
            return Err(Error::PrecisionExhausted("valuation of a value known only modulo p^N".into()));
        }
        Ok(self.val)
    }

    fn unit(&self) -> BigInt {
        from_digits(&self.digits, self.p)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.p != other.p || self.precision != other.precision {
            return Err(Error::InvalidParameters("p-adic operands with different p or precision".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let (Some(va), Some(vb)) = (self.val, other.val) else {
            return Ok(if self.is_zero() { other.clone() } else { self.clone() });
        };
        let abs = self.absolute_precision().unwrap().min(other.absolute_precision().unwrap());
        let m = va.min(vb);
        let s = self.unit() * ipow(self.p, (va - m) as u32) + other.unit() * ipow(self.p, (vb - m) as u32);
        Ok(Self::normalize(self.p, self.precision, m, s, abs))
    }

    pub fn neg(&self) -> Self {
        match self.val {
            None => self.clone(),
            Some(_) if self.digits.is_empty() => self.clone(),
            Some(v) => {
                let len = self.digits.len() as u32;
                let u = (-self.unit()).mod_floor(&ipow(self.p, len));
                PadicScalar { p: self.p, precision: self.precision, val: Some(v), digits: to_digits(u, self.p, len) }
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let (Some(va), Some(vb)) = (self.val, other.val) else {
            return Ok(Self::zero(self.p, self.precision));
        };
        let len = self.digits.len().min(other.digits.len()) as u32;
        if len == 0 {
            // An indeterminate factor of valuation >= va times something of valuation >= vb.
            return Ok(PadicScalar { p: self.p, precision: self.precision, val: Some(va + vb), digits: Vec::new() });
        }
        let u = (self.unit() * other.unit()).mod_floor(&ipow(self.p, len));
        Ok(PadicScalar { p: self.p, precision: self.precision, val: Some(va + vb), digits: to_digits(u, self.p, len) })
    }

    pub fn inv(&self) -> Result<Self> {
        let Some(v) = self.val else { return Err(Error::InversionOfZero) };
        if self.digits.is_empty() {
            return Err(Error::PrecisionExhausted("inverse of a value known only modulo p^N".into()));
        }
        let len = self.digits.len() as u32;
        let u = mod_inverse(&self.unit(), &ipow(self.p, len)).unwrap();
        Ok(PadicScalar { p: self.p, precision: self.precision, val: Some(-v), digits: to_digits(u, self.p, len) })
    }

    /// Compares valuations (zero has valuation +infinity).
    pub fn cmp_val(&self, other: &Self) -> Result<Ordering> {
        self.check(other)?;
        let undecided = || Error::PrecisionExhausted("valuation comparison undecidable at this precision".into());
        match (self.val, other.val) {
            (None, None) => Ok(Ordering::Equal),
            (None, Some(_)) if other.digits.is_empty() => Err(undecided()),
            (None, Some(_)) => Ok(Ordering::Greater),
            (Some(_), None) if self.digits.is_empty() => Err(undecided()),
            (Some(_), None) => Ok(Ordering::Less),
            (Some(a), Some(b)) => {
                let ia = self.digits.is_empty();
                let ib = other.digits.is_empty();
                match (ia, ib) {
                    (false, false) => Ok(a.cmp(&b)),
                    (true, false) if a > b => Ok(Ordering::Greater),
                    (false, true) if b > a => Ok(Ordering::Less),
                    _ => Err(undecided()),
                }
            }
        }
    }

    /// The rational number `p^val * sum d_i p^i` built from the known digits.
    pub fn approximation(&self) -> Q {
        match self.val {
            None => Q::zero(),
            Some(v) => Q::from_integer(self.unit()) * ppow(self.p, v),
        }
    }

    pub fn one(p: u64, precision: u32) -> Self {
        Self::from_rational(&Q::one(), p, precision)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::q;

    #[test]
    fn inverse_of_four_mod_81() {
        let four = PadicScalar::from_int(4, 3, 4);
        let inv = four.inv().unwrap();
        assert_eq!(inv.val, Some(0));
        assert_eq!(inv.digits, [1, 2, 0, 2]);
        assert_eq!(inv.approximation(), q(61));
    }

    #[test]
    fn valuation_and_units() {
        assert_eq!(PadicScalar::from_int(9, 3, 16).valuation().unwrap(), Some(2));
        let prod = PadicScalar::from_int(4, 3, 16).mul(&PadicScalar::from_int(2, 3, 16)).unwrap();
        assert_eq!(prod, PadicScalar::from_int(8, 3, 16));
        assert_eq!(prod.valuation().unwrap(), Some(0));
    }

    #[test]
    fn cancellation_is_tracked() {
        let a = PadicScalar::from_int(1, 3, 4);
        let b = PadicScalar::from_int(1 + 81 * 5, 3, 4);
        let d = a.sub(&b).unwrap();
        assert!(d.is_indeterminate());
        assert_eq!(d.val, Some(4));
        assert!(d.valuation().is_err());
        assert!(d.inv().is_err());
        assert!(d.cmp_val(&PadicScalar::from_int(3, 3, 4)).unwrap().is_gt());
        assert!(d.cmp_val(&PadicScalar::from_int(81 * 2, 3, 4)).is_err());
        assert_eq!(PadicScalar::zero(3, 4).inv(), Err(Error::InversionOfZero));
    }

    #[test]
    fn partial_cancellation_loses_digits() {
        let a = PadicScalar::from_int(1, 3, 4);
        let b = PadicScalar::from_int(1 + 9, 3, 4);
        let d = b.sub(&a).unwrap();
        assert_eq!(d.val, Some(2));
        assert_eq!(d.digits, [1, 0]);
    }
}
