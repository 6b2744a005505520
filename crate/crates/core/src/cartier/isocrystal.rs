//! F-isocrystals over W(F_{p^m})[1/p] given by F = p^{-shift} A sigma, and their Newton slopes.

use alloc::format;
use alloc::vec::Vec;

use super::wmat::WMat;
use crate::arith::{SlopeFraction, WittRingSpec};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Isocrystal {
    pub ring: WittRingSpec,
    pub a: WMat,
    /// F = p^{-shift} A sigma.
    pub shift: i64,
}

impl Isocrystal {
    pub fn new(ring: WittRingSpec, a: WMat) -> Self {
        Isocrystal { ring, a, shift: 0 }
    }

    pub fn rank(&self) -> usize {
        self.a.rows
    }

    /// Change of basis by U: A -> U A sigma(U)^{-1}. Only the numerator of the inverse is
    /// needed, so U must be invertible over W.
    pub fn conjugate(&self, u: &WMat) -> Result<Self> {
        let w = &self.ring;
        let su = u.frob(w, 1);
        let det = su.det(w);
        let inv = su.adjugate(w).scale(w, &w.inv(&det)?);
        Ok(Isocrystal { ring: w.clone(), a: u.mul(w, &self.a).mul(w, &inv), shift: self.shift })
    }

    pub fn twist(&self, k: i64) -> Self {
        Isocrystal { ring: self.ring.clone(), a: self.a.clone(), shift: self.shift + k }
    }

    /// Newton slopes in increasing order, each with multiplicity.
    pub fn newton_slopes(&self) -> Result<Vec<SlopeFraction>> {
        let w = &self.ring;
        let n = self.rank();
        let m = w.m as usize;
        // F^m = p^{-m shift} A sigma(A) ... sigma^{m-1}(A) since sigma^m = 1
        let mut b = self.a.clone();
        for k in 1..m {
            b = b.mul(w, &self.a.frob(w, k as i64));
        }
        let cp = b.charpoly(w);
        let mut vals: Vec<Option<u32>> = Vec::with_capacity(n + 1);
        for c in &cp {
            if c.coeffs[1..].iter().any(|&x| x != 0) {
                return Err(Error::InvalidParameters("characteristic polynomial not over Z_p; matrix data inconsistent".into()));
            }
            vals.push(w.valuation(c));
        }
        if vals[0].is_none() {
            return Err(Error::PrecisionExhausted(format!("det(F^m) vanishes modulo p^{}; raise the precision", w.n)));
        }
        // lower convex hull of (i, v(c_i)) over the known points
        let pts: Vec<(i64, i64)> =
            vals.iter().enumerate().filter_map(|(i, v)| v.map(|v| (i as i64, v as i64))).collect();
        let mut hull: Vec<(i64, i64)> = Vec::new();
        for &pt in &pts {
            while hull.len() >= 2 {
                let (x1, y1) = hull[hull.len() - 2];
                let (x2, y2) = hull[hull.len() - 1];
                // drop middle point if it lies on or above the chord
                if (y2 - y1) * (pt.0 - x1) >= (pt.1 - y1) * (x2 - x1) {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(pt);
        }
        // unknown coefficients have valuation >= N; the hull must stay at or below N there
        for (i, v) in vals.iter().enumerate() {
            if v.is_none() {
                let i = i as i64;
                let seg = hull.windows(2).find(|s| s[0].0 <= i && i <= s[1].0).unwrap();
                let ((x1, y1), (x2, y2)) = (seg[0], seg[1]);
                // hull(i) <= N  <=>  y1 (x2 - x1) + (y2 - y1)(i - x1) <= N (x2 - x1)
                if y1 * (x2 - x1) + (y2 - y1) * (i - x1) > w.n as i64 * (x2 - x1) {
                    return Err(Error::PrecisionExhausted(format!(
                        "coefficient {i} of the characteristic polynomial is lost at precision {}",
                        w.n
                    )));
                }
            }
        }
        let mut out = Vec::with_capacity(n);
        for s in hull.windows(2) {
            let ((x1, y1), (x2, y2)) = (s[0], s[1]);
            let len = x2 - x1;
            // a segment of slope -t carries roots of valuation t
            let t = SlopeFraction::new(y1 - y2, len * m as i64)?;
            let slope = t.sub(SlopeFraction::int(self.shift));
            for _ in 0..len {
                out.push(slope);
            }
        }
        out.sort();
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl(a: i64, b: i64) -> SlopeFraction {
        SlopeFraction::new(a, b).unwrap()
    }

    #[test]
    fn companion_and_diagonal() {
        let w = WittRingSpec::build(3, 1, 12).unwrap();
        let c = Isocrystal::new(w.clone(), WMat::from_ints(&w, &[&[0, 3], &[1, 0]]));
        assert_eq!(c.newton_slopes().unwrap(), alloc::vec![sl(1, 2), sl(1, 2)]);
        let d = Isocrystal::new(w.clone(), WMat::from_ints(&w, &[&[1, 0], &[0, 3]]));
        assert_eq!(d.newton_slopes().unwrap(), alloc::vec![sl(0, 1), sl(1, 1)]);
        assert_eq!(d.twist(1).newton_slopes().unwrap(), alloc::vec![sl(-1, 1), sl(0, 1)]);
    }

    #[test]
    fn slopes_over_extension() {
        let w = WittRingSpec::build(2, 2, 12).unwrap();
        let x = w.gen();
        let mut a = WMat::from_ints(&w, &[&[0, 2], &[1, 0]]);
        a.set(1, 0, x);
        let iso = Isocrystal::new(w.clone(), a);
        assert_eq!(iso.newton_slopes().unwrap(), alloc::vec![sl(1, 2), sl(1, 2)]);
    }

    #[test]
    fn lost_precision_reported() {
        let w = WittRingSpec::build(3, 1, 2).unwrap();
        let d = Isocrystal::new(w.clone(), WMat::from_ints(&w, &[&[9, 0], &[0, 1]]));
        assert!(matches!(d.newton_slopes(), Err(Error::PrecisionExhausted(_))));
    }
}
