//! Truncated unramified Witt rings W(F_{p^m}) / p^N = (Z/p^N)[x]/(lift of modulus).

use alloc::vec;
use alloc::vec::Vec;

use super::fq::{FqElement, FqField};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WittElement {
    pub coeffs: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittRingSpec {
    pub p: u64,
    pub m: u32,
    pub n: u32,
    /// p^N.
    pub modulus_pn: u64,
    /// Monic degree m lift, stored lowest degree first (length m + 1).
    pub modulus_lift: Vec<u64>,
    /// sigma(x) as a polynomial of degree < m.
    pub frobenius_image: Vec<u64>,
    pub residue: FqField,
    /// sigma^k as a Z/p^N-linear map on the basis 1, x, ..., x^{m-1}; entry [k] is column-major m*m.
    sigma_pow: Vec<Vec<u64>>,
}

impl WittRingSpec {
    pub fn build(p: u64, m: u32, n: u32) -> Result<Self> {
        let residue = FqField::new(p, m)?;
        Self::from_residue(residue, n)
    }

    pub fn with_modulus(p: u64, modulus: Vec<u64>, n: u32) -> Result<Self> {
        let residue = FqField::with_modulus(p, modulus)?;
        Self::from_residue(residue, n)
    }

    fn from_residue(residue: FqField, n: u32) -> Result<Self> {
        let p = residue.p;
        let m = residue.f;
        if n == 0 {
            return Err(Error::InvalidParameters("Witt precision N must be >= 1".into()));
        }
        let pn = (p as u128).checked_pow(n).filter(|&v| v < (1u128 << 62)).ok_or_else(|| {
            Error::InvalidParameters(alloc::format!("p^N too large for the word-sized backend (p={p}, N={n})"))
        })? as u64;
        let mut spec = WittRingSpec {
            p,
            m,
            n,
            modulus_pn: pn,
            modulus_lift: residue.modulus.clone(),
            frobenius_image: Vec::new(),
            residue,
            sigma_pow: Vec::new(),
        };
        spec.frobenius_image = spec.hensel_frobenius();
        spec.sigma_pow = spec.sigma_tables();
        debug_assert_eq!(spec.apply_table(&spec.sigma_tables_raw(m), &spec.gen()), spec.gen());
        Ok(spec)
    }

    fn mul_mod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.modulus_pn as u128) as u64
    }

    pub fn zero(&self) -> WittElement {
        WittElement { coeffs: vec![0; self.m as usize] }
    }

    pub fn one(&self) -> WittElement {
        self.from_int(1)
    }

    pub fn from_int(&self, k: i64) -> WittElement {
        let mut z = self.zero();
        z.coeffs[0] = k.rem_euclid(self.modulus_pn as i64) as u64;
        z
    }

    pub fn gen(&self) -> WittElement {
        if self.m == 1 {
            // x is the root of x - c, i.e. the integer c.
            let c = (self.modulus_pn - self.modulus_lift[0] % self.modulus_pn) % self.modulus_pn;
            return WittElement { coeffs: vec![c] };
        }
        let mut z = self.zero();
        z.coeffs[1] = 1;
        z
    }

    pub fn from_coeffs(&self, c: &[i64]) -> WittElement {
        let mut z = self.zero();
        for (i, &v) in c.iter().enumerate() {
            let t = WittElement { coeffs: self.reduce_poly(&[v.rem_euclid(self.modulus_pn as i64) as u64]).coeffs };
            let xi = self.pow(&self.gen(), i as u128);
            z = self.add(&z, &self.mul(&t, &xi));
        }
        z
    }

    /// Reduce an arbitrary-length polynomial over Z/p^N modulo the monic lift.
    fn reduce_poly(&self, a: &[u64]) -> WittElement {
        let m = self.m as usize;
        let pn = self.modulus_pn;
        let mut r: Vec<u64> = a.iter().map(|&c| c % pn).collect();
        while r.len() > m {
            let top = r.pop().unwrap();
            if top == 0 {
                continue;
            }
            let k = r.len() - m;
            for i in 0..m {
                let t = self.mul_mod(top, self.modulus_lift[i]);
                r[k + i] = (r[k + i] + pn - t) % pn;
            }
        }
        r.resize(m, 0);
        WittElement { coeffs: r }
    }

    pub fn add(&self, a: &WittElement, b: &WittElement) -> WittElement {
        let pn = self.modulus_pn;
        WittElement { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| (x + y) % pn).collect() }
    }

    pub fn neg(&self, a: &WittElement) -> WittElement {
        let pn = self.modulus_pn;
        WittElement { coeffs: a.coeffs.iter().map(|x| (pn - x) % pn).collect() }
    }

    pub fn sub(&self, a: &WittElement, b: &WittElement) -> WittElement {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, c: u64, a: &WittElement) -> WittElement {
        WittElement { coeffs: a.coeffs.iter().map(|&x| self.mul_mod(x, c % self.modulus_pn)).collect() }
    }

    pub fn mul(&self, a: &WittElement, b: &WittElement) -> WittElement {
        let m = self.m as usize;
        if m == 1 {
            return WittElement { coeffs: vec![self.mul_mod(a.coeffs[0], b.coeffs[0])] };
        }
        let mut r = vec![0u64; 2 * m - 1];
        for i in 0..m {
            if a.coeffs[i] == 0 {
                continue;
            }
            for j in 0..m {
                r[i + j] = (r[i + j] + self.mul_mod(a.coeffs[i], b.coeffs[j])) % self.modulus_pn;
            }
        }
        self.reduce_poly(&r)
    }

    pub fn pow(&self, a: &WittElement, mut e: u128) -> WittElement {
        let mut r = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }

    pub fn is_zero(&self, a: &WittElement) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }

    /// p-adic valuation, `None` if zero modulo p^N.
    pub fn valuation(&self, a: &WittElement) -> Option<u32> {
        a.coeffs
            .iter()
            .filter(|&&c| c != 0)
            .map(|&c| {
                let mut v = 0;
                let mut c = c;
                while c % self.p == 0 {
                    c /= self.p;
                    v += 1;
                }
                v
            })
            .min()
    }

    pub fn is_unit(&self, a: &WittElement) -> bool {
        self.valuation(a) == Some(0)
    }

    pub fn reduce(&self, a: &WittElement) -> FqElement {
        FqElement { coeffs: a.coeffs.iter().map(|c| c % self.p).collect() }
    }

    /// Lift with digits in [0, p).
    pub fn lift(&self, r: &FqElement) -> WittElement {
        if self.m == 1 {
            return self.from_int(r.coeffs[0] as i64);
        }
        WittElement { coeffs: r.coeffs.clone() }
    }

    /// Multiply by p^k (k >= 0).
    pub fn mul_p(&self, a: &WittElement, k: u32) -> WittElement {
        if k >= self.n {
            return self.zero();
        }
        self.scale(self.p.pow(k), a)
    }

    /// Divide by p^k when every coefficient is divisible; the result is known modulo p^{N-k}
    /// and returned with its top k digits set to zero.
    pub fn div_p(&self, a: &WittElement, k: u32) -> Option<WittElement> {
        let pk = self.p.checked_pow(k)?;
        if a.coeffs.iter().any(|c| c % pk != 0) {
            return None;
        }
        Some(WittElement { coeffs: a.coeffs.iter().map(|c| c / pk).collect() })
    }

    pub fn inv(&self, a: &WittElement) -> Result<WittElement> {
        if !self.is_unit(a) {
            return Err(if self.is_zero(a) { Error::InversionOfZero } else { Error::InvalidParameters("non-unit in Witt ring".into()) });
        }
        let r = self.residue.inv(&self.reduce(a))?;
        let mut y = self.lift(&r);
        let two = self.from_int(2);
        for _ in 0..=(64 - (self.n as u64).leading_zeros()) {
            y = self.mul(&y, &self.sub(&two, &self.mul(a, &y)));
        }
        debug_assert_eq!(self.mul(a, &y), self.one());
        Ok(y)
    }

    /// Evaluate a polynomial with Z/p^N coefficients at a ring element.
    fn eval(&self, poly: &[u64], at: &WittElement) -> WittElement {
        let mut acc = self.zero();
        for &c in poly.iter().rev() {
            acc = self.mul(&acc, at);
            acc.coeffs[0] = (acc.coeffs[0] + c) % self.modulus_pn;
        }
        acc
    }

    fn hensel_frobenius(&self) -> Vec<u64> {
        let x = self.gen();
        let f = &self.modulus_lift;
        let df: Vec<u64> = (1..f.len()).map(|i| self.mul_mod(f[i], i as u64)).collect();
        let mut r = self.pow(&x, self.p as u128);
        for _ in 0..=self.n {
            let val = self.eval(f, &r);
            if self.is_zero(&val) {
                break;
            }
            let d = self.inv(&self.eval(&df, &r)).expect("separable modulus");
            r = self.sub(&r, &self.mul(&val, &d));
        }
        debug_assert!(self.is_zero(&self.eval(f, &r)));
        r.coeffs
    }

    fn sigma_tables_raw(&self, k: u32) -> Vec<u64> {
        let m = self.m as usize;
        if m == 1 {
            return vec![1];
        }
        // column j = sigma^k(x^j) = (sigma^k(x))^j
        let mut sx = self.gen();
        for _ in 0..k {
            sx = self.eval(&self.frobenius_image, &sx);
        }
        let mut table = vec![0u64; m * m];
        let mut pw = self.one();
        for j in 0..m {
            table[j * m..(j + 1) * m].copy_from_slice(&pw.coeffs);
            pw = self.mul(&pw, &sx);
        }
        table
    }

    fn sigma_tables(&self) -> Vec<Vec<u64>> {
        (0..self.m).map(|k| self.sigma_tables_raw(k)).collect()
    }

    fn apply_table(&self, t: &[u64], a: &WittElement) -> WittElement {
        let m = self.m as usize;
        if m == 1 {
            return a.clone();
        }
        let mut out = vec![0u64; m];
        for j in 0..m {
            if a.coeffs[j] == 0 {
                continue;
            }
            for i in 0..m {
                out[i] = (out[i] + self.mul_mod(t[j * m + i], a.coeffs[j])) % self.modulus_pn;
            }
        }
        WittElement { coeffs: out }
    }

    /// sigma^k; k may be negative.
    pub fn frobenius(&self, a: &WittElement, k: i64) -> WittElement {
        let k = k.rem_euclid(self.m as i64) as usize;
        self.apply_table(&self.sigma_pow[k], a)
    }

    /// Multiplicative lift of a residue.
    pub fn teichmuller(&self, r: &FqElement) -> Result<WittElement> {
        if r.coeffs.len() != self.m as usize {
            return Err(Error::InvalidParameters("residue field mismatch".into()));
        }
        let q = (self.p as u128).pow(self.m);
        let mut t = self.lift(r);
        for _ in 0..self.n {
            t = self.pow(&t, q);
        }
        Ok(t)
    }

    pub fn element_from_u64s(&self, c: &[u64]) -> WittElement {
        WittElement { coeffs: c.iter().map(|x| x % self.modulus_pn).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_ring_is_integers_mod_pn() {
        let w = WittRingSpec::build(2, 1, 4).unwrap();
        assert_eq!(w.modulus_pn, 16);
        let a = w.from_int(7);
        assert_eq!(w.frobenius(&a, 1), a);
    }

    #[test]
    fn teichmuller_of_two_mod_27() {
        let w = WittRingSpec::build(3, 1, 3).unwrap();
        let two = w.residue.from_int(2);
        assert_eq!(w.teichmuller(&two).unwrap().coeffs, [26]);
        assert_eq!(w.teichmuller(&w.residue.zero()).unwrap(), w.zero());
        assert_eq!(w.teichmuller(&w.residue.one()).unwrap(), w.one());
    }

    #[test]
    fn frobenius_root_of_modulus() {
        let w = WittRingSpec::build(3, 2, 3).unwrap();
        let s = WittElement { coeffs: w.frobenius_image.clone() };
        // The modulus is x^2 + 1, so sigma(x)^2 + 1 = 0.
        let v = w.add(&w.mul(&s, &s), &w.one());
        assert!(w.is_zero(&v));
        assert_eq!(w.reduce(&s), w.residue.pow(&w.residue.gen(), 3));
    }

    #[test]
    fn residue_frobenius_at_precision_one() {
        let w = WittRingSpec::build(3, 2, 1).unwrap();
        for r in w.residue.elements() {
            let a = w.lift(&r);
            assert_eq!(w.reduce(&w.frobenius(&a, 1)), w.residue.pow(&r, 3));
        }
    }
}
