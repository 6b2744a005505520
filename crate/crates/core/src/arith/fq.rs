//! Polynomials over F_p and the finite fields F_{p^f} they present.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Dense polynomial over F_p, lowest degree first, no trailing zeros.
pub type Poly = Vec<u64>;

pub fn trim(a: &mut Poly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn pow_mod_u64(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub fn inv_mod_p(a: u64, p: u64) -> u64 {
    pow_mod_u64(a, p - 2, p)
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|i| i * i <= p).all(|i| p % i != 0)
}

pub fn poly_sub(a: &Poly, b: &Poly, p: u64) -> Poly {
    let n = a.len().max(b.len());
    let mut r: Poly = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0) % p) % p)
        .collect();
    trim(&mut r);
    r
}

pub fn poly_mul(a: &Poly, b: &Poly, p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + x * y) % p;
        }
    }
    trim(&mut r);
    r
}

/// Remainder of a modulo b (b nonzero).
pub fn poly_rem(a: &Poly, b: &Poly, p: u64) -> Poly {
    let mut r = a.clone();
    trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = inv_mod_p(b[db], p);
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = r[r.len() - 1] * lead_inv % p;
        for i in 0..=db {
            r[k + i] = (r[k + i] + p - c * b[i] % p) % p;
        }
        trim(&mut r);
    }
    r
}

pub fn poly_gcd(a: &Poly, b: &Poly, p: u64) -> Poly {
    let (mut a, mut b) = (a.clone(), b.clone());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&l) = a.last() {
        let li = inv_mod_p(l, p);
        for c in a.iter_mut() {
            *c = *c * li % p;
        }
    }
    a
}

fn poly_powmod(base: &Poly, mut e: u128, m: &Poly, p: u64) -> Poly {
    let mut r: Poly = vec![1];
    let mut b = poly_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            r = poly_rem(&poly_mul(&r, &b, p), m, p);
        }
        b = poly_rem(&poly_mul(&b, &b, p), m, p);
        e >>= 1;
    }
    r
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 2;
    while f * f <= n {
        if n % f == 0 {
            out.push(f);
            while n % f == 0 {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's irreducibility test for a monic polynomial of degree f.
pub fn is_irreducible(m: &Poly, p: u64) -> bool {
    let f = m.len() as u64 - 1;
    if f == 0 {
        return false;
    }
    if f == 1 {
        return true;
    }
    let x: Poly = vec![0, 1];
    let frob = |k: u64| poly_powmod(&x, (p as u128).pow(k as u32), m, p);
    if frob(f) != poly_rem(&x, m, p) {
        return false;
    }
    for r in prime_factors(f) {
        let h = poly_sub(&frob(f / r), &x, p);
        if poly_gcd(m, &h, p).len() != 1 {
            return false;
        }
    }
    true
}

/// The monic irreducible polynomial of degree f whose coefficients, read as base-p digits
/// with the x^{f-1} coefficient most significant, form the smallest number.
pub fn lex_smallest_irreducible(p: u64, f: u32) -> Poly {
    let total = p.pow(f);
    for code in 0..total {
        let mut m = vec![0u64; f as usize + 1];
        let mut c = code;
        for slot in m.iter_mut().take(f as usize) {
            *slot = c % p;
            c /= p;
        }
        m[f as usize] = 1;
        if is_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// F_{p^f} = F_p[x]/(modulus).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqField {
    pub p: u64,
    pub f: u32,
    pub modulus: Poly,
}

/// Coefficients of an element, length exactly f.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElement {
    pub coeffs: Vec<u64>,
}

impl FqField {
    pub fn new(p: u64, f: u32) -> Result<Self> {
        if !is_prime(p) || f == 0 {
            return Err(Error::InvalidParameters(alloc::format!("F_q needs p prime and f >= 1 (p={p}, f={f})")));
        }
        if (p as u128).pow(f) > (1u128 << 62) {
            return Err(Error::InvalidParameters("field too large".into()));
        }
        Ok(FqField { p, f, modulus: lex_smallest_irreducible(p, f) })
    }

    pub fn with_modulus(p: u64, modulus: Poly) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParameters("p must be prime".into()));
        }
        let mut m: Poly = modulus.iter().map(|c| c % p).collect();
        trim(&mut m);
        if m.len() < 2 || *m.last().unwrap() != 1 {
            return Err(Error::InvalidParameters("modulus must be monic of degree >= 1".into()));
        }
        if !is_irreducible(&m, p) {
            return Err(Error::ReducibleModulus);
        }
        Ok(FqField { p, f: m.len() as u32 - 1, modulus: m })
    }

    pub fn size(&self) -> u64 {
        self.p.pow(self.f)
    }

    pub fn zero(&self) -> FqElement {
        FqElement { coeffs: vec![0; self.f as usize] }
    }

    pub fn one(&self) -> FqElement {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> FqElement {
        let mut e = self.zero();
        e.coeffs[0] = n.rem_euclid(self.p as i64) as u64;
        e
    }

    pub fn from_poly(&self, a: &Poly) -> FqElement {
        let r = poly_rem(a, &self.modulus, self.p);
        let mut c = vec![0; self.f as usize];
        c[..r.len()].copy_from_slice(&r);
        FqElement { coeffs: c }
    }

    /// The generator x.
    pub fn gen(&self) -> FqElement {
        self.from_poly(&vec![0, 1])
    }

    /// Elements indexed by base-p expansion of their coefficient vector.
    pub fn element(&self, mut index: u64) -> FqElement {
        let mut c = vec![0; self.f as usize];
        for slot in c.iter_mut() {
            *slot = index % self.p;
            index /= self.p;
        }
        FqElement { coeffs: c }
    }

    pub fn index_of(&self, a: &FqElement) -> u64 {
        a.coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElement> + '_ {
        (0..self.size()).map(move |i| self.element(i))
    }

    pub fn is_zero(&self, a: &FqElement) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FqElement, b: &FqElement) -> FqElement {
        FqElement { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| (x + y) % self.p).collect() }
    }

    pub fn neg(&self, a: &FqElement) -> FqElement {
        FqElement { coeffs: a.coeffs.iter().map(|x| (self.p - x) % self.p).collect() }
    }

    pub fn sub(&self, a: &FqElement, b: &FqElement) -> FqElement {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, c: u64, a: &FqElement) -> FqElement {
        FqElement { coeffs: a.coeffs.iter().map(|x| x * (c % self.p) % self.p).collect() }
    }

    pub fn mul(&self, a: &FqElement, b: &FqElement) -> FqElement {
        self.from_poly(&poly_mul(&a.coeffs, &b.coeffs, self.p))
    }

    pub fn pow(&self, a: &FqElement, mut e: u128) -> FqElement {
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

    pub fn inv(&self, a: &FqElement) -> Result<FqElement> {
        if self.is_zero(a) {
            return Err(Error::InversionOfZero);
        }
        Ok(self.pow(a, self.size() as u128 - 2))
    }

    /// x -> x^{p^k}.
    pub fn frobenius(&self, a: &FqElement, k: u32) -> FqElement {
        let k = k % self.f;
        self.pow(a, (self.p as u128).pow(k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_moduli() {
        assert_eq!(lex_smallest_irreducible(3, 2), vec![1, 0, 1]);
        assert_eq!(lex_smallest_irreducible(2, 2), vec![1, 1, 1]);
        assert_eq!(lex_smallest_irreducible(2, 3), vec![1, 1, 0, 1]);
        assert!(!is_irreducible(&vec![1, 0, 1], 2));
        assert!(FqField::with_modulus(3, vec![2, 0, 1]).is_err());
    }

    #[test]
    fn multiplicative_group_is_cyclic_of_right_order() {
        let k = FqField::new(3, 2).unwrap();
        for a in k.elements().skip(1) {
            assert_eq!(k.pow(&a, 8), k.one());
            assert_eq!(k.mul(&a, &k.inv(&a).unwrap()), k.one());
        }
    }

    #[test]
    fn irreducible_count_matches_necklace_formula() {
        // Number of monic irreducibles of degree 4 over F_2 is (16 - 4)/4 = 3.
        let n = (0..16u64)
            .filter(|code| {
                let m: Poly = (0..4).map(|i| (code >> i) & 1).chain(core::iter::once(1)).collect();
                is_irreducible(&m, 2)
            })
            .count();
        assert_eq!(n, 3);
    }
}
