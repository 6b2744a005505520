//! Points of P^{d-1}(F_{q^m}) on no F_q-rational hyperplane.

use alloc::format;
use alloc::vec::Vec;

use crate::arith::fq::is_prime;
use crate::arith::{FqElement, FqField};
use crate::error::{Error, Result};

/// Largest number of raw vectors the brute force will scan.
pub const BRUTE_LIMIT: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DlMethod {
    Brute,
    Formula,
}

/// F_{q^m} with q = p^f, together with the subfield F_q and the rational hyperplanes.
#[derive(Clone, Debug)]
pub struct DlSpace {
    pub field: FqField,
    pub d: usize,
    pub q: u64,
    hyperplanes: Vec<Vec<FqElement>>,
}

fn prime_power(q: u64) -> Option<(u64, u32)> {
    let p = (2..=q).find(|k| q % k == 0)?;
    let mut f = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        f += 1;
    }
    (r == 1 && is_prime(p)).then_some((p, f))
}

pub fn dl_space(q: u64, d: usize, m: u32) -> Result<DlSpace> {
    let (p, f) = prime_power(q).ok_or_else(|| Error::InvalidParameters(format!("q = {q} is not a prime power")))?;
    if d == 0 || m == 0 {
        return Err(Error::InvalidParameters("d and m must be positive".into()));
    }
    let field = FqField::new(p, f * m)?;
    let size = field.size();
    let raw = (size as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if raw > BRUTE_LIMIT as u128 {
        return Err(Error::EnumerationTooLarge(format!("{size}^{d} vectors exceed the scan limit {BRUTE_LIMIT}")));
    }
    // F_q = fixed points of x -> x^q
    let sub: Vec<FqElement> = field.elements().filter(|x| field.frobenius(x, f) == *x).collect();
    debug_assert_eq!(sub.len() as u64, q);
    let mut hyperplanes = Vec::new();
    let mut idx = alloc::vec![0usize; d];
    loop {
        let a: Vec<FqElement> = idx.iter().map(|&i| sub[i].clone()).collect();
        // projective normalization: first nonzero coefficient equal to 1
        if let Some(first) = a.iter().find(|x| !field.is_zero(x)) {
            if *first == field.one() {
                hyperplanes.push(a);
            }
        }
        let mut k = 0;
        while k < d {
            idx[k] += 1;
            if idx[k] < sub.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == d {
            break;
        }
    }
    Ok(DlSpace { field, d, q, hyperplanes })
}

impl DlSpace {
    pub fn raw_vectors(&self) -> u64 {
        self.field.size().pow(self.d as u32)
    }

    pub fn point(&self, index: u64) -> Vec<FqElement> {
        let s = self.field.size();
        let mut i = index;
        (0..self.d)
            .map(|_| {
                let e = self.field.element(i % s);
                i /= s;
                e
            })
            .collect()
    }

    fn on_rational_hyperplane(&self, x: &[FqElement]) -> bool {
        let k = &self.field;
        self.hyperplanes
            .iter()
            .any(|a| k.is_zero(&a.iter().zip(x).fold(k.zero(), |acc, (s, t)| k.add(&acc, &k.mul(s, t)))))
    }

    fn is_normalized(&self, x: &[FqElement]) -> bool {
        x.iter().find(|e| !self.field.is_zero(e)).is_some_and(|e| *e == self.field.one())
    }
}

/// Brute-force count over raw vector indices [start, end); chunks add up to the full count.
pub fn dl_count_brute_range(space: &DlSpace, start: u64, end: u64) -> u64 {
    (start..end.min(space.raw_vectors()))
        .filter(|&i| {
            let x = space.point(i);
            space.is_normalized(&x) && !space.on_rational_hyperplane(&x)
        })
        .count() as u64
}

fn gaussian_binomial(q: i128, n: u32, k: u32) -> i128 {
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 0..k {
        num *= q.pow(n - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

/// Inclusion-exclusion over F_q-rational subspaces: a rational subspace of dimension k carries
/// Moebius weight (-1)^{d-k} q^{C(d-k, 2)} and (q^{mk} - 1)/(q^m - 1) points.
pub fn dl_count_formula(q: u64, d: usize, m: u32) -> i128 {
    let q = q as i128;
    let d = d as u32;
    let qm = q.pow(m);
    (1..=d)
        .map(|k| {
            let sign = if (d - k) % 2 == 0 { 1 } else { -1 };
            let c = (d - k) * (d - k).saturating_sub(1) / 2;
            sign * gaussian_binomial(q, d, k) * q.pow(c) * ((qm.pow(k) - 1) / (qm - 1))
        })
        .sum()
}

/// prod_{i=1}^{d-1} (q^m - q^i): tuples with F_q-independent coordinates, over scalars.
pub fn dl_count_closed(q: u64, d: usize, m: u32) -> i128 {
    let q = q as i128;
    (1..d as u32).map(|i| q.pow(m) - q.pow(i)).product()
}

pub fn dl_count(q: u64, d: usize, m: u32, method: DlMethod) -> Result<i128> {
    match method {
        DlMethod::Formula => {
            dl_space_params_ok(q, d, m)?;
            Ok(dl_count_formula(q, d, m))
        }
        DlMethod::Brute => {
            let s = dl_space(q, d, m)?;
            Ok(dl_count_brute_range(&s, 0, s.raw_vectors()) as i128)
        }
    }
}

fn dl_space_params_ok(q: u64, d: usize, m: u32) -> Result<()> {
    if prime_power(q).is_none() || d == 0 || m == 0 {
        return Err(Error::InvalidParameters(format!("bad parameters q={q}, d={d}, m={m}")));
    }
    if (q as i128).checked_pow(m * d as u32).is_none_or(|v| v > 10i128.pow(30)) {
        return Err(Error::EnumerationTooLarge("count would overflow".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(dl_count(3, 2, 2, DlMethod::Brute).unwrap(), 6);
        assert_eq!(dl_count(2, 3, 1, DlMethod::Brute).unwrap(), 0);
        let b = dl_count(2, 3, 2, DlMethod::Brute).unwrap();
        assert_eq!(b, dl_count_formula(2, 3, 2));
        assert_eq!(b, dl_count_closed(2, 3, 2));
        assert_eq!(dl_count(4, 2, 2, DlMethod::Brute).unwrap(), 16 - 4);
    }

    #[test]
    fn chunks_add_up() {
        let s = dl_space(3, 3, 2).unwrap();
        let n = s.raw_vectors();
        let total: u64 = (0..4).map(|c| dl_count_brute_range(&s, c * n / 4, (c + 1) * n / 4)).sum();
        assert_eq!(total as i128, dl_count_formula(3, 3, 2));
    }

    #[test]
    fn too_large() {
        assert!(matches!(dl_space(3, 5, 4), Err(Error::EnumerationTooLarge(_))));
    }
}
