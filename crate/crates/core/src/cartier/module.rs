//! Graded special Cartier modules at truncated precision.
//!
//! Index i carries a free module M_i of rank r over W = W(F_{p^m})/p^N, with
//! Pi_i : M_i -> M_{i+1} linear, V_i : M_i -> M_{i+1} given by x -> V[i] sigma^{-1}(x), and
//! F_i : M_i -> M_{i-1} given by x -> F[i] sigma(x). Indices are taken mod d.

use alloc::format;
use alloc::vec::Vec;

use super::isocrystal::Isocrystal;
use super::wmat::{fq_rank, WMat};
use crate::arith::{WittElement, WittRingSpec};
use crate::error::{Error, Result};
use crate::lattice::g_pi;
use crate::rat::q;

#[derive(Clone, Debug)]
pub struct SpecialCartierModule {
    pub ring: WittRingSpec,
    pub d: usize,
    pub r: usize,
    pub pi: Vec<WMat>,
    pub v: Vec<WMat>,
    pub f: Vec<WMat>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialReport {
    /// rank over the residue field of M / Pi M summed over indices, i.e. d * r.
    pub height: usize,
    pub height_divisible_by_d2: bool,
    pub critical: Vec<usize>,
}

impl SpecialCartierModule {
    fn ix(&self, i: i64) -> usize {
        i.rem_euclid(self.d as i64) as usize
    }

    fn p_scalar(&self) -> WittElement {
        self.ring.from_int(self.ring.p as i64)
    }

    /// Change of basis x = h_i x' on every M_i.
    pub fn base_change(&self, h: &[WMat]) -> Result<Self> {
        let w = &self.ring;
        let inv: Vec<WMat> = h
            .iter()
            .map(|m| {
                let det = m.det(w);
                Ok(m.adjugate(w).scale(w, &w.inv(&det)?))
            })
            .collect::<Result<_>>()?;
        let d = self.d as i64;
        let mut out = self.clone();
        for i in 0..self.d {
            let up = self.ix(i as i64 + 1);
            let down = self.ix(i as i64 - 1 + d);
            out.pi[i] = inv[up].mul(w, &self.pi[i]).mul(w, &h[i]);
            out.v[i] = inv[up].mul(w, &self.v[i]).mul(w, &h[i].frob(w, -1));
            out.f[i] = inv[down].mul(w, &self.f[i]).mul(w, &h[i].frob(w, 1));
        }
        Ok(out)
    }

    /// Verify the axioms modulo p^N.
    pub fn check(&self) -> Result<SpecialReport> {
        let w = &self.ring;
        let d = self.d as i64;
        let p = self.p_scalar();
        if self.pi.len() != self.d || self.v.len() != self.d || self.f.len() != self.d {
            return Err(Error::InvalidParameters("one matrix per graded index is required".into()));
        }
        for m in self.pi.iter().chain(&self.v).chain(&self.f) {
            if m.rows != self.r || m.cols != self.r {
                return Err(Error::InvalidParameters(format!("matrices must be {0}x{0}", self.r)));
            }
        }
        let fail = |rel: &str, i: usize| Err(Error::AxiomViolation(format!("{rel} fails at index {i}")));
        for i in 0..self.d {
            let ii = i as i64;
            let up = self.ix(ii + 1);
            let down = self.ix(ii - 1 + d);
            if !self.f[up].mul(w, &self.v[i].frob(w, 1)).is_scalar(w, &p) {
                return fail("FV = p", i);
            }
            if !self.v[down].mul(w, &self.f[i].frob(w, -1)).is_scalar(w, &p) {
                return fail("VF = p", i);
            }
            let mut acc = WMat::identity(w, self.r);
            for k in 0..self.d {
                acc = self.pi[self.ix(ii + k as i64)].mul(w, &acc);
            }
            if !acc.is_scalar(w, &p) {
                return fail("Pi^d = p", i);
            }
            let lhs = self.pi[down].mul(w, &self.f[i]);
            let rhs = self.f[up].mul(w, &self.pi[i].frob(w, 1));
            if lhs != rhs {
                return fail("Pi F = F Pi", i);
            }
            let lhs = self.pi[up].mul(w, &self.v[i]);
            let rhs = self.v[up].mul(w, &self.pi[i].frob(w, -1));
            if lhs != rhs {
                return fail("Pi V = V Pi", i);
            }
            if fq_rank(w, &self.v[i].reduce(w)) + 1 != self.r {
                return fail("rank(M_{i+1}/V M_i) = 1", i);
            }
        }
        let height = self.d * self.r;
        Ok(SpecialReport {
            height,
            height_divisible_by_d2: height % (self.d * self.d) == 0,
            critical: self.critical_indices(),
        })
    }

    /// Indices i with Pi M_i contained in V M_i, i.e. Pi vanishing on M_i / V M_{i-1}.
    pub fn critical_indices(&self) -> Vec<usize> {
        let w = &self.ring;
        (0..self.d)
            .filter(|&i| {
                let vb = self.v[i].reduce(w);
                let pb = self.pi[i].reduce(w);
                let joined: Vec<_> = vb.iter().zip(&pb).map(|(a, b)| a.iter().chain(b).cloned().collect()).collect();
                fq_rank(w, &joined) == fq_rank(w, &vb)
            })
            .collect()
    }

    /// The total F on M = (+)_i M_i as an isocrystal of rank d r.
    pub fn total_frobenius(&self) -> Isocrystal {
        let w = &self.ring;
        let n = self.d * self.r;
        let mut a = WMat::zeros(w, n, n);
        for i in 0..self.d {
            let down = self.ix(i as i64 - 1 + self.d as i64);
            for x in 0..self.r {
                for y in 0..self.r {
                    let cur = a.at(down * self.r + x, i * self.r + y).clone();
                    a.set(down * self.r + x, i * self.r + y, w.add(&cur, self.f[i].at(x, y)));
                }
            }
        }
        Isocrystal::new(w.clone(), a)
    }
}

/// O_D (x) W with Pi the regular shift, V = Pi sigma^{-1} and F = Pi^{d-1} sigma.
pub fn reference_module(ring: &WittRingSpec, d: usize) -> Result<SpecialCartierModule> {
    if d == 0 || d > 4 || ring.m > 4 {
        return Err(Error::InvalidParameters("reference module needs 1 <= d <= 4 and m <= 4".into()));
    }
    let p = ring.p;
    let g = g_pi(p, d);
    let f = g.inverse()?.scale(&q(p as i64));
    let gw = WMat::from_rational(ring, &g)?;
    let fw = WMat::from_rational(ring, &f)?;
    Ok(SpecialCartierModule {
        ring: ring.clone(),
        d,
        r: d,
        pi: alloc::vec![gw.clone(); d],
        v: alloc::vec![gw; d],
        f: alloc::vec![fw; d],
    })
}

/// d = 2 module with Pi_0 = Pi_1 = [[0, p], [1, 0]] and V_0 = x, where det x = p u with u a unit.
/// u is passed separately so that F = p sigma(V)^{-1} stays exact at precision N.
fn d2_from_v0(ring: &WittRingSpec, x: &WMat, u: &WittElement) -> Result<SpecialCartierModule> {
    let w = ring;
    let p = w.p as i64;
    if !w.is_unit(u) || x.det(w) != w.mul_p(u, 1) {
        return Err(Error::InvalidParameters("V_0 must have determinant p times a unit".into()));
    }
    let pm = WMat::from_ints(w, &[&[0, p], &[1, 0]]);
    // V_1 = P V_0 P^{-1} = [[e, p c], [b / p, a]]
    let b_over_p = w
        .div_p(x.at(0, 1), 1)
        .ok_or_else(|| Error::InvalidParameters("upper right entry of V_0 must be divisible by p".into()))?;
    let mut v1 = WMat::zeros(w, 2, 2);
    v1.set(0, 0, x.at(1, 1).clone());
    v1.set(0, 1, w.mul_p(x.at(1, 0), 1));
    v1.set(1, 0, b_over_p);
    v1.set(1, 1, x.at(0, 0).clone());
    let su_inv = w.inv(&w.frobenius(u, 1))?;
    // F = p sigma(V)^{-1} = sigma(adj V) / sigma(u); both V have determinant p u
    let f1 = x.adjugate(w).frob(w, 1).scale(w, &su_inv);
    let f0 = v1.adjugate(w).frob(w, 1).scale(w, &su_inv);
    Ok(SpecialCartierModule { ring: w.clone(), d: 2, r: 2, pi: alloc::vec![pm.clone(), pm], v: alloc::vec![x.clone(), v1], f: alloc::vec![f0, f1] })
}

/// d = 2 module whose only critical index is 1.
pub fn noncritical_example(ring: &WittRingSpec) -> Result<SpecialCartierModule> {
    let p = ring.p as i64;
    d2_from_v0(ring, &WMat::from_ints(ring, &[&[1, 0], &[0, p]]), &ring.one())
}

/// Random d = 2 special module with Pi_0 = Pi_1 = [[0, p], [1, 0]] and V_0 = [[a, p b], [c, e]]
/// where one of a, e is divisible by p and det V_0 has valuation 1. `next` supplies raw randomness.
pub fn random_special_d2(ring: &WittRingSpec, next: &mut dyn FnMut() -> u64) -> Result<SpecialCartierModule> {
    let w = ring;
    for _ in 0..1000 {
        let mut el = || {
            let c: Vec<u64> = (0..w.m).map(|_| next()).collect();
            w.element_from_u64s(&c)
        };
        let (a, b, c, e) = (el(), el(), el(), el());
        let left = next() % 2 == 0;
        // with a or e then multiplied by p, det / p = a e - b c either way
        let u = w.sub(&w.mul(&a, &e), &w.mul(&b, &c));
        if !w.is_unit(&u) {
            continue;
        }
        let (a, e) = if left { (w.mul_p(&a, 1), e) } else { (a, w.mul_p(&e, 1)) };
        let mut x = WMat::zeros(w, 2, 2);
        x.set(0, 0, a);
        x.set(0, 1, w.mul_p(&b, 1));
        x.set(1, 0, c);
        x.set(1, 1, e);
        return d2_from_v0(w, &x, &u);
    }
    Err(Error::InvalidParameters("random generator failed to produce a unit determinant".into()))
}

/// Random element of GL_r(W) from raw randomness.
pub fn random_unimodular(ring: &WittRingSpec, r: usize, next: &mut dyn FnMut() -> u64) -> WMat {
    let w = ring;
    loop {
        let mut m = WMat::zeros(w, r, r);
        for i in 0..r {
            for j in 0..r {
                let c: Vec<u64> = (0..w.m).map(|_| next()).collect();
                m.set(i, j, w.element_from_u64s(&c));
            }
        }
        if w.is_unit(&m.det(w)) {
            return m;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_passes() {
        for d in 1..=3 {
            let w = WittRingSpec::build(3, 2, 6).unwrap();
            let m = reference_module(&w, d).unwrap();
            let rep = m.check().unwrap();
            assert_eq!(rep.height, d * d);
            assert!(rep.height_divisible_by_d2);
            assert_eq!(rep.critical, (0..d).collect::<Vec<_>>());
        }
    }

    #[test]
    fn broken_pi_detected() {
        let w = WittRingSpec::build(2, 1, 6).unwrap();
        let mut m = reference_module(&w, 2).unwrap();
        m.pi[0] = m.pi[0].scale(&w, &w.from_int(3));
        assert!(matches!(m.check(), Err(Error::AxiomViolation(s)) if s.contains("Pi^d")));
    }

    #[test]
    fn noncritical_module() {
        let w = WittRingSpec::build(3, 1, 6).unwrap();
        let m = noncritical_example(&w).unwrap();
        assert_eq!(m.check().unwrap().critical, alloc::vec![1]);
    }
}
