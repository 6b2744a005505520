//! The lattice eta^i = M_i^{Pi = V} at a critical index.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::module::SpecialCartierModule;
use super::wmat::{fq_rank, FpMat, WMat};
use crate::arith::{FqElement, WittElement, WittRingSpec};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaLattice {
    pub index: usize,
    /// Vectors of M_i with Pi g = V g modulo p^N, whose reductions form a basis.
    pub generators: Vec<Vec<WittElement>>,
}

fn flatten(v: &[FqElement]) -> Vec<u64> {
    v.iter().flat_map(|e| e.coeffs.iter().copied()).collect()
}

fn unflatten(w: &WittRingSpec, x: &[u64]) -> Vec<FqElement> {
    x.chunks(w.m as usize).map(|c| FqElement { coeffs: c.to_vec() }).collect()
}

fn fq_apply(w: &WittRingSpec, a: &[Vec<FqElement>], x: &[FqElement]) -> Vec<FqElement> {
    let k = &w.residue;
    a.iter().map(|row| row.iter().zip(x).fold(k.zero(), |acc, (s, t)| k.add(&acc, &k.mul(s, t)))).collect()
}

/// Matrix over F_p of an additive map on F_{p^m}^r, columns indexed by (coordinate, power of x).
fn fp_matrix(w: &WittRingSpec, r: usize, map: &dyn Fn(&[FqElement]) -> Vec<FqElement>) -> FpMat {
    let m = w.m as usize;
    let n = r * m;
    let mut out = FpMat::zeros(w.p, n, n);
    for col in 0..n {
        let mut e = vec![0u64; n];
        e[col] = 1;
        let img = flatten(&map(&unflatten(w, &e)));
        for (row, v) in img.iter().enumerate() {
            out.set(row, col, *v);
        }
    }
    out
}

fn neg_mod_p(p: u64, v: &[u64]) -> Vec<u64> {
    v.iter().map(|&x| (p - x % p) % p).collect()
}

/// Residues of x / p^k, elementwise; `None` if some entry is not divisible.
fn digit(w: &WittRingSpec, x: &[WittElement], k: u32) -> Option<Vec<FqElement>> {
    x.iter().map(|e| w.div_p(e, k).map(|t| w.reduce(&t))).collect()
}

fn vsub(w: &WittRingSpec, a: &[WittElement], b: &[WittElement]) -> Vec<WittElement> {
    a.iter().zip(b).map(|(x, y)| w.sub(x, y)).collect()
}

fn frob_vec(w: &WittRingSpec, a: &[WittElement], k: i64) -> Vec<WittElement> {
    a.iter().map(|x| w.frobenius(x, k)).collect()
}

impl SpecialCartierModule {
    /// Pi g - V g for g in M_i.
    pub fn pi_minus_v(&self, i: usize, g: &[WittElement]) -> Vec<WittElement> {
        let w = &self.ring;
        vsub(w, &self.pi[i].mul_vec(w, g), &self.v[i].mul_vec(w, &frob_vec(w, g, -1)))
    }
}

/// Solve Pi g = V g on M_i: the reduction mod p by F_p-linear algebra on g = G sigma(g) with
/// G = sigma(V^{-1} Pi), then one p-adic digit at a time.
pub fn eta_fixed_lattice(m: &SpecialCartierModule, i: usize) -> Result<EtaLattice> {
    let w = &m.ring;
    let r = m.r;
    let p = w.p;
    if i >= m.d {
        return Err(Error::InvalidParameters(format!("index {i} outside 0..{}", m.d)));
    }
    if !m.critical_indices().contains(&i) {
        return Err(Error::InvalidParameters(format!("index {i} is not critical")));
    }
    if w.n < 2 {
        return Err(Error::PrecisionExhausted("the fixed-point solver needs N >= 2".into()));
    }
    let rank_def = |why: &str| Error::FixedPointRankDeficient(format!("index {i}: {why}"));
    // V^{-1} Pi = adj(V) Pi / det V, and det V = p * unit for a special module
    let det = m.v[i].det(w);
    let unit = w.div_p(&det, 1).filter(|u| w.is_unit(u)).ok_or_else(|| rank_def("det V_i is not p times a unit"))?;
    let num = m.v[i].adjugate(w).mul(w, &m.pi[i]);
    let mut y = WMat::zeros(w, r, r);
    let uinv = w.inv(&unit)?;
    for a in 0..r {
        for b in 0..r {
            let t = w.div_p(num.at(a, b), 1).ok_or_else(|| rank_def("V^{-1} Pi is not integral"))?;
            y.set(a, b, w.mul(&t, &uinv));
        }
    }
    // G is correct modulo p^{N-1}
    let g = y.frob(w, 1);
    let gbar = g.reduce(w);
    let k = &w.residue;
    let one_minus_g = fp_matrix(w, r, &|x| {
        let s: Vec<FqElement> = x.iter().map(|e| k.frobenius(e, 1)).collect();
        let gs = fq_apply(w, &gbar, &s);
        x.iter().zip(&gs).map(|(a, b)| k.sub(a, b)).collect()
    });
    let kernel = one_minus_g.kernel();
    if kernel.len() < r {
        return Err(rank_def(&format!(
            "only {} independent fixed vectors mod p over F_{}^{}; enlarge m",
            kernel.len(),
            p,
            w.m
        )));
    }
    let pibar = m.pi[i].reduce(w);
    let vbar = m.v[i].reduce(w);
    let last_map = fp_matrix(w, r, &|x| {
        let s: Vec<FqElement> = x.iter().map(|e| k.frobenius(e, w.m - 1)).collect();
        let a = fq_apply(w, &pibar, x);
        let b = fq_apply(w, &vbar, &s);
        a.iter().zip(&b).map(|(s, t)| k.sub(s, t)).collect()
    });
    let mut gens = Vec::with_capacity(r);
    for kv in kernel {
        let mut gam: Vec<WittElement> = unflatten(w, &kv).iter().map(|e| w.lift(e)).collect();
        for step in 1..w.n - 1 {
            let err = vsub(w, &gam, &g.mul_vec(w, &frob_vec(w, &gam, 1)));
            let eps = digit(w, &err, step).ok_or_else(|| rank_def("lifting lost divisibility"))?;
            let delta = one_minus_g.solve(&neg_mod_p(p, &flatten(&eps))).ok_or_else(|| rank_def("lifting step unsolvable"))?;
            for (c, e) in gam.iter_mut().zip(unflatten(w, &delta)) {
                *c = w.add(c, &w.mul_p(&w.lift(&e), step));
            }
        }
        let top = w.n - 1;
        let res = m.pi_minus_v(i, &gam);
        let eps = digit(w, &res, top).ok_or_else(|| rank_def("Pi g - V g not divisible by p^{N-1}"))?;
        let delta = last_map.solve(&neg_mod_p(p, &flatten(&eps))).ok_or_else(|| rank_def("final digit unsolvable"))?;
        for (c, e) in gam.iter_mut().zip(unflatten(w, &delta)) {
            *c = w.add(c, &w.mul_p(&w.lift(&e), top));
        }
        debug_assert!(m.pi_minus_v(i, &gam).iter().all(|x| w.is_zero(x)));
        gens.push(gam);
    }
    let eta = EtaLattice { index: i, generators: gens };
    if !eta.verify(m) {
        return Err(rank_def("generators fail Pi g = V g or are dependent mod p"));
    }
    Ok(eta)
}

impl EtaLattice {
    /// Pi g = V g for every generator and the reductions are a basis of M_i / p.
    pub fn verify(&self, m: &SpecialCartierModule) -> bool {
        let w = &m.ring;
        let exact = self.generators.iter().all(|g| m.pi_minus_v(self.index, g).iter().all(|x| w.is_zero(x)));
        let red: Vec<Vec<FqElement>> =
            (0..m.r).map(|a| self.generators.iter().map(|g| w.reduce(&g[a])).collect()).collect();
        exact && self.generators.len() == m.r && fq_rank(w, &red) == m.r
    }

    /// Z/p^N coordinates of v in the generators, if v lies in their Z_p-span.
    pub fn coefficients(&self, w: &WittRingSpec, v: &[WittElement]) -> Option<Vec<u64>> {
        let p = w.p;
        let pn = w.modulus_pn as u128;
        let cols: Vec<Vec<u64>> = self.generators.iter().map(|g| g.iter().flat_map(|e| e.coeffs.clone()).collect()).collect();
        let target: Vec<u64> = v.iter().flat_map(|e| e.coeffs.clone()).collect();
        let n = target.len();
        let mut bbar = FpMat::zeros(p, n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (r, &x) in c.iter().enumerate() {
                bbar.set(r, j, x % p);
            }
        }
        let mut coef = vec![0u128; cols.len()];
        let mut pk: u128 = 1;
        for _ in 0..w.n {
            let resid: Vec<u128> = (0..n)
                .map(|r| {
                    let s = cols.iter().zip(&coef).fold(0u128, |acc, (c, &x)| (acc + c[r] as u128 * x) % pn);
                    (target[r] as u128 + pn - s) % pn
                })
                .collect();
            if resid.iter().any(|&x| x % pk != 0) {
                return None;
            }
            let dig: Vec<u64> = resid.iter().map(|&x| ((x / pk) % p as u128) as u64).collect();
            let sol = bbar.solve(&dig)?;
            for (c, s) in coef.iter_mut().zip(sol) {
                *c = (*c + s as u128 * pk) % pn;
            }
            pk *= p as u128;
        }
        Some(coef.into_iter().map(|c| c as u64).collect())
    }

    pub fn same_span(&self, w: &WittRingSpec, o: &EtaLattice) -> bool {
        self.generators.iter().all(|g| o.coefficients(w, g).is_some())
            && o.generators.iter().all(|g| self.coefficients(w, g).is_some())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartier::module::{noncritical_example, reference_module};

    #[test]
    fn reference_generators_are_standard() {
        let w = WittRingSpec::build(3, 2, 6).unwrap();
        let m = reference_module(&w, 3).unwrap();
        for i in 0..3 {
            let eta = eta_fixed_lattice(&m, i).unwrap();
            let mut g = eta.generators.clone();
            g.sort();
            g.reverse();
            let std: Vec<Vec<WittElement>> =
                (0..3).map(|j| (0..3).map(|a| if a == j { w.one() } else { w.zero() }).collect()).collect();
            assert_eq!(g, std);
        }
    }

    #[test]
    fn twisted_needs_quadratic_residue_field() {
        let w1 = WittRingSpec::build(3, 1, 6).unwrap();
        let m1 = noncritical_example(&w1).unwrap();
        assert!(matches!(eta_fixed_lattice(&m1, 1), Err(Error::FixedPointRankDeficient(_))));
        assert!(eta_fixed_lattice(&m1, 0).is_err());
        let w2 = WittRingSpec::build(3, 2, 6).unwrap();
        let m2 = noncritical_example(&w2).unwrap();
        let eta = eta_fixed_lattice(&m2, 1).unwrap();
        assert!(eta.verify(&m2));
    }
}
