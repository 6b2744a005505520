//! From a framed special module to a simplex of the building: D_j = r_j(M_j).

use alloc::format;
use alloc::vec::Vec;

use super::fixed::eta_fixed_lattice;
use super::module::{reference_module, SpecialCartierModule};
use super::wmat::WMat;
use crate::building::Simplex;
use crate::error::{Error, Result};
use crate::lattice::{g_pi, invariant_factors, LatticeBasis};
use crate::rat::{q, Mat};

/// rho_i : M_i -> M^ref_i commuting with Pi and V (an isogeny onto its image), followed by
/// a rational matrix h acting on E^d.
#[derive(Clone, Debug)]
pub struct Framing {
    pub rho: Vec<WMat>,
    pub h: Mat,
}

impl Framing {
    pub fn identity(m: &SpecialCartierModule) -> Self {
        Framing { rho: alloc::vec![WMat::identity(&m.ring, m.r); m.d], h: Mat::identity(m.d) }
    }

    pub fn with_outer(&self, g: &Mat) -> Self {
        Framing { rho: self.rho.clone(), h: g.mul(&self.h) }
    }
}

pub fn cartier_to_simplex(m: &SpecialCartierModule, framing: &Framing) -> Result<Simplex> {
    let w = &m.ring;
    let d = m.d;
    let bad = |s: alloc::string::String| Error::FramingNotIsogeny(s);
    if m.r != d || framing.rho.len() != d || framing.h.rows != d || framing.h.cols != d {
        return Err(bad(format!("framing must have {d} maps of size {d} and a {d}x{d} outer matrix")));
    }
    if framing.h.det() == q(0) {
        return Err(bad("outer matrix is singular".into()));
    }
    let reference = reference_module(w, d)?;
    for i in 0..d {
        let up = (i + 1) % d;
        let rho = &framing.rho[i];
        if w.is_zero(&rho.det(w)) {
            return Err(bad(format!("rho_{i} is singular modulo p^N")));
        }
        if framing.rho[up].mul(w, &m.pi[i]) != reference.pi[i].mul(w, rho) {
            return Err(bad(format!("rho does not commute with Pi at index {i}")));
        }
        if framing.rho[up].mul(w, &m.v[i]) != reference.v[i].mul(w, &rho.frob(w, -1)) {
            return Err(bad(format!("rho does not commute with V at index {i}")));
        }
    }
    let gi = g_pi(w.p, d).inverse()?;
    let mut chain = Vec::new();
    for j in m.critical_indices() {
        let eta = eta_fixed_lattice(m, j)?;
        // image in the reference fixed lattice, which is the constant part Z_p^d
        let mut c = Mat::zeros(d, d);
        for (col, g) in eta.generators.iter().enumerate() {
            let img = framing.rho[j].mul_vec(w, g);
            for (row, e) in img.iter().enumerate() {
                if e.coeffs[1..].iter().any(|&x| x != 0) {
                    return Err(bad(format!("rho_{j} does not carry fixed vectors to fixed vectors")));
                }
                c[(row, col)] = q(e.coeffs[0] as i64);
            }
        }
        // the span of c must not depend on the unknown digits beyond p^N
        let span = LatticeBasis::from_columns(&c, w.p)?;
        let inv = invariant_factors(&LatticeBasis::standard(w.p, d), &span)?;
        if inv.exponents.iter().any(|&e| e > w.n as i64 - 2) {
            return Err(Error::PrecisionExhausted(format!("rho_{j} has elementary divisors too deep for N = {}", w.n)));
        }
        let mut gj = Mat::identity(d);
        for _ in 0..j {
            gj = gi.mul(&gj);
        }
        chain.push(LatticeBasis::from_columns(&framing.h.mul(&gj).mul(&c), w.p)?);
    }
    Simplex::new(&chain).map_err(|e| bad(format!("{e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::WittRingSpec;
    use crate::lattice::{gl_act, reference_chain};

    #[test]
    fn reference_gives_reference_chain() {
        let w = WittRingSpec::build(2, 2, 6).unwrap();
        for d in 2..=3 {
            let m = reference_module(&w, d).unwrap();
            let s = cartier_to_simplex(&m, &Framing::identity(&m)).unwrap();
            assert_eq!(s.lattices, reference_chain(2, d).unwrap());
            let p_scaled = cartier_to_simplex(&m, &Framing::identity(&m).with_outer(&Mat::identity(d).scale(&q(2)))).unwrap();
            let shifted: Vec<i64> = s.indices().iter().map(|i| i - d as i64).collect();
            assert_eq!(p_scaled.indices(), shifted);
            let g = Mat::from_i64(&[&[1, 1, 0][..d], &[0, 2, 0][..d], &[0, 0, 1][..d]][..d]);
            let moved = cartier_to_simplex(&m, &Framing::identity(&m).with_outer(&g)).unwrap();
            let expect: Vec<LatticeBasis> = s.lattices.iter().map(|l| gl_act(&g, l).unwrap()).collect();
            assert_eq!(Simplex::new(&expect).unwrap(), moved);
        }
    }
}
