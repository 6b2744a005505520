//! Apartments, points in them, and common apartments for vertices and chains.

use alloc::vec;
use alloc::vec::Vec;
use num_traits::Zero;

use super::norm::{orthogonalize, DiagonalNorm};
use super::simplex::Simplex;
use crate::error::{Error, Result};
use crate::lattice::{invariant_factors, LatticeBasis};
use crate::rat::{ppow, q, residue_u64, vp, Mat, Q};

/// The lattices sum p^{n_i} O e_i for a fixed basis e.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Apartment {
    pub p: u64,
    pub basis: Mat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildingPoint {
    pub apartment: Apartment,
    pub coords: Vec<Q>,
}

impl Apartment {
    pub fn new(p: u64, basis: Mat) -> Result<Self> {
        if basis.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(Apartment { p, basis })
    }

    pub fn standard(p: u64, d: usize) -> Self {
        Apartment { p, basis: Mat::identity(d) }
    }

    pub fn d(&self) -> usize {
        self.basis.rows
    }

    pub fn lattice(&self, n: &[i64]) -> LatticeBasis {
        let mut m = self.basis.clone();
        for j in 0..self.d() {
            let f = ppow(self.p, n[j]);
            for i in 0..self.d() {
                m[(i, j)] = &m[(i, j)] * &f;
            }
        }
        LatticeBasis::from_columns(&m, self.p).unwrap()
    }

    /// Integer coordinates of a lattice lying in this apartment.
    pub fn coords_of(&self, l: &LatticeBasis) -> Result<Vec<i64>> {
        let x = self.basis.inverse()?.mul(&l.hermite);
        let n: Vec<i64> = (0..self.d())
            .map(|i| x.row(i).iter().filter_map(|v| vp(v, self.p)).min().unwrap())
            .collect();
        if &self.lattice(&n) != l {
            return Err(Error::AdaptationFailed("lattice is not diagonal in this apartment".into()));
        }
        Ok(n)
    }

    /// If `other` has the same coordinate lines, returns (perm, shift) with
    /// other.e_j = unit * p^{shift_j} * self.e_{perm_j}.
    fn relate(&self, other: &Apartment) -> Option<(Vec<usize>, Vec<i64>)> {
        let x = self.basis.inverse().ok()?.mul(&other.basis);
        let d = self.d();
        let mut perm = Vec::with_capacity(d);
        let mut shift = Vec::with_capacity(d);
        for j in 0..d {
            let nz: Vec<usize> = (0..d).filter(|&i| !x[(i, j)].is_zero()).collect();
            if nz.len() != 1 {
                return None;
            }
            perm.push(nz[0]);
            shift.push(vp(&x[(nz[0], j)], self.p).unwrap());
        }
        Some((perm, shift))
    }

    pub fn act(&self, g: &Mat) -> Apartment {
        Apartment { p: self.p, basis: g.mul(&self.basis) }
    }
}

impl BuildingPoint {
    pub fn vertex(apartment: Apartment, n: &[i64]) -> Self {
        BuildingPoint { apartment, coords: n.iter().map(|&k| q(k)).collect() }
    }

    /// Coordinates with respect to another presentation of the same apartment.
    pub fn coords_in(&self, a: &Apartment) -> Result<Vec<Q>> {
        let (perm, shift) = a
            .relate(&self.apartment)
            .ok_or_else(|| Error::AdaptationFailed("points lie in different apartments".into()))?;
        let mut out = vec![Q::zero(); a.d()];
        for j in 0..a.d() {
            out[perm[j]] = &self.coords[j] + q(shift[j]);
        }
        Ok(out)
    }

    /// Point given by a lattice chain with barycentric weights and diagonal shift.
    pub fn from_chain(apartment: &Apartment, chain: &[LatticeBasis], weights: &[Q], shift: &Q) -> Result<Self> {
        let mut x = vec![shift.clone(); apartment.d()];
        for (l, w) in chain.iter().zip(weights) {
            let n = apartment.coords_of(l)?;
            for (xi, ni) in x.iter_mut().zip(n) {
                *xi += w * q(ni);
            }
        }
        Ok(BuildingPoint { apartment: apartment.clone(), coords: x })
    }
}

/// Smith adaptation: an apartment through both lattices with their coordinates.
pub fn common_apartment(a: &LatticeBasis, b: &LatticeBasis) -> Result<(Apartment, Vec<i64>, Vec<i64>)> {
    let f = invariant_factors(a, b)?;
    let ap = Apartment::new(a.p, f.adapted_basis)?;
    let ca = vec![0; a.d];
    debug_assert_eq!(ap.lattice(&f.exponents), *b);
    Ok((ap, ca, f.exponents))
}

/// Column operations mod p: a basis of F_p^d adapted to a flag given by spanning sets.
fn flag_basis(spans: &[Vec<Vec<u64>>], p: u64, d: usize) -> Vec<Vec<u64>> {
    let mut basis: Vec<Vec<u64>> = Vec::new();
    let mut all = spans.to_vec();
    all.push((0..d).map(|i| (0..d).map(|j| u64::from(i == j)).collect()).collect());
    for span in all {
        for v in span {
            let mut cand = basis.clone();
            cand.push(v.clone());
            if super::norm::fp_dependency(&cand, p).is_none() {
                basis.push(v);
            }
        }
    }
    basis
}

/// A basis adapted to a single chain L_0 < ... < L_r (sorted by index): every L_j is diagonal in it.
pub fn single_chain_basis(chain: &[LatticeBasis]) -> Result<Mat> {
    let last = chain.last().ok_or_else(|| Error::InvalidParameters("empty chain".into()))?;
    let (p, d) = (last.p, last.d);
    let hinv = last.hermite.inverse()?;
    let mut spans = Vec::new();
    for l in chain {
        let x = hinv.mul(&l.hermite);
        if !x.is_integral(p) {
            return Err(Error::InvalidParameters("chain is not nested".into()));
        }
        let cols: Vec<Vec<u64>> = (0..d).map(|j| (0..d).map(|i| residue_u64(&x[(i, j)], p)).collect()).collect();
        spans.push(cols);
    }
    let g = flag_basis(&spans, p, d);
    let gm = Mat::from_cols(&g.iter().map(|c| c.iter().map(|&x| q(x as i64)).collect()).collect::<Vec<_>>());
    Ok(last.hermite.mul(&gm))
}

/// The norm at the barycenter of a chain.
pub fn barycenter_norm(s: &Simplex) -> Result<DiagonalNorm> {
    let a = Apartment::new(s.p(), single_chain_basis(&s.lattices)?)?;
    let w = Q::new(1.into(), (s.lattices.len() as i64).into());
    let pt = BuildingPoint::from_chain(&a, &s.lattices, &vec![w; s.lattices.len()], &Q::zero())?;
    DiagonalNorm::new(s.p(), a.basis, pt.coords)
}

/// A basis orthogonal for both norms (greedy: split off the vector of largest ratio).
pub fn simultaneous_orthogonal_basis(n1: &DiagonalNorm, n2: &DiagonalNorm) -> Result<Mat> {
    let d = n1.d();
    // current orthogonal bases of the remaining subspace W for each norm
    let mut b1: Vec<Vec<Q>> = n1.basis.cols_vec();
    let mut b2: Vec<Vec<Q>> = n2.basis.cols_vec();
    let mut out = Vec::with_capacity(d);
    while !b1.is_empty() {
        let ratio = |v: &Vec<Q>| n2.log_norm(v).unwrap() - n1.log_norm(v).unwrap();
        let i = (0..b1.len()).max_by(|&a, &b| ratio(&b1[a]).cmp(&ratio(&b1[b])).then(b.cmp(&a))).unwrap();
        let v = b1[i].clone();
        // dominant coordinate of v among the n2-orthogonal basis of W
        let w2 = Mat::from_cols(&b2);
        let y = solve_in_span(&w2, &v)?;
        let k = (0..b2.len())
            .filter(|&j| !y[j].is_zero())
            .max_by(|&a, &b| {
                let ea = n2.log_norm(&b2[a]).unwrap() - q(vp(&y[a], n2.p).unwrap());
                let eb = n2.log_norm(&b2[b]).unwrap() - q(vp(&y[b], n2.p).unwrap());
                ea.cmp(&eb).then(b.cmp(&a))
            })
            .unwrap();
        b2.remove(k);
        out.push(v);
        if b2.is_empty() {
            break;
        }
        let (u, _, _) = orthogonalize(n1, &b2)?;
        b1 = u;
    }
    let e = Mat::from_cols(&out);
    if e.det().is_zero() {
        return Err(Error::AdaptationFailed("greedy orthogonalization degenerated".into()));
    }
    Ok(e)
}

/// Coefficients of v in the columns of w (w has full column rank, v in its span).
fn solve_in_span(w: &Mat, v: &[Q]) -> Result<Vec<Q>> {
    // normal equations are fine over Q: (w^T w) y = w^T v
    let wt = w.transpose();
    let y = wt.mul(w).inverse()?.mul_vec(&wt.mul_vec(v));
    if w.mul_vec(&y) != v {
        return Err(Error::AdaptationFailed("vector outside the expected subspace".into()));
    }
    Ok(y)
}

/// An apartment containing two simplices, with the coordinates of all their lattices.
pub fn common_apartment_simplices(a: &Simplex, b: &Simplex) -> Result<(Apartment, Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    let na = barycenter_norm(a)?;
    let nb = barycenter_norm(b)?;
    let e = simultaneous_orthogonal_basis(&na, &nb)?;
    let ap = Apartment::new(a.p(), e)?;
    let ca: Result<Vec<_>> = a.lattices.iter().map(|l| ap.coords_of(l)).collect();
    let cb: Result<Vec<_>> = b.lattices.iter().map(|l| ap.coords_of(l)).collect();
    Ok((ap.clone(), ca?, cb?))
}

/// The point of a norm, obtained from its lattice chain and weights only, in a given apartment.
pub fn point_of_norm_in(n: &DiagonalNorm, ap: &Apartment) -> Result<BuildingPoint> {
    let (chain, w, shift) = n.chain_with_weights();
    BuildingPoint::from_chain(ap, &chain, &w, &shift)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::reference_chain;
    use crate::rat::qf;

    #[test]
    fn smith_apartment() {
        let a = LatticeBasis::standard(3, 2);
        let b = LatticeBasis::diagonal(3, &[2, 0]);
        let (ap, ca, cb) = common_apartment(&a, &b).unwrap();
        assert_eq!(ca, [0, 0]);
        assert_eq!(cb, [2, 0]);
        assert_eq!(ap.lattice(&cb), b);
    }

    #[test]
    fn chain_basis_reference() {
        let c = reference_chain(3, 3).unwrap();
        let ap = Apartment::new(3, single_chain_basis(&c).unwrap()).unwrap();
        for l in &c {
            ap.coords_of(l).unwrap();
        }
    }

    #[test]
    fn barycenter_recovers_chain() {
        let c = reference_chain(2, 3).unwrap();
        let s = Simplex::new(&c).unwrap();
        let n = barycenter_norm(&s).unwrap();
        assert_eq!(super::super::norm::norm_to_simplex(&n), s);
    }

    #[test]
    fn two_norm_basis() {
        let n1 = DiagonalNorm::standard(3, vec![q(0), qf(1, 2)]);
        let g = Mat::from_i64(&[&[1, 1], &[0, 1]]);
        let n2 = DiagonalNorm::new(3, g.clone(), vec![qf(1, 3), q(0)]).unwrap();
        let e = simultaneous_orthogonal_basis(&n1, &n2).unwrap();
        for n in [&n1, &n2] {
            let (_, nus, _) = orthogonalize(n, &e.cols_vec()).unwrap();
            for (j, nu) in nus.iter().enumerate() {
                assert_eq!(n.log_norm(&e.col(j)).as_ref(), Some(nu));
            }
        }
    }
}
