//! Specialization of classical points x = [t_0 : ... : t_{d-1}] with t_i in a finite extension K.
//!
//! The pipeline goes through the pullback norm |sum v_i t_i|_K. `preimage_chain` recomputes
//! the chain directly from the sets L_n = {v : v_K(sum v_i t_i) >= n/e} as a second route.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::Zero;

use crate::arith::ext::{ExtField, FieldKind, KElem};
use crate::building::norm::{norm_from_embedding, norm_to_simplex, weakly_admissible_line_test};
use crate::building::Simplex;
use crate::cartier::wmat::FpMat;
use crate::error::{Error, Result};
use crate::lattice::{lattice_from_columns, lattice_of_span, LatticeBasis};
use crate::rat::{ceil_q, floor_q, ppow, q, qf, Mat, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidPoint {
    pub field: ExtField,
    pub coords: Vec<KElem>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecializationResult {
    pub simplex: Simplex,
    /// n_j with eta_j mapping to m_K^{n_j} / m_K^{n_j + 1}; lies in (-e, 0].
    pub levels: Vec<i64>,
    /// Per chain lattice, the images of its Hermite basis in the residue field of K, each an
    /// F_p-vector in the basis 1, y, ..., y^{f-1}.
    pub residue_points: Vec<Vec<Vec<u64>>>,
    pub component_labels: Vec<String>,
    /// For a vertex: whether the residue point lies on no F_p-rational hyperplane.
    pub avoids_rational_hyperplanes: Option<bool>,
}

impl RigidPoint {
    pub fn new(field: ExtField, coords: Vec<KElem>) -> Result<Self> {
        if coords.is_empty() || coords.iter().any(|c| c.len() != field.degree()) {
            return Err(Error::InvalidParameters("coordinates must be elements of K".into()));
        }
        if coords.iter().all(|c| c.iter().all(|a| a.is_zero())) {
            return Err(Error::InvalidParameters("all coordinates are zero".into()));
        }
        Ok(RigidPoint { field, coords })
    }

    pub fn d(&self) -> usize {
        self.coords.len()
    }

    /// x(v) = sum v_i t_i.
    pub fn evaluate(&self, v: &[Q]) -> KElem {
        let k = &self.field;
        let mut acc = vec![Q::zero(); k.degree()];
        for (vi, ti) in v.iter().zip(&self.coords) {
            acc = k.add(&acc, &k.scale(vi, ti));
        }
        acc
    }

    /// The point g x, whose embedding is v -> x(g^{-1} v): coordinates g^{-T} t.
    pub fn act(&self, g: &Mat) -> Result<Self> {
        let h = g.inverse()?.transpose();
        let k = &self.field;
        let coords = (0..self.d())
            .map(|i| {
                let mut acc = vec![Q::zero(); k.degree()];
                for (j, tj) in self.coords.iter().enumerate() {
                    acc = k.add(&acc, &k.scale(&h[(i, j)], tj));
                }
                acc
            })
            .collect();
        Ok(RigidPoint { field: k.clone(), coords })
    }
}

/// L_n = {v in Q_p^d : v_K(x(v)) >= n / e}.
pub fn preimage_lattice(x: &RigidPoint, n: i64) -> Result<LatticeBasis> {
    let k = &x.field;
    let p = k.p;
    let e = k.ramification() as i64;
    let deg = k.degree();
    let d = x.d();
    // row j of M is the y^j coefficient of x(v), rescaled so that L_n = {v : M v integral}
    let mut m = Mat::zeros(deg, d);
    for j in 0..deg {
        let need = match k.kind {
            FieldKind::Eisenstein => ceil_q(&qf(n - j as i64, e)),
            _ => n,
        };
        let s = ppow(p, -need);
        for (i, t) in x.coords.iter().enumerate() {
            m[(j, i)] = &t[j] * &s;
        }
    }
    if m.rank() < d {
        return Err(Error::RationalDependence);
    }
    let rows = lattice_of_span(&m.transpose(), p)?;
    lattice_from_columns(&rows.hermite.transpose().inverse()?, p)
}

/// Chain lattices and their levels from the L_n alone: the jumps L_n != L_{n+1} for -e < n <= 0,
/// sorted by increasing index.
pub fn preimage_chain(x: &RigidPoint) -> Result<(Vec<LatticeBasis>, Vec<i64>)> {
    let e = x.field.ramification() as i64;
    let mut chain = Vec::new();
    let mut levels = Vec::new();
    let mut above = preimage_lattice(x, 1)?;
    for n in (1 - e..=0).rev() {
        let l = preimage_lattice(x, n)?;
        if l != above {
            chain.push(l.clone());
            levels.push(n);
        }
        above = l;
    }
    Ok((chain, levels))
}

fn residue_of(x: &RigidPoint, v: &[Q], n: i64) -> Result<Vec<u64>> {
    let k = &x.field;
    let mut z = x.evaluate(v);
    // divide by pi^n with n <= 0; pi = y for Eisenstein fields, p otherwise
    match k.kind {
        FieldKind::Eisenstein => {
            for _ in 0..(-n) {
                z = k.mul(&z, &k.gen());
            }
        }
        _ => z = k.scale(&ppow(k.p, -n), &z),
    }
    match k.valuation(&z) {
        Some(val) if val < Q::zero() => {
            Err(Error::Inconsistent("chain lattice does not map into its level".into()))
        }
        _ => k.residue(&z),
    }
}

fn fp_independent(cols: &[Vec<u64>], p: u64) -> bool {
    let f = cols.first().map_or(0, |c| c.len());
    let mut m = FpMat::zeros(p, f, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (i, &a) in c.iter().enumerate() {
            m.set(i, j, a);
        }
    }
    m.rank() == cols.len()
}

pub fn specialize_point(x: &RigidPoint) -> Result<SpecializationResult> {
    let k = &x.field;
    if !weakly_admissible_line_test(k, &x.coords)? {
        return Err(Error::RationalDependence);
    }
    let norm = norm_from_embedding(k, &x.coords)?;
    let simplex = norm_to_simplex(&norm);
    let e = k.ramification() as i64;
    // ball of radius p^s is L_{-s e}; norm_to_simplex uses the levels s in [0, 1) ascending
    let levels: Vec<i64> = norm
        .canonical()
        .levels()
        .iter()
        .map(|s| {
            let n = -(s * q(e));
            debug_assert!(n.is_integer());
            floor_q(&n)
        })
        .collect();
    let mut residue_points = Vec::with_capacity(levels.len());
    for (eta, &n) in simplex.lattices.iter().zip(&levels) {
        let pts: Result<Vec<_>> = (0..x.d()).map(|j| residue_of(x, &eta.hermite.col(j), n)).collect();
        residue_points.push(pts?);
    }
    let avoids = (simplex.lattices.len() == 1).then(|| fp_independent(&residue_points[0], k.p));
    Ok(SpecializationResult {
        component_labels: simplex.lattices.iter().map(|l| l.label()).collect(),
        simplex,
        levels,
        residue_points,
        avoids_rational_hyperplanes: avoids,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::gl_act;

    fn point(k: &ExtField, coords: &[&[i64]]) -> RigidPoint {
        RigidPoint::new(k.clone(), coords.iter().map(|c| c.iter().map(|&a| q(a)).collect()).collect()).unwrap()
    }

    #[test]
    fn sqrt_p_edge() {
        let k = ExtField::eisenstein(3, 2).unwrap();
        let x = point(&k, &[&[1, 0], &[0, 1]]);
        let r = specialize_point(&x).unwrap();
        assert_eq!(r.simplex.lattices.len(), 2);
        assert_eq!(r.levels, [0, -1]);
        assert!(r.residue_points.iter().all(|pts| pts.iter().any(|v| v.iter().any(|&a| a != 0))));
        let (chain, levels) = preimage_chain(&x).unwrap();
        assert_eq!(chain, r.simplex.lattices);
        assert_eq!(levels, r.levels);
    }

    #[test]
    fn unramified_vertex_in_y() {
        let k = ExtField::unramified(3, 2).unwrap();
        let x = point(&k, &[&[1, 0], &[0, 1]]);
        let r = specialize_point(&x).unwrap();
        assert_eq!(r.simplex.lattices, [LatticeBasis::standard(3, 2)]);
        assert_eq!(r.avoids_rational_hyperplanes, Some(true));
    }

    #[test]
    fn rational_dependence() {
        let k = ExtField::rational(3);
        let x = point(&k, &[&[1], &[4]]);
        assert_eq!(specialize_point(&x), Err(Error::RationalDependence));
        assert_eq!(preimage_lattice(&x, 0), Err(Error::RationalDependence));
    }

    #[test]
    fn shifted_basis_over_unramified() {
        // t = (1, 1 + p + y): the unit ball is spanned by e_0 and a vector mixing both coordinates
        let k = ExtField::unramified(3, 2).unwrap();
        let x = point(&k, &[&[1, 0], &[4, 1]]);
        let r = specialize_point(&x).unwrap();
        assert_eq!(r.simplex.lattices.len(), 1);
        assert_eq!(r.avoids_rational_hyperplanes, Some(true));
        let (chain, _) = preimage_chain(&x).unwrap();
        assert_eq!(chain, r.simplex.lattices);
    }

    #[test]
    fn equivariance() {
        let k = ExtField::eisenstein(3, 2).unwrap();
        let x = point(&k, &[&[1, 2], &[5, 1]]);
        let g = Mat::from_i64(&[&[3, 1], &[0, 1]]);
        let a = specialize_point(&x).unwrap();
        let b = specialize_point(&x.act(&g).unwrap()).unwrap();
        let moved: Vec<_> = a.simplex.lattices.iter().map(|l| gl_act(&g, l).unwrap()).collect();
        assert_eq!(Simplex::from_classes(&moved).unwrap().lattices.len(), b.simplex.lattices.len());
        let classes: Vec<_> = b.simplex.lattices.iter().map(|l| l.homothety_normal().0).collect();
        for l in &moved {
            assert!(classes.contains(&l.homothety_normal().0));
        }
    }
}
