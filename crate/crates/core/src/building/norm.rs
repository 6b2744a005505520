//! Diagonalizable norms ||sum x_i e_i|| = max p^{c_i} |x_i|_p, stored by (basis, c).

use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Zero};

use super::simplex::Simplex;
use crate::arith::ext::{ExtField, KElem};
use crate::error::{Error, Result};
use crate::lattice::LatticeBasis;
use crate::rat::{ceil_q, floor_q, ppow, q, residue_u64, vp, Mat, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalNorm {
    pub p: u64,
    /// Columns e_0 .. e_{d-1}.
    pub basis: Mat,
    pub c: Vec<Q>,
    inv: Mat,
}

fn frac(x: &Q) -> Q {
    x - x.floor()
}

impl DiagonalNorm {
    pub fn new(p: u64, basis: Mat, c: Vec<Q>) -> Result<Self> {
        if basis.rows != basis.cols || c.len() != basis.cols {
            return Err(Error::InvalidParameters("norm basis must be square and match the exponent count".into()));
        }
        let inv = basis.inverse()?;
        Ok(DiagonalNorm { p, basis, c, inv })
    }

    pub fn standard(p: u64, c: Vec<Q>) -> Self {
        Self::new(p, Mat::identity(c.len()), c).unwrap()
    }

    pub fn d(&self) -> usize {
        self.c.len()
    }

    /// log_p of the norm of v; `None` for v = 0.
    pub fn log_norm(&self, v: &[Q]) -> Option<Q> {
        let x = self.inv.mul_vec(v);
        x.iter()
            .zip(&self.c)
            .filter_map(|(xi, ci)| vp(xi, self.p).map(|k| ci - q(k)))
            .max()
    }

    /// Leading form of v at its norm: residues in the coordinates attaining the max.
    fn leading_form(&self, v: &[Q]) -> Option<(Q, Vec<u64>)> {
        let nu = self.log_norm(v)?;
        let x = self.inv.mul_vec(v);
        let lf = x
            .iter()
            .zip(&self.c)
            .map(|(xi, ci)| match vp(xi, self.p) {
                Some(k) if ci - q(k) == nu => {
                    let shift = ci - &nu;
                    residue_u64(&(xi / ppow(self.p, floor_q(&shift))), self.p)
                }
                _ => 0,
            })
            .collect();
        Some((nu, lf))
    }

    /// Rescale e_i by p^{floor(c_i)} so that c lies in [0,1), then sort c descending.
    pub fn canonical(&self) -> Self {
        let d = self.d();
        let mut cols: Vec<(Q, Vec<Q>, usize)> = (0..d)
            .map(|i| {
                let k = floor_q(&self.c[i]);
                let col: Vec<Q> = self.basis.col(i).iter().map(|x| x * ppow(self.p, k)).collect();
                (&self.c[i] - q(k), col, i)
            })
            .collect();
        cols.sort_by(|a, b| b.0.cmp(&a.0).then(a.2.cmp(&b.2)));
        let basis = Mat::from_cols(&cols.iter().map(|x| x.1.clone()).collect::<Vec<_>>());
        Self::new(self.p, basis, cols.into_iter().map(|x| x.0).collect()).unwrap()
    }

    /// Unit ball of radius p^s: the lattice sum p^{ceil(c_i - s)} O e_i.
    pub fn ball_lattice(&self, s: &Q) -> LatticeBasis {
        let d = self.d();
        let mut m = self.basis.clone();
        for j in 0..d {
            let f = ppow(self.p, ceil_q(&(&self.c[j] - s)));
            for i in 0..d {
                m[(i, j)] = &m[(i, j)] * &f;
            }
        }
        LatticeBasis::from_columns(&m, self.p).unwrap()
    }

    /// Sorted distinct fractional parts of c.
    pub fn levels(&self) -> Vec<Q> {
        let mut f: Vec<Q> = self.c.iter().map(frac).collect();
        f.sort();
        f.dedup();
        f
    }

    /// (g N)(v) = N(g^{-1} v).
    pub fn act(&self, g: &Mat) -> Result<Self> {
        Self::new(self.p, g.mul(&self.basis), self.c.clone())
    }

    /// The lattice chain of the norm with barycentric weights and a diagonal shift: in any
    /// apartment containing the chain, c = sum_j w_j n(L_j) + shift (1, ..., 1).
    pub fn chain_with_weights(&self) -> (Vec<LatticeBasis>, Vec<Q>, Q) {
        let f = self.levels();
        let r = f.len() - 1;
        let lattices: Vec<LatticeBasis> = f.iter().map(|s| self.ball_lattice(s)).collect();
        let mut w: Vec<Q> = (0..r).map(|j| &f[j + 1] - &f[j]).collect();
        w.push(Q::one() - &f[r] + &f[0]);
        (lattices, w, f[0].clone())
    }
}

/// Ultrametric Gram-Schmidt: returns vectors spanning the same space, orthogonal for `norm`,
/// with their log norms and the coefficient vectors expressing them in the inputs.
pub fn orthogonalize(norm: &DiagonalNorm, vectors: &[Vec<Q>]) -> Result<(Vec<Vec<Q>>, Vec<Q>, Vec<Vec<Q>>)> {
    let p = norm.p;
    let k = vectors.len();
    let mut u: Vec<Vec<Q>> = vectors.to_vec();
    let mut coef: Vec<Vec<Q>> = (0..k)
        .map(|j| {
            let mut e = vec![Q::zero(); k];
            e[j] = Q::one();
            e
        })
        .collect();
    'outer: loop {
        let mut lead = Vec::with_capacity(k);
        for v in &u {
            lead.push(norm.leading_form(v).ok_or(Error::RationalDependence)?);
        }
        let mut classes: Vec<Q> = lead.iter().map(|(nu, _)| frac(nu)).collect();
        classes.sort();
        classes.dedup();
        for cls in classes {
            let members: Vec<usize> = (0..k).filter(|&j| frac(&lead[j].0) == cls).collect();
            if let Some(a) = fp_dependency(&members.iter().map(|&j| lead[j].1.clone()).collect::<Vec<_>>(), p) {
                let (jstar, nustar) = members
                    .iter()
                    .zip(&a)
                    .filter(|(_, &aj)| aj != 0)
                    .map(|(&j, _)| (j, lead[j].0.clone()))
                    .min_by(|x, y| x.1.cmp(&y.1).then(x.0.cmp(&y.0)))
                    .unwrap();
                let mut nv = vec![Q::zero(); u[0].len()];
                let mut nc = vec![Q::zero(); k];
                for (&j, &aj) in members.iter().zip(&a) {
                    if aj == 0 {
                        continue;
                    }
                    let s = q(aj as i64) * ppow(p, floor_q(&(&lead[j].0 - &nustar)));
                    for (x, y) in nv.iter_mut().zip(&u[j]) {
                        *x += &s * y;
                    }
                    for (x, y) in nc.iter_mut().zip(&coef[j]) {
                        *x += &s * y;
                    }
                }
                u[jstar] = nv;
                coef[jstar] = nc;
                continue 'outer;
            }
        }
        let nus = lead.into_iter().map(|x| x.0).collect();
        return Ok((u, nus, coef));
    }
}

/// A nontrivial F_p relation among the vectors, if one exists.
pub fn fp_dependency(vs: &[Vec<u64>], p: u64) -> Option<Vec<u64>> {
    let k = vs.len();
    if k == 0 {
        return None;
    }
    let n = vs[0].len();
    // rows: vector entries augmented with identity
    let mut rows: Vec<Vec<u64>> = (0..k)
        .map(|j| {
            let mut r = vs[j].clone();
            r.extend((0..k).map(|i| u64::from(i == j)));
            r
        })
        .collect();
    let mut rank = 0;
    for c in 0..n {
        let Some(pr) = (rank..k).find(|&i| rows[i][c] % p != 0) else { continue };
        rows.swap(pr, rank);
        let inv = crate::arith::fq::inv_mod_p(rows[rank][c], p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..k {
            if i != rank && rows[i][c] != 0 {
                let f = rows[i][c];
                for t in 0..n + k {
                    rows[i][t] = (rows[i][t] + p * p - f * rows[rank][t] % p) % p;
                }
            }
        }
        rank += 1;
    }
    if rank == k {
        None
    } else {
        Some(rows[rank][n..].to_vec())
    }
}

/// The chain of balls at the distinct fractional levels of c.
pub fn norm_to_simplex(n: &DiagonalNorm) -> Simplex {
    let c = n.canonical();
    let lattices: Vec<LatticeBasis> = c.levels().iter().map(|s| c.ball_lattice(s)).collect();
    Simplex::new(&lattices).expect("ball chain of a diagonal norm is a simplex")
}

/// Goldman-Iwahori distance sup_v |log_p ||v|| - log_p ||v||'|, evaluated on the two orthogonal bases.
pub fn norm_distance(a: &DiagonalNorm, b: &DiagonalNorm) -> Result<Q> {
    if a.d() != b.d() || a.p != b.p {
        return Err(Error::InvalidParameters("norms on different spaces".into()));
    }
    let mut best = Q::zero();
    for (i, ci) in a.c.iter().enumerate() {
        let v = b.log_norm(&a.basis.col(i)).unwrap() - ci;
        if v > best {
            best = v;
        }
    }
    for (j, cj) in b.c.iter().enumerate() {
        let v = a.log_norm(&b.basis.col(j)).unwrap() - cj;
        if v > best {
            best = v;
        }
    }
    Ok(best)
}

/// Coordinate matrix of t_0..t_{d-1} in the power basis of K.
fn embedding_matrix(k: &ExtField, t: &[KElem]) -> Result<Mat> {
    if t.iter().any(|x| x.len() != k.degree()) {
        return Err(Error::InvalidParameters("coordinate not in K".into()));
    }
    if t.iter().all(|x| x.iter().all(|c| c.is_zero())) {
        return Err(Error::InvalidParameters("all coordinates are zero".into()));
    }
    Ok(Mat::from_cols(t))
}

/// Pullback of |.|_K along x -> sum x_i t_i, diagonalized and put in canonical form.
pub fn norm_from_embedding(k: &ExtField, t: &[KElem]) -> Result<DiagonalNorm> {
    let tm = embedding_matrix(k, t)?;
    let d = t.len();
    if tm.rank() < d {
        return Err(Error::RationalDependence);
    }
    let n = k.degree();
    let knorm = DiagonalNorm::new(k.p, Mat::identity(n), k.power_basis_exponents())?;
    let (_, nus, coef) = orthogonalize(&knorm, &tm.cols_vec())?;
    DiagonalNorm::new(k.p, Mat::from_cols(&coef), nus).map(|x| x.canonical())
}

/// True iff the hyperplane sum x_i t_i = 0 has no E-rational line, i.e. the t_i are independent.
pub fn weakly_admissible_line_test(k: &ExtField, t: &[KElem]) -> Result<bool> {
    Ok(embedding_matrix(k, t)?.rank() == t.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::qf;

    #[test]
    fn level_chains() {
        let n = DiagonalNorm::standard(3, vec![q(0), q(0)]);
        assert_eq!(norm_to_simplex(&n).lattices, [LatticeBasis::standard(3, 2)]);
        let n = DiagonalNorm::standard(3, vec![q(0), qf(1, 2)]);
        let s = norm_to_simplex(&n);
        assert_eq!(s.lattices.len(), 2);
        let n = DiagonalNorm::standard(3, vec![q(0), qf(1, 3), qf(2, 3)]);
        assert_eq!(norm_to_simplex(&n).lattices.len(), 3);
    }

    #[test]
    fn distances_same_basis() {
        let a = DiagonalNorm::standard(3, vec![q(0), q(0)]);
        let b = DiagonalNorm::standard(3, vec![qf(1, 2), q(0)]);
        assert_eq!(norm_distance(&a, &b).unwrap(), qf(1, 2));
        assert_eq!(norm_distance(&a, &a).unwrap(), q(0));
    }

    #[test]
    fn embeddings() {
        let k = ExtField::eisenstein(3, 2).unwrap();
        let t = vec![k.from_rational(q(1)), k.gen()];
        let n = norm_from_embedding(&k, &t).unwrap();
        assert!(n.c.contains(&qf(1, 2)));
        assert_eq!(norm_to_simplex(&n).lattices.len(), 2);
        let dep = vec![k.from_rational(q(1)), k.from_rational(q(1))];
        assert_eq!(norm_from_embedding(&k, &dep), Err(Error::RationalDependence));
        assert!(!weakly_admissible_line_test(&k, &dep).unwrap());
        assert!(weakly_admissible_line_test(&k, &t).unwrap());
    }

    #[test]
    fn gram_schmidt_cancels_leading_terms() {
        // u1 = e0 + e1, u2 = e0 in the standard norm with c = 0: a dependency in the residues.
        let n = DiagonalNorm::standard(3, vec![q(0), q(0)]);
        let (u, mut nus, _) = orthogonalize(&n, &[vec![q(1), q(1)], vec![q(1), q(4)]]).unwrap();
        for (v, nu) in u.iter().zip(&nus) {
            assert_eq!(n.log_norm(v).as_ref(), Some(nu));
        }
        nus.sort();
        assert_eq!(nus, [q(-1), q(0)]);
    }
}
