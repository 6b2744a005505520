use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lattice::LatticeBasis;
use crate::rat::{q, Mat, Q};

/// All subspaces of F_p^d of dimension k, as reduced row echelon bases.
pub fn subspaces(p: u64, d: usize, k: usize) -> Vec<Vec<Vec<u64>>> {
    let mut out = Vec::new();
    // choose pivot columns
    let mut pivots = Vec::new();
    fn rec(start: usize, d: usize, k: usize, cur: &mut Vec<usize>, all: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            all.push(cur.clone());
            return;
        }
        for c in start..d {
            cur.push(c);
            rec(c + 1, d, k, cur, all);
            cur.pop();
        }
    }
    rec(0, d, k, &mut Vec::new(), &mut pivots);
    for piv in pivots {
        // free positions: (row r, col c) with c > piv[r], c not a pivot
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| ((piv[r] + 1)..d).filter(|c| !piv.contains(c)).map(move |c| (r, c)))
            .collect();
        let total = p.pow(free.len() as u32);
        for code in 0..total {
            let mut rows = vec![vec![0u64; d]; k];
            for (r, &c) in piv.iter().enumerate() {
                rows[r][c] = 1;
            }
            let mut x = code;
            for &(r, c) in &free {
                rows[r][c] = x % p;
                x /= p;
            }
            out.push(rows);
        }
    }
    out
}

/// Lattices strictly between p*v and v, sorted by label.
pub fn vertex_neighbors(v: &LatticeBasis) -> Result<Vec<LatticeBasis>> {
    let (p, d) = (v.p, v.d);
    if p > 5 || d > 3 {
        return Err(Error::EnumerationTooLarge(alloc::format!(
            "neighbor enumeration limited to p <= 5 and d <= 3 (got p={p}, d={d})"
        )));
    }
    let mut out = Vec::new();
    for k in 1..d {
        for w in subspaces(p, d, k) {
            let pivots: Vec<usize> = w.iter().map(|r| r.iter().position(|&x| x == 1).unwrap()).collect();
            let mut cols: Vec<Vec<Q>> = w.iter().map(|r| r.iter().map(|&x| q(x as i64)).collect()).collect();
            for i in 0..d {
                if !pivots.contains(&i) {
                    let mut e = vec![q(0); d];
                    e[i] = q(p as i64);
                    cols.push(e);
                }
            }
            let m = v.hermite.mul(&Mat::from_cols(&cols));
            out.push(LatticeBasis::from_columns(&m, p)?);
        }
    }
    out.sort_by_key(|l| l.label());
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallGraph {
    /// Homothety representatives with index in [0, d).
    pub vertices: Vec<LatticeBasis>,
    /// Graph distance from the center.
    pub depth: Vec<usize>,
    /// Pairs (i, j) with i < j, sorted.
    pub edges: Vec<(usize, usize)>,
}

/// Vertices of the building (homothety classes) within graph distance `radius` of v.
pub fn ball(v: &LatticeBasis, radius: usize) -> Result<BallGraph> {
    let center = v.homothety_normal().0;
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    let mut layers: Vec<Vec<LatticeBasis>> = vec![vec![center.clone()]];
    seen.insert(center.label(), 0);
    let mut nbr_cache: BTreeMap<String, Vec<LatticeBasis>> = BTreeMap::new();
    for r in 0..radius {
        let mut next = Vec::new();
        for u in &layers[r] {
            let ns: Vec<LatticeBasis> = vertex_neighbors(u)?.into_iter().map(|n| n.homothety_normal().0).collect();
            for n in &ns {
                let key = n.label();
                if !seen.contains_key(&key) {
                    seen.insert(key, r + 1);
                    next.push(n.clone());
                }
            }
            nbr_cache.insert(u.label(), ns);
        }
        next.sort_by_key(|l| l.label());
        layers.push(next);
    }
    let mut vertices = Vec::new();
    let mut depth = Vec::new();
    for (r, layer) in layers.iter().enumerate() {
        for l in layer {
            vertices.push(l.clone());
            depth.push(r);
        }
    }
    let pos: BTreeMap<String, usize> = vertices.iter().enumerate().map(|(i, l)| (l.label(), i)).collect();
    let mut edges = Vec::new();
    for (i, u) in vertices.iter().enumerate() {
        let ns = match nbr_cache.get(&u.label()) {
            Some(ns) => ns.clone(),
            None => vertex_neighbors(u)?.into_iter().map(|n| n.homothety_normal().0).collect(),
        };
        for n in ns {
            if let Some(&j) = pos.get(&n.label()) {
                if i < j {
                    edges.push((i, j));
                }
            }
        }
    }
    edges.sort();
    edges.dedup();
    Ok(BallGraph { vertices, depth, edges })
}

impl BallGraph {
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        let key = if i < j { (i, j) } else { (j, i) };
        self.edges.binary_search(&key).is_ok()
    }

    /// Cliques of size 1..=max (these are the simplices, the building being a flag complex).
    pub fn cliques(&self, max: usize) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut adj = vec![Vec::new(); n];
        for &(i, j) in &self.edges {
            adj[i].push(j);
        }
        let mut out = Vec::new();
        fn grow(cur: &mut Vec<usize>, cand: &[usize], adj: &[Vec<usize>], max: usize, out: &mut Vec<Vec<usize>>) {
            out.push(cur.clone());
            if cur.len() == max {
                return;
            }
            for (k, &c) in cand.iter().enumerate() {
                let rest: Vec<usize> = cand[k + 1..].iter().copied().filter(|x| adj[c].contains(x)).collect();
                cur.push(c);
                grow(cur, &rest, adj, max, out);
                cur.pop();
            }
        }
        for v in 0..n {
            let cand: Vec<usize> = adj[v].clone();
            grow(&mut vec![v], &cand, &adj, max, &mut out);
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neighbor_counts() {
        assert_eq!(vertex_neighbors(&LatticeBasis::standard(3, 2)).unwrap().len(), 4);
        assert_eq!(vertex_neighbors(&LatticeBasis::standard(2, 3)).unwrap().len(), 14);
        assert!(vertex_neighbors(&LatticeBasis::standard(7, 2)).is_err());
    }

    #[test]
    fn tree_balls() {
        let z = LatticeBasis::standard(3, 2);
        assert_eq!(ball(&z, 0).unwrap().vertices.len(), 1);
        let b1 = ball(&z, 1).unwrap();
        assert_eq!((b1.vertices.len(), b1.edges.len()), (5, 4));
        let b2 = ball(&z, 2).unwrap();
        assert_eq!((b2.vertices.len(), b2.edges.len()), (17, 16));
    }

    #[test]
    fn d3_star_has_triangles() {
        let b = ball(&LatticeBasis::standard(2, 3), 1).unwrap();
        assert_eq!(b.vertices.len(), 15);
        // each point-line incident pair of F_2^3 closes a triangle with the center: 21 flags
        let tri = b.cliques(3).into_iter().filter(|c| c.len() == 3).count();
        assert_eq!(tri, 21);
    }
}
