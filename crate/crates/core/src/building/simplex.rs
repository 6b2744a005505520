use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lattice::LatticeBasis;

/// Lattices sorted by increasing index with p * last strictly inside first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Simplex {
    pub lattices: Vec<LatticeBasis>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimplexDefect {
    Empty,
    DimensionMismatch,
    Repetition,
    NotNested,
    WindowViolated,
}

/// Sorts by index and checks the chain condition; `Ok` carries the sorted chain.
pub fn check_simplex(chain: &[LatticeBasis]) -> core::result::Result<Vec<LatticeBasis>, SimplexDefect> {
    let first = chain.first().ok_or(SimplexDefect::Empty)?;
    if chain.iter().any(|l| l.d != first.d || l.p != first.p) {
        return Err(SimplexDefect::DimensionMismatch);
    }
    let mut s: Vec<LatticeBasis> = chain.to_vec();
    s.sort_by_key(|l| l.index);
    for w in s.windows(2) {
        if w[0] == w[1] {
            return Err(SimplexDefect::Repetition);
        }
        if w[0].index == w[1].index || !w[1].contains(&w[0]) {
            return Err(SimplexDefect::NotNested);
        }
    }
    let last = s.last().unwrap();
    let lo = &s[0];
    if last.index - lo.index >= lo.d as i64 || !lo.contains(&last.scale(1)) {
        return Err(SimplexDefect::WindowViolated);
    }
    Ok(s)
}

pub fn is_simplex(chain: &[LatticeBasis]) -> (bool, Option<SimplexDefect>) {
    match check_simplex(chain) {
        Ok(_) => (true, None),
        Err(e) => (false, Some(e)),
    }
}

impl Simplex {
    pub fn new(chain: &[LatticeBasis]) -> Result<Self> {
        check_simplex(chain)
            .map(|lattices| Simplex { lattices })
            .map_err(|e| Error::InvalidParameters(alloc::format!("not a simplex: {e:?}")))
    }

    /// Rescale pairwise adjacent homothety classes into a chain below the first one.
    pub fn from_classes(classes: &[LatticeBasis]) -> Result<Self> {
        let v0 = classes.first().ok_or_else(|| Error::InvalidParameters("no classes".into()))?;
        let d = v0.d as i64;
        let mut chain = alloc::vec![v0.clone()];
        for u in &classes[1..] {
            // index(u p^k) = index(u) - k d must fall in (index(v0) - d, index(v0))
            let k = (u.index - v0.index + d).div_euclid(d);
            let l = u.scale(k);
            if !(v0.contains(&l) && l.contains(&v0.scale(1))) || l == *v0 {
                return Err(Error::InvalidParameters("classes are not pairwise adjacent".into()));
            }
            chain.push(l);
        }
        Self::new(&chain)
    }

    pub fn indices(&self) -> Vec<i64> {
        self.lattices.iter().map(|l| l.index).collect()
    }

    pub fn dim(&self) -> usize {
        self.lattices[0].d
    }

    pub fn p(&self) -> u64 {
        self.lattices[0].p
    }

    pub fn act(&self, g: &crate::rat::Mat) -> Result<Self> {
        let l: Result<Vec<_>> = self.lattices.iter().map(|x| crate::lattice::gl_act(g, x)).collect();
        Self::new(&l?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::reference_chain;

    #[test]
    fn chain_conditions() {
        let c = reference_chain(3, 3).unwrap();
        assert_eq!(is_simplex(&c), (true, None));
        let z = LatticeBasis::standard(3, 2);
        assert_eq!(is_simplex(&[z.clone(), z.clone()]).1, Some(SimplexDefect::Repetition));
        let far = LatticeBasis::diagonal(3, &[2, 0]);
        assert_eq!(is_simplex(&[z.clone(), far]).1, Some(SimplexDefect::WindowViolated));
        assert_eq!(is_simplex(&[]).1, Some(SimplexDefect::Empty));
        let other = LatticeBasis::diagonal(3, &[0, 1]);
        let one = LatticeBasis::diagonal(3, &[1, 0]);
        assert_eq!(is_simplex(&[other, one]).1, Some(SimplexDefect::NotNested));
    }
}
