//! Vector bundles on the Fargues-Fontaine curve at the level of slopes.

pub mod bc;
pub mod classify;
pub mod polygon;

pub use bc::{bc_dimensions, dimension_solve, twin_ext_sequence, BCDimension, SequenceTerm, TermKind};
pub use classify::{
    classify_deg1_by_enumeration, classify_deg1_trivial_modifications, classify_od_modifications, dictionary_table,
    morita_d_to_gl, morita_gl_to_d, newton_above_hodge, newton_above_hodge_by_enumeration, DictionaryRow,
    ModificationRecord, OdModification,
};
pub use polygon::{Polygon, PolygonRole};

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::SlopeFraction;
use crate::error::{Error, Result};

pub(crate) fn sf(a: i64, b: i64) -> SlopeFraction {
    SlopeFraction::new(a, b).expect("nonzero denominator")
}

/// m(lambda), the rank of the stable bundle O(lambda).
pub fn m_of(l: SlopeFraction) -> u64 {
    l.den() as u64
}

/// (+) O(lambda)^{copies}, slopes increasing, equal slopes merged.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BundleClass {
    pub summands: Vec<(SlopeFraction, u64)>,
}

impl BundleClass {
    pub fn new(parts: &[(SlopeFraction, u64)]) -> Self {
        let mut acc: BTreeMap<SlopeFraction, u64> = BTreeMap::new();
        for &(l, c) in parts {
            if c > 0 {
                *acc.entry(l).or_insert(0) += c;
            }
        }
        BundleClass { summands: acc.into_iter().collect() }
    }

    pub fn zero() -> Self {
        BundleClass { summands: Vec::new() }
    }

    pub fn o(l: SlopeFraction) -> Self {
        Self::new(&[(l, 1)])
    }

    pub fn trivial(n: u64) -> Self {
        Self::new(&[(SlopeFraction::int(0), n)])
    }

    pub fn rank(&self) -> u64 {
        self.summands.iter().map(|&(l, c)| c * m_of(l)).sum()
    }

    pub fn degree(&self) -> i64 {
        self.summands.iter().map(|&(l, c)| c as i64 * l.num()).sum()
    }

    pub fn rank_deg(&self) -> (u64, i64) {
        (self.rank(), self.degree())
    }

    pub fn slope(&self) -> Option<SlopeFraction> {
        let r = self.rank();
        (r > 0).then(|| sf(self.degree(), r as i64))
    }

    pub fn direct_sum(&self, o: &Self) -> Self {
        let mut all = self.summands.clone();
        all.extend_from_slice(&o.summands);
        Self::new(&all)
    }

    pub fn scale_copies(&self, k: u64) -> Self {
        Self::new(&self.summands.iter().map(|&(l, c)| (l, c * k)).collect::<Vec<_>>())
    }

    /// Divide every multiplicity by k, if possible.
    pub fn divide_copies(&self, k: u64) -> Option<Self> {
        if self.summands.iter().any(|&(_, c)| c % k != 0) {
            return None;
        }
        Some(Self::new(&self.summands.iter().map(|&(l, c)| (l, c / k)).collect::<Vec<_>>()))
    }

    /// O(a) (x) O(b) = O(a + b)^{m(a) m(b) / m(a + b)}.
    pub fn tensor(&self, o: &Self) -> Self {
        let mut parts = Vec::new();
        for &(a, ca) in &self.summands {
            for &(b, cb) in &o.summands {
                let s = a.add(b);
                parts.push((s, ca * cb * m_of(a) * m_of(b) / m_of(s)));
            }
        }
        Self::new(&parts)
    }

    pub fn dual(&self) -> Self {
        Self::new(&self.summands.iter().map(|&(l, c)| (l.neg(), c)).collect::<Vec<_>>())
    }

    /// Hom(self, target) = self^dual (x) target.
    pub fn hom(&self, target: &Self) -> Self {
        self.dual().tensor(target)
    }

    /// Along the degree n cover: pi_n^* O(l) = O_n(n l)^{m(l) / m(n l)}.
    pub fn pullback(&self, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameters("pullback degree must be >= 1".into()));
        }
        Ok(Self::new(
            &self.summands.iter().map(|&(l, c)| {
                let nl = l.mul_int(n as i64);
                (nl, c * m_of(l) / m_of(nl))
            }).collect::<Vec<_>>(),
        ))
    }

    pub fn is_semistable(&self) -> bool {
        self.summands.len() <= 1
    }
}

impl fmt::Display for BundleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "0");
        }
        for (n, &(l, c)) in self.summands.iter().rev().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            if l.is_zero() {
                write!(f, "O")?;
            } else {
                write!(f, "O({l})")?;
            }
            if c > 1 {
                write!(f, "^{c}")?;
            }
        }
        Ok(())
    }
}

/// Parse "O(1/2)^2 + O + O(-1)^3".
impl core::str::FromStr for BundleClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameters(alloc::format!("cannot parse bundle '{s}'"));
        let mut parts = Vec::new();
        for term in s.split('+').map(str::trim).filter(|t| !t.is_empty()) {
            let (base, copies) = match term.split_once('^') {
                Some((b, c)) => (b.trim(), c.trim().parse::<u64>().map_err(|_| bad())?),
                None => (term, 1),
            };
            let l = if base == "O" {
                SlopeFraction::int(0)
            } else {
                let inner = base.strip_prefix("O(").and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
                inner.parse::<SlopeFraction>().map_err(|_| bad())?
            };
            parts.push((l, copies));
        }
        if parts.is_empty() && s.trim() != "0" {
            return Err(bad());
        }
        Ok(Self::new(&parts))
    }
}

/// Group isocrystal slopes into stable summands with lambda_bundle = -(lambda - twist).
pub fn bundle_of_isocrystal(slopes: &[SlopeFraction], twist: i64) -> Result<BundleClass> {
    let mut count: BTreeMap<SlopeFraction, u64> = BTreeMap::new();
    for &s in slopes {
        *count.entry(s.sub(SlopeFraction::int(twist)).neg()).or_insert(0) += 1;
    }
    let mut parts = Vec::new();
    for (l, k) in count {
        if k % m_of(l) != 0 {
            return Err(Error::Inconsistent(alloc::format!("slope {l} occurs {k} times, not a multiple of {}", m_of(l))));
        }
        parts.push((l, k / m_of(l)));
    }
    Ok(BundleClass::new(&parts))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_degree_examples() {
        assert_eq!(BundleClass::o(sf(1, 2)).rank_deg(), (2, 1));
        assert_eq!(BundleClass::trivial(4).rank_deg(), (4, 0));
        let b = BundleClass::new(&[(sf(1, 3), 1), (sf(-1, 6), 1)]);
        assert_eq!(b.rank_deg(), (9, 0));
    }

    #[test]
    fn tensor_hom_pullback_examples() {
        let h = BundleClass::o(sf(1, 2));
        // rank is multiplicative, so four copies
        assert_eq!(h.tensor(&h), BundleClass::new(&[(sf(1, 1), 4)]));
        assert_eq!(BundleClass::o(sf(-1, 2)).tensor(&BundleClass::o(sf(1, 3))), BundleClass::o(sf(-1, 6)));
        assert_eq!(BundleClass::trivial(1).tensor(&h), h);
        let d = 3;
        assert_eq!(BundleClass::trivial(d).hom(&BundleClass::o(sf(1, 3))), BundleClass::new(&[(sf(1, 3), 3)]));
        assert_eq!(h.hom(&h), BundleClass::trivial(4));
        assert_eq!(h.pullback(2).unwrap(), BundleClass::new(&[(sf(1, 1), 2)]));
        assert_eq!(h.pullback(3).unwrap(), BundleClass::o(sf(3, 2)));
        assert_eq!(h.pullback(1).unwrap(), h);
    }

    #[test]
    fn isocrystal_convention() {
        let s = alloc::vec![sf(2, 3); 9];
        assert_eq!(bundle_of_isocrystal(&s, 1).unwrap(), BundleClass::new(&[(sf(1, 3), 3)]));
        assert_eq!(bundle_of_isocrystal(&[SlopeFraction::int(0); 3], 0).unwrap(), BundleClass::trivial(3));
        assert!(bundle_of_isocrystal(&[sf(1, 2)], 0).is_err());
    }

    #[test]
    fn display_roundtrip() {
        let b = BundleClass::new(&[(sf(1, 2), 2), (sf(0, 1), 1), (sf(-1, 3), 3)]);
        let s = alloc::format!("{b}");
        assert_eq!(s, "O(1/2)^2 + O + O(-1/3)^3");
        assert_eq!(s.parse::<BundleClass>().unwrap(), b);
    }
}
