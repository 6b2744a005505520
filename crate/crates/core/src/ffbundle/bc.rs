//! Banach-Colmez Dimension bookkeeping: pairs (C-dimension, E-height).

use alloc::format;
use alloc::vec::Vec;
use core::ops::{Add, Neg, Sub};

use super::{sf, BundleClass};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct BCDimension {
    pub dim: i64,
    pub ht: i64,
}

impl BCDimension {
    pub const fn new(dim: i64, ht: i64) -> Self {
        BCDimension { dim, ht }
    }
}

impl Add for BCDimension {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        BCDimension::new(self.dim + o.dim, self.ht + o.ht)
    }
}

impl Sub for BCDimension {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        BCDimension::new(self.dim - o.dim, self.ht - o.ht)
    }
}

impl Neg for BCDimension {
    type Output = Self;
    fn neg(self) -> Self {
        BCDimension::new(-self.dim, -self.ht)
    }
}

/// (Dim H^0, Dim H^1). For O(a/h): a > 0 gives H^0 = (a, h); a = 0 gives H^0 = (0, 1);
/// a < 0 gives H^1 = (-a, -h), e.g. C / E_n = (1, -n) for O(-1/n).
pub fn bc_dimensions(b: &BundleClass) -> (BCDimension, BCDimension) {
    let mut h0 = BCDimension::default();
    let mut h1 = BCDimension::default();
    for &(l, c) in &b.summands {
        let (a, h, c) = (l.num(), l.den(), c as i64);
        if a > 0 {
            h0 = h0 + BCDimension::new(a * c, h * c);
        } else if a == 0 {
            h0 = h0 + BCDimension::new(0, c);
        } else {
            h1 = h1 + BCDimension::new(-a * c, -h * c);
        }
    }
    (h0, h1)
}

/// What a term of an exact sequence is asserted to be.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TermKind {
    Any,
    /// finite dimensional E-vector space: C-dimension 0, height >= 0
    EVector,
    /// finite dimensional C-vector space: height 0
    CVector,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SequenceTerm {
    pub dim: Option<BCDimension>,
    pub kind: TermKind,
}

impl SequenceTerm {
    pub fn known(d: BCDimension) -> Self {
        SequenceTerm { dim: Some(d), kind: TermKind::Any }
    }

    pub fn unknown(kind: TermKind) -> Self {
        SequenceTerm { dim: None, kind }
    }
}

fn check_kind(x: BCDimension, kind: TermKind, pos: usize) -> Result<()> {
    let ok = x.dim >= 0
        && match kind {
            TermKind::Any => true,
            TermKind::EVector => x.dim == 0 && x.ht >= 0,
            TermKind::CVector => x.ht == 0,
        };
    if ok {
        Ok(())
    } else {
        Err(Error::Inconsistent(format!("term {pos} would have Dimension ({}, {}) but is asserted {kind:?}", x.dim, x.ht)))
    }
}

/// Solve 0 -> X_0 -> X_1 -> ... -> X_n -> 0 for its single unknown term: the alternating sum vanishes.
pub fn dimension_solve(seq: &[SequenceTerm]) -> Result<BCDimension> {
    let unknown: Vec<usize> = seq.iter().enumerate().filter(|(_, t)| t.dim.is_none()).map(|(i, _)| i).collect();
    if unknown.len() != 1 {
        return Err(Error::InvalidParameters(format!("expected exactly one unknown term, found {}", unknown.len())));
    }
    let u = unknown[0];
    let mut acc = BCDimension::default();
    for (i, t) in seq.iter().enumerate() {
        if let Some(x) = t.dim {
            check_kind(x, t.kind, i)?;
            acc = if (i + u) % 2 == 0 { acc - x } else { acc + x };
        }
    }
    check_kind(acc, seq[u].kind, u)?;
    Ok(acc)
}

/// Hom(-, O(1/d)) applied to 0 -> O -> O(1) -> C_inf -> 0:
/// 0 -> H^0(O(1/d - 1)) -> H^0(O(1/d)) -> Ext^1(C_inf, O(1/d)) -> H^1(O(1/d - 1)) -> H^1(O(1/d)) -> 0.
pub fn twin_ext_sequence(d: u64) -> Result<Vec<SequenceTerm>> {
    if d == 0 {
        return Err(Error::InvalidParameters("d must be >= 1".into()));
    }
    let l = sf(1, d as i64);
    let lm = l.sub(crate::arith::SlopeFraction::int(1));
    let (a0, a1) = bc_dimensions(&BundleClass::o(lm));
    let (b0, b1) = bc_dimensions(&BundleClass::o(l));
    Ok(alloc::vec![
        SequenceTerm::known(a0),
        SequenceTerm::known(b0),
        SequenceTerm::unknown(TermKind::CVector),
        SequenceTerm::known(a1),
        SequenceTerm::known(b1),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions_of_stable_bundles() {
        assert_eq!(bc_dimensions(&BundleClass::o(sf(1, 1))), (BCDimension::new(1, 1), BCDimension::default()));
        assert_eq!(bc_dimensions(&BundleClass::o(sf(-1, 4))).1, BCDimension::new(1, -4));
        assert_eq!(bc_dimensions(&BundleClass::trivial(1)).0, BCDimension::new(0, 1));
    }

    #[test]
    fn solve_examples() {
        let n = 5;
        let x = dimension_solve(&[
            SequenceTerm::known(BCDimension::new(1, 1)),
            SequenceTerm::unknown(TermKind::Any),
            SequenceTerm::known(BCDimension::new(1, -n)),
        ])
        .unwrap();
        assert_eq!(x, BCDimension::new(2, 1 - n));
        for d in 1..=10 {
            assert_eq!(dimension_solve(&twin_ext_sequence(d).unwrap()).unwrap(), BCDimension::new(d as i64, 0));
        }
        // injective H^0(O(1)) -> H^1(O(-1/n)) would leave a cokernel of height -n-1
        let dev = dimension_solve(&[
            SequenceTerm::known(BCDimension::new(1, 1)),
            SequenceTerm::known(BCDimension::new(1, -n)),
            SequenceTerm::unknown(TermKind::EVector),
        ]);
        assert!(matches!(dev, Err(Error::Inconsistent(_))));
    }
}
