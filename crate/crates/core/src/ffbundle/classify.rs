//! Minuscule modifications of O^d and of E_Dr = O(1/d)^d, and the Newton-above-Hodge list.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::polygon::{Polygon, PolygonRole};
use super::{bundle_of_isocrystal, sf, BundleClass};
use crate::arith::SlopeFraction;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModificationRecord {
    pub source: BundleClass,
    pub target: BundleClass,
    /// deg(source) - deg(target).
    pub degree: i64,
    pub d_linear: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OdModification {
    pub r: u64,
    pub gl_side: BundleClass,
    pub record: ModificationRecord,
    /// Slope and multiplicity of the negative part of the target, if any.
    pub negative_part: Option<(SlopeFraction, u64)>,
    /// lcm(d, d - r), the multiplicity printed in the classification statement.
    pub stated_multiplicity: u64,
    pub note: Option<String>,
}

fn check_d(d: u64) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidParameters("d must be >= 2".into()));
    }
    Ok(())
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// O^r (+) O(1/(d - r)) for r = 0..d-1.
pub fn classify_deg1_trivial_modifications(d: u64) -> Result<Vec<BundleClass>> {
    check_d(d)?;
    Ok((0..d)
        .map(|r| BundleClass::trivial(r).direct_sum(&BundleClass::o(sf(1, (d - r) as i64))))
        .collect())
}

/// All bundles with nonnegative slopes, rank d and degree 1, found by enumerating stable summands.
pub fn classify_deg1_by_enumeration(d: u64) -> Result<Vec<BundleClass>> {
    check_d(d)?;
    // stable summands O(a/h) with 0 <= a <= 1 by degree, 1 <= h <= d by rank
    let mut kinds: Vec<SlopeFraction> = Vec::new();
    for h in 1..=d as i64 {
        for a in 0..=1 {
            let l = sf(a, h);
            if l.den() == h && !kinds.contains(&l) {
                kinds.push(l);
            }
        }
    }
    kinds.sort();
    let mut out = Vec::new();
    fn rec(kinds: &[SlopeFraction], start: usize, rank: u64, deg: i64, cur: &mut Vec<(SlopeFraction, u64)>, d: u64, out: &mut Vec<BundleClass>) {
        if rank == d {
            if deg == 1 {
                out.push(BundleClass::new(cur));
            }
            return;
        }
        for k in start..kinds.len() {
            let l = kinds[k];
            let (h, a) = (l.den() as u64, l.num());
            if rank + h <= d && deg + a <= 1 {
                cur.push((l, 1));
                rec(kinds, k, rank + h, deg + a, cur, d, out);
                cur.pop();
            }
        }
    }
    rec(&kinds, 0, 0, 0, &mut Vec::new(), d, &mut out);
    out.sort();
    out.dedup();
    Ok(out)
}

/// F -> Hom(F, O(1/d)) from rank d bundles to D-bundles (rank d^2).
pub fn morita_gl_to_d(f: &BundleClass, d: u64) -> Result<BundleClass> {
    if f.rank() != d {
        return Err(Error::RankMismatch { expected: d as usize, got: f.rank() as usize });
    }
    Ok(f.hom(&BundleClass::o(sf(1, d as i64))))
}

/// E -> Hom_D(E, O(1/d)): the O-linear Hom has d^2 copies of the answer.
pub fn morita_d_to_gl(e: &BundleClass, d: u64) -> Result<BundleClass> {
    if e.rank() != d * d {
        return Err(Error::RankMismatch { expected: (d * d) as usize, got: e.rank() as usize });
    }
    e.hom(&BundleClass::o(sf(1, d as i64)))
        .divide_copies(d * d)
        .ok_or_else(|| Error::Inconsistent(format!("Hom({e}, O(1/{d})) is not d^2 copies of a bundle")))
}

/// Morita images of the degree 1 modifications of O^d, as degree d modifications of E_Dr.
pub fn classify_od_modifications(d: u64) -> Result<Vec<OdModification>> {
    let edr = BundleClass::new(&[(sf(1, d as i64), d)]);
    classify_deg1_trivial_modifications(d)?
        .into_iter()
        .enumerate()
        .map(|(r, f)| {
            let r = r as u64;
            let target = morita_gl_to_d(&f, d)?;
            let negative_part = target.summands.iter().copied().find(|(l, _)| l.num() < 0);
            let stated = d * (d - r) / gcd(d, d - r);
            let note = match negative_part {
                Some((l, c)) if c != stated => Some(format!(
                    "negative part O({l})^{c}: the stated multiplicity lcm({d}, {}) = {stated} would give rank {} instead of {}",
                    d - r,
                    stated * l.den() as u64 + r * d,
                    d * d
                )),
                _ => None,
            };
            let record = ModificationRecord { source: edr.clone(), degree: edr.degree() - target.degree(), target, d_linear: true };
            Ok(OdModification { r, gl_side: f, record, negative_part, stated_multiplicity: stated, note })
        })
        .collect()
}

/// Slope multisets {0^r, (1/(d - r))^{d - r}}.
pub fn newton_above_hodge(d: u64) -> Result<Vec<Vec<SlopeFraction>>> {
    check_d(d)?;
    Ok((0..d)
        .map(|r| {
            let mut v = alloc::vec![SlopeFraction::int(0); r as usize];
            v.extend(core::iter::repeat(sf(1, (d - r) as i64)).take((d - r) as usize));
            v
        })
        .collect())
}

/// Every nondecreasing sequence of d slopes in [0, 1] with denominators <= d whose Newton polygon
/// has integral breakpoints and lies above the Hodge polygon of (1, 0, ..., 0).
pub fn newton_above_hodge_by_enumeration(d: u64) -> Result<Vec<Vec<SlopeFraction>>> {
    check_d(d)?;
    let mut cands: Vec<SlopeFraction> = Vec::new();
    for b in 1..=d as i64 {
        for a in 0..=b {
            cands.push(sf(a, b));
        }
    }
    cands.sort();
    cands.dedup();
    let mut hodge_w = alloc::vec![SlopeFraction::int(0); d as usize - 1];
    hodge_w.push(SlopeFraction::int(1));
    let hodge = Polygon::from_slopes(PolygonRole::Hodge, &hodge_w);
    let mut out = Vec::new();
    fn rec(c: &[SlopeFraction], start: usize, left: usize, sum: SlopeFraction, cur: &mut Vec<SlopeFraction>, hodge: &Polygon, out: &mut Vec<Vec<SlopeFraction>>) {
        if sum > SlopeFraction::int(1) {
            return;
        }
        if left == 0 {
            let n = Polygon::from_slopes(PolygonRole::Newton, cur);
            if n.integral_breakpoints() && n.lies_above(hodge) {
                out.push(cur.clone());
            }
            return;
        }
        for k in start..c.len() {
            cur.push(c[k]);
            rec(c, k, left - 1, sum.add(c[k]), cur, hodge, out);
            cur.pop();
        }
    }
    rec(&cands, 0, d as usize, SlopeFraction::int(0), &mut Vec::new(), &hodge, &mut out);
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DictionaryRow {
    pub r: u64,
    pub slopes: Vec<SlopeFraction>,
    /// bundle_of_isocrystal(slopes, 0), which has the opposite sign.
    pub isocrystal_bundle: BundleClass,
    /// its dual, to be compared with the r-th degree 1 modification.
    pub dualized: BundleClass,
    pub modification: BundleClass,
}

/// Newton-above-Hodge slope data matched to the degree 1 modifications of O^d through the
/// isocrystal-to-bundle convention followed by dualization.
pub fn dictionary_table(d: u64) -> Result<Vec<DictionaryRow>> {
    let mods = classify_deg1_trivial_modifications(d)?;
    newton_above_hodge(d)?
        .into_iter()
        .zip(mods)
        .enumerate()
        .map(|(r, (slopes, modification))| {
            let isocrystal_bundle = bundle_of_isocrystal(&slopes, 0)?;
            let dualized = isocrystal_bundle.dual();
            Ok(DictionaryRow { r: r as u64, slopes, isocrystal_bundle, dualized, modification })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d2_lists() {
        let l = classify_deg1_trivial_modifications(2).unwrap();
        assert_eq!(l, alloc::vec![BundleClass::o(sf(1, 2)), BundleClass::trivial(1).direct_sum(&BundleClass::o(sf(1, 1)))]);
        let m = classify_od_modifications(2).unwrap();
        assert_eq!(m[0].record.target, BundleClass::trivial(4));
        assert_eq!(m[1].record.target, BundleClass::new(&[(sf(1, 2), 1), (sf(-1, 2), 1)]));
        assert!(m[1].note.is_some());
        let n = newton_above_hodge(2).unwrap();
        assert_eq!(n, alloc::vec![alloc::vec![sf(1, 2), sf(1, 2)], alloc::vec![sf(0, 1), sf(1, 1)]]);
    }

    #[test]
    fn d3_r1_target() {
        let m = classify_od_modifications(3).unwrap();
        assert_eq!(m[1].record.target, BundleClass::new(&[(sf(1, 3), 1), (sf(-1, 6), 1)]));
        assert_eq!(m[1].record.degree, 3);
    }

    #[test]
    fn morita_roundtrip_and_rank_check() {
        for d in 2..=5 {
            for f in classify_deg1_trivial_modifications(d).unwrap() {
                let e = morita_gl_to_d(&f, d).unwrap();
                assert_eq!(morita_d_to_gl(&e, d).unwrap(), f);
            }
        }
        assert!(matches!(morita_gl_to_d(&BundleClass::trivial(3), 2), Err(Error::RankMismatch { .. })));
        let edr = BundleClass::new(&[(sf(1, 3), 3)]);
        assert_eq!(morita_d_to_gl(&edr, 3).unwrap(), BundleClass::trivial(3));
    }
}
