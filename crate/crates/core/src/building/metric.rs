use crate::error::Result;
use crate::lattice::{invariant_factors, LatticeBasis};
use crate::rat::{q, Mat, Q};

use super::apartment::BuildingPoint;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistanceMode {
    /// sup |x_i - x'_i| on lattices.
    Brv,
    /// The same minimized over integer diagonal shifts (homothety classes).
    Homothety,
}

fn sup_abs(v: &[Q]) -> Q {
    v.iter().map(|x| if x < &q(0) { -x.clone() } else { x.clone() }).max().unwrap_or_else(|| q(0))
}

fn min_over_shifts(delta: &[Q]) -> Q {
    let hi = delta.iter().max().unwrap();
    let lo = delta.iter().min().unwrap();
    let t = -(hi + lo) / q(2);
    [t.floor(), t.ceil()]
        .iter()
        .map(|k| sup_abs(&delta.iter().map(|x| x + k).collect::<alloc::vec::Vec<_>>()))
        .min()
        .unwrap()
}

pub fn distance(a: &LatticeBasis, b: &LatticeBasis, mode: DistanceMode) -> Result<Q> {
    let e: alloc::vec::Vec<Q> = invariant_factors(a, b)?.exponents.iter().map(|&k| q(k)).collect();
    Ok(match mode {
        DistanceMode::Brv => sup_abs(&e),
        DistanceMode::Homothety => min_over_shifts(&e),
    })
}

/// Distance of two points presented in the same apartment (possibly with different bases).
pub fn distance_points(x: &BuildingPoint, y: &BuildingPoint, mode: DistanceMode) -> Result<Q> {
    let yc = y.coords_in(&x.apartment)?;
    let delta: alloc::vec::Vec<Q> = x.coords.iter().zip(&yc).map(|(a, b)| a - b).collect();
    Ok(match mode {
        DistanceMode::Brv => sup_abs(&delta),
        DistanceMode::Homothety => min_over_shifts(&delta),
    })
}

/// Homothety component of a lattice under g: index(g L) = index(L) - v(det g).
pub fn index_shift(g: &Mat, p: u64) -> i64 {
    -crate::rat::vp(&g.det(), p).expect("invertible")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let z = LatticeBasis::standard(3, 2);
        assert_eq!(distance(&z, &LatticeBasis::diagonal(3, &[1, 0]), DistanceMode::Brv).unwrap(), q(1));
        assert_eq!(distance(&z, &LatticeBasis::diagonal(3, &[2, 0]), DistanceMode::Homothety).unwrap(), q(1));
        assert_eq!(distance(&z, &z, DistanceMode::Brv).unwrap(), q(0));
    }
}
