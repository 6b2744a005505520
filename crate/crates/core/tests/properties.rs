use btlab_core::arith::ext::ExtField;
use btlab_core::arith::{SlopeFraction, WittRingSpec};
use btlab_core::building::{distance, norm_distance, point_distance_of_norms, DiagonalNorm, DistanceMode};
use btlab_core::cartier::{random_unimodular, Isocrystal, WMat};
use btlab_core::ffbundle::BundleClass;
use btlab_core::lattice::{gl_act, LatticeBasis};
use btlab_core::rat::{ppow, q, qf, vp, Mat};
use btlab_core::specfiber::{preimage_chain, specialize_point, RigidPoint};
use proptest::prelude::*;

fn mat(p: u64, d: usize, entries: &[(i64, i64)]) -> Option<Mat> {
    let rows: Vec<Vec<_>> = (0..d).map(|i| (0..d).map(|j| q(entries[i * d + j].0) * ppow(p, entries[i * d + j].1)).collect()).collect();
    let m = Mat::from_rows(&rows);
    (m.det() != q(0)).then_some(m)
}

fn entries() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-5i64..6, -1i64..3), 9)
}

fn bundle() -> impl Strategy<Value = BundleClass> {
    prop::collection::vec(((-4i64..5), (1i64..5), (1u64..3)), 1..4).prop_map(|v| {
        let s: Vec<(SlopeFraction, u64)> = v.into_iter().map(|(a, b, c)| (SlopeFraction::new(a, b).unwrap(), c)).collect();
        BundleClass::new(&s)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hermite_form_is_canonical(p in prop::sample::select(vec![2u64, 3, 5]), d in 1usize..4, e in entries(), f in entries()) {
        let (Some(a), Some(g)) = (mat(p, d, &e), mat(p, d, &f)) else { return Ok(()) };
        let l = LatticeBasis::from_columns(&a, p).unwrap();
        prop_assert_eq!(LatticeBasis::from_columns(&l.hermite, p).unwrap(), l.clone());
        // an invertible integral change of basis with unit determinant preserves the lattice
        if g.is_integral(p) && vp(&g.det(), p) == Some(0) {
            prop_assert_eq!(LatticeBasis::from_columns(&a.mul(&g), p).unwrap(), l.clone());
        }
        prop_assert_eq!(gl_act(&g, &l).unwrap().index, l.index - vp(&g.det(), p).unwrap());
    }

    #[test]
    fn triangle_inequality(p in prop::sample::select(vec![2u64, 3]), d in 1usize..4, x in entries(), y in entries(), z in entries()) {
        let (Some(a), Some(b), Some(c)) = (mat(p, d, &x), mat(p, d, &y), mat(p, d, &z)) else { return Ok(()) };
        let [a, b, c] = [a, b, c].map(|m| LatticeBasis::from_columns(&m, p).unwrap());
        for mode in [DistanceMode::Brv, DistanceMode::Homothety] {
            let dd = |u: &LatticeBasis, v: &LatticeBasis| distance(u, v, mode).unwrap();
            prop_assert!(dd(&a, &c) <= dd(&a, &b) + dd(&b, &c));
            prop_assert_eq!(dd(&a, &b), dd(&b, &a));
        }
    }

    #[test]
    fn norm_distance_routes_agree(p in prop::sample::select(vec![2u64, 3]), x in entries(), y in entries(),
                                  c in prop::collection::vec((-6i64..7, 1i64..5), 6)) {
        let d = 2 + (c[0].0.rem_euclid(2) as usize);
        let (Some(a), Some(b)) = (mat(p, d, &x), mat(p, d, &y)) else { return Ok(()) };
        let na = DiagonalNorm::new(p, a, c[..d].iter().map(|&(n, m)| qf(n, m)).collect()).unwrap();
        let nb = DiagonalNorm::new(p, b, c[3..3 + d].iter().map(|&(n, m)| qf(n, m)).collect()).unwrap();
        prop_assert_eq!(norm_distance(&na, &nb).unwrap(), point_distance_of_norms(&na, &nb).unwrap());
    }

    #[test]
    fn bundle_rank_degree_additivity(a in bundle(), b in bundle()) {
        let s = a.direct_sum(&b);
        prop_assert_eq!(s.rank(), a.rank() + b.rank());
        prop_assert_eq!(s.degree(), a.degree() + b.degree());
        let t = a.tensor(&b);
        prop_assert_eq!(t.rank(), a.rank() * b.rank());
        prop_assert_eq!(t.degree(), a.degree() * b.rank() as i64 + b.degree() * a.rank() as i64);
        prop_assert_eq!(a.dual().dual(), a.clone());
        prop_assert_eq!(a.dual().degree(), -a.degree());
        let back: BundleClass = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn witt_frobenius(p in prop::sample::select(vec![2u64, 3, 5]), m in 1u32..4, n in 1u32..6,
                      raw in prop::collection::vec(any::<u64>(), 8)) {
        let w = WittRingSpec::build(p, m, n).unwrap();
        let pn = w.modulus_pn;
        let a = w.element_from_u64s(&raw[..m as usize].iter().map(|x| x % pn).collect::<Vec<_>>());
        let b = w.element_from_u64s(&raw[4..4 + m as usize].iter().map(|x| x % pn).collect::<Vec<_>>());
        prop_assert_eq!(w.frobenius(&w.mul(&a, &b), 1), w.mul(&w.frobenius(&a, 1), &w.frobenius(&b, 1)));
        prop_assert_eq!(w.frobenius(&w.frobenius(&a, 1), -1), a.clone());
        prop_assert_eq!(w.frobenius(&a, m as i64), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn newton_slopes_invariant_under_conjugation(seed in any::<u64>(), a in 0i64..2, b in 0i64..2) {
        let w = WittRingSpec::build(3, 2, 8).unwrap();
        let mut s = seed;
        let mut next = move || { s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); s >> 11 };
        let base = Isocrystal::new(w.clone(), WMat::from_ints(&w, &[&[3i64.pow(a as u32), 0], &[0, 3i64.pow(b as u32)]]));
        let u = random_unimodular(&w, 2, &mut next);
        let conj = base.conjugate(&u).unwrap();
        prop_assert_eq!(base.newton_slopes().unwrap(), conj.newton_slopes().unwrap());
    }

    #[test]
    fn specialization_equivariance(c in prop::collection::vec((-9i64..10, 0usize..3), 4), e in entries()) {
        let k = ExtField::eisenstein(3, 2).unwrap();
        let den = [1, 3, 2];
        let coords = vec![vec![qf(c[0].0, den[c[0].1]), qf(c[1].0, den[c[1].1])], vec![qf(c[2].0, den[c[2].1]), qf(c[3].0, den[c[3].1])]];
        let Ok(x) = RigidPoint::new(k, coords) else { return Ok(()) };
        let Some(g) = mat(3, 2, &e) else { return Ok(()) };
        let Ok(r) = specialize_point(&x) else { return Ok(()) };
        let gx = x.act(&g).unwrap();
        let moved = specialize_point(&gx).unwrap();
        let classes = |s: &[LatticeBasis]| {
            let mut v: Vec<_> = s.iter().map(|l| l.homothety_normal().0).collect();
            v.sort_by_key(|l| l.label());
            v
        };
        let image: Vec<LatticeBasis> = r.simplex.lattices.iter().map(|l| gl_act(&g, l).unwrap()).collect();
        prop_assert_eq!(classes(&moved.simplex.lattices), classes(&image));
        prop_assert_eq!(preimage_chain(&gx).unwrap().0, moved.simplex.lattices);
    }
}
