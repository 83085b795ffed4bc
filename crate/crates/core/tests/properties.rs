use pgonal::curve::{are_isomorphic, normalize_infinity, PGonalCurve};
use pgonal::exactfield::{qf, FieldAutomorphism, FieldElement, NumberField};
use pgonal::format::{curve_from_json, curve_to_json, to_canonical_string};
use pgonal::moebius::{cross_ratio, MobiusMap, ProjPoint};
use proptest::prelude::*;

fn zeta5() -> NumberField {
    NumberField::cyclotomic_prime(5).unwrap()
}

fn element(k: &NumberField, c: &[(i64, i64)]) -> FieldElement {
    k.from_coords(c.iter().map(|&(n, d)| qf(n, d)).collect()).unwrap()
}

fn coords(d: usize) -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-20i64..=20, 1i64..=5), d)
}

fn map_over(k: &NumberField, e: &[Vec<(i64, i64)>]) -> Option<MobiusMap> {
    MobiusMap::new(element(k, &e[0]), element(k, &e[1]), element(k, &e[2]), element(k, &e[3])).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms(a in coords(4), b in coords(4), c in coords(4)) {
        let k = zeta5();
        let (a, b, c) = (element(&k, &a), element(&k, &b), element(&k, &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), k.one());
        }
    }

    #[test]
    fn quadratic_inverse_matches_definition(a in coords(2), d in prop::sample::select(vec![-7i64, -3, -1, 2, 5, 13])) {
        let k = NumberField::quadratic(d).unwrap();
        let a = element(&k, &a);
        prop_assume!(!a.is_zero());
        prop_assert_eq!(&a * &a.inv().unwrap(), k.one());
    }

    #[test]
    fn automorphisms_are_ring_maps(a in coords(4), b in coords(4), e in 1u64..4) {
        let k = zeta5();
        let sigma = FieldAutomorphism::new(k.generator().pow(e + 1)).unwrap();
        let (a, b) = (element(&k, &a), element(&k, &b));
        let s = |x: &FieldElement| sigma.apply(x).unwrap();
        prop_assert_eq!(s(&(&a * &b)), &s(&a) * &s(&b));
        prop_assert_eq!(s(&(&a + &b)), &s(&a) + &s(&b));
    }

    #[test]
    fn cross_ratio_is_mobius_invariant(
        pts in prop::collection::vec(coords(2), 4),
        m in prop::collection::vec(coords(2), 4),
    ) {
        let k = NumberField::gaussian();
        let pts: Vec<ProjPoint> = pts.iter().map(|c| ProjPoint::finite(element(&k, c))).collect();
        for i in 0..4 {
            for j in 0..i {
                prop_assume!(pts[i] != pts[j]);
            }
        }
        let Some(t) = map_over(&k, &m) else { return Ok(()) };
        let img: Vec<ProjPoint> = pts.iter().map(|p| t.apply(p).unwrap()).collect();
        prop_assert_eq!(
            cross_ratio(&pts[0], &pts[1], &pts[2], &pts[3]),
            cross_ratio(&img[0], &img[1], &img[2], &img[3])
        );
    }

    #[test]
    fn conjugation_commutes_with_composition(m1 in prop::collection::vec(coords(2), 4), m2 in prop::collection::vec(coords(2), 4)) {
        let k = NumberField::gaussian();
        let conj = FieldAutomorphism::new(-&k.generator()).unwrap();
        let (Some(a), Some(b)) = (map_over(&k, &m1), map_over(&k, &m2)) else { return Ok(()) };
        prop_assert_eq!(
            a.compose(&b).unwrap().galois_image(&conj).unwrap(),
            a.galois_image(&conj).unwrap().compose(&b.galois_image(&conj).unwrap()).unwrap()
        );
    }

    #[test]
    fn infinity_normalization_round_trips(pts in prop::collection::btree_set(-30i64..30, 5..8)) {
        let k = NumberField::rationals();
        let pts: Vec<i64> = pts.into_iter().collect();
        // p = 3 data with ∞ listed explicitly
        let mut branches: Vec<_> = pts.iter().map(|&a| (ProjPoint::finite(k.from_int(a)), 1u64)).collect();
        let extra = (3 - pts.len() as u64 % 3) % 3;
        let inf_mult = if extra == 0 { 3 } else { extra };
        prop_assume!(inf_mult < 3);
        branches.push((ProjPoint::infinity(&k), inf_mult));
        let c = PGonalCurve::new(3, k.clone(), branches.into_iter().map(|(p, n)| pgonal::curve::BranchDatum::new(p, n)).collect()).unwrap();
        let (moved, t) = normalize_infinity(&c, &[]).unwrap();
        prop_assert!(!moved.has_infinity());
        let back = moved.transport(&t.inverse(), 1).unwrap();
        prop_assert!(back.same_data(&c));
    }

    #[test]
    fn isomorphism_is_symmetric(pts in prop::collection::btree_set(-15i64..15, 6), m in prop::collection::vec(coords(2), 4)) {
        let k = NumberField::gaussian();
        let data: Vec<_> = pts.iter().map(|&a| (k.from_int(a), 1)).collect();
        let c = PGonalCurve::from_finite(2, &k, &data).unwrap();
        let Some(t) = map_over(&k, &m) else { return Ok(()) };
        let d = c.transport(&t, 1).unwrap();
        prop_assert!(are_isomorphic(&c, &d).unwrap().is_some());
        prop_assert!(are_isomorphic(&d, &c).unwrap().is_some());
    }

    #[test]
    fn curve_documents_round_trip(pts in prop::collection::btree_set(-40i64..40, 5..8), y in 1i64..5) {
        let k = NumberField::gaussian();
        let mut data: Vec<_> = pts.iter().map(|&a| (k.from_int_coords(&[a, y]), 1)).collect();
        if data.len() % 2 == 1 {
            data.push((k.from_int(1000), 1));
        }
        let c = PGonalCurve::from_finite(2, &k, &data).unwrap();
        let text = to_canonical_string(&curve_to_json(&c));
        let back = curve_from_json(&serde_json::from_str(&text).unwrap(), "payload").unwrap();
        prop_assert!(back.same_data(&c));
        prop_assert_eq!(to_canonical_string(&curve_to_json(&back)), text);
    }
}
