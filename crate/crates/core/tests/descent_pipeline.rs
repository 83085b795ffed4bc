use pgonal::curve::{are_isomorphic, PGonalCurve};
use pgonal::descent::{certify, descend, verify_cocycle, DescentOptions};
use pgonal::exactfield::{q, FieldAutomorphism, NumberField};
use pgonal::galois::GaloisContext;
use pgonal::moebius::MobiusMap;

fn gaussian_ctx() -> (NumberField, GaloisContext) {
    let k = NumberField::gaussian();
    let ctx = GaloisContext::new(FieldAutomorphism::new(-&k.generator()).unwrap(), 0).unwrap();
    (k, ctx)
}

#[test]
fn worked_p3_example_descends_to_q() {
    let (k, ctx) = gaussian_ctx();
    let data: Vec<_> = [(1, 1), (2, 1), (3, 2), (4, 2)]
        .iter()
        .map(|&(a, n)| (k.from_int(a), n))
        .collect();
    let base = PGonalCurve::from_finite(3, &k, &data).unwrap();
    let i = k.generator();
    let t = MobiusMap::new(k.one(), -&i, k.one(), i.clone()).unwrap();
    let twisted = base.transport(&t, 1).unwrap();
    let opts = DescentOptions { assume_unique: true, ..Default::default() };
    let r = descend(&twisted, &ctx, &opts).unwrap();
    verify_cocycle(&r.cocycle).unwrap();
    assert!(r.splitting.satisfies_identity());
    certify(&twisted, &ctx, &r).unwrap();
    assert_eq!(r.degrees.f_over_k, 1);
    let embedded = base.embed(&r.splitting.embedding).unwrap();
    assert!(are_isomorphic(&embedded, &r.output_curve).unwrap().is_some());
}

#[test]
fn injective_character_over_zeta5() {
    let k = NumberField::cyclotomic_prime(5).unwrap();
    let z = k.generator();
    let ctx = GaloisContext::new(FieldAutomorphism::new(z.pow(2)).unwrap(), 0).unwrap();
    let mut data = Vec::new();
    for j in 1..=4u64 {
        data.push((z.pow(j), j));
        data.push((z.pow(j).scale(&q(2)), (2 * j) % 5));
    }
    let c = PGonalCurve::from_finite(5, &k, &data).unwrap();
    let r = descend(&c, &ctx, &DescentOptions::default()).unwrap();
    certify(&c, &ctx, &r).unwrap();
    assert_eq!(r.degrees.k1_over_k, 4);
    assert!(r.degrees.f_over_k <= 8);
    assert_eq!(r.degrees.f_over_k, r.degrees.k1_over_k * r.splitting.extension_degree);
}

#[test]
fn order_four_context_with_translation_twist() {
    let k = NumberField::cyclotomic_prime(5).unwrap();
    let z = k.generator();
    let ctx = GaloisContext::new(FieldAutomorphism::new(z.pow(2)).unwrap(), 0).unwrap();
    let data: Vec<_> = [0, 1, 3, 4, 9, 13].iter().map(|&a| (k.from_int(a), 1)).collect();
    let base = PGonalCurve::from_finite(3, &k, &[
        (k.from_int(0), 1), (k.from_int(1), 1), (k.from_int(3), 1), (k.from_int(4), 1),
        (k.from_int(9), 1), (k.from_int(13), 2), (k.from_int(20), 2),
    ]).unwrap();
    let shift = MobiusMap::new(k.one(), z.clone(), k.zero(), k.one()).unwrap();
    let twisted = base.transport(&shift, 1).unwrap();
    let r = descend(&twisted, &ctx, &DescentOptions::default()).unwrap();
    verify_cocycle(&r.cocycle).unwrap();
    certify(&twisted, &ctx, &r).unwrap();
    assert_eq!(r.degrees.f_over_k, 1);
    let hyper = PGonalCurve::from_finite(2, &k, &data).unwrap().transport(&shift, 1).unwrap();
    let r = descend(&hyper, &ctx, &DescentOptions::default()).unwrap();
    certify(&hyper, &ctx, &r).unwrap();
    assert_eq!(r.degrees.f_over_k, 1);
}
