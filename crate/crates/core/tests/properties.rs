use explab::cyclotomic::Cyclo;
use explab::finite_model::{
    affine_line, canonical_rep, classical_ft, conv, ft, kernel_e, map_sum, pullback, real_psi, twist_scale, Bundle,
    ExpClass, ExpObject, FiniteMap, FiniteSet,
};
use explab::rat::q;
use proptest::prelude::*;

/// Table on |X| x F_p with small integer entries in the basis 1, z, ..., z^{p-2}.
fn table(p: u64, size: usize) -> impl Strategy<Value = ExpObject> {
    let cell = prop::collection::vec(-2i64..3, (p - 1) as usize);
    prop::collection::vec(cell, size * p as usize).prop_map(move |cells| {
        let base = FiniteSet::new(size).unwrap();
        let mut h = ExpObject::zero(base, p).unwrap();
        for (i, c) in cells.into_iter().enumerate() {
            let v = Cyclo::from_coeffs(p, c.into_iter().map(q).collect()).unwrap();
            *h.at_mut(i / p as usize, i % p as usize) = v;
        }
        h
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn additivity_on_five_points(f in prop::collection::vec(0usize..7, 5), g in prop::collection::vec(0usize..7, 5)) {
        let p = 7;
        let x = FiniteSet::new(5).unwrap();
        let f = FiniteMap::new(x, affine_line(p), f).unwrap();
        let g = FiniteMap::new(x, affine_line(p), g).unwrap();
        let e = kernel_e(p).unwrap();
        let lhs = conv(&pullback(&f, &e).unwrap(), &pullback(&g, &e).unwrap()).unwrap();
        let rhs = pullback(&map_sum(&f, &g, p).unwrap(), &e).unwrap();
        prop_assert_eq!(lhs.rep(), rhs.rep());
    }

    #[test]
    fn canonical_rep_is_a_class_invariant(h in table(5, 3), shift in prop::collection::vec(-3i64..4, 3)) {
        let c = canonical_rep(&h);
        prop_assert_eq!(canonical_rep(&c), c.clone());
        let g: Vec<Cyclo> = shift.into_iter().map(|s| Cyclo::embed_rational(q(s), 5).unwrap()).collect();
        prop_assert_eq!(canonical_rep(&h.add_pullback_from_base(&g).unwrap()), c);
    }

    #[test]
    fn fourier_inversion_p3_rank1(h in table(3, 6)) {
        // two fibers of F_3
        let bundle = Bundle::new(2, 1, 3).unwrap();
        let h = ExpClass::new(h);
        let twice = ft(&ft(&h, 1).unwrap(), 1).unwrap();
        let expected = twist_scale(&pullback(&bundle.negation(), &h).unwrap(), 0, -1);
        prop_assert!(twice == expected);
    }

    #[test]
    fn fourier_is_linear(a in table(5, 5), b in table(5, 5)) {
        let (a, b) = (ExpClass::new(a), ExpClass::new(b));
        let sum = ft(&a.add(&b).unwrap(), 1).unwrap();
        prop_assert!(sum == ft(&a, 1).unwrap().add(&ft(&b, 1).unwrap()).unwrap());
    }

    #[test]
    fn realization_commutes_with_fourier(h in table(5, 5), lambda in 1i64..5) {
        let h = ExpClass::new(h);
        let lhs = real_psi(&ft(&h, 1).unwrap(), lambda).unwrap();
        let rhs = classical_ft(&real_psi(&h, lambda).unwrap(), lambda, 1, 5).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn json_round_trip(h in table(3, 2)) {
        let text = serde_json::to_string(&h).unwrap();
        let back: ExpObject = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, h);
    }
}
