use charvan_core::{
    build_group, conjugacy_classes, induce, inner_product, irreducible_characters, restrict,
    ClassFunction, Cyclotomic, Permutation, Rational,
};
use charvan_oracle::embed;
use nalgebra::Complex;
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn cyclotomic() -> impl Strategy<Value = Cyclotomic> {
    (1u64..=15).prop_flat_map(|n| {
        prop::collection::vec((0..n as i64, -4i64..=4, 1i64..=3), 0..5).prop_map(move |terms| {
            Cyclotomic::from_powers(
                n,
                terms
                    .into_iter()
                    .map(|(k, a, b)| (k, Rational::new(a.into(), b.into()))),
            )
        })
    })
}

fn as_complex(c: &Cyclotomic) -> Complex<f64> {
    let coeffs: Vec<f64> = c.coeffs().iter().map(|r| r.to_f64().unwrap()).collect();
    embed(c.modulus(), &coeffs)
}

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

proptest! {
    #[test]
    fn ring_axioms(a in cyclotomic(), b in cyclotomic(), c in cyclotomic()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
    }

    #[test]
    fn complex_embedding_is_a_homomorphism(a in cyclotomic(), b in cyclotomic()) {
        let sum = as_complex(&(&a + &b)) - (as_complex(&a) + as_complex(&b));
        let prod = as_complex(&(&a * &b)) - as_complex(&a) * as_complex(&b);
        prop_assert!(sum.norm() < 1e-9);
        prop_assert!(prod.norm() < 1e-9);
        prop_assert!((as_complex(&a.conjugate()) - as_complex(&a).conj()).norm() < 1e-9);
    }

    #[test]
    fn json_round_trip(a in cyclotomic()) {
        let text = serde_json::to_string(&a).unwrap();
        let back: Cyclotomic = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn power_maps_follow_element_powers(i in 0usize..7, t in -30i64..30) {
        let s5 = build_group(&[
            Permutation::parse("(1 2)", 5).unwrap(),
            Permutation::parse("(1 2 3 4 5)", 5).unwrap(),
        ])
        .unwrap();
        let cd = conjugacy_classes(&s5);
        let rep = &cd.class(i).rep;
        let j = cd.power(i, t);
        prop_assert_eq!(Some(j), cd.class_of(&rep.pow(t)));
        prop_assert_eq!(cd.class(j).element_order, cd.power_order(i, t));
    }

    #[test]
    fn group_order_matches_enumeration(a in perm(6), b in perm(6)) {
        let g = build_group(&[a, b]).unwrap();
        prop_assert_eq!(g.elements().len() as u64, g.order());
        prop_assert_eq!(720 % g.order(), 0);
    }

    #[test]
    fn frobenius_reciprocity_in_s5(a in perm(5), b in perm(5)) {
        let s5 = build_group(&[
            Permutation::parse("(1 2)", 5).unwrap(),
            Permutation::parse("(1 2 3 4 5)", 5).unwrap(),
        ])
        .unwrap();
        let h = s5.generate(&[a, b]).unwrap();
        let tg = irreducible_characters(&s5).unwrap();
        let th = irreducible_characters(&h).unwrap();
        for beta in 0..th.len() {
            let b = ClassFunction::irreducible(&th, beta);
            let induced = induce(&s5, &b).unwrap();
            prop_assert_eq!(
                induced.character_degree().unwrap(),
                th.degrees()[beta] * (s5.order() / h.order())
            );
            for chi in 0..tg.len() {
                let x = ClassFunction::irreducible(&tg, chi);
                prop_assert_eq!(
                    inner_product(&induced, &x).unwrap(),
                    inner_product(&b, &restrict(&h, &x).unwrap()).unwrap()
                );
            }
        }
    }
}
