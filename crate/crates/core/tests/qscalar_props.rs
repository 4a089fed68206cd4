use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use qcartan_core::qscalar::{Poly, QScalar};

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-6i64..=6, 0..4).prop_map(|cs| Poly::from_i64s(&cs))
}

fn scalar() -> impl Strategy<Value = QScalar> {
    (poly(), poly(), -2i32..=2).prop_filter_map("zero denominator", |(n, d, k)| {
        if d.is_zero() {
            return None;
        }
        let x = QScalar::from_polys(n, d).ok()?;
        Some(x * QScalar::q_pow(k))
    })
}

fn point() -> impl Strategy<Value = BigRational> {
    (-7i64..=7, 1i64..=4).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn addition_is_associative_and_commutative(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
    }

    #[test]
    fn multiplication_is_associative_and_distributive(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
    }

    #[test]
    fn inverses(a in scalar()) {
        prop_assert_eq!(&a - &a, QScalar::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a / &a, QScalar::one());
            prop_assert_eq!(a.inv().unwrap().inv().unwrap(), a);
        }
    }

    #[test]
    fn canonicalization_is_idempotent(a in scalar()) {
        let again = QScalar::from_polys(a.numer().clone(), a.denom().clone()).unwrap();
        prop_assert_eq!(&again, &a);
        prop_assert!(a.denom().leading().unwrap() > &BigInt::from(0));
    }

    #[test]
    fn specialize_commutes_with_arith(a in scalar(), b in scalar(), x in point()) {
        let (Ok(va), Ok(vb)) = (a.specialize(&x), b.specialize(&x)) else { return Ok(()) };
        prop_assert_eq!((&a + &b).specialize(&x).unwrap(), &va + &vb);
        prop_assert_eq!((&a - &b).specialize(&x).unwrap(), &va - &vb);
        prop_assert_eq!((&a * &b).specialize(&x).unwrap(), &va * &vb);
        if !num_traits::Zero::is_zero(&vb) {
            prop_assert_eq!((&a / &b).specialize(&x).unwrap(), &va / &vb);
        }
    }

    #[test]
    fn display_parse_round_trip(a in scalar()) {
        let back: QScalar = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }
}
