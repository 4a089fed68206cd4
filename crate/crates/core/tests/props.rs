mod common;

use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use common::glq2;
use qcartan_core::calculus::{Calculus, VectorField};
use qcartan_core::cartan::Cartan;
use qcartan_core::dual::Normalization;
use qcartan_core::ncalg::{AlgebraElement, TensorElement, Word};
use qcartan_core::qscalar::QScalar;
use qcartan_core::wedge::{TensorForm, Wedge};

fn cartan() -> &'static Cartan {
    static C: OnceLock<Cartan> = OnceLock::new();
    C.get_or_init(|| {
        let calc = Arc::new(Calculus::new(glq2(), Normalization::Lambda).unwrap());
        Cartan::new(Arc::new(Wedge::new(calc, 3).unwrap()))
    })
}

fn words() -> &'static Vec<Word> {
    static W: OnceLock<Vec<Word>> = OnceLock::new();
    W.get_or_init(|| {
        let alg = glq2();
        (0..=2).flat_map(|n| alg.normal_words(n)).collect()
    })
}

fn coeff() -> impl Strategy<Value = QScalar> {
    (-3i64..=3, -2i32..=2).prop_map(|(n, k)| QScalar::from_int(n).checked_mul(&QScalar::q_pow(k)).unwrap())
}

fn element() -> impl Strategy<Value = AlgebraElement> {
    prop::collection::vec((coeff(), 0..words().len()), 1..4).prop_map(|terms| {
        let mut x = AlgebraElement::zero();
        for (c, i) in terms {
            x.add_term(words()[i].clone(), c);
        }
        glq2().normal_form_raw(&x.terms().map(|(w, c)| (c.clone(), w.clone())).collect::<Vec<_>>())
    })
}

fn one_form() -> impl Strategy<Value = TensorForm> {
    (0usize..4, element(), 0usize..4, element()).prop_map(|(i, a, j, b)| {
        let w = cartan().wedge();
        w.right_mul(&w.omega(i), &a).add(&w.right_mul(&w.omega(j), &b))
    })
}

fn field() -> impl Strategy<Value = VectorField> {
    (0usize..4, element(), 0usize..4).prop_map(|(i, a, j)| {
        let calc = cartan().calculus();
        &calc.left_multiply_vector(&a, &calc.t(i)) + &calc.t(j)
    })
}

fn antipode_then_multiply(t: &TensorElement, left: bool) -> AlgebraElement {
    let alg = glq2();
    let mut out = AlgebraElement::zero();
    for (key, c) in t.terms() {
        let (x, y) = (
            AlgebraElement::word(key[0].clone()),
            AlgebraElement::word(key[1].clone()),
        );
        let p = if left {
            alg.mul(&alg.antipode(&x), &y)
        } else {
            alg.mul(&x, &alg.antipode(&y))
        };
        out.add_scaled(&p, c);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_is_associative(x in element(), y in element(), z in element()) {
        let alg = glq2();
        prop_assert_eq!(alg.mul(&alg.mul(&x, &y), &z), alg.mul(&x, &alg.mul(&y, &z)));
    }

    #[test]
    fn coproduct_is_multiplicative(x in element(), y in element()) {
        let alg = glq2();
        prop_assert_eq!(alg.coproduct(&alg.mul(&x, &y)), alg.tensor_mul(&alg.coproduct(&x), &alg.coproduct(&y)));
    }

    #[test]
    fn antipode_axioms(x in element()) {
        let alg = glq2();
        let unit = AlgebraElement::scalar(alg.counit(&x));
        let dx = alg.coproduct(&x);
        prop_assert_eq!(antipode_then_multiply(&dx, true), unit.clone());
        prop_assert_eq!(antipode_then_multiply(&dx, false), unit);
    }

    #[test]
    fn d_is_a_derivation_on_functions(a in element(), b in element()) {
        let calc = cartan().calculus();
        let lhs = calc.differential(&glq2().mul(&a, &b));
        let rhs = &calc.right_multiply_form(&calc.differential(&a), &b)
            + &calc.left_multiply_form(&a, &calc.differential(&b));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn d_squared_vanishes(x in one_form()) {
        let w = cartan().wedge();
        prop_assert!(w.image(&w.exterior_d(&w.exterior_d(&x).unwrap()).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn graded_leibniz(x in one_form(), y in one_form()) {
        let w = cartan().wedge();
        let lhs = w.exterior_d(&w.tensor(&x, &y)).unwrap();
        let rhs = w.tensor(&w.exterior_d(&x).unwrap(), &y).sub(&w.tensor(&x, &w.exterior_d(&y).unwrap()));
        prop_assert!(w.wedge_eq(&lhs, &rhs).unwrap());
    }

    #[test]
    fn lie_is_anticommutator_of_d_and_contraction(v in field(), x in one_form()) {
        let c = cartan();
        let w = c.wedge();
        let lhs = c.lie(&v, &x).unwrap();
        let rhs = c.contract(&v, &w.exterior_d(&x).unwrap()).unwrap()
            .add(&w.exterior_d(&c.contract(&v, &x).unwrap()).unwrap());
        prop_assert!(c.wedge_eq(&lhs, &rhs).unwrap());
    }

    #[test]
    fn lie_commutes_with_d(v in field(), a in element()) {
        let c = cartan();
        let w = c.wedge();
        let f = TensorForm::function(a);
        let lhs = c.lie(&v, &w.exterior_d(&f).unwrap()).unwrap();
        let rhs = w.exterior_d(&c.lie(&v, &f).unwrap()).unwrap();
        prop_assert!(c.wedge_eq(&lhs, &rhs).unwrap());
    }
}
