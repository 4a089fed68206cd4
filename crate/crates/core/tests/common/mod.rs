#![allow(dead_code)]

use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use qcartan_core::calculus::Calculus;
use qcartan_core::dual::Normalization;
use qcartan_core::ncalg::frt::gl_q2;
use qcartan_core::ncalg::{Algebra, AlgebraElement, Word};
use qcartan_core::qscalar::QScalar;

pub const GENS: [&str; 6] = ["a", "b", "c", "d", "det", "det_inv"];

pub fn glq2() -> Arc<Algebra> {
    static ALG: OnceLock<Arc<Algebra>> = OnceLock::new();
    ALG.get_or_init(|| Arc::new(Algebra::from_config(gl_q2()).unwrap()))
        .clone()
}

pub fn calc() -> &'static Calculus {
    static CALC: OnceLock<Calculus> = OnceLock::new();
    CALC.get_or_init(|| Calculus::new(glq2(), Normalization::Lambda).unwrap())
}

pub fn one() -> BigRational {
    BigRational::from_integer(BigInt::from(1))
}

pub fn sc(s: &str) -> QScalar {
    s.parse().unwrap()
}

pub fn gens(alg: &Algebra) -> Vec<AlgebraElement> {
    GENS.iter().map(|g| alg.gen(g).unwrap()).collect()
}

/// The unit, all generators and all normal words of length 2.
pub fn low_degree(alg: &Algebra) -> Vec<AlgebraElement> {
    let mut out = vec![AlgebraElement::one()];
    for k in 1..=2 {
        out.extend(alg.normal_words(k).into_iter().map(AlgebraElement::word));
    }
    out
}

pub fn delta(i: usize, j: usize) -> AlgebraElement {
    if i == j {
        AlgebraElement::one()
    } else {
        AlgebraElement::zero()
    }
}

/// Element with small integer coefficients on the unit and words up to length 2.
pub fn element(alg: &Algebra, coeffs: &[i64]) -> AlgebraElement {
    let mut words = vec![Word::empty()];
    words.extend(alg.normal_words(1));
    words.extend(alg.normal_words(2));
    let mut x = AlgebraElement::zero();
    for (w, &c) in words.iter().zip(coeffs) {
        x.add_term(w.clone(), QScalar::from_int(c));
    }
    x
}
