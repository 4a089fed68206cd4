use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use qcartan_core::dual::{
    build_f_chi, solve_x_basis, BasisFunctionals, Dual, DualError, Functional, Normalization, Twist,
};
use qcartan_core::linalg::Matrix;
use qcartan_core::ncalg::frt::gl_q2;
use qcartan_core::ncalg::{Algebra, AlgebraElement, Word};
use qcartan_core::qscalar::QScalar;

const GENS: [&str; 6] = ["a", "b", "c", "d", "det", "det_inv"];

fn glq2() -> Arc<Algebra> {
    Arc::new(Algebra::from_config(gl_q2()).unwrap())
}

fn setup(norm: Normalization) -> (Arc<Algebra>, Dual, BasisFunctionals) {
    let alg = glq2();
    let d = Dual::new(alg.clone()).unwrap();
    let b = build_f_chi(&d, norm).unwrap();
    (alg, d, b)
}

fn one() -> BigRational {
    BigRational::from_integer(BigInt::from(1))
}

fn sc(s: &str) -> QScalar {
    s.parse().unwrap()
}

fn gens(alg: &Algebra) -> Vec<AlgebraElement> {
    GENS.iter().map(|g| alg.gen(g).unwrap()).collect()
}

fn low_degree(alg: &Algebra) -> Vec<AlgebraElement> {
    let mut out = vec![AlgebraElement::one()];
    for k in 1..=2 {
        out.extend(alg.normal_words(k).into_iter().map(AlgebraElement::word));
    }
    out
}

#[test]
fn pairings_on_generators_are_triangular() {
    let (alg, d, _) = setup(Normalization::Lambda);
    let a = alg.generator("a").unwrap();
    let dd = alg.generator("d").unwrap();
    let b = alg.generator("b").unwrap();
    let c = alg.generator("c").unwrap();
    let m =
        |rows: Vec<Vec<&str>>| Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(sc).collect()).collect());
    assert_eq!(d.generator_rep(true, a), &m(vec![vec!["q", "0"], vec!["0", "1"]]));
    assert_eq!(d.generator_rep(true, dd), &m(vec![vec!["1", "0"], vec!["0", "q"]]));
    assert_eq!(d.generator_rep(true, b), &m(vec![vec!["0", "0"], vec!["0", "0"]]));
    assert_eq!(d.generator_rep(true, c), &m(vec![vec!["0", "q - 1/q"], vec!["0", "0"]]));
    assert_eq!(d.generator_rep(false, a), &m(vec![vec!["1/q", "0"], vec!["0", "1"]]));
    assert_eq!(
        d.generator_rep(false, b),
        &m(vec![vec!["0", "0"], vec!["-q + 1/q", "0"]])
    );
    assert_eq!(d.generator_rep(false, c), &m(vec![vec!["0", "0"], vec!["0", "0"]]));
}

#[test]
fn pairings_respect_every_relation() {
    let alg = glq2();
    let d = Dual::new(alg.clone()).unwrap();
    for plus in [true, false] {
        for (lhs, rhs) in alg.rules() {
            let l = d.rep_word(plus, None, &lhs);
            let mut r = Matrix::zeros(2, 2);
            for (w, c) in rhs.terms() {
                r = r.add(&d.rep_word(plus, None, w).scale(c));
            }
            assert_eq!(*l, r, "{} plus={plus}", alg.word_str(&lhs));
        }
    }
}

#[test]
fn f_and_chi_on_unit() {
    let (_, d, b) = setup(Normalization::Lambda);
    let i = AlgebraElement::one();
    for x in 0..4 {
        assert!(d.eval(&b.chi[x], &i).is_zero());
        for y in 0..4 {
            let want = if x == y { QScalar::one() } else { QScalar::zero() };
            assert_eq!(d.eval(&b.f[x][y], &i), want);
        }
    }
}

#[test]
fn chi_on_generators() {
    let (alg, d, b) = setup(Normalization::Lambda);
    let expect: [(usize, &str, &str); 6] = [
        (0, "a", "-q"),
        (0, "d", "-q + 1/q"),
        (1, "c", "-1"),
        (2, "b", "-1"),
        (3, "d", "-q"),
        (3, "a", "0"),
    ];
    for (i, g, v) in expect {
        assert_eq!(d.eval(&b.chi[i], &alg.gen(g).unwrap()), sc(v), "chi[{i}]({g})");
    }
    let raw = build_f_chi(&d, Normalization::Raw).unwrap();
    let lam = QScalar::lambda();
    for i in 0..4 {
        for g in gens(&alg) {
            assert_eq!(d.eval(&raw.chi[i], &g), &lam * &d.eval(&b.chi[i], &g));
        }
    }
}

/// χ_i(ab) = χ_i(a)ε(b) + f_{j,i}(a) χ_j(b)
fn twenty_two_bis(alg: &Algebra, d: &Dual, b: &BasisFunctionals, x: &AlgebraElement, y: &AlgebraElement) {
    let xy = alg.mul(x, y);
    for i in 0..4 {
        let lhs = d.eval(&b.chi[i], &xy);
        let mut rhs = d.eval(&b.chi[i], x) * alg.counit(y);
        for j in 0..4 {
            rhs += &(d.eval(&b.f[j][i], x) * d.eval(&b.chi[j], y));
        }
        assert_eq!(lhs, rhs, "i={i} x={} y={}", alg.fmt(x), alg.fmt(y));
    }
}

#[test]
fn chi_twisted_leibniz_on_generator_pairs() {
    let (alg, d, b) = setup(Normalization::Lambda);
    for x in gens(&alg) {
        for y in gens(&alg) {
            twenty_two_bis(&alg, &d, &b, &x, &y);
        }
    }
}

#[test]
fn chi_twisted_leibniz_on_low_degree() {
    let (alg, d, b) = setup(Normalization::Lambda);
    let ws = low_degree(&alg);
    for x in &ws {
        for y in &ws {
            twenty_two_bis(&alg, &d, &b, x, y);
        }
    }
}

#[test]
fn f_is_antimultiplicative() {
    let (alg, d, b) = setup(Normalization::Lambda);
    let ws = low_degree(&alg);
    for x in &ws {
        for y in &ws {
            let xy = alg.mul(x, y);
            for i in 0..4 {
                for j in 0..4 {
                    let lhs = d.eval(&b.f[i][j], &xy);
                    let rhs: QScalar = (0..4).map(|k| d.eval(&b.f[k][j], x) * d.eval(&b.f[i][k], y)).sum();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

#[test]
fn convolution_is_associative_with_actions() {
    let (alg, d, b) = setup(Normalization::Lambda);
    let f = &b.f[1][2];
    let g = &b.chi[0];
    let fg = Functional::conv(f, g);
    for x in low_degree(&alg) {
        assert_eq!(d.left_conv(f, &d.left_conv(g, &x)), d.left_conv(&fg, &x));
        assert_eq!(d.right_conv(g, &d.right_conv(f, &x)), d.right_conv(&fg, &x));
        assert_eq!(d.right_conv(&Functional::counit(), &x), x);
        assert_eq!(d.left_conv(&Functional::counit(), &x), x);
    }
}

#[test]
fn twist_by_s_then_sinv_is_identity() {
    let (alg, d, b) = setup(Normalization::Lambda);
    let f = &b.f[3][0];
    let tt = Functional::twist(Twist::SInv, &Functional::twist(Twist::S, f));
    for x in low_degree(&alg) {
        assert_eq!(d.eval(&tt, &x), d.eval(f, &x));
    }
}

#[test]
fn x_basis_is_dual_to_chi() {
    let (alg, d, b) = setup(Normalization::Lambda);
    let xb = solve_x_basis(&d, &b).unwrap();
    for (j, x) in xb.x.iter().enumerate() {
        assert!(alg.counit(x).is_zero());
        for i in 0..4 {
            let want = if i == j { QScalar::one() } else { QScalar::zero() };
            assert_eq!(d.eval(&b.chi[i], x), want);
        }
    }
}

#[test]
fn x_basis_limit_at_q_one() {
    let (alg, d, b) = setup(Normalization::Lambda);
    let xb = solve_x_basis(&d, &b).unwrap();
    let one = one();
    let names = ["a", "b", "c", "d"];
    for x in &xb.x {
        for (w, c) in x.terms() {
            let v = c.specialize(&one).unwrap();
            assert!(
                w.len() == 1 || v == BigRational::from_integer(0.into()) || w.is_empty(),
                "{}",
                alg.fmt(x)
            );
            if w.len() == 1 {
                assert!(names.contains(&alg.name(w.gens()[0])));
            }
        }
    }
}

#[test]
fn lambda_normalization_fails_on_specialized_q_one() {
    let alg = Arc::new(glq2().specialize(&one()).unwrap());
    let d = Dual::new(alg).unwrap();
    let err = build_f_chi(&d, Normalization::Lambda).unwrap_err();
    assert!(matches!(err, DualError::LambdaVanishes(_)));
    let raw = build_f_chi(&d, Normalization::Raw).unwrap();
    let err = solve_x_basis(&d, &raw).unwrap_err();
    assert_eq!(err.to_string(), "x-basis not solvable in degree 1");
}

#[test]
fn f_acts_trivially_at_q_one() {
    let alg = Arc::new(glq2().specialize(&one()).unwrap());
    let d = Dual::new(alg.clone()).unwrap();
    let b = build_f_chi(&d, Normalization::Raw).unwrap();
    for x in low_degree(&alg) {
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { x.clone() } else { AlgebraElement::zero() };
                assert_eq!(d.left_conv(&b.f[i][j], &x), want);
                assert_eq!(d.right_conv(&b.f[i][j], &x), want);
            }
        }
    }
}

#[test]
fn out_of_range_index_is_reported() {
    let (alg, d, _) = setup(Normalization::Lambda);
    let err = d.try_eval(&Functional::lp(2, 0), &alg.gen("a").unwrap()).unwrap_err();
    assert!(matches!(err, DualError::IndexOutOfRange { .. }));
}

#[test]
fn non_frt_instance_is_rejected() {
    let mut cfg = gl_q2();
    cfg.frt = None;
    let alg = Arc::new(Algebra::from_config(cfg).unwrap());
    assert!(matches!(Dual::new(alg), Err(DualError::NotFrt)));
}

fn element(alg: &Algebra, coeffs: &[i64]) -> AlgebraElement {
    let mut words = vec![Word::empty()];
    words.extend(alg.normal_words(1));
    words.extend(alg.normal_words(2));
    let mut x = AlgebraElement::zero();
    for (w, &c) in words.iter().zip(coeffs) {
        x.add_term(w.clone(), QScalar::from_int(c));
    }
    x
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn chi_twisted_leibniz_random(
        xs in proptest::collection::vec(-3i64..4, 12),
        ys in proptest::collection::vec(-3i64..4, 12),
    ) {
        let (alg, d, b) = setup(Normalization::Lambda);
        let x = element(&alg, &xs);
        let y = element(&alg, &ys);
        twenty_two_bis(&alg, &d, &b, &x, &y);
    }
}
