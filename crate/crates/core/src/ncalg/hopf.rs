//! Hopf-axiom verification on low-degree normal words.

use super::{Algebra, AlgebraElement, TensorElement, Word};
use crate::qscalar::QScalar;
use crate::report::Report;

fn words_up_to(alg: &Algebra, max: usize) -> Vec<Word> {
    (1..=max).flat_map(|k| alg.normal_words(k)).collect()
}

/// `m ∘ (S ⊗ id) ∘ Δ` or `m ∘ (id ⊗ S) ∘ Δ`
fn antipode_contraction(alg: &Algebra, w: &Word, left: bool) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for (k, c) in alg.coproduct_word(w).terms() {
        let (x, y) = if left {
            (
                alg.antipode_word(&k[0]).as_ref().clone(),
                AlgebraElement::word(k[1].clone()),
            )
        } else {
            (
                AlgebraElement::word(k[0].clone()),
                alg.antipode_word(&k[1]).as_ref().clone(),
            )
        };
        out.add_scaled(&alg.mul(&x, &y), c);
    }
    out
}

/// Checks coassociativity, counit and antipode axioms, compatibility of Δ with
/// S, the S⁻¹ tables, consistency of Δ, ε and S with every rewrite rule, and
/// associativity of rewriting on all generator triples.
pub fn verify_hopf_axioms(alg: &Algebra) -> Report {
    let mut rep = Report::new();
    let fe = |x: &AlgebraElement| alg.fmt(x);
    let ft = |x: &TensorElement| alg.fmt_tensor(x);
    let fs = |x: &QScalar| x.to_string();

    for w in words_up_to(alg, 2) {
        let name = alg.word_str(&w);
        let x = AlgebraElement::word(w.clone());
        let cop = alg.coproduct_word(&w);

        let left = cop.map_slot(0, 2, |u| (*alg.coproduct_word(u)).clone());
        let right = cop.map_slot(1, 2, |u| (*alg.coproduct_word(u)).clone());
        rep.compare("coassociativity", &name, &left, &right, ft);

        let l = cop.contract_slot(0, |u| alg.counit_word(u)).to_element();
        rep.compare("counit-left", &name, &l, &x, fe);
        let r = cop.contract_slot(1, |u| alg.counit_word(u)).to_element();
        rep.compare("counit-right", &name, &r, &x, fe);

        let eps = AlgebraElement::scalar(alg.counit_word(&w));
        rep.compare("antipode-left", &name, &antipode_contraction(alg, &w, true), &eps, fe);
        rep.compare("antipode-right", &name, &antipode_contraction(alg, &w, false), &eps, fe);

        let s = alg.antipode_word(&w);
        let ds = alg.coproduct(&s);
        let ss = cop
            .map_slot_elem(0, |u| (*alg.antipode_word(u)).clone())
            .map_slot_elem(1, |u| (*alg.antipode_word(u)).clone())
            .permute(&[1, 0]);
        rep.compare("coproduct-antipode", &name, &ds, &ss, ft);

        rep.compare("antipode-inverse", &name, &alg.antipode_inv(&s), &x, fe);
        let si = alg.antipode_inv_word(&w);
        rep.compare("antipode-inverse-right", &name, &alg.antipode(&si), &x, fe);
    }

    for (lhs, rhs) in alg.rules() {
        let name = format!("{} -> {}", alg.word_str(&lhs), alg.fmt(rhs));
        let (g, h) = (Word::single(lhs.gens()[0]), Word::single(lhs.gens()[1]));
        let dl = alg.tensor_mul(&alg.coproduct_word(&g), &alg.coproduct_word(&h));
        rep.compare("rule-coproduct", &name, &dl, &alg.coproduct(rhs), ft);
        let el = alg.counit_word(&g) * alg.counit_word(&h);
        rep.compare("rule-counit", &name, &el, &alg.counit(rhs), fs);
        let sl = alg.mul(&alg.antipode_word(&h), &alg.antipode_word(&g));
        rep.compare("rule-antipode", &name, &sl, &alg.antipode(rhs), fe);
    }

    let n = alg.num_generators();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let gx = alg.gen_elem(x as u8);
                let gy = alg.gen_elem(y as u8);
                let gz = alg.gen_elem(z as u8);
                let l = alg.mul(&alg.mul(&gx, &gy), &gz);
                let r = alg.mul(&gx, &alg.mul(&gy, &gz));
                let name = alg.word_str(&Word::from_slice(&[x as u8, y as u8, z as u8]));
                rep.compare("associativity", &name, &l, &r, fe);
            }
        }
    }
    rep
}
