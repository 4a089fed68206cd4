use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_rational::BigRational;
use smallvec::SmallVec;

use super::element::{AlgebraElement, Word};
use crate::qscalar::{QScalar, ScalarError};

pub type TensorKey = SmallVec<[Word; 3]>;

/// Element of the k-fold tensor power of A, expanded on tuples of normal words.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorElement {
    arity: usize,
    terms: BTreeMap<TensorKey, QScalar>,
}

impl TensorElement {
    pub fn zero(arity: usize) -> Self {
        TensorElement {
            arity,
            terms: BTreeMap::new(),
        }
    }

    /// `I ⊗ … ⊗ I`
    pub fn unit(arity: usize) -> Self {
        let mut t = TensorElement::zero(arity);
        t.add_term((0..arity).map(|_| Word::empty()).collect(), QScalar::one());
        t
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TensorKey, &QScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, key: TensorKey, c: QScalar) {
        debug_assert_eq!(key.len(), self.arity);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &TensorElement, c: &QScalar) {
        assert_eq!(self.arity, other.arity, "tensor arity mismatch");
        if c.is_zero() {
            return;
        }
        for (k, v) in other.terms() {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &QScalar) -> TensorElement {
        let mut out = TensorElement::zero(self.arity);
        out.add_scaled(self, c);
        out
    }

    pub fn specialize(&self, q0: &BigRational) -> Result<TensorElement, ScalarError> {
        let mut out = TensorElement::zero(self.arity);
        for (k, c) in self.terms() {
            out.add_term(k.clone(), c.specialize_scalar(q0)?);
        }
        Ok(out)
    }

    /// `x₁ ⊗ x₂ ⊗ …` for normal-form factors.
    pub fn pure(factors: &[&AlgebraElement]) -> TensorElement {
        let mut out = TensorElement::unit(0);
        for f in factors {
            out = out.tensor(&TensorElement::from_element(f));
        }
        out
    }

    pub fn from_element(x: &AlgebraElement) -> TensorElement {
        let mut out = TensorElement::zero(1);
        for (w, c) in x.terms() {
            out.add_term(SmallVec::from_iter([w.clone()]), c.clone());
        }
        out
    }

    /// Reads an arity-1 tensor back as an algebra element.
    pub fn to_element(&self) -> AlgebraElement {
        assert_eq!(self.arity, 1);
        let mut out = AlgebraElement::zero();
        for (k, c) in self.terms() {
            out.add_term(k[0].clone(), c.clone());
        }
        out
    }

    /// Outer tensor product; arities add.
    pub fn tensor(&self, other: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero(self.arity + other.arity);
        for (k1, c1) in self.terms() {
            for (k2, c2) in other.terms() {
                let mut k = k1.clone();
                k.extend(k2.iter().cloned());
                out.add_term(k, c1 * c2);
            }
        }
        out
    }

    /// Applies a linear map given on words to one slot; `f` returns elements
    /// of arity `m`, so the result has arity `arity - 1 + m`.
    pub fn map_slot(&self, slot: usize, m: usize, mut f: impl FnMut(&Word) -> TensorElement) -> TensorElement {
        let mut out = TensorElement::zero(self.arity - 1 + m);
        for (k, c) in self.terms() {
            let img = f(&k[slot]);
            assert_eq!(img.arity, m, "slot map arity mismatch");
            for (ik, ic) in img.terms() {
                let mut nk: TensorKey = SmallVec::new();
                nk.extend(k[..slot].iter().cloned());
                nk.extend(ik.iter().cloned());
                nk.extend(k[slot + 1..].iter().cloned());
                out.add_term(nk, c * ic);
            }
        }
        out
    }

    /// Applies a linear map into A to one slot.
    pub fn map_slot_elem(&self, slot: usize, mut f: impl FnMut(&Word) -> AlgebraElement) -> TensorElement {
        let mut out = TensorElement::zero(self.arity);
        for (k, c) in self.terms() {
            for (w, ic) in f(&k[slot]).terms() {
                let mut nk = k.clone();
                nk[slot] = w.clone();
                out.add_term(nk, c * ic);
            }
        }
        out
    }

    /// Applies a linear functional to one slot, lowering the arity by one.
    pub fn contract_slot(&self, slot: usize, mut f: impl FnMut(&Word) -> QScalar) -> TensorElement {
        let mut out = TensorElement::zero(self.arity - 1);
        for (k, c) in self.terms() {
            let v = f(&k[slot]);
            if v.is_zero() {
                continue;
            }
            let mut nk = k.clone();
            nk.remove(slot);
            out.add_term(nk, c * &v);
        }
        out
    }

    /// Reorders slots: slot `i` of the result is slot `perm[i]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> TensorElement {
        assert_eq!(perm.len(), self.arity);
        let mut out = TensorElement::zero(self.arity);
        for (k, c) in self.terms() {
            out.add_term(perm.iter().map(|&p| k[p].clone()).collect(), c.clone());
        }
        out
    }
}

impl Add<&TensorElement> for &TensorElement {
    type Output = TensorElement;
    fn add(self, rhs: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &QScalar::one());
        out
    }
}

impl Sub<&TensorElement> for &TensorElement {
    type Output = TensorElement;
    fn sub(self, rhs: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &QScalar::from_int(-1));
        out
    }
}

impl Neg for &TensorElement {
    type Output = TensorElement;
    fn neg(self) -> TensorElement {
        self.scale(&QScalar::from_int(-1))
    }
}
