use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_rational::BigRational;
use smallvec::SmallVec;

use crate::qscalar::{QScalar, ScalarError};

pub type Gen = u8;

/// A monomial in the generators, ordered degree-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub SmallVec<[Gen; 8]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn from_slice(gs: &[Gen]) -> Self {
        Word(SmallVec::from_slice(gs))
    }

    pub fn single(g: Gen) -> Self {
        Word::from_slice(&[g])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn gens(&self) -> &[Gen] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.as_slice().cmp(other.0.as_slice()))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Debug for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Linear combination of normal words. The empty word is the unit.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct AlgebraElement {
    terms: BTreeMap<Word, QScalar>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement::default()
    }

    pub fn one() -> Self {
        AlgebraElement::scalar(QScalar::one())
    }

    pub fn scalar(c: QScalar) -> Self {
        AlgebraElement::term(c, Word::empty())
    }

    pub fn term(c: QScalar, w: Word) -> Self {
        let mut e = AlgebraElement::zero();
        e.add_term(w, c);
        e
    }

    /// Caller guarantees the word is already in normal form.
    pub fn word(w: Word) -> Self {
        AlgebraElement::term(QScalar::one(), w)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &QScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &Word) -> QScalar {
        self.terms.get(w).cloned().unwrap_or_else(QScalar::zero)
    }

    /// Coefficient of the unit.
    pub fn constant_term(&self) -> QScalar {
        self.coeff(&Word::empty())
    }

    /// True when the element is a scalar multiple of the unit.
    pub fn as_scalar(&self) -> Option<QScalar> {
        match self.terms.len() {
            0 => Some(QScalar::zero()),
            1 => self.terms.get(&Word::empty()).cloned(),
            _ => None,
        }
    }

    pub fn leading_word(&self) -> Option<&Word> {
        self.terms.keys().next_back()
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, w: Word, c: QScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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

    pub fn add_scaled(&mut self, other: &AlgebraElement, c: &QScalar) {
        if c.is_zero() {
            return;
        }
        for (w, v) in other.terms() {
            self.add_term(w.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &QScalar) -> AlgebraElement {
        if c.is_zero() {
            return AlgebraElement::zero();
        }
        AlgebraElement {
            terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect(),
        }
    }

    /// Coefficientwise `q ↦ q0`; normal words stay normal after specialization.
    pub fn specialize(&self, q0: &BigRational) -> Result<AlgebraElement, ScalarError> {
        let mut out = AlgebraElement::zero();
        for (w, c) in self.terms() {
            out.add_term(w.clone(), c.specialize_scalar(q0)?);
        }
        Ok(out)
    }

    pub fn map_coeffs(&self, f: impl Fn(&QScalar) -> QScalar) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (w, c) in self.terms() {
            out.add_term(w.clone(), f(c));
        }
        out
    }
}

impl Add<&AlgebraElement> for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (w, c) in rhs.terms() {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Add for AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: AlgebraElement) -> AlgebraElement {
        &self + &rhs
    }
}

impl Sub<&AlgebraElement> for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (w, c) in rhs.terms() {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl Sub for AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: AlgebraElement) -> AlgebraElement {
        &self - &rhs
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale(&QScalar::from_int(-1))
    }
}

impl Neg for AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        -&self
    }
}

impl std::iter::Sum for AlgebraElement {
    fn sum<I: Iterator<Item = AlgebraElement>>(iter: I) -> Self {
        iter.fold(AlgebraElement::zero(), |a, b| a + b)
    }
}

/// Formats a scalar so that it can be followed by `*factor` and parsed back.
pub fn scalar_factor(c: &QScalar) -> String {
    let s = c.to_string();
    if s.contains(' ') || s.contains('/') || s.starts_with('-') {
        format!("({s})")
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deglex_orders_by_length_then_letters() {
        let a = Word::from_slice(&[3]);
        let ab = Word::from_slice(&[0, 2]);
        let ba = Word::from_slice(&[2, 0]);
        assert!(a < ab);
        assert!(ab < ba);
        assert!(Word::empty() < a);
    }

    #[test]
    fn cancelling_terms_are_dropped() {
        let w = Word::single(1);
        let x = AlgebraElement::word(w.clone());
        assert!((&x - &x).is_zero());
        assert_eq!((&x + &x).coeff(&w), QScalar::from_int(2));
    }
}
