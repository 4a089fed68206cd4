//! Exact rational functions in the deformation parameter `q`.
//!
//! A [`QScalar`] is a quotient of two integer polynomials kept in a canonical
//! form, so structural equality is field equality.

mod parse;
mod poly;

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use poly::Poly;

pub const DEFAULT_DEGREE_CAP: usize = 64;

static DEGREE_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_DEGREE_CAP);

/// Current maximum polynomial degree allowed in a numerator or denominator.
pub fn degree_cap() -> usize {
    DEGREE_CAP.load(Ordering::Relaxed)
}

pub fn set_degree_cap(cap: usize) {
    DEGREE_CAP.store(cap, Ordering::Relaxed);
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at q={at}: denominator {denominator} vanishes")]
    Pole { at: String, denominator: String },
    #[error("degree cap exceeded: degree {degree} > cap {cap}")]
    DegreeCap { degree: usize, cap: usize },
    #[error("scalar parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QScalar {
    num: Poly,
    den: Poly,
}

impl QScalar {
    pub fn zero() -> Self {
        QScalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        QScalar {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        QScalar {
            num: Poly::constant(BigInt::from(n)),
            den: Poly::one(),
        }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        QScalar::from_polys(Poly::constant(r.numer().clone()), Poly::constant(r.denom().clone()))
            .expect("rational with nonzero denominator")
    }

    pub fn q() -> Self {
        QScalar::q_pow(1)
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i32) -> Self {
        let m = Poly::monomial(BigInt::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            QScalar {
                num: m,
                den: Poly::one(),
            }
        } else {
            QScalar {
                num: Poly::one(),
                den: m,
            }
        }
    }

    /// `q - q^-1`
    pub fn lambda() -> Self {
        QScalar::q() - QScalar::q_pow(-1)
    }

    /// Builds `num/den` and canonicalizes.
    pub fn from_polys(num: Poly, den: Poly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let s = canonicalize(num, den);
        s.check_cap()?;
        Ok(s)
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value does not depend on `q`.
    pub fn is_constant(&self) -> bool {
        self.num.degree() == 0 && self.den.degree() == 0
    }

    /// The rational value of a `q`-independent scalar.
    pub fn as_rational(&self) -> Option<BigRational> {
        if !self.is_constant() {
            return None;
        }
        let n = self.num.coeffs().first().cloned().unwrap_or_else(BigInt::zero);
        let d = self.den.coeffs()[0].clone();
        Some(BigRational::new(n, d))
    }

    fn check_cap(&self) -> Result<(), ScalarError> {
        let cap = degree_cap();
        let degree = self.num.degree().max(self.den.degree());
        if degree > cap {
            return Err(ScalarError::DegreeCap { degree, cap });
        }
        Ok(())
    }

    pub fn checked_add(&self, rhs: &QScalar) -> Result<QScalar, ScalarError> {
        if self.is_zero() {
            return Ok(rhs.clone());
        }
        if rhs.is_zero() {
            return Ok(self.clone());
        }
        if self.den == rhs.den {
            return QScalar::from_polys(self.num.add(&rhs.num), self.den.clone());
        }
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        QScalar::from_polys(num, self.den.mul(&rhs.den))
    }

    pub fn checked_sub(&self, rhs: &QScalar) -> Result<QScalar, ScalarError> {
        self.checked_add(&-rhs)
    }

    pub fn checked_mul(&self, rhs: &QScalar) -> Result<QScalar, ScalarError> {
        if self.is_zero() || rhs.is_zero() {
            return Ok(QScalar::zero());
        }
        if self.is_one() {
            return Ok(rhs.clone());
        }
        if rhs.is_one() {
            return Ok(self.clone());
        }
        QScalar::from_polys(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }

    pub fn checked_div(&self, rhs: &QScalar) -> Result<QScalar, ScalarError> {
        if rhs.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        QScalar::from_polys(self.num.mul(&rhs.den), self.den.mul(&rhs.num))
    }

    pub fn inv(&self) -> Result<QScalar, ScalarError> {
        QScalar::one().checked_div(self)
    }

    pub fn pow(&self, k: i32) -> Result<QScalar, ScalarError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = QScalar::one();
        for _ in 0..k.unsigned_abs() {
            acc = acc.checked_mul(&base)?;
        }
        Ok(acc)
    }

    /// Exact value at `q = q0`.
    pub fn specialize(&self, q0: &BigRational) -> Result<BigRational, ScalarError> {
        let d = self.den.eval(q0);
        if d.is_zero() {
            return Err(ScalarError::Pole {
                at: q0.to_string(),
                denominator: self.den.to_string(),
            });
        }
        Ok(self.num.eval(q0) / d)
    }

    /// Same as [`specialize`](Self::specialize) but returns a constant scalar.
    pub fn specialize_scalar(&self, q0: &BigRational) -> Result<QScalar, ScalarError> {
        Ok(QScalar::from_rational(&self.specialize(q0)?))
    }
}

fn canonicalize(num: Poly, den: Poly) -> QScalar {
    if num.is_zero() {
        return QScalar::zero();
    }
    let (mut num, mut den) = if den.is_monomial() {
        let k = den.low_degree().min(num.low_degree());
        (num.shift_down(k), den.shift_down(k))
    } else {
        let g = num.gcd(&den);
        if g.degree() == 0 {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        }
    };
    let mut c = num.content().gcd(&den.content());
    if den.leading().unwrap().is_negative() {
        c = -c;
    }
    if !c.is_one() {
        num = num.div_scalar(&c);
        den = den.div_scalar(&c);
    }
    QScalar { num, den }
}

fn expect_ok(r: Result<QScalar, ScalarError>) -> QScalar {
    match r {
        Ok(v) => v,
        Err(e) => panic!("scalar arithmetic failed: {e}"),
    }
}

impl Default for QScalar {
    fn default() -> Self {
        QScalar::zero()
    }
}

impl From<i64> for QScalar {
    fn from(n: i64) -> Self {
        QScalar::from_int(n)
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        -&self
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&QScalar> for &QScalar {
            type Output = QScalar;
            fn $m(self, rhs: &QScalar) -> QScalar {
                expect_ok(self.$checked(rhs))
            }
        }
        impl $tr<QScalar> for QScalar {
            type Output = QScalar;
            fn $m(self, rhs: QScalar) -> QScalar {
                expect_ok(self.$checked(&rhs))
            }
        }
        impl $tr<&QScalar> for QScalar {
            type Output = QScalar;
            fn $m(self, rhs: &QScalar) -> QScalar {
                expect_ok(self.$checked(rhs))
            }
        }
        impl $tr<QScalar> for &QScalar {
            type Output = QScalar;
            fn $m(self, rhs: QScalar) -> QScalar {
                expect_ok(self.$checked(&rhs))
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl AddAssign<&QScalar> for QScalar {
    fn add_assign(&mut self, rhs: &QScalar) {
        *self = expect_ok(self.checked_add(rhs));
    }
}

impl AddAssign for QScalar {
    fn add_assign(&mut self, rhs: QScalar) {
        *self += &rhs;
    }
}

impl SubAssign<&QScalar> for QScalar {
    fn sub_assign(&mut self, rhs: &QScalar) {
        *self = expect_ok(self.checked_sub(rhs));
    }
}

impl MulAssign<&QScalar> for QScalar {
    fn mul_assign(&mut self, rhs: &QScalar) {
        *self = expect_ok(self.checked_mul(rhs));
    }
}

impl std::iter::Sum for QScalar {
    fn sum<I: Iterator<Item = QScalar>>(iter: I) -> QScalar {
        iter.fold(QScalar::zero(), |a, b| a + b)
    }
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let simple_num = self.num.coeffs().iter().filter(|c| !c.is_zero()).count() == 1
            && !self.num.leading().unwrap().is_negative();
        if simple_num {
            write!(f, "{}", self.num)?;
        } else {
            write!(f, "({})", self.num)?;
        }
        if self.den.is_monomial() && self.den.leading().unwrap().is_one() {
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}

impl fmt::Debug for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QScalar({})", self)
    }
}

impl FromStr for QScalar {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::parse_scalar(s)
    }
}

impl serde::Serialize for QScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for QScalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a rational number such as `2`, `-3/4` for specialization points.
pub fn parse_rational(s: &str) -> Result<BigRational, ScalarError> {
    let bad = |m: &str| ScalarError::Parse {
        column: 1,
        message: m.to_string(),
    };
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad("invalid rational numerator"))?;
    let d: BigInt = d.parse().map_err(|_| bad("invalid rational denominator"))?;
    if d.is_zero() {
        return Err(ScalarError::DivisionByZero);
    }
    Ok(BigRational::new(n, d))
}
