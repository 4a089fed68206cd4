//! Evaluation of parsed expressions against a Cartan calculus.

use std::collections::BTreeMap;

use num_rational::BigRational;
use thiserror::Error;

use qcartan_core::calculus::VectorField;
use qcartan_core::cartan::{BraidedTensor, Cartan, CartanError, Op};
use qcartan_core::dual::{Functional, Twist};
use qcartan_core::ncalg::AlgebraElement;
use qcartan_core::qscalar::{QScalar, ScalarError};
use qcartan_core::report::Specialize;
use qcartan_core::wedge::{TensorForm, TensorVector, WedgeError};

use crate::dsl::Expr;

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("unknown identifier `{0}`")]
    Unknown(String),
    #[error("index {index} out of range 1..={max} in `{name}`")]
    IndexOutOfRange { name: String, index: u32, max: usize },
    #[error("`{name}` takes {expected} indices, got {got}")]
    IndexCount { name: String, expected: usize, got: usize },
    #[error("`{name}` takes {expected} arguments, got {got}")]
    Arity { name: String, expected: usize, got: usize },
    #[error("type error: {0}")]
    Type(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Wedge(#[from] WedgeError),
    #[error(transparent)]
    Cartan(#[from] CartanError),
}

type Res<T> = Result<T, EvalError>;

#[derive(Debug, Clone)]
pub enum Value {
    Scalar(QScalar),
    Elem(AlgebraElement),
    /// Form carried by a preimage in the tensor algebra; `exterior` forms
    /// compare by their image under the antisymmetrizer.
    Form {
        x: TensorForm,
        exterior: bool,
    },
    Vector(VectorField),
    Functional(Functional),
    Index(usize),
    Twist(Twist),
    Braided(BraidedTensor),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "scalar",
            Value::Elem(_) => "function",
            Value::Form { .. } => "form",
            Value::Vector(_) => "vector field",
            Value::Functional(_) => "functional",
            Value::Index(_) => "index",
            Value::Twist(_) => "twist",
            Value::Braided(_) => "braided tensor",
        }
    }
}

/// Normalized value used for equality and specialization.
#[derive(Debug, Clone, PartialEq)]
enum Canon {
    Elem(AlgebraElement),
    Form(TensorForm),
    Vector(VectorField),
    Values(Vec<QScalar>),
    Braided(BTreeMap<(Vec<(u8, usize)>, Vec<(u8, usize)>), QScalar>),
    Index(usize),
}

const FUNCTIONAL_PROBE_LEN: usize = 3;

pub struct Evaluator<'a> {
    cartan: &'a Cartan,
}

fn type_err<T>(msg: impl Into<String>) -> Res<T> {
    Err(EvalError::Type(msg.into()))
}

impl<'a> Evaluator<'a> {
    pub fn new(cartan: &'a Cartan) -> Self {
        Evaluator { cartan }
    }

    fn n(&self) -> usize {
        self.cartan.calculus().basis().n
    }

    fn dim(&self) -> usize {
        self.cartan.dim()
    }

    fn single(&self, name: &str, i: u32) -> Res<usize> {
        let n = self.n();
        if i == 0 || i as usize > n {
            return Err(EvalError::IndexOutOfRange {
                name: name.into(),
                index: i,
                max: n,
            });
        }
        Ok(i as usize - 1)
    }

    /// Flat double indices from `2k` integers.
    fn doubles(&self, name: &str, idx: &[u32], k: usize) -> Res<Vec<usize>> {
        if idx.len() != 2 * k {
            return Err(EvalError::IndexCount {
                name: name.into(),
                expected: 2 * k,
                got: idx.len(),
            });
        }
        idx.chunks(2)
            .map(|p| Ok(self.single(name, p[0])? * self.n() + self.single(name, p[1])?))
            .collect()
    }

    fn to_form(&self, v: Value) -> Res<(TensorForm, bool)> {
        match v {
            Value::Scalar(c) => Ok((TensorForm::function(AlgebraElement::scalar(c)), false)),
            Value::Elem(a) => Ok((TensorForm::function(a), false)),
            Value::Form { x, exterior } => Ok((x, exterior)),
            other => type_err(format!("expected a form, found a {}", other.kind())),
        }
    }

    fn to_elem(&self, v: Value) -> Res<AlgebraElement> {
        match v {
            Value::Scalar(c) => Ok(AlgebraElement::scalar(c)),
            Value::Elem(a) => Ok(a),
            Value::Form { x, .. } if x.degree() == 0 => Ok(x.coeff(&[])),
            other => type_err(format!("expected a function, found a {}", other.kind())),
        }
    }

    fn to_vector(&self, v: Value) -> Res<VectorField> {
        match v {
            Value::Vector(v) => Ok(v),
            other => type_err(format!("expected a vector field, found a {}", other.kind())),
        }
    }

    fn to_functional(&self, v: Value) -> Res<Functional> {
        match v {
            Value::Functional(f) => Ok(f),
            Value::Scalar(c) => Ok(Functional::scale(c, &Functional::counit())),
            other => type_err(format!("expected a functional, found a {}", other.kind())),
        }
    }

    fn to_index(&self, v: Value) -> Res<usize> {
        match v {
            Value::Index(i) => Ok(i),
            other => type_err(format!("expected an index such as [1,2], found a {}", other.kind())),
        }
    }

    fn form(x: TensorForm, exterior: bool) -> Value {
        if x.degree() == 0 {
            Value::Elem(x.coeff(&[]))
        } else {
            Value::Form { x, exterior }
        }
    }

    pub fn eval(&self, e: &Expr) -> Res<Value> {
        match e {
            Expr::Int(n) => Ok(Value::Scalar(QScalar::from_rational(&BigRational::from_integer(
                n.clone(),
            )))),
            Expr::Sym(s) => self.symbol(s),
            Expr::Indexed(name, idx) => self.indexed(name, idx),
            Expr::Index(idx) => Ok(Value::Index(self.doubles("index", idx, 1)?[0])),
            Expr::Call(head, args) => self.call(head, args),
            Expr::Neg(x) => self.scale(self.eval(x)?, &QScalar::from_int(-1)),
            Expr::Add(a, b) => self.add(self.eval(a)?, self.eval(b)?, false),
            Expr::Sub(a, b) => self.add(self.eval(a)?, self.eval(b)?, true),
            Expr::Mul(a, b) => self.mul(self.eval(a)?, self.eval(b)?),
            Expr::Div(a, b) => match self.eval(b)? {
                Value::Scalar(c) => {
                    if c.is_zero() {
                        return type_err("division by zero");
                    }
                    self.scale(self.eval(a)?, &c.inv()?)
                }
                other => type_err(format!("can only divide by a scalar, not a {}", other.kind())),
            },
            Expr::Pow(x, k) => match self.eval(x)? {
                Value::Scalar(c) => Ok(Value::Scalar(c.pow(*k)?)),
                Value::Elem(a) if *k >= 0 => Ok(Value::Elem(self.cartan.calculus().algebra().pow(&a, *k as usize))),
                Value::Elem(_) => type_err("functions only take non-negative powers"),
                other => type_err(format!("cannot raise a {} to a power", other.kind())),
            },
        }
    }

    fn symbol(&self, s: &str) -> Res<Value> {
        let alg = self.cartan.calculus().algebra();
        match s {
            "q" => Ok(Value::Scalar(QScalar::q())),
            "S" => Ok(Value::Twist(Twist::S)),
            "Sinv" => Ok(Value::Twist(Twist::SInv)),
            "eps" => Ok(Value::Functional(Functional::counit())),
            _ => alg.gen(s).map(Value::Elem).map_err(|_| EvalError::Unknown(s.into())),
        }
    }

    fn indexed(&self, name: &str, idx: &[u32]) -> Res<Value> {
        let calc = self.cartan.calculus();
        let basis = calc.basis();
        match name {
            "omega" => Ok(Value::Form {
                x: self.cartan.wedge().omega(self.doubles(name, idx, 1)?[0]),
                exterior: true,
            }),
            "eta" => Ok(Value::Form {
                x: TensorForm::from_one_form(&calc.eta(self.doubles(name, idx, 1)?[0])),
                exterior: true,
            }),
            "t" => Ok(Value::Vector(calc.t(self.doubles(name, idx, 1)?[0]))),
            "h" => Ok(Value::Vector(calc.h(self.doubles(name, idx, 1)?[0]))),
            "chi" => Ok(Value::Functional(basis.chi[self.doubles(name, idx, 1)?[0]].clone())),
            "f" => {
                let ij = self.doubles(name, idx, 2)?;
                Ok(Value::Functional(basis.f[ij[1]][ij[0]].clone()))
            }
            "M" => {
                let ij = self.doubles(name, idx, 2)?;
                Ok(Value::Elem(calc.m(ij[0], ij[1]).clone()))
            }
            "N" => {
                let lk = self.doubles(name, idx, 2)?;
                Ok(Value::Elem(calc.n(lk[0], lk[1]).clone()))
            }
            "Lp" | "Lm" => {
                if idx.len() != 2 {
                    return Err(EvalError::IndexCount {
                        name: name.into(),
                        expected: 2,
                        got: idx.len(),
                    });
                }
                let (i, j) = (self.single(name, idx[0])?, self.single(name, idx[1])?);
                Ok(Value::Functional(if name == "Lp" {
                    Functional::lp(i, j)
                } else {
                    Functional::lm(i, j)
                }))
            }
            _ => Err(EvalError::Unknown(name.into())),
        }
    }

    fn arity(name: &str, args: &[Expr], expected: usize) -> Res<()> {
        if args.len() != expected {
            return Err(EvalError::Arity {
                name: name.into(),
                expected,
                got: args.len(),
            });
        }
        Ok(())
    }

    fn call(&self, head: &Expr, args: &[Expr]) -> Res<Value> {
        let Expr::Sym(name) = head else {
            let f = self.eval(head)?;
            return self.apply(f, args);
        };
        let w = self.cartan.wedge();
        let calc = self.cartan.calculus();
        match name.as_str() {
            "d" | "dext" => {
                Self::arity(name, args, 1)?;
                let (x, _) = self.to_form(self.eval(&args[0])?)?;
                Ok(Self::form(w.exterior_d(&x)?, true))
            }
            "tensor" | "wedge" => {
                if args.is_empty() {
                    return Err(EvalError::Arity {
                        name: name.clone(),
                        expected: 1,
                        got: 0,
                    });
                }
                let mut acc = self.to_form(self.eval(&args[0])?)?.0;
                for a in &args[1..] {
                    let (y, _) = self.to_form(self.eval(a)?)?;
                    acc = w.tensor(&acc, &y);
                }
                let exterior = name == "wedge";
                if exterior {
                    w.image(&acc)?;
                }
                Ok(Self::form(acc, exterior))
            }
            "conv" => {
                Self::arity(name, args, 2)?;
                match (self.eval(&args[0])?, self.eval(&args[1])?) {
                    (Value::Functional(f), Value::Functional(g)) => Ok(Value::Functional(Functional::conv(&f, &g))),
                    (Value::Functional(f), x) => self.conv_with(&f, x, true),
                    (x, Value::Functional(f)) => self.conv_with(&f, x, false),
                    (a, b) => type_err(format!("conv needs a functional, found {} and {}", a.kind(), b.kind())),
                }
            }
            "twist" => {
                Self::arity(name, args, 2)?;
                let Value::Twist(t) = self.eval(&args[0])? else {
                    return type_err("twist expects S or Sinv as its first argument");
                };
                let f = self.to_functional(self.eval(&args[1])?)?;
                Ok(Value::Functional(Functional::twist(t, &f)))
            }
            "bracket" => {
                Self::arity(name, args, 2)?;
                let v = self.to_vector(self.eval(&args[0])?)?;
                let (x, _) = self.to_form(self.eval(&args[1])?)?;
                if x.degree() != 1 {
                    return type_err("bracket pairs a vector field with a 1-form");
                }
                Ok(Value::Elem(calc.bracket(&v, &x.to_one_form(self.dim()))))
            }
            "gbracket" => {
                Self::arity(name, args, 2)?;
                let v = self.to_vector(self.eval(&args[0])?)?;
                let (x, ext) = self.to_form(self.eval(&args[1])?)?;
                Ok(Self::form(
                    w.general_bracket(&TensorVector::from_vector_field(&v), &x),
                    ext,
                ))
            }
            "i" | "lie" => {
                Self::arity(name, args, 2)?;
                let v = self.to_vector(self.eval(&args[0])?)?;
                let (x, _) = self.to_form(self.eval(&args[1])?)?;
                let y = if name == "i" {
                    self.cartan.contract(&v, &x)?
                } else {
                    self.cartan.lie(&v, &x)?
                };
                Ok(Self::form(y, true))
            }
            "lieR" => {
                Self::arity(name, args, 2)?;
                let i = self.to_index(self.eval(&args[0])?)?;
                let (x, _) = self.to_form(self.eval(&args[1])?)?;
                w.image(&x)?;
                Ok(Self::form(self.cartan.lie_right(i, &x), true))
            }
            "DI" => {
                Self::arity(name, args, 3)?;
                let i = self.to_index(self.eval(&args[0])?)?;
                let k = self.to_index(self.eval(&args[1])?)?;
                let a = self.to_elem(self.eval(&args[2])?)?;
                Ok(Self::form(
                    TensorForm::from_one_form(&self.cartan.defect_index(i, k, &a)),
                    true,
                ))
            }
            "P" => {
                Self::arity(name, args, 1)?;
                let (x, _) = self.to_form(self.eval(&args[0])?)?;
                if x.degree() != 1 {
                    return type_err("P projects 1-forms");
                }
                Ok(Self::form(
                    TensorForm::from_one_form(&calc.project_p(&x.to_one_form(self.dim()))),
                    true,
                ))
            }
            "delta" => {
                Self::arity(name, args, 1)?;
                Ok(Value::Braided(self.cartan.delta(&self.word(&args[0])?)))
            }
            _ => {
                if calc.algebra().generator(name).is_ok() {
                    let f = self.symbol(name)?;
                    return self.apply(f, args);
                }
                Err(EvalError::Unknown(name.clone()))
            }
        }
    }

    fn conv_with(&self, f: &Functional, x: Value, left: bool) -> Res<Value> {
        let dual = self.cartan.calculus().dual();
        match x {
            Value::Scalar(_) | Value::Elem(_) => {
                let a = self.to_elem(x)?;
                Ok(Value::Elem(if left {
                    dual.left_conv(f, &a)
                } else {
                    dual.right_conv(f, &a)
                }))
            }
            Value::Form { x, exterior } => Ok(Self::form(
                if left {
                    self.cartan.left_conv(f, &x)
                } else {
                    self.cartan.right_conv(f, &x)
                },
                exterior,
            )),
            other => type_err(format!("cannot convolve a {}", other.kind())),
        }
    }

    /// `F(x)` for a functional, `V(x)` for a vector field.
    fn apply(&self, f: Value, args: &[Expr]) -> Res<Value> {
        Self::arity("application", args, 1)?;
        let x = self.to_elem(self.eval(&args[0])?)?;
        let calc = self.cartan.calculus();
        match f {
            Value::Functional(f) => Ok(Value::Scalar(
                calc.dual()
                    .try_eval(&f, &x)
                    .map_err(|e| EvalError::Type(e.to_string()))?,
            )),
            Value::Vector(v) => Ok(Value::Elem(calc.apply_vector(&v, &x))),
            other => type_err(format!("a {} cannot be applied", other.kind())),
        }
    }

    /// Operator word built from `d`, `i[J]`, `lie[J]` and `t[J]` joined by `*`.
    fn word(&self, e: &Expr) -> Res<Vec<Op>> {
        match e {
            Expr::Mul(a, b) => {
                let mut w = self.word(a)?;
                w.extend(self.word(b)?);
                Ok(w)
            }
            Expr::Sym(s) if s == "d" => Ok(vec![Op::D]),
            Expr::Indexed(name, idx) => {
                let j = self.doubles(name, idx, 1)?[0];
                match name.as_str() {
                    "i" => Ok(vec![Op::I(j)]),
                    "lie" => Ok(vec![Op::L(j)]),
                    "t" => Ok(vec![Op::T(j)]),
                    _ => type_err(format!("`{name}` is not an operator; use d, i[..], lie[..] or t[..]")),
                }
            }
            other => type_err(format!("`{other}` is not an operator word")),
        }
    }

    fn scale(&self, v: Value, c: &QScalar) -> Res<Value> {
        Ok(match v {
            Value::Scalar(s) => Value::Scalar(s.checked_mul(c)?),
            Value::Elem(a) => Value::Elem(a.scale(c)),
            Value::Form { x, exterior } => Value::Form {
                x: x.scale(c),
                exterior,
            },
            Value::Vector(v) => Value::Vector(v.scale(c)),
            Value::Functional(f) => Value::Functional(Functional::scale(c.clone(), &f)),
            Value::Braided(t) => Value::Braided(BraidedTensor {
                terms: t
                    .terms
                    .into_iter()
                    .map(|(k, x, y)| Ok((k.checked_mul(c)?, x, y)))
                    .collect::<Res<_>>()?,
            }),
            other => return type_err(format!("cannot scale a {}", other.kind())),
        })
    }

    fn add(&self, a: Value, b: Value, sub: bool) -> Res<Value> {
        let b = if sub { self.scale(b, &QScalar::from_int(-1))? } else { b };
        Ok(match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x.checked_add(&y)?),
            (Value::Vector(x), Value::Vector(y)) => Value::Vector(&x + &y),
            (Value::Functional(f), Value::Functional(g)) => Value::Functional(Functional::sum(vec![f, g])),
            (Value::Braided(mut x), Value::Braided(y)) => {
                x.terms.extend(y.terms);
                Value::Braided(x)
            }
            (a @ (Value::Scalar(_) | Value::Elem(_)), b @ (Value::Scalar(_) | Value::Elem(_))) => {
                Value::Elem(self.to_elem(a)? + self.to_elem(b)?)
            }
            (a, b) => {
                let (x, ex) = self.to_form(a)?;
                let (y, ey) = self.to_form(b)?;
                if x.degree() != y.degree() && !x.is_zero() && !y.is_zero() {
                    return type_err(format!("cannot add forms of degrees {} and {}", x.degree(), y.degree()));
                }
                let z = if x.is_zero() {
                    y
                } else if y.is_zero() {
                    x
                } else {
                    x.add(&y)
                };
                Self::form(z, ex || ey)
            }
        })
    }

    fn mul(&self, a: Value, b: Value) -> Res<Value> {
        let calc = self.cartan.calculus();
        let alg = calc.algebra();
        let w = self.cartan.wedge();
        match (a, b) {
            (Value::Scalar(c), v) | (v, Value::Scalar(c)) => self.scale(v, &c),
            (Value::Elem(x), Value::Elem(y)) => Ok(Value::Elem(alg.mul(&x, &y))),
            (Value::Elem(x), Value::Form { x: t, exterior }) => Ok(Self::form(w.left_mul(&x, &t), exterior)),
            (Value::Form { x: t, exterior }, Value::Elem(y)) => Ok(Self::form(w.right_mul(&t, &y), exterior)),
            (Value::Elem(x), Value::Vector(v)) => Ok(Value::Vector(calc.left_multiply_vector(&x, &v))),
            (Value::Vector(v), Value::Elem(y)) => Ok(Value::Vector(calc.right_multiply_vector(&v, &y))),
            (a, b) => type_err(format!(
                "cannot multiply a {} by a {}; use tensor, wedge or conv",
                a.kind(),
                b.kind()
            )),
        }
    }

    fn canon(&self, v: &Value) -> Res<Canon> {
        Ok(match v {
            Value::Scalar(c) => Canon::Elem(AlgebraElement::scalar(c.clone())),
            Value::Elem(a) => Canon::Elem(a.clone()),
            Value::Form { x, exterior } => {
                let y = if *exterior { self.cartan.image(x)? } else { x.clone() };
                if y.degree() == 0 {
                    Canon::Elem(y.coeff(&[]))
                } else {
                    Canon::Form(y)
                }
            }
            Value::Vector(v) => Canon::Vector(v.clone()),
            Value::Functional(f) => {
                let alg = self.cartan.calculus().algebra();
                let dual = self.cartan.calculus().dual();
                let mut vals = Vec::new();
                for len in 0..=FUNCTIONAL_PROBE_LEN {
                    for w in alg.normal_words(len) {
                        vals.push(
                            dual.try_eval(f, &AlgebraElement::word(w))
                                .map_err(|e| EvalError::Type(e.to_string()))?,
                        );
                    }
                }
                Canon::Values(vals)
            }
            Value::Braided(t) => Canon::Braided(
                t.scalar_terms()
                    .ok_or_else(|| EvalError::Type("braided tensor with form factors".into()))?,
            ),
            Value::Index(i) => Canon::Index(*i),
            Value::Twist(_) => return type_err("twists cannot be compared"),
        })
    }

    /// Compares two values exactly; with `q0`, both sides are specialized first.
    pub fn equal(&self, a: &Value, b: &Value, q0: Option<&BigRational>) -> Res<bool> {
        let (x, y) = (self.canon(a)?, self.canon(b)?);
        let (x, y) = match q0 {
            Some(q0) => (x.specialize(q0)?, y.specialize(q0)?),
            None => (x, y),
        };
        Ok(match (&x, &y) {
            (Canon::Form(f), Canon::Elem(e)) | (Canon::Elem(e), Canon::Form(f)) => f.is_zero() && e.is_zero(),
            (Canon::Form(f), Canon::Form(g)) if f.degree() != g.degree() => f.is_zero() && g.is_zero(),
            _ => x == y,
        })
    }

    /// Value at a rational q; functionals and operators are returned unchanged.
    pub fn specialize(&self, v: &Value, q0: &BigRational) -> Res<Value> {
        Ok(match v {
            Value::Scalar(c) => Value::Scalar(c.specialize_at(q0)?),
            Value::Elem(a) => Value::Elem(a.specialize_at(q0)?),
            Value::Form { x, exterior } => Value::Form {
                x: x.specialize_at(q0)?,
                exterior: *exterior,
            },
            Value::Vector(f) => Value::Vector(f.specialize_at(q0)?),
            Value::Braided(t) => Value::Braided(BraidedTensor {
                terms: t
                    .terms
                    .iter()
                    .map(|(c, x, y)| Ok((c.specialize_at(q0)?, x.clone(), y.clone())))
                    .collect::<Res<_>>()?,
            }),
            other => other.clone(),
        })
    }

    /// True if the value is zero, after specializing at `q0` if given.
    pub fn is_zero(&self, v: &Value, q0: Option<&BigRational>) -> Res<bool> {
        self.equal(v, &Value::Scalar(QScalar::zero()), q0)
    }

    pub fn show(&self, v: &Value) -> String {
        let calc = self.cartan.calculus();
        match v {
            Value::Scalar(c) => c.to_string(),
            Value::Elem(a) => calc.algebra().fmt(a),
            Value::Form { x, .. } => self.cartan.wedge().fmt_form(x),
            Value::Vector(v) => calc.fmt_vector(v),
            Value::Functional(f) => f.to_string(),
            Value::Index(i) => format!("[{}]", calc.basis().label(*i)),
            Value::Twist(Twist::S) => "S".into(),
            Value::Twist(Twist::SInv) => "Sinv".into(),
            Value::Braided(t) => {
                let parts: Vec<String> = t
                    .terms
                    .iter()
                    .map(|(c, x, y)| {
                        let side = |w: &[Op]| {
                            if w.is_empty() {
                                "1".to_string()
                            } else {
                                w.iter().map(|o| self.cartan.fmt_op(o)).collect::<Vec<_>>().join(" * ")
                            }
                        };
                        format!("({}) * ({}) # ({})", c, side(x), side(y))
                    })
                    .collect();
                if parts.is_empty() {
                    "0".into()
                } else {
                    parts.join(" + ")
                }
            }
        }
    }
}

impl Canon {
    fn specialize(&self, q0: &BigRational) -> Result<Canon, ScalarError> {
        Ok(match self {
            Canon::Elem(a) => Canon::Elem(a.specialize_at(q0)?),
            Canon::Form(x) => Canon::Form(x.specialize_at(q0)?),
            Canon::Vector(v) => Canon::Vector(v.specialize_at(q0)?),
            Canon::Values(vs) => Canon::Values(vs.specialize_at(q0)?),
            Canon::Braided(m) => Canon::Braided(m.specialize_at(q0)?),
            Canon::Index(i) => Canon::Index(*i),
        })
    }
}
