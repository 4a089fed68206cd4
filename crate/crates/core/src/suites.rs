//! Named verification suites. Each suite evaluates its checks exactly over
//! Q(q); with a value of q set, every computed side is specialized afterwards.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use thiserror::Error;

use crate::calculus::{Calculus, CalculusError, OneForm, VectorField};
use crate::cartan::{Cartan, CartanError, NormalForm, Op};
use crate::dual::{solve_x_basis, DualError, Functional, Normalization};
use crate::linalg::{Matrix, SparseMatrix};
use crate::ncalg::{verify_hopf_axioms, Algebra, AlgebraElement, AlgebraError, TensorElement, Word};
use crate::qscalar::{QScalar, ScalarError};
use crate::report::{CheckRow, Report, Specialize};
use crate::wedge::{maurer_cartan, wmm_sides, TensorForm, TensorVector, Wedge, WedgeError};

pub const SUITES: [&str; 11] = [
    "hopf-axioms",
    "leibniz",
    "duality",
    "adjoint",
    "invariance",
    "braid",
    "wedge",
    "cartan",
    "delta",
    "defect-index",
    "classical",
];

pub const DEFAULT_WEDGE_CAP: usize = 4;

const SEED: u64 = 0x5eed_0001;
const SAMPLES: usize = 4;

#[derive(Debug, Clone)]
pub struct Options {
    pub q: Option<BigRational>,
    pub normalization: Normalization,
    /// Highest form degree built for Γ^∧.
    pub degree_cap: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            q: None,
            normalization: Normalization::Lambda,
            degree_cap: DEFAULT_WEDGE_CAP,
        }
    }
}

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("q = 0 is not a valid specialization")]
    ZeroQ,
    #[error("degree cap {0} is below 2")]
    Cap(usize),
    #[error("instance has no FRT data; only `hopf-axioms` can run")]
    NotFrt,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Dual(#[from] DualError),
    #[error(transparent)]
    Calculus(#[from] CalculusError),
    #[error(transparent)]
    Wedge(#[from] WedgeError),
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

impl SuiteError {
    fn is_cap(&self) -> bool {
        matches!(
            self,
            SuiteError::Wedge(WedgeError::DegreeCap { .. })
                | SuiteError::Cartan(CartanError::Wedge(WedgeError::DegreeCap { .. }))
        )
    }
}

type Res<T> = Result<T, SuiteError>;

/// Suite names selected by `name`, which may be `all`.
pub fn resolve(name: &str) -> Res<Vec<&'static str>> {
    if name == "all" {
        return Ok(SUITES.to_vec());
    }
    SUITES
        .iter()
        .find(|s| **s == name)
        .map(|s| vec![*s])
        .ok_or_else(|| SuiteError::UnknownSuite(name.to_string()))
}

pub struct Engine {
    alg: Arc<Algebra>,
    opts: Options,
    cartan: Option<Cartan>,
}

impl Engine {
    pub fn new(alg: Arc<Algebra>, opts: Options) -> Res<Engine> {
        if opts.degree_cap < 2 {
            return Err(SuiteError::Cap(opts.degree_cap));
        }
        if opts.q.as_ref().is_some_and(|q| q.is_zero()) {
            return Err(SuiteError::ZeroQ);
        }
        let cartan = if alg.frt().is_some() {
            let calc = Arc::new(Calculus::new(alg.clone(), opts.normalization)?);
            Some(Cartan::new(Arc::new(Wedge::new(calc, opts.degree_cap)?)))
        } else {
            None
        };
        Ok(Engine { alg, opts, cartan })
    }

    pub fn options(&self) -> &Options {
        &self.opts
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn cartan(&self) -> Res<&Cartan> {
        self.cartan.as_ref().ok_or(SuiteError::NotFrt)
    }

    /// Runs one suite or `all`, in the fixed order of [`SUITES`].
    pub fn run(&self, name: &str) -> Res<Report> {
        let names = resolve(name)?;
        if names.iter().any(|n| *n != "hopf-axioms") {
            self.cartan()?;
        }
        let mut rep = Report::new();
        for n in names {
            rep.extend(self.run_one(n)?);
        }
        Ok(rep)
    }

    fn run_one(&self, name: &'static str) -> Res<Report> {
        if name == "hopf-axioms" {
            return self.hopf();
        }
        let one = BigRational::one();
        let q0 = if name == "classical" {
            Some(&one)
        } else {
            self.opts.q.as_ref()
        };
        let ctx = Ctx::new(self.cartan()?);
        let mut ck = Checker::new(name, q0);
        match name {
            "leibniz" => leibniz(&ctx, &mut ck),
            "duality" => duality(&ctx, &mut ck),
            "adjoint" => adjoint(&ctx, &mut ck),
            "invariance" => invariance(&ctx, &mut ck),
            "braid" => braid(&ctx, &mut ck),
            "wedge" => wedge_suite(&ctx, &mut ck),
            "cartan" => cartan_suite(&ctx, &mut ck),
            "delta" => delta_suite(&ctx, &mut ck),
            "defect-index" => defect_index(&ctx, &mut ck),
            "classical" => classical(&ctx, &mut ck),
            _ => return Err(SuiteError::UnknownSuite(name.to_string())),
        }
        Ok(ck.report)
    }

    fn hopf(&self) -> Res<Report> {
        let spec;
        let alg: &Algebra = match &self.opts.q {
            Some(q) => {
                spec = self.alg.specialize(q)?;
                &spec
            }
            None => &self.alg,
        };
        let mut rep = verify_hopf_axioms(alg);
        for r in &mut rep.rows {
            r.check = format!("hopf-axioms/{}", r.check);
        }
        if self.opts.q.as_ref().is_some_and(|q| q.is_one()) {
            let gens: Vec<AlgebraElement> = (0..alg.num_generators()).map(|g| alg.gen_elem(g as u8)).collect();
            for x in &gens {
                for y in &gens {
                    let witness = format!("{} {}", alg.fmt(x), alg.fmt(y));
                    rep.compare(
                        "hopf-axioms/commutative",
                        witness,
                        &alg.mul(x, y),
                        &alg.mul(y, x),
                        |e| alg.fmt(e),
                    );
                }
            }
        }
        Ok(rep)
    }
}

struct Checker<'a> {
    suite: &'static str,
    q0: Option<&'a BigRational>,
    report: Report,
}

impl<'a> Checker<'a> {
    fn new(suite: &'static str, q0: Option<&'a BigRational>) -> Self {
        Checker {
            suite,
            q0,
            report: Report::new(),
        }
    }

    fn name(&self, check: &str) -> String {
        format!("{}/{}", self.suite, check)
    }

    fn classical(&self) -> bool {
        self.q0.is_some_and(|q| q.is_one())
    }

    fn symbolic(&self) -> bool {
        self.q0.is_none()
    }

    fn fail(&mut self, check: &str, witness: &str, err: &dyn Display) {
        let row = CheckRow::new(self.name(check), "error".into(), String::new(), false)
            .with_witness(format!("{witness}: {err}"));
        self.report.push(row);
    }

    fn spec<T: Specialize>(&self, x: T) -> Result<T, ScalarError> {
        match self.q0 {
            Some(q) => x.specialize_at(q),
            None => Ok(x),
        }
    }

    /// Evaluates both sides, then specializes them; records skips and errors.
    fn settle<T: Specialize>(&mut self, check: &str, witness: &str, f: impl FnOnce() -> Res<(T, T)>) -> Option<(T, T)> {
        let (l, r) = match f() {
            Ok(v) => v,
            Err(e) if e.is_cap() => {
                let s = format!("{} [{}]", self.name(check), witness);
                self.report.skipped.push(s);
                return None;
            }
            Err(e) => {
                self.fail(check, witness, &e);
                return None;
            }
        };
        match (self.spec(l), self.spec(r)) {
            (Ok(l), Ok(r)) => Some((l, r)),
            (Err(e), _) | (_, Err(e)) => {
                self.fail(check, witness, &e);
                None
            }
        }
    }

    fn eq_by<T: Specialize>(
        &mut self,
        check: &str,
        witness: &str,
        f: impl FnOnce() -> Res<(T, T)>,
        show: impl Fn(&T) -> String,
        same: impl Fn(&T, &T) -> bool,
    ) {
        if let Some((l, r)) = self.settle(check, witness, f) {
            let row = CheckRow::new(self.name(check), show(&l), show(&r), same(&l, &r)).with_witness(witness);
            self.report.push(row);
        }
    }

    fn eq<T: Specialize + PartialEq>(
        &mut self,
        check: &str,
        witness: &str,
        f: impl FnOnce() -> Res<(T, T)>,
        show: impl Fn(&T) -> String,
    ) {
        self.eq_by(check, witness, f, show, |a, b| a == b);
    }

    fn matrices<T: Specialize + Into<Matrix>>(&mut self, check: &str, witness: &str, f: impl FnOnce() -> Res<(T, T)>) {
        if let Some((l, r)) = self.settle(check, witness, f) {
            let (l, r): (Matrix, Matrix) = (l.into(), r.into());
            let (ls, rs) = match l.first_difference(&r) {
                None if l.rows() == r.rows() && l.cols() == r.cols() => {
                    let s = format!("{}x{} matrix", l.rows(), l.cols());
                    (s.clone(), s)
                }
                None => (
                    format!("{}x{}", l.rows(), l.cols()),
                    format!("{}x{}", r.rows(), r.cols()),
                ),
                Some((i, j)) => (
                    format!("[{i},{j}] = {}", l[(i, j)]),
                    format!("[{i},{j}] = {}", r[(i, j)]),
                ),
            };
            let row = CheckRow::new(self.name(check), ls, rs, l == r).with_witness(witness);
            self.report.push(row);
        }
    }

    /// Compares two forms as elements of Γ^∧ through their W-images.
    fn forms(&mut self, c: &Cartan, check: &str, witness: &str, f: impl FnOnce() -> Res<(TensorForm, TensorForm)>) {
        let w = c.wedge().clone();
        self.eq_by(
            check,
            witness,
            || {
                let (x, y) = f()?;
                Ok((c.image(&x)?, c.image(&y)?))
            },
            |x| w.fmt_form(x),
            |a, b| a == b || (a.is_zero() && b.is_zero()),
        );
    }

    fn normal_forms(
        &mut self,
        c: &Cartan,
        check: &str,
        witness: &str,
        f: impl FnOnce() -> Res<(NormalForm, NormalForm)>,
    ) {
        let w = c.wedge().clone();
        self.eq(
            check,
            witness,
            || {
                let (x, y) = f()?;
                Ok((c.normal_images(&x)?, c.normal_images(&y)?))
            },
            |m| {
                if m.is_empty() {
                    return "0".into();
                }
                m.iter()
                    .map(|(k, x)| format!("[{}] {}", w.fmt_form(x), fmt_key(c, k)))
                    .collect::<Vec<_>>()
                    .join(" + ")
            },
        );
    }

    fn pred(&mut self, check: &str, witness: &str, holds: bool, lhs: String, rhs: String) {
        let row = CheckRow::new(self.name(check), lhs, rhs, holds).with_witness(witness);
        self.report.push(row);
    }
}

impl From<SparseMatrix> for Matrix {
    fn from(m: SparseMatrix) -> Matrix {
        m.to_dense()
    }
}

fn fmt_key(c: &Cartan, k: &[(u8, usize)]) -> String {
    let b = c.calculus().basis();
    k.iter()
        .map(|(code, j)| match code {
            0 => "d".to_string(),
            1 => format!("i[{}]", b.label(*j)),
            2 => format!("lie[{}]", b.label(*j)),
            _ => format!("t[{}]", b.label(*j)),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn list<T>(xs: &[T], f: impl Fn(&T) -> String) -> String {
    format!("[{}]", xs.iter().map(f).collect::<Vec<_>>().join("; "))
}

fn sign(p: usize) -> QScalar {
    Cartan::grading_sign(p)
}

fn kron(i: usize, j: usize) -> QScalar {
    if i == j {
        QScalar::one()
    } else {
        QScalar::zero()
    }
}

fn flip(d: usize) -> Matrix {
    Matrix::from_fn(d * d, d * d, |r, c| kron(r / d, c % d) * kron(r % d, c / d))
}

struct Ctx<'a> {
    c: &'a Cartan,
    w: &'a Wedge,
    calc: &'a Calculus,
    alg: &'a Algebra,
    dim: usize,
    t: Vec<Vec<AlgebraElement>>,
    det: AlgebraElement,
    det_inv: AlgebraElement,
    gens: Vec<AlgebraElement>,
    low: Vec<AlgebraElement>,
}

impl<'a> Ctx<'a> {
    fn new(c: &'a Cartan) -> Self {
        let calc = c.calculus().as_ref();
        let alg = calc.algebra().as_ref();
        let frt = alg.frt().expect("calculus requires FRT data");
        let t = frt
            .t
            .iter()
            .map(|row| row.iter().map(|g| alg.gen_elem(*g)).collect())
            .collect();
        let mut low = vec![AlgebraElement::one()];
        for k in 1..=2 {
            low.extend(alg.normal_words(k).into_iter().map(AlgebraElement::word));
        }
        Ctx {
            c,
            w: c.wedge().as_ref(),
            calc,
            alg,
            dim: c.dim(),
            t,
            det: alg.gen_elem(frt.det),
            det_inv: alg.gen_elem(frt.det_inv),
            gens: (0..alg.num_generators()).map(|g| alg.gen_elem(g as u8)).collect(),
            low,
        }
    }

    fn lab(&self, i: usize) -> String {
        self.calc.basis().label(i)
    }

    fn fa(&self, x: &AlgebraElement) -> String {
        self.alg.fmt(x)
    }

    fn ff(&self, x: &TensorForm) -> String {
        self.w.fmt_form(x)
    }

    fn f(&self, i: usize, j: usize) -> &Functional {
        &self.calc.basis().f[i][j]
    }

    fn chi(&self, i: usize) -> &Functional {
        &self.calc.basis().chi[i]
    }

    fn ev(&self, f: &Functional, x: &AlgebraElement) -> QScalar {
        self.calc.dual().eval(f, x)
    }

    fn lconv(&self, f: &Functional, x: &AlgebraElement) -> AlgebraElement {
        self.calc.dual().left_conv(f, x)
    }

    fn rconv(&self, f: &Functional, x: &AlgebraElement) -> AlgebraElement {
        self.calc.dual().right_conv(f, x)
    }

    fn om(&self, idx: &[u8]) -> TensorForm {
        TensorForm::basis(idx)
    }

    fn fun(&self, a: AlgebraElement) -> TensorForm {
        TensorForm::function(a)
    }

    fn rmul(&self, x: &TensorForm, a: &AlgebraElement) -> TensorForm {
        self.w.right_mul(x, a)
    }

    fn lmul(&self, a: &AlgebraElement, x: &TensorForm) -> TensorForm {
        self.w.left_mul(a, x)
    }

    fn wedge(&self, x: &TensorForm, y: &TensorForm) -> Res<TensorForm> {
        Ok(self.w.wedge(x, y)?)
    }

    fn d(&self, x: &TensorForm) -> Res<TensorForm> {
        Ok(self.w.exterior_d(x)?)
    }

    fn dfun(&self, a: &AlgebraElement) -> TensorForm {
        TensorForm::from_one_form(&self.calc.differential(a))
    }

    fn kron_elem(&self, i: usize, j: usize) -> AlgebraElement {
        AlgebraElement::scalar(kron(i, j))
    }

    /// `T^1_2 t_{1,2} + T^1_1 t_{2,1} + T^2_1 t_{2,2}`
    fn field(&self) -> VectorField {
        let mut v = VectorField::zero(self.dim);
        v.coeffs[1] = self.t[0][1].clone();
        v.coeffs[2] = self.t[0][0].clone();
        v.coeffs[3] = self.t[1][0].clone();
        v
    }

    /// Forms of degree ≤ `max` with generator coefficients.
    fn monomials(&self, max: usize) -> Vec<TensorForm> {
        let coeffs = [self.t[0][0].clone(), self.t[1][0].clone(), self.det_inv.clone()];
        let mut out = vec![self.fun(self.t[0][1].clone())];
        for i in 0..self.dim as u8 {
            out.push(self.rmul(&self.om(&[i]), &coeffs[i as usize % 3]));
            if max >= 2 {
                for j in 0..self.dim as u8 {
                    out.push(self.rmul(&self.om(&[i, j]), &coeffs[(i + 2 * j) as usize % 3]));
                }
            }
        }
        out
    }

    fn word_forms(&self) -> Vec<TensorForm> {
        vec![
            self.fun(self.t[0][1].clone()),
            self.rmul(&self.om(&[1]), &self.t[0][0]),
            self.om(&[2]),
            self.lmul(&self.t[1][0], &self.om(&[0, 3])),
        ]
    }

    fn random_element(&self, rng: &mut StdRng, max_len: usize) -> AlgebraElement {
        let mut x = AlgebraElement::zero();
        x.add_term(Word::empty(), QScalar::from_int(rng.gen_range(-2..=2)));
        for k in 1..=max_len {
            for w in self.alg.normal_words(k) {
                x.add_term(w, QScalar::from_int(rng.gen_range(-2..=2)));
            }
        }
        x
    }

    #[allow(clippy::ptr_arg)]
    fn show_elems(&self, xs: &Vec<AlgebraElement>) -> String {
        list(xs, |x| self.fa(x))
    }

    #[allow(clippy::ptr_arg)]
    fn show_scalars(xs: &Vec<QScalar>) -> String {
        list(xs, |x| x.to_string())
    }

    fn lie_via_ops(&self, ops: &[Op], x: &TensorForm) -> Res<TensorForm> {
        Ok(self.c.apply_word(ops, x)?)
    }
}

fn leibniz(cx: &Ctx, ck: &mut Checker) {
    let alg = cx.alg;
    let n = cx.dim;
    for x in &cx.gens {
        for y in &cx.gens {
            let wit = format!("x={} y={}", cx.fa(x), cx.fa(y));
            ck.eq(
                "chi-twisted-leibniz",
                &wit,
                || {
                    let xy = alg.mul(x, y);
                    let lhs: Vec<QScalar> = (0..n).map(|i| cx.ev(cx.chi(i), &xy)).collect();
                    let rhs = (0..n)
                        .map(|i| {
                            let mut r = cx.ev(cx.chi(i), x) * alg.counit(y);
                            for j in 0..n {
                                r += &(cx.ev(cx.f(j, i), x) * cx.ev(cx.chi(j), y));
                            }
                            r
                        })
                        .collect();
                    Ok((lhs, rhs))
                },
                Ctx::show_scalars,
            );
            ck.eq(
                "f-antimultiplicative",
                &wit,
                || {
                    let xy = alg.mul(x, y);
                    let mut lhs = Vec::new();
                    let mut rhs = Vec::new();
                    for i in 0..n {
                        for j in 0..n {
                            lhs.push(cx.ev(cx.f(i, j), &xy));
                            rhs.push((0..n).map(|k| cx.ev(cx.f(k, j), x) * cx.ev(cx.f(i, k), y)).sum());
                        }
                    }
                    Ok((lhs, rhs))
                },
                Ctx::show_scalars,
            );
            let v = VectorField {
                coeffs: vec![
                    cx.t[1][1].clone(),
                    cx.t[1][0].clone(),
                    cx.t[0][1].clone(),
                    cx.t[0][0].clone(),
                ],
            };
            ck.eq(
                "vector-field-leibniz",
                &wit,
                || {
                    let lhs = cx.calc.apply_vector(&v, &alg.mul(x, y));
                    let mut rhs = alg.mul(&cx.calc.apply_vector(&v, x), y);
                    for i in 0..n {
                        for j in 0..n {
                            let fx = cx.lconv(cx.f(j, i), x);
                            let ty = cx.lconv(cx.chi(j), y);
                            rhs = &rhs + &alg.product(&[&v.coeffs[i], &fx, &ty]);
                        }
                    }
                    Ok((lhs, rhs))
                },
                |e| cx.fa(e),
            );
            ck.eq(
                "vector-field-product-rule",
                &wit,
                || {
                    let lhs = cx.calc.apply_vector(&v, &alg.mul(x, y));
                    let boxed = cx.calc.right_multiply_vector(&v, x);
                    let rhs = &alg.mul(&cx.calc.apply_vector(&v, x), y) + &cx.calc.apply_vector(&boxed, y);
                    Ok((lhs, rhs))
                },
                |e| cx.fa(e),
            );
            if ck.classical() {
                ck.eq(
                    "classical-two-term-rule",
                    &wit,
                    || {
                        let xy = alg.mul(x, y);
                        let lhs: Vec<QScalar> = (0..n).map(|i| cx.ev(cx.chi(i), &xy)).collect();
                        let rhs = (0..n)
                            .map(|i| cx.ev(cx.chi(i), x) * alg.counit(y) + alg.counit(x) * cx.ev(cx.chi(i), y))
                            .collect();
                        Ok((lhs, rhs))
                    },
                    Ctx::show_scalars,
                );
            }
        }
    }
}

fn duality(cx: &Ctx, ck: &mut Checker) {
    let calc = cx.calc;
    let alg = cx.alg;
    let n = cx.dim;
    ck.eq(
        "t-omega-pairing",
        "<t_j, omega^i> over all i, j",
        || {
            let lhs = (0..n * n)
                .map(|k| calc.bracket(&calc.t(k % n), &calc.omega(k / n)))
                .collect();
            let rhs = (0..n * n).map(|k| cx.kron_elem(k / n, k % n)).collect();
            Ok((lhs, rhs))
        },
        |v| cx.show_elems(v),
    );
    ck.eq(
        "h-eta-pairing",
        "<h_i, eta^j> over all i, j",
        || {
            let lhs = (0..n * n)
                .map(|k| calc.bracket(&calc.h(k / n), &calc.eta(k % n)))
                .collect();
            let rhs = (0..n * n).map(|k| cx.kron_elem(k / n, k % n)).collect();
            Ok((lhs, rhs))
        },
        |v| cx.show_elems(v),
    );

    let mut rng = StdRng::seed_from_u64(SEED);
    let xb = match solve_x_basis(calc.dual(), calc.basis()) {
        Ok(xb) => Some(xb),
        Err(e) => {
            ck.fail("field-from-action", "x-basis", &e);
            None
        }
    };
    for s in 0..SAMPLES {
        let rho = OneForm {
            coeffs: (0..n).map(|_| cx.random_element(&mut rng, 2)).collect(),
        };
        let v = VectorField {
            coeffs: (0..n).map(|_| cx.random_element(&mut rng, 1)).collect(),
        };
        let a = cx.random_element(&mut rng, 2);
        let wit = format!("random sample {s}, seed {SEED:#x}");
        ck.eq(
            "bracket-right-module",
            &wit,
            || {
                Ok((
                    calc.bracket(&v, &calc.right_multiply_form(&rho, &a)),
                    alg.mul(&calc.bracket(&v, &rho), &a),
                ))
            },
            |e| cx.fa(e),
        );
        ck.eq(
            "bracket-left-module",
            &wit,
            || {
                Ok((
                    calc.bracket(&calc.left_multiply_vector(&a, &v), &rho),
                    alg.mul(&a, &calc.bracket(&v, &rho)),
                ))
            },
            |e| cx.fa(e),
        );
        ck.eq(
            "form-expansion",
            &wit,
            || {
                let mut re = OneForm::zero(n);
                for i in 0..n {
                    re = &re + &calc.right_multiply_form(&calc.omega(i), &calc.bracket(&calc.t(i), &rho));
                }
                Ok((re.coeffs, rho.coeffs.clone()))
            },
            |v| cx.show_elems(v),
        );
        ck.eq(
            "field-expansion",
            &wit,
            || {
                let mut rv = VectorField::zero(n);
                for i in 0..n {
                    rv = &rv + &calc.left_multiply_vector(&calc.bracket(&v, &calc.omega(i)), &calc.t(i));
                }
                Ok((rv.coeffs, v.coeffs.clone()))
            },
            |v| cx.show_elems(v),
        );
        let Some(xb) = &xb else { continue };
        ck.eq(
            "field-from-action",
            &wit,
            || {
                let mut got = Vec::new();
                for i in 0..n {
                    let mut acc = AlgebraElement::zero();
                    for (k, coef) in alg.coproduct(&xb.x[i]).terms() {
                        let a1 = AlgebraElement::word(k[0].clone());
                        let a2 = AlgebraElement::word(k[1].clone());
                        acc.add_scaled(&alg.mul(&calc.apply_vector(&v, &a2), &alg.antipode_inv(&a1)), coef);
                    }
                    got.push(acc);
                }
                Ok((got, v.coeffs.clone()))
            },
            |v| cx.show_elems(v),
        );
        ck.eq(
            "bracket-on-exact-forms",
            &wit,
            || {
                let mut lhs = Vec::new();
                let mut rhs = Vec::new();
                for x in &cx.low {
                    for y in &cx.gens {
                        let rho = calc.right_multiply_form(&calc.differential(x), y);
                        lhs.push(calc.bracket(&v, &rho));
                        rhs.push(alg.mul(&calc.apply_vector(&v, x), y));
                    }
                }
                Ok((lhs, rhs))
            },
            |v| cx.show_elems(v),
        );
    }

    if ck.classical() {
        for x in &cx.low {
            ck.eq(
                "f-convolutions-trivial",
                &cx.fa(x),
                || {
                    let mut lhs = Vec::new();
                    let mut rhs = Vec::new();
                    for i in 0..n {
                        for j in 0..n {
                            let want = if i == j { x.clone() } else { AlgebraElement::zero() };
                            lhs.push(cx.lconv(cx.f(i, j), x));
                            lhs.push(cx.rconv(cx.f(i, j), x));
                            rhs.push(want.clone());
                            rhs.push(want);
                        }
                    }
                    Ok((lhs, rhs))
                },
                |v| cx.show_elems(v),
            );
        }
    }
}

fn adjoint(cx: &Ctx, ck: &mut Checker) {
    let calc = cx.calc;
    let alg = cx.alg;
    let n = cx.dim;
    ck.eq(
        "counit-of-N",
        "epsilon(N^j_i) over all j, i",
        || {
            let lhs = (0..n * n).map(|k| alg.counit(calc.n(k / n, k % n))).collect();
            let rhs = (0..n * n).map(|k| kron(k / n, k % n)).collect();
            Ok((lhs, rhs))
        },
        Ctx::show_scalars,
    );
    for j in 0..n {
        for i in 0..n {
            ck.eq(
                "coproduct-of-N",
                &format!("N^{}_{}", cx.lab(j), cx.lab(i)),
                || {
                    let mut rhs = TensorElement::zero(2);
                    for l in 0..n {
                        rhs = &rhs + &TensorElement::pure(&[calc.n(j, l), calc.n(l, i)]);
                    }
                    Ok((alg.coproduct(calc.n(j, i)), rhs))
                },
                |t| alg.fmt_tensor(t),
            );
        }
    }
    let sum = |xs: Vec<AlgebraElement>| xs.into_iter().fold(AlgebraElement::zero(), |a, b| &a + &b);
    for a in &cx.low {
        ck.eq(
            "N-intertwines-f",
            &format!("a={}", cx.fa(a)),
            || {
                let mut lhs = Vec::new();
                let mut rhs = Vec::new();
                for k in 0..n {
                    for j in 0..n {
                        lhs.push(sum((0..n)
                            .map(|i| alg.mul(calc.n(i, k), &cx.rconv(cx.f(j, i), a)))
                            .collect()));
                        rhs.push(sum((0..n)
                            .map(|i| alg.mul(&cx.lconv(cx.f(i, k), a), calc.n(j, i)))
                            .collect()));
                    }
                }
                Ok((lhs, rhs))
            },
            |v| cx.show_elems(v),
        );
        ck.eq(
            "h-is-right-convolution-with-chi",
            &format!("a={}", cx.fa(a)),
            || {
                let lhs = (0..n).map(|i| calc.apply_vector(&calc.h(i), a)).collect();
                let rhs = (0..n).map(|i| cx.rconv(cx.chi(i), a)).collect();
                Ok((lhs, rhs))
            },
            |v| cx.show_elems(v),
        );
    }
    for a in &cx.gens {
        ck.eq(
            "M-intertwines-f",
            &format!("a={}", cx.fa(a)),
            || {
                let mut lhs = Vec::new();
                let mut rhs = Vec::new();
                for i in 0..n {
                    for k in 0..n {
                        lhs.push(sum((0..n)
                            .map(|j| alg.mul(&cx.rconv(cx.f(j, i), a), calc.m(j, k)))
                            .collect()));
                        rhs.push(sum((0..n)
                            .map(|j| alg.mul(calc.m(i, j), &cx.lconv(cx.f(k, j), a)))
                            .collect()));
                    }
                }
                Ok((lhs, rhs))
            },
            |v| cx.show_elems(v),
        );
    }
    if ck.classical() {
        for x in &cx.low {
            ck.eq(
                "functions-commute-with-bases",
                &cx.fa(x),
                || {
                    let mut lhs = Vec::new();
                    let mut rhs = Vec::new();
                    for i in 0..n {
                        let l = calc.left_multiply_form(x, &calc.omega(i));
                        let r = calc.right_multiply_vector(&calc.t(i), x);
                        for j in 0..n {
                            let want = if i == j { x.clone() } else { AlgebraElement::zero() };
                            lhs.push(l.coeffs[j].clone());
                            lhs.push(r.coeffs[j].clone());
                            rhs.push(want.clone());
                            rhs.push(want);
                        }
                    }
                    Ok((lhs, rhs))
                },
                |v| cx.show_elems(v),
            );
        }
    }
}

fn invariance(cx: &Ctx, ck: &mut Checker) {
    let calc = cx.calc;
    let n = cx.dim;
    let one = AlgebraElement::one();
    ck.eq(
        "omega-t-right-invariant",
        "M.N contraction over all j, k",
        || {
            let lhs = (0..n * n).map(|k| calc.invariance_contraction(k / n, k % n)).collect();
            let rhs = (0..n * n).map(|k| cx.kron_elem(k / n, k % n)).collect();
            Ok((lhs, rhs))
        },
        |v| cx.show_elems(v),
    );
    let show = |v: &Vec<TensorElement>| list(v, |t| cx.alg.fmt_tensor(t));
    for i in 0..n {
        let wit = format!("i={}", cx.lab(i));
        ck.eq(
            "omega-right-coaction",
            &wit,
            || {
                let rhs = (0..n).map(|j| TensorElement::pure(&[&one, calc.m(j, i)])).collect();
                Ok((calc.right_coaction_form(&calc.omega(i)), rhs))
            },
            show,
        );
        ck.eq(
            "eta-right-invariant",
            &wit,
            || {
                let eta = calc.eta(i);
                let rhs = eta.coeffs.iter().map(|c| TensorElement::pure(&[c, &one])).collect();
                Ok((calc.right_coaction_form(&eta), rhs))
            },
            show,
        );
        ck.eq(
            "h-right-invariant",
            &wit,
            || {
                let h = calc.h(i);
                let rhs = h.coeffs.iter().map(|c| TensorElement::pure(&[c, &one])).collect();
                Ok((calc.right_coaction_vector(&h), rhs))
            },
            show,
        );
    }
}

fn braid(cx: &Ctx, ck: &mut Checker) {
    let b = cx.w.braid();
    let n = cx.dim;
    ck.matrices(
        "braid-equation",
        "sigma_12 sigma_23 sigma_12 = sigma_23 sigma_12 sigma_23 on 3 slots",
        || {
            let s12 = b.sigma_at(3, 0);
            let s23 = b.sigma_at(3, 1);
            Ok((s12.mul(&s23).mul(&s12), s23.mul(&s12).mul(&s23)))
        },
    );
    ck.matrices("sigma-from-f-and-M", "sigma_hat entries f_i^l(M_j^k)", || {
        let m = Matrix::from_fn(n * n, n * n, |row, col| {
            let (k, l, i, j) = (row / n, row % n, col / n, col % n);
            cx.ev(cx.f(j, k), cx.calc.m(l, i))
        });
        Ok((b.sigma.clone(), m))
    });
    ck.matrices("b-hat-two-ways", "inverse of sigma_hat vs f_i^s(N^r_k)", || {
        let inv = b.sigma.inverse().ok_or(WedgeError::SingularBraiding)?;
        let m = Matrix::from_fn(n * n, n * n, |row, col| {
            let (i, k, r, s) = (row / n, row % n, col / n, col % n);
            cx.ev(cx.f(r, k), cx.calc.n(s, i))
        });
        Ok((inv, m))
    });
    ck.matrices("b-hat-stored", "engine B_hat table vs f_i^s(N^r_k)", || {
        let m = Matrix::from_fn(n * n, n * n, |row, col| {
            let (i, k, r, s) = (row / n, row % n, col / n, col % n);
            cx.ev(cx.f(r, k), cx.calc.n(s, i))
        });
        Ok((b.b_hat.clone(), m))
    });
    ck.matrices("sigma-invertible", "sigma_hat B_hat = 1", || {
        Ok((b.sigma.mul(&b.b_hat), Matrix::identity(n * n)))
    });
    if ck.symbolic() {
        let holds = b.sigma != flip(n);
        ck.pred(
            "sigma-is-deformed",
            "sigma_hat differs from the flip at symbolic q",
            holds,
            "sigma_hat".into(),
            "flip".into(),
        );
    }
    if ck.classical() {
        ck.matrices("sigma-is-flip", "q = 1", || Ok((b.sigma.clone(), flip(n))));
        ck.matrices("b-hat-is-flip", "q = 1", || Ok((b.b_hat.clone(), flip(n))));
    }
}

fn wedge_suite(cx: &Ctx, ck: &mut Checker) {
    let w = cx.w;
    let b = w.braid();
    let n = cx.dim;
    let nmax = b.cap().min(4);
    ck.matrices("w1-is-identity", "W_1", || {
        Ok((b.w(1)?.clone(), SparseMatrix::identity(n)))
    });
    ck.matrices("w2-is-one-minus-sigma", "W_2 = 1 - sigma_hat", || {
        Ok((
            b.w(2)?.clone(),
            SparseMatrix::identity(n * n).sub(&SparseMatrix::from_dense(&b.sigma)),
        ))
    });
    for deg in 2..=nmax {
        ck.matrices("antisymmetrizer-recursion", &format!("n={deg}"), || {
            Ok((b.w(deg)?.clone(), b.w_on(deg, 1, deg - 1)?.mul(b.iota(deg)?)))
        });
        for k in 1..deg {
            ck.matrices("antisymmetrizer-decomposition", &format!("n={deg} k={k}"), || {
                let mut rhs = b.sigma_chain(deg, k).mul(&b.iota_on(deg, k, deg - k)?);
                if k % 2 == 1 {
                    rhs = rhs.scale(&QScalar::from_int(-1));
                }
                Ok((b.iota(deg)?.clone(), b.iota_on(deg, 0, k)?.add(&rhs)))
            });
        }
    }
    match b.w(2) {
        Ok(w2) => {
            let sides = wmm_sides(cx.calc, w2);
            for r in 0..n * n {
                let row: Vec<_> = sides.iter().filter(|s| s.0 == r).collect();
                ck.eq(
                    "w-biinvariance",
                    &format!("row {r}"),
                    || {
                        Ok((
                            row.iter().map(|s| s.2.clone()).collect(),
                            row.iter().map(|s| s.3.clone()).collect(),
                        ))
                    },
                    |v: &Vec<AlgebraElement>| cx.show_elems(v),
                );
            }
        }
        Err(e) => ck.fail("w-biinvariance", "W_2", &e),
    }

    if let Ok(w2) = b.w(2) {
        let kernel = w2.to_dense().nullspace();
        ck.pred(
            "w2-kernel-nonempty",
            "relations of the wedge product exist",
            !kernel.is_empty(),
            format!("dim ker W_2 = {}", kernel.len()),
            "> 0".into(),
        );
        let a = cx.t[0][1].clone();
        for (kidx, v) in kernel.iter().enumerate() {
            let mut x = TensorForm::zero(2);
            for (k, c) in v.iter().enumerate() {
                x.add_term(vec![(k / n) as u8, (k % n) as u8], AlgebraElement::scalar(c.clone()));
            }
            ck.eq_by(
                "wedge-ideal-is-respected",
                &format!("kernel vector {kidx}"),
                || {
                    let mut imgs = vec![w.image(&x)?];
                    for i in 0..n as u8 {
                        let rho = w.right_mul(&cx.om(&[i]), &a);
                        imgs.push(w.image(&w.wedge(&x, &rho)?)?);
                        imgs.push(w.image(&w.wedge(&rho, &x)?)?);
                    }
                    imgs.push(w.image(&w.exterior_d(&x)?)?);
                    let zeros = imgs.iter().map(|y| TensorForm::zero(y.degree())).collect();
                    Ok((imgs, zeros))
                },
                |v| list(v, |y| w.fmt_form(y)),
                |l, r| l.iter().zip(r).all(|(p, q)| p == q),
            );
        }
    }

    for i in 0..n as u8 {
        for j in 0..n as u8 {
            for k in 0..n as u8 {
                let wit = format!(
                    "omega^{} omega^{} omega^{}",
                    cx.lab(i as usize),
                    cx.lab(j as usize),
                    cx.lab(k as usize)
                );
                ck.forms(cx.c, "wedge-associative", &wit, || {
                    let (oi, oj, ok) = (cx.om(&[i]), cx.om(&[j]), cx.om(&[k]));
                    let l = cx.wedge(&cx.wedge(&oi, &oj)?, &ok)?;
                    let r = cx.wedge(&oi, &cx.wedge(&oj, &ok)?)?;
                    Ok((l, r))
                });
            }
        }
    }
    let lit = maurer_cartan(cx.calc);
    for i in 0..n {
        ck.eq(
            "cartan-maurer",
            &format!("d omega^{}", cx.lab(i)),
            || Ok((w.image(&w.exterior_d(&cx.om(&[i as u8]))?)?, lit[i].clone())),
            |x| cx.ff(x),
        );
    }
    for g in &cx.gens {
        ck.eq(
            "d-on-functions",
            &cx.fa(g),
            || Ok((w.exterior_d(&cx.fun(g.clone()))?, cx.dfun(g))),
            |x| cx.ff(x),
        );
    }
    let x = cx.t[0][1].clone();
    let y = cx.t[1][0].clone();
    let fx = cx.om(&[1, 2]).add(&w.right_mul(&cx.om(&[3, 0]), &y));
    for a in &cx.gens {
        ck.eq(
            "image-is-bimodule-map",
            &format!("{} on {}", cx.fa(a), cx.ff(&fx)),
            || {
                let lhs = vec![w.image(&cx.lmul(a, &fx))?, w.image(&cx.rmul(&fx, a))?];
                let img = w.image(&fx)?;
                Ok((lhs, vec![cx.lmul(a, &img), cx.rmul(&img, a)]))
            },
            |v| list(v, |z| cx.ff(z)),
        );
    }
    let _ = x;

    let mut inputs: Vec<TensorForm> = Vec::new();
    for g in &cx.gens {
        inputs.push(cx.fun(g.clone()));
        for i in 0..n as u8 {
            inputs.push(cx.lmul(g, &cx.om(&[i])));
            inputs.push(cx.rmul(&cx.om(&[i]), g));
        }
    }
    for i in 0..n as u8 {
        inputs.push(cx.om(&[i]));
        for j in 0..n as u8 {
            inputs.push(cx.om(&[i, j]));
        }
    }
    for x in &inputs {
        ck.forms(cx.c, "d-squared-vanishes", &cx.ff(x), || {
            let dd = cx.d(&cx.d(x)?)?;
            let z = TensorForm::zero(dd.degree());
            Ok((dd, z))
        });
    }

    let coeffs = [cx.t[0][0].clone(), cx.t[1][0].clone(), cx.det_inv.clone()];
    let mut monos: Vec<TensorForm> = Vec::new();
    for g in &coeffs {
        monos.push(cx.fun(g.clone()));
        for i in 0..n as u8 {
            monos.push(cx.rmul(&cx.om(&[i]), g));
        }
    }
    for i in 0..n as u8 {
        for j in 0..n as u8 {
            monos.push(cx.rmul(&cx.om(&[i, j]), &coeffs[(i + j) as usize % 3]));
        }
    }
    for x in &monos {
        for y in &monos {
            let p = x.degree();
            if p + y.degree() > 3 {
                continue;
            }
            ck.forms(cx.c, "graded-leibniz", &format!("{} ; {}", cx.ff(x), cx.ff(y)), || {
                let lhs = cx.d(&cx.wedge(x, y)?)?;
                let first = cx.wedge(&cx.d(x)?, y)?;
                let second = cx.wedge(x, &cx.d(y)?)?;
                let rhs = if p % 2 == 0 {
                    first.add(&second)
                } else {
                    first.sub(&second)
                };
                Ok((lhs, rhs))
            });
        }
    }

    if ck.classical() {
        ck.matrices("w2-is-one-minus-flip", "q = 1", || {
            Ok((b.w(2)?.to_dense(), Matrix::identity(n * n).sub(&flip(n))))
        });
        for i in 0..n as u8 {
            ck.forms(
                cx.c,
                "square-vanishes",
                &format!("omega^{} ^ omega^{}", cx.lab(i as usize), cx.lab(i as usize)),
                || Ok((cx.om(&[i, i]), TensorForm::zero(2))),
            );
        }
    }
}

fn cartan_suite(cx: &Ctx, ck: &mut Checker) {
    let c = cx.c;
    let calc = cx.calc;
    let alg = cx.alg;
    let n = cx.dim;
    let v = cx.field();
    let vw = "V = T12 t[1,2] + T11 t[2,1] + T21 t[2,2]";

    for a in [cx.t[0][0].clone(), cx.det.clone()] {
        ck.forms(c, "contract-function-vanishes", &cx.fa(&a), || {
            Ok((c.contract(&v, &cx.fun(a.clone()))?, TensorForm::zero(0)))
        });
    }
    for j in 0..n {
        ck.forms(c, "contract-basis-form", &format!("omega^{}", cx.lab(j)), || {
            Ok((c.contract(&v, &cx.om(&[j as u8]))?, cx.fun(v.coeffs[j].clone())))
        });
    }
    let ms = cx.monomials(2);
    for x in &ms {
        let wit = format!("{vw}; {}", cx.ff(x));
        ck.forms(c, "contract-left-linear-in-field", &wit, || {
            let mut rhs = TensorForm::zero(x.degree().saturating_sub(1));
            for (j, b) in v.coeffs.iter().enumerate() {
                rhs = rhs.add(&cx.lmul(b, &c.contract(&calc.t(j), x)?));
            }
            Ok((c.contract(&v, x)?, rhs))
        });
        ck.forms(c, "contract-additive-right-linear", &wit, || {
            let y = cx.rmul(x, &cx.t[1][1]);
            let z = if x.degree() == 0 {
                cx.fun(cx.t[1][0].clone())
            } else {
                cx.rmul(&cx.om(&vec![3; x.degree()]), &cx.t[0][1])
            };
            let lhs = c.contract(&v, &y.add(&z))?;
            let rhs = cx.rmul(&c.contract(&v, x)?, &cx.t[1][1]).add(&c.contract(&v, &z)?);
            Ok((lhs, rhs))
        });
        ck.forms(c, "contract-scalar-linear", &wit, || {
            let lam = QScalar::q_pow(2) + QScalar::from_int(3);
            Ok((c.contract(&v.scale(&lam), x)?, c.contract(&v, x)?.scale(&lam)))
        });
    }
    for idx in [vec![0u8, 1], vec![1, 0], vec![2, 3, 1], vec![3, 3, 0]] {
        let x = cx.rmul(&cx.om(&idx), &cx.t[0][1]);
        ck.eq(
            "contract-is-bracket-with-image",
            &format!("{vw}; {}", cx.ff(&x)),
            || {
                let lhs = c.image(&c.contract(&v, &x)?)?;
                let rhs =
                    cx.w.general_bracket(&TensorVector::from_vector_field(&v), &c.image(&x)?);
                Ok((lhs, rhs))
            },
            |y| cx.ff(y),
        );
    }
    let b = cx.w.braid();
    for deg in 2..=3usize {
        let Ok(iota) = b.iota(deg) else {
            ck.report.skipped.push(format!("cartan/contract-via-iota [n={deg}]"));
            continue;
        };
        for col in 0..n.pow(deg as u32) {
            let idx: Vec<u8> = (0..deg).rev().map(|s| ((col / n.pow(s as u32)) % n) as u8).collect();
            for i in 0..n {
                ck.forms(
                    c,
                    "contract-via-iota",
                    &format!("i[{}] omega^{:?}", cx.lab(i), idx),
                    || {
                        let mut expect = TensorForm::zero(deg - 1);
                        for (r, val) in (0..iota.size())
                            .map(|r| (r, iota.get(r, col)))
                            .filter(|(_, v)| !v.is_zero())
                        {
                            if r / n.pow(deg as u32 - 1) != i {
                                continue;
                            }
                            let rest: Vec<u8> = (0..deg - 1).rev().map(|s| ((r / n.pow(s as u32)) % n) as u8).collect();
                            expect.add_term(rest, AlgebraElement::scalar(val));
                        }
                        Ok((c.contract(&calc.t(i), &cx.om(&idx))?, expect))
                    },
                );
            }
        }
    }
    let a = cx.t[1][0].clone();
    for i in 0..n as u8 {
        for j in 0..n as u8 {
            for idx in [vec![i, j], vec![i, j, (i + j) % n as u8]] {
                for s in 1..idx.len() {
                    let wit = format!("{vw}; omega^{idx:?} {}, split {s}", cx.fa(&a));
                    ck.forms(c, "contract-splits-at-every-position", &wit, || {
                        let lhs = c.contract(&v, &cx.rmul(&cx.om(&idx), &a))?;
                        let head = cx.om(&idx[..s]);
                        let tail = cx.rmul(&cx.om(&idx[s..]), &a);
                        let mut rhs = cx.wedge(&c.contract(&v, &head)?, &tail)?;
                        for (j, x) in c.twisted(&v, &head).iter().enumerate() {
                            let y = cx.wedge(x, &c.contract(&calc.t(j), &tail)?)?;
                            rhs = rhs.add(&y.scale(&sign(s)));
                        }
                        Ok((lhs, rhs))
                    });
                }
            }
        }
    }
    for a in [cx.t[0][0].clone(), cx.t[0][1].clone(), cx.det.clone()] {
        for x in ms.iter().skip(1) {
            ck.forms(
                c,
                "contract-module-rule",
                &format!("{vw}; a={} {}", cx.fa(&a), cx.ff(x)),
                || {
                    let lhs = c.contract(&v, &cx.lmul(&a, x))?;
                    let mut rhs = TensorForm::zero(x.degree() - 1);
                    for i in 0..n {
                        for j in 0..n {
                            let coef = alg.mul(&v.coeffs[i], &cx.lconv(cx.f(j, i), &a));
                            rhs = rhs.add(&cx.lmul(&coef, &c.contract(&calc.t(j), x)?));
                        }
                    }
                    Ok((lhs, rhs))
                },
            );
        }
    }
    for x in &ms {
        for y in &ms {
            if x.degree() + y.degree() > 3 {
                continue;
            }
            ck.forms(
                c,
                "contract-wedge-of-two-forms",
                &format!("{vw}; {} | {}", cx.ff(x), cx.ff(y)),
                || {
                    let lhs = c.contract(&v, &cx.wedge(x, y)?)?;
                    let mut rhs = if x.degree() == 0 {
                        TensorForm::zero(y.degree().saturating_sub(1))
                    } else {
                        cx.wedge(&c.contract(&v, x)?, y)?
                    };
                    if y.degree() > 0 {
                        for (j, tx) in c.twisted(&v, x).iter().enumerate() {
                            let z = cx.wedge(tx, &c.contract(&calc.t(j), y)?)?;
                            rhs = rhs.add(&z.scale(&sign(x.degree())));
                        }
                    }
                    Ok((lhs, rhs))
                },
            );
        }
    }

    for a in &cx.gens {
        ck.forms(c, "lie-on-functions", &format!("{vw}; {}", cx.fa(a)), || {
            Ok((c.lie(&v, &cx.fun(a.clone()))?, cx.fun(calc.apply_vector(&v, a))))
        });
    }
    for j in 0..n {
        ck.forms(c, "lie-on-basis-forms", &format!("{vw}; omega^{}", cx.lab(j)), || {
            let lhs = c.lie(&v, &cx.om(&[j as u8]))?;
            let mut rhs = cx.dfun(&v.coeffs[j]);
            for i in 0..n {
                rhs = rhs.add(&cx.lmul(&v.coeffs[i], &c.left_conv(cx.chi(i), &cx.om(&[j as u8]))));
            }
            Ok((lhs, rhs))
        });
    }
    let bb = cx.t[1][1].clone();
    let bv = calc.left_multiply_vector(&bb, &v);
    let lam = QScalar::q() - QScalar::from_int(2);
    for x in &ms {
        let wit = format!("{vw}; {}", cx.ff(x));
        ck.forms(c, "lie-commutes-with-d", &wit, || {
            Ok((c.lie(&v, &cx.d(x)?)?, cx.d(&c.lie(&v, x)?)?))
        });
        ck.forms(c, "lie-linear", &wit, || {
            let y = if x.degree() == 0 {
                cx.fun(cx.t[0][0].clone())
            } else {
                cx.rmul(&cx.om(&vec![1; x.degree()]), &cx.t[0][0])
            };
            let lhs = c.lie(&v, &x.scale(&lam).add(&y))?;
            let rhs = c.lie(&v, x)?.scale(&lam).add(&c.lie(&v, &y)?);
            Ok((lhs, rhs))
        });
        ck.forms(c, "lie-along-multiplied-field", &wit, || {
            let lhs = c.lie(&bv, x)?;
            let mut rhs = cx.lmul(&bb, &c.lie(&v, x)?);
            if x.degree() > 0 {
                rhs = rhs.add(&cx.wedge(&cx.dfun(&bb), &c.contract(&v, x)?)?);
            }
            Ok((lhs, rhs))
        });
        ck.forms(c, "d-squared-vanishes", &cx.ff(x), || {
            let dd = cx.d(&cx.d(x)?)?;
            let z = TensorForm::zero(dd.degree());
            Ok((dd, z))
        });
        ck.forms(c, "lie-is-anticommutator-of-d-and-i", &wit, || {
            let mut anti = c.contract(&v, &cx.d(x)?)?;
            if x.degree() > 0 {
                anti = anti.add(&cx.d(&c.contract(&v, x)?)?);
            }
            Ok((anti, c.lie(&v, x)?))
        });
    }
    for x in &ms {
        for y in &ms {
            if x.degree() + y.degree() > 3 {
                continue;
            }
            ck.forms(
                c,
                "lie-braided-leibniz",
                &format!("{vw}; {} | {}", cx.ff(x), cx.ff(y)),
                || {
                    let lhs = c.lie(&v, &cx.wedge(x, y)?)?;
                    let mut rhs = cx.wedge(&c.lie(&v, x)?, y)?;
                    let tw = c.twisted(&v, x);
                    for (j, t) in tw.iter().enumerate() {
                        rhs = rhs.add(&cx.wedge(t, &c.lie(&calc.t(j), y)?)?);
                    }
                    if y.degree() > 0 {
                        for i in 0..n {
                            let dbi = cx.dfun(&v.coeffs[i]);
                            for j in 0..n {
                                let fx = c.left_conv(cx.f(j, i), x);
                                let z = cx.wedge(&cx.wedge(&dbi, &fx)?, &c.contract(&calc.t(j), y)?)?;
                                rhs = rhs.add(&z.scale(&sign(x.degree())));
                            }
                        }
                    }
                    Ok((lhs, rhs))
                },
            );
        }
    }

    let mut inputs: Vec<TensorForm> = cx.gens.iter().cloned().map(|g| cx.fun(g)).collect();
    inputs.push(cx.fun(alg.mul(&cx.t[0][0], &cx.t[0][1])));
    for j in 0..n as u8 {
        inputs.push(cx.om(&[j]));
    }
    for x in &inputs {
        for i in 0..n {
            for k in 0..n {
                let wit = format!("i={} k={} on {}", cx.lab(i), cx.lab(k), cx.ff(x));
                ck.forms(c, "braided-commutator-lie-lie", &wit, || {
                    let mut ll = cx.lie_via_ops(&[Op::L(i), Op::L(k)], x)?;
                    for r in 0..n {
                        for s in 0..n {
                            let bh = c.b_hat(i, k, r, s);
                            if !bh.is_zero() {
                                ll = ll.sub(&cx.lie_via_ops(&[Op::L(r), Op::L(s)], x)?.scale(&bh));
                            }
                        }
                    }
                    let mut rl = TensorForm::zero(x.degree());
                    for l in 0..n {
                        rl = rl.add(&cx.lie_via_ops(&[Op::L(l)], x)?.scale(&c.structure_constant(i, l, k)));
                    }
                    Ok((ll, rl))
                });
                if x.degree() > 0 {
                    ck.forms(c, "braided-commutator-lie-i", &wit, || {
                        let mut li = cx.lie_via_ops(&[Op::L(i), Op::I(k)], x)?;
                        for r in 0..n {
                            for s in 0..n {
                                let bh = c.b_hat(i, k, r, s);
                                if !bh.is_zero() {
                                    li = li.sub(&cx.lie_via_ops(&[Op::I(r), Op::L(s)], x)?.scale(&bh));
                                }
                            }
                        }
                        let mut ri = TensorForm::zero(x.degree() - 1);
                        for l in 0..n {
                            ri = ri.add(&cx.lie_via_ops(&[Op::I(l)], x)?.scale(&c.structure_constant(i, l, k)));
                        }
                        Ok((li, ri))
                    });
                }
            }
        }
    }
    for x in ms.iter().skip(1) {
        for i in 0..n {
            for j in 0..n {
                ck.eq_by(
                    "f-through-contraction",
                    &format!("i={} j={} on {}", cx.lab(i), cx.lab(j), cx.ff(x)),
                    || {
                        let mut lhs = Vec::new();
                        let mut rhs = Vec::new();
                        for k in 0..n {
                            let l = c.left_conv(cx.f(k, i), &c.contract(&calc.t(j), x)?);
                            let mut r = TensorForm::zero(x.degree() - 1);
                            for rr in 0..n {
                                for s in 0..n {
                                    let bh = c.b_hat(i, j, rr, s);
                                    if !bh.is_zero() {
                                        let y = c.contract(&calc.t(rr), &c.left_conv(cx.f(k, s), x))?;
                                        r = r.add(&y.scale(&bh));
                                    }
                                }
                            }
                            lhs.push(c.image(&l)?);
                            rhs.push(c.image(&r)?);
                        }
                        Ok((lhs, rhs))
                    },
                    |v| list(v, |y| cx.ff(y)),
                    |l, r| l.iter().zip(r).all(|(p, q)| p == q || (p.is_zero() && q.is_zero())),
                );
            }
        }
    }
    let dual = calc.dual();
    for x in &cx.low {
        ck.eq(
            "braided-chi-f-identity",
            &cx.fa(x),
            || {
                let mut lhs = Vec::new();
                let mut rhs = Vec::new();
                for i in 0..n {
                    for j in 0..n {
                        for l in 0..n {
                            rhs.push(dual.eval(&Functional::conv(cx.f(l, i), cx.chi(j)), x));
                            let mut acc = QScalar::zero();
                            for r in 0..n {
                                for s in 0..n {
                                    let bh = c.b_hat(i, j, r, s);
                                    if !bh.is_zero() {
                                        acc += &(bh * dual.eval(&Functional::conv(cx.chi(r), cx.f(l, s)), x));
                                    }
                                }
                            }
                            lhs.push(acc);
                        }
                    }
                }
                Ok((lhs, rhs))
            },
            Ctx::show_scalars,
        );
    }

    if ck.classical() {
        let cl = classical_structure_constants(cx);
        match cl {
            Some(cl) => {
                ck.eq(
                    "structure-constants-classical",
                    "chi_i(N^l_k) vs gl(2) structure constants",
                    || {
                        let mut lhs = Vec::new();
                        let mut rhs = Vec::new();
                        for i in 0..n {
                            for k in 0..n {
                                for l in 0..n {
                                    lhs.push(c.structure_constant(i, l, k));
                                    rhs.push(cl[i][k][l].clone());
                                }
                            }
                        }
                        Ok((lhs, rhs))
                    },
                    Ctx::show_scalars,
                );
                for k in 0..n {
                    for l in 0..n {
                        ck.eq(
                            "lie-of-maurer-cartan-forms-classical",
                            &format!("lie[{}] omega^{}", cx.lab(k), cx.lab(l)),
                            || {
                                let got = c.lie(&calc.t(k), &cx.om(&[l as u8]))?;
                                let lhs = (0..n).map(|m| got.coeff(&[m as u8])).collect();
                                let rhs = (0..n).map(|m| AlgebraElement::scalar(cl[m][k][l].clone())).collect();
                                Ok((lhs, rhs))
                            },
                            |v| cx.show_elems(v),
                        );
                    }
                }
            }
            None => ck.fail("structure-constants-classical", "gl(2)", &"classical basis is singular"),
        }
    }
}

/// `[E_i, E_k] = C_{ik}^l E_l` for `(E_K)_{mj} = χ_K(T^m_j)` at q = 1.
fn classical_structure_constants(cx: &Ctx) -> Option<Vec<Vec<Vec<QScalar>>>> {
    let one = BigRational::one();
    let m = cx.t.len();
    let mut e = Vec::new();
    for k in 0..cx.dim {
        let mut rows = Vec::new();
        for r in 0..m {
            let mut row = Vec::new();
            for j in 0..m {
                row.push(cx.ev(cx.chi(k), &cx.t[r][j]).specialize_scalar(&one).ok()?);
            }
            rows.push(row);
        }
        e.push(Matrix::from_rows(rows));
    }
    let basis = Matrix::from_fn(cx.dim, cx.dim, |r, l| e[l][(r / m, r % m)].clone());
    let mut out = Vec::new();
    for i in 0..cx.dim {
        let mut row = Vec::new();
        for k in 0..cx.dim {
            let comm = e[i].mul(&e[k]).sub(&e[k].mul(&e[i]));
            let rhs: Vec<QScalar> = (0..cx.dim).map(|r| comm[(r / m, r % m)].clone()).collect();
            row.push(basis.solve(&rhs)?);
        }
        out.push(row);
    }
    Some(out)
}

type ScalarTerms = BTreeMap<(Vec<(u8, usize)>, Vec<(u8, usize)>), QScalar>;

fn delta_suite(cx: &Ctx, ck: &mut Checker) {
    let c = cx.c;
    let n = cx.dim;
    let show_terms = |m: &ScalarTerms| {
        if m.is_empty() {
            return "0".to_string();
        }
        m.iter()
            .map(|((x, y), v)| format!("({v}) [{}] (x) [{}]", fmt_key(c, x), fmt_key(c, y)))
            .collect::<Vec<_>>()
            .join(" + ")
    };
    for i in 0..n {
        for j in 0..n {
            let wit = format!("delta(t[{}] t[{}])", cx.lab(i), cx.lab(j));
            let dt = c.delta(&[Op::T(i), Op::T(j)]);
            ck.eq(
                "delta-of-two-fields",
                &wit,
                || {
                    let got = dt
                        .scalar_terms()
                        .ok_or(CartanError::Unsupported("form factor".into()))?;
                    let mut expect = ScalarTerms::new();
                    expect.insert((vec![(3u8, i), (3, j)], vec![]), QScalar::one());
                    expect.insert((vec![], vec![(3u8, i), (3, j)]), QScalar::one());
                    for r in 0..n {
                        for s in 0..n {
                            let mut v = c.b_hat(i, j, r, s);
                            if (r, s) == (i, j) {
                                v += QScalar::one();
                            }
                            if !v.is_zero() {
                                expect.insert((vec![(3u8, r)], vec![(3u8, s)]), v);
                            }
                        }
                    }
                    Ok((got, expect))
                },
                show_terms,
            );
            if ck.classical() {
                ck.eq(
                    "delta-of-two-fields-classical",
                    &wit,
                    || {
                        let got = dt
                            .scalar_terms()
                            .ok_or(CartanError::Unsupported("form factor".into()))?;
                        let mut expect = ScalarTerms::new();
                        expect.insert((vec![(3u8, i), (3, j)], vec![]), QScalar::one());
                        expect.insert((vec![], vec![(3u8, i), (3, j)]), QScalar::one());
                        for (r, s) in [(i, j), (j, i)] {
                            let e = expect
                                .entry((vec![(3u8, r)], vec![(3u8, s)]))
                                .or_insert_with(QScalar::zero);
                            *e = &*e + &QScalar::one();
                        }
                        Ok((got, expect))
                    },
                    show_terms,
                );
            }
            for a in [
                cx.t[0][0].clone(),
                cx.t[0][1].clone(),
                cx.alg.mul(&cx.t[1][0], &cx.t[1][1]),
            ] {
                ck.normal_forms(
                    c,
                    "delta-of-two-fields-past-functions",
                    &format!("{wit} on {}", cx.fa(&a)),
                    || {
                        let lhs = c.box_apply(&dt, &cx.fun(a.clone()))?;
                        let rhs = c.commutation_normal_form(&[Op::T(i), Op::T(j)], &cx.fun(a.clone()))?;
                        Ok((lhs, rhs))
                    },
                );
            }
        }
    }
    let words: Vec<Vec<Op>> = vec![
        vec![Op::D],
        vec![Op::I(1)],
        vec![Op::L(2)],
        vec![Op::D, Op::D],
        vec![Op::I(0), Op::D],
        vec![Op::D, Op::I(3)],
        vec![Op::L(1), Op::I(2)],
        vec![Op::I(1), Op::I(2)],
        vec![Op::L(0), Op::L(3)],
        vec![Op::I(2), Op::L(1), Op::D],
    ];
    let fmt_word = |w: &[Op]| w.iter().map(|o| c.fmt_op(o)).collect::<Vec<_>>().join(" ");
    for w in &words {
        let dw = c.delta(w);
        let depth = w.iter().filter(|o| matches!(o, Op::D)).count();
        for x in cx.word_forms() {
            if x.degree() + depth > 3 {
                continue;
            }
            ck.normal_forms(
                c,
                "delta-is-homomorphism",
                &format!("{} past {}", fmt_word(w), cx.ff(&x)),
                || Ok((c.box_apply(&dw, &x)?, c.commutation_normal_form(w, &x)?)),
            );
        }
    }
    let v = cx.field();
    let dl = c.delta_lie(&v);
    for x in cx.word_forms().into_iter().take(3) {
        let p = x.degree();
        ck.normal_forms(
            c,
            "delta-of-lie-commutation-relation",
            &format!("lie_V past {}", cx.ff(&x)),
            || {
                let lhs = c.box_apply(&dl, &x)?;
                let mut terms = vec![(c.lie(&v, &x)?, vec![])];
                let tw = c.twisted(&v, &x);
                for (j, t) in tw.into_iter().enumerate() {
                    terms.push((t, vec![Op::L(j)]));
                    for i in 0..n {
                        let dbi = cx.dfun(&v.coeffs[i]);
                        let fx = c.left_conv(cx.f(j, i), &x);
                        terms.push((cx.wedge(&dbi, &fx)?.scale(&sign(p)), vec![Op::I(j)]));
                    }
                }
                Ok((lhs, NormalForm { terms }))
            },
        );
    }
    for op in [Op::D, Op::I(2), Op::L(0)] {
        for x in cx.word_forms() {
            ck.normal_forms(
                c,
                "delta-of-single-operator",
                &format!("{} past {}", c.fmt_op(&op), cx.ff(&x)),
                || {
                    let lhs = c.box_apply(&c.delta(std::slice::from_ref(&op)), &x)?;
                    let mut terms = vec![(c.apply_op(&op, &x)?, vec![])];
                    for (y, o) in c.pass_op(&op, &x)? {
                        terms.push((y, vec![o]));
                    }
                    Ok((lhs, NormalForm { terms }))
                },
            );
        }
    }
    for x in cx.word_forms() {
        let p = x.degree();
        ck.normal_forms(c, "d-past-form", &cx.ff(&x), || {
            let nf = c.commutation_normal_form(&[Op::D], &x)?;
            let expect = NormalForm {
                terms: vec![(cx.d(&x)?, vec![]), (x.scale(&sign(p)), vec![Op::D])],
            };
            Ok((nf, expect))
        });
    }
    let a = cx.t[0][0].clone();
    ck.normal_forms(
        c,
        "i-past-function",
        &format!("i[{}] past {}", cx.lab(1), cx.fa(&a)),
        || {
            let nf = c.commutation_normal_form(&[Op::I(1)], &cx.fun(a.clone()))?;
            let terms = (0..n)
                .map(|j| (cx.fun(cx.lconv(cx.f(j, 1), &a)), vec![Op::I(j)]))
                .collect();
            Ok((nf, NormalForm { terms }))
        },
    );
    let psis = [cx.om(&[1]), cx.rmul(&cx.om(&[3]), &cx.t[0][1])];
    let acting: Vec<Vec<Op>> = vec![
        vec![Op::D],
        vec![Op::I(2)],
        vec![Op::L(1)],
        vec![Op::D, Op::I(0)],
        vec![Op::I(3), Op::L(1)],
        vec![Op::L(2), Op::D],
    ];
    for w in &acting {
        for x in cx.word_forms().into_iter().skip(1) {
            for psi in &psis {
                if x.degree() + psi.degree() > 2 {
                    continue;
                }
                ck.forms(
                    c,
                    "normal-form-acts-like-word",
                    &format!("{} on {} ^ {}", fmt_word(w), cx.ff(&x), cx.ff(psi)),
                    || {
                        let nf = c.commutation_normal_form(w, &x)?;
                        Ok((c.apply_word(w, &cx.wedge(&x, psi)?)?, c.apply_normal_form(&nf, psi)?))
                    },
                );
            }
        }
    }
}

fn defect_index(cx: &Ctx, ck: &mut Checker) {
    let c = cx.c;
    let calc = cx.calc;
    let dual = calc.dual();
    let n = cx.dim;
    let t11 = cx.t[0][0].clone();
    let show1 = |x: &OneForm| calc.fmt_form(x);

    if ck.classical() {
        for a in &cx.gens {
            ck.eq(
                "vanishes-classically",
                &format!("DI_i^k({}) over all i, k", cx.fa(a)),
                || {
                    let lhs = (0..n * n).map(|ik| c.defect_index(ik / n, ik % n, a)).collect();
                    Ok((lhs, vec![OneForm::zero(n); n * n]))
                },
                |v| list(v, show1),
            );
        }
    } else {
        let mut nonzero = Vec::new();
        for i in 0..n {
            for k in 0..n {
                let di = c.defect_index(i, k, &t11);
                match ck.spec(di) {
                    Ok(di) => {
                        let label = format!("DI_{}^{}(T11)", cx.lab(i), cx.lab(k));
                        let flag = if di.is_zero() {
                            format!("{label}; zero")
                        } else {
                            nonzero.push(label.clone());
                            format!("{label}; expected-nonzero")
                        };
                        ck.pred("value", &flag, true, show1(&di), "reported".into());
                    }
                    Err(e) => ck.fail("value", &format!("i={} k={}", cx.lab(i), cx.lab(k)), &e),
                }
            }
        }
        ck.pred(
            "nonzero-somewhere",
            "expected-nonzero",
            !nonzero.is_empty(),
            format!("{} nonzero of {}", nonzero.len(), n * n),
            "at least 1".into(),
        );
    }
    ck.eq(
        "vanishes-on-unit",
        "DI_i^k(1) over all i, k",
        || {
            let lhs = (0..n * n)
                .map(|ik| c.defect_index(ik / n, ik % n, &AlgebraElement::one()))
                .collect();
            Ok((lhs, vec![OneForm::zero(n); n * n]))
        },
        |v| list(v, show1),
    );
    ck.eq(
        "M-trace-is-kronecker",
        "sum_k M_J^{kk} over all J",
        || {
            let m = cx.t.len();
            let diag: Vec<usize> = (0..m).map(|k| k * m + k).collect();
            let lhs = (0..n)
                .map(|j| {
                    diag.iter()
                        .fold(AlgebraElement::zero(), |acc, &kk| &acc + calc.m(j, kk))
                })
                .collect();
            let rhs = (0..n).map(|j| cx.kron_elem(j / m, j % m)).collect();
            Ok((lhs, rhs))
        },
        |v| cx.show_elems(v),
    );

    let m = cx.t.len();
    let diag: Vec<usize> = (0..m).map(|k| k * m + k).collect();
    let y: Vec<Functional> = (0..n)
        .map(|j| Functional::sum(diag.iter().map(|&kk| cx.f(kk, j).clone()).collect()))
        .collect();
    let proportional = (|| -> Result<bool, ScalarError> {
        let c0 = ck.spec(dual.eval(&y[0], &AlgebraElement::one()))?;
        for (j, yj) in y.iter().enumerate() {
            for x in &cx.low {
                let expect = if diag.contains(&j) {
                    &c0 * &ck.spec(cx.calc.algebra().counit(x))?
                } else {
                    QScalar::zero()
                };
                if ck.spec(dual.eval(yj, x))? != expect {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    })();
    match proportional {
        Ok(p) if ck.classical() => ck.pred(
            "Y-proportional-classically",
            "sum_k f_J^{kk} = c delta_J epsilon at q = 1",
            p,
            if p { "proportional" } else { "not proportional" }.into(),
            "proportional".into(),
        ),
        Ok(p) => ck.pred(
            "Y-not-proportional",
            "sum_k f_J^{kk} versus c delta_J epsilon on words up to length 2",
            !p,
            if p { "proportional" } else { "not proportional" }.into(),
            "not proportional".into(),
        ),
        Err(e) => ck.fail("Y-not-proportional", "specialization", &e),
    }

    for i in 0..n {
        for a in [cx.t[0][0].clone(), cx.t[0][1].clone(), cx.det.clone()] {
            let da = cx.dfun(&a);
            ck.forms(
                c,
                "lie-equals-right-lie-on-exact-forms",
                &format!("i={} d{}", cx.lab(i), cx.fa(&a)),
                || Ok((c.lie(&calc.h(i), &da)?, c.lie_right(i, &da))),
            );
            for b in [cx.t[1][0].clone(), cx.t[1][1].clone(), cx.t[0][0].clone()] {
                let x = cx.rmul(&da, &b);
                let wit = format!("i={} d{} {}", cx.lab(i), cx.fa(&a), cx.fa(&b));
                ck.forms(c, "lie-minus-right-lie-is-defect", &wit, || {
                    let lhs = c.lie(&calc.h(i), &x)?.sub(&c.lie_right(i, &x));
                    let mut rhs = TensorForm::zero(1);
                    for k in 0..n {
                        let di = TensorForm::from_one_form(&c.defect_index(i, k, &a));
                        rhs = rhs.sub(&cx.rmul(&di, &calc.apply_vector(&calc.t(k), &b)));
                    }
                    Ok((lhs, rhs))
                });
                if ck.classical() {
                    ck.forms(c, "lie-equals-right-lie-classically", &wit, || {
                        Ok((c.lie(&calc.h(i), &x)?, c.lie_right(i, &x)))
                    });
                }
            }
        }
    }
    for i in 0..n {
        for a in [cx.t[0][0].clone(), cx.t[0][1].clone()] {
            for y in cx.monomials(1).into_iter().skip(1) {
                let wit = format!("V = h[{}], a={}, {}", cx.lab(i), cx.fa(&a), cx.ff(&y));
                ck.forms(c, "lie-along-adjoint-field-with-defect", &wit, || {
                    let lhs = c.lie(&calc.h(i), &cx.lmul(&a, &y))?;
                    let mut rhs = cx.wedge(&c.lie(&calc.h(i), &cx.fun(a.clone()))?, &y)?;
                    for j in 0..n {
                        let af = cx.rconv(cx.f(j, i), &a);
                        rhs = rhs.add(&cx.lmul(&af, &c.lie(&calc.h(j), &y)?));
                    }
                    for k in 0..n {
                        let di = TensorForm::from_one_form(&c.defect_index(i, k, &a));
                        rhs = rhs.add(&cx.wedge(&di, &c.contract(&calc.t(k), &y)?)?);
                    }
                    Ok((lhs, rhs))
                });
            }
        }
    }
    for i in 0..n {
        ck.eq(
            "right-lie-on-functions",
            &format!("i={}", cx.lab(i)),
            || {
                let lhs = cx.gens.iter().map(|b| c.lie_right(i, &cx.fun(b.clone()))).collect();
                let rhs = cx
                    .gens
                    .iter()
                    .map(|b| cx.fun(calc.apply_vector(&calc.h(i), b)))
                    .collect();
                Ok((lhs, rhs))
            },
            |v: &Vec<TensorForm>| list(v, |x| cx.ff(x)),
        );
        let ms = cx.monomials(1);
        for x in &ms {
            for y in &ms {
                ck.forms(
                    c,
                    "right-lie-leibniz",
                    &format!("i={} {} | {}", cx.lab(i), cx.ff(x), cx.ff(y)),
                    || {
                        let lhs = c.lie_right(i, &cx.wedge(x, y)?);
                        let mut rhs = cx.wedge(&c.lie_right(i, x), y)?;
                        for j in 0..n {
                            rhs = rhs.add(&cx.wedge(&c.right_conv(cx.f(j, i), x), &c.lie_right(j, y))?);
                        }
                        Ok((lhs, rhs))
                    },
                );
            }
        }
        for a in [cx.t[0][0].clone(), cx.t[1][0].clone()] {
            let da = cx.dfun(&a);
            for b in [cx.t[0][1].clone(), cx.t[1][1].clone()] {
                ck.eq(
                    "right-lie-on-exact-times-function",
                    &format!("i={} d{} {}", cx.lab(i), cx.fa(&a), cx.fa(&b)),
                    || {
                        let lhs = c.lie_right(i, &cx.rmul(&da, &b));
                        let dha = cx.dfun(&calc.apply_vector(&calc.h(i), &a));
                        let mut rhs = cx.rmul(&dha, &b);
                        for j in 0..n {
                            rhs = rhs.add(&cx.rmul(&c.right_conv(cx.f(j, i), &da), &calc.apply_vector(&calc.h(j), &b)));
                        }
                        Ok((lhs, rhs))
                    },
                    |x| cx.ff(x),
                );
            }
        }
    }
}

fn classical(cx: &Ctx, ck: &mut Checker) {
    let c = cx.c;
    let calc = cx.calc;
    let alg = cx.alg;
    let n = cx.dim;
    for x in &cx.gens {
        for y in &cx.gens {
            let wit = format!("x={} y={}", cx.fa(x), cx.fa(y));
            ck.eq("commutative", &wit, || Ok((alg.mul(x, y), alg.mul(y, x))), |e| cx.fa(e));
            ck.eq(
                "chi-two-term-rule",
                &wit,
                || {
                    let xy = alg.mul(x, y);
                    let lhs: Vec<QScalar> = (0..n).map(|i| cx.ev(cx.chi(i), &xy)).collect();
                    let rhs = (0..n)
                        .map(|i| cx.ev(cx.chi(i), x) * alg.counit(y) + alg.counit(x) * cx.ev(cx.chi(i), y))
                        .collect();
                    Ok((lhs, rhs))
                },
                Ctx::show_scalars,
            );
        }
    }
    for x in &cx.low {
        ck.eq(
            "f-convolutions-trivial",
            &cx.fa(x),
            || {
                let mut lhs = Vec::new();
                let mut rhs = Vec::new();
                for i in 0..n {
                    for j in 0..n {
                        let want = if i == j { x.clone() } else { AlgebraElement::zero() };
                        lhs.push(cx.lconv(cx.f(i, j), x));
                        lhs.push(cx.rconv(cx.f(i, j), x));
                        rhs.push(want.clone());
                        rhs.push(want);
                    }
                }
                Ok((lhs, rhs))
            },
            |v| cx.show_elems(v),
        );
    }
    let b = cx.w.braid();
    ck.matrices("sigma-is-flip", "q = 1", || Ok((b.sigma.clone(), flip(n))));
    for i in 0..n {
        for a in [cx.t[0][0].clone(), cx.t[0][1].clone(), cx.det.clone()] {
            for bb in [cx.t[1][0].clone(), cx.t[1][1].clone()] {
                let x = cx.rmul(&cx.dfun(&a), &bb);
                ck.forms(
                    c,
                    "lie-equals-right-lie",
                    &format!("h[{}] on d{} {}", cx.lab(i), cx.fa(&a), cx.fa(&bb)),
                    || Ok((c.lie(&calc.h(i), &x)?, c.lie_right(i, &x))),
                );
            }
        }
    }
    for a in &cx.gens {
        ck.eq(
            "defect-index-vanishes",
            &format!("DI_i^k({}) over all i, k", cx.fa(a)),
            || {
                let lhs = (0..n * n).map(|ik| c.defect_index(ik / n, ik % n, a)).collect();
                Ok((lhs, vec![OneForm::zero(n); n * n]))
            },
            |v| list(v, |x| calc.fmt_form(x)),
        );
    }
}
