//! Linear functionals on the algebra: FRT pairings, convolution products and
//! the quantum tangent space.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, RwLock};

use thiserror::Error;

use crate::linalg::Matrix;
use crate::ncalg::{Algebra, AlgebraElement, Gen, Word};
use crate::qscalar::{QScalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualError {
    #[error("instance has no FRT block")]
    NotFrt,
    #[error("functional index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("generator `{0}` has no FRT pairing")]
    NoPairing(String),
    #[error("x-basis not solvable in degree 1")]
    XBasisSingular,
    #[error("lambda normalization at q={0}: division by zero")]
    LambdaVanishes(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Twist {
    S,
    SInv,
}

#[derive(Debug)]
enum Node {
    Counit,
    Lp(usize, usize),
    Lm(usize, usize),
    Scale(QScalar, Functional),
    Sum(Vec<Functional>),
    Conv(Functional, Functional),
    Twist(Twist, Functional),
}

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// Expression tree of a linear functional; cheap to clone.
#[derive(Clone, Debug)]
pub struct Functional {
    id: u64,
    node: Arc<Node>,
}

impl Functional {
    fn make(node: Node) -> Self {
        Functional {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            node: Arc::new(node),
        }
    }

    pub fn counit() -> Self {
        Functional::make(Node::Counit)
    }

    /// `L⁺^i_j`, indices from 0.
    pub fn lp(i: usize, j: usize) -> Self {
        Functional::make(Node::Lp(i, j))
    }

    /// `L⁻^i_j`, indices from 0.
    pub fn lm(i: usize, j: usize) -> Self {
        Functional::make(Node::Lm(i, j))
    }

    pub fn scale(c: QScalar, f: &Functional) -> Self {
        Functional::make(Node::Scale(c, f.clone()))
    }

    pub fn sum(fs: Vec<Functional>) -> Self {
        Functional::make(Node::Sum(fs))
    }

    /// Convolution product `(fg)(a) = f(a₁) g(a₂)`.
    pub fn conv(f: &Functional, g: &Functional) -> Self {
        Functional::make(Node::Conv(f.clone(), g.clone()))
    }

    /// Precomposition with S or S⁻¹.
    pub fn twist(t: Twist, f: &Functional) -> Self {
        Functional::make(Node::Twist(t, f.clone()))
    }

    pub fn neg(&self) -> Self {
        Functional::scale(QScalar::from_int(-1), self)
    }

    fn max_index(&self) -> usize {
        match &*self.node {
            Node::Counit => 0,
            Node::Lp(i, j) | Node::Lm(i, j) => (*i).max(*j) + 1,
            Node::Scale(_, f) | Node::Twist(_, f) => f.max_index(),
            Node::Sum(fs) => fs.iter().map(|f| f.max_index()).max().unwrap_or(0),
            Node::Conv(f, g) => f.max_index().max(g.max_index()),
        }
    }
}

impl fmt::Display for Functional {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.node {
            Node::Counit => write!(out, "eps"),
            Node::Lp(i, j) => write!(out, "Lp[{}][{}]", i + 1, j + 1),
            Node::Lm(i, j) => write!(out, "Lm[{}][{}]", i + 1, j + 1),
            Node::Scale(c, f) => write!(out, "{}*({})", crate::ncalg::scalar_factor(c), f),
            Node::Sum(fs) => {
                if fs.is_empty() {
                    return write!(out, "0");
                }
                let parts: Vec<String> = fs.iter().map(|f| f.to_string()).collect();
                write!(out, "{}", parts.join(" + "))
            }
            Node::Conv(f, g) => write!(out, "conv({f}, {g})"),
            Node::Twist(Twist::S, f) => write!(out, "twist(S, {f})"),
            Node::Twist(Twist::SInv, f) => write!(out, "twist(Sinv, {f})"),
        }
    }
}

type RepKey = (bool, Option<Twist>, Word);

/// Evaluator of functionals on an FRT instance, with per-word memoization.
pub struct Dual {
    alg: Arc<Algebra>,
    n: usize,
    rep_plus: Vec<Matrix>,
    rep_minus: Vec<Matrix>,
    rep_memo: RwLock<HashMap<RepKey, Arc<Matrix>>>,
    memo: RwLock<HashMap<(u64, Word), QScalar>>,
}

impl fmt::Debug for Dual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Dual").field("n", &self.n).finish_non_exhaustive()
    }
}

impl Dual {
    /// Pairings `⟨L⁺^i_j, T^k_l⟩ = R^{ki}_{lj}` and `⟨L⁻^i_j, T^k_l⟩ = (R⁻¹)^{ik}_{jl}`,
    /// extended to the determinant through its defining expression.
    pub fn new(alg: Arc<Algebra>) -> Result<Dual, DualError> {
        let frt = alg.frt().ok_or(DualError::NotFrt)?;
        let n = frt.n;
        let rmat = Matrix::from_rows(frt.r.clone());
        let rinv = rmat.inverse().ok_or(DualError::Scalar(ScalarError::DivisionByZero))?;
        let ng = alg.num_generators();
        let mut plus = vec![None; ng];
        let mut minus = vec![None; ng];
        for k in 0..n {
            for l in 0..n {
                let g = frt.t[k][l] as usize;
                plus[g] = Some(Matrix::from_fn(n, n, |i, j| rmat[(k * n + i, l * n + j)].clone()));
                minus[g] = Some(Matrix::from_fn(n, n, |i, j| rinv[(i * n + k, j * n + l)].clone()));
            }
        }
        // The stored det_expr is rewritten and may mention det itself.
        let det_terms = alg
            .config()
            .frt
            .as_ref()
            .map(|c| c.det_expr.clone())
            .unwrap_or_default();
        let on_terms = |reps: &Vec<Option<Matrix>>| -> Result<Option<Matrix>, DualError> {
            let mut acc = Matrix::zeros(n, n);
            for t in &det_terms {
                let c: QScalar = t.coeff.parse()?;
                let mut m = Matrix::identity(n);
                for name in &t.word {
                    let g = alg.generator(name).map_err(|_| DualError::NoPairing(name.clone()))?;
                    match reps[g as usize].as_ref() {
                        Some(r) => m = m.mul(r),
                        None => return Ok(None),
                    }
                }
                acc = acc.add(&m.scale(&c));
            }
            Ok(Some(acc))
        };
        for reps in [&mut plus, &mut minus] {
            let det = on_terms(reps)?.ok_or_else(|| DualError::NoPairing(alg.name(frt.det).to_string()))?;
            let det_inv = det.inverse().ok_or(DualError::Scalar(ScalarError::DivisionByZero))?;
            reps[frt.det as usize] = Some(det);
            reps[frt.det_inv as usize] = Some(det_inv);
        }
        let collect = |reps: Vec<Option<Matrix>>| -> Result<Vec<Matrix>, DualError> {
            reps.into_iter()
                .enumerate()
                .map(|(g, m)| m.ok_or_else(|| DualError::NoPairing(alg.name(g as Gen).to_string())))
                .collect()
        };
        let rep_plus = collect(plus)?;
        let rep_minus = collect(minus)?;
        Ok(Dual {
            alg,
            n,
            rep_plus,
            rep_minus,
            rep_memo: RwLock::new(HashMap::new()),
            memo: RwLock::new(HashMap::new()),
        })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    /// Size of the L± matrices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Matrix of `L⁺` (or `L⁻`) on a generator.
    pub fn generator_rep(&self, plus: bool, g: Gen) -> &Matrix {
        if plus {
            &self.rep_plus[g as usize]
        } else {
            &self.rep_minus[g as usize]
        }
    }

    /// Matrix of `L^i_j(x)`, optionally precomposed with S or S⁻¹.
    pub fn rep_word(&self, plus: bool, twist: Option<Twist>, w: &Word) -> Arc<Matrix> {
        if w.is_empty() {
            return Arc::new(Matrix::identity(self.n));
        }
        let key = (plus, twist, w.clone());
        if let Some(m) = self.rep_memo.read().unwrap().get(&key) {
            return m.clone();
        }
        let m = match twist {
            None => {
                let mut m = Matrix::identity(self.n);
                for &g in w.gens() {
                    m = m.mul(self.generator_rep(plus, g));
                }
                m
            }
            Some(t) => {
                let img = match t {
                    Twist::S => self.alg.antipode_word(w),
                    Twist::SInv => self.alg.antipode_inv_word(w),
                };
                let mut acc = Matrix::zeros(self.n, self.n);
                for (u, c) in img.terms() {
                    acc = acc.add(&self.rep_word(plus, None, u).scale(c));
                }
                acc
            }
        };
        let arc = Arc::new(m);
        self.rep_memo.write().unwrap().insert(key, arc.clone());
        arc
    }

    pub fn validate(&self, f: &Functional) -> Result<(), DualError> {
        let m = f.max_index();
        if m > self.n {
            return Err(DualError::IndexOutOfRange { index: m, dim: self.n });
        }
        Ok(())
    }

    pub fn eval_word(&self, f: &Functional, w: &Word) -> QScalar {
        match &*f.node {
            Node::Counit => return self.alg.counit_word(w),
            Node::Lp(i, j) => return self.rep_word(true, None, w)[(*i, *j)].clone(),
            Node::Lm(i, j) => return self.rep_word(false, None, w)[(*i, *j)].clone(),
            Node::Scale(c, g) => return c * &self.eval_word(g, w),
            Node::Sum(fs) => return fs.iter().map(|g| self.eval_word(g, w)).sum(),
            Node::Twist(t, g) => match &*g.node {
                Node::Lp(i, j) => return self.rep_word(true, Some(*t), w)[(*i, *j)].clone(),
                Node::Lm(i, j) => return self.rep_word(false, Some(*t), w)[(*i, *j)].clone(),
                _ => {}
            },
            Node::Conv(..) => {}
        }
        let key = (f.id, w.clone());
        if let Some(v) = self.memo.read().unwrap().get(&key) {
            return v.clone();
        }
        let v = match &*f.node {
            Node::Conv(g, h) => {
                let mut acc = QScalar::zero();
                for (k, c) in self.alg.coproduct_word(w).terms() {
                    let a = self.eval_word(g, &k[0]);
                    if a.is_zero() {
                        continue;
                    }
                    let b = self.eval_word(h, &k[1]);
                    acc += &(c * &(a * b));
                }
                acc
            }
            Node::Twist(t, g) => {
                let img = match t {
                    Twist::S => self.alg.antipode_word(w),
                    Twist::SInv => self.alg.antipode_inv_word(w),
                };
                self.eval(g, &img)
            }
            _ => unreachable!(),
        };
        self.memo.write().unwrap().insert(key, v.clone());
        v
    }

    pub fn eval(&self, f: &Functional, x: &AlgebraElement) -> QScalar {
        let mut acc = QScalar::zero();
        for (w, c) in x.terms() {
            let v = self.eval_word(f, w);
            if !v.is_zero() {
                acc += &(c * &v);
            }
        }
        acc
    }

    pub fn try_eval(&self, f: &Functional, x: &AlgebraElement) -> Result<QScalar, DualError> {
        self.validate(f)?;
        Ok(self.eval(f, x))
    }

    /// `f * a = a₁ f(a₂)`
    pub fn left_conv(&self, f: &Functional, a: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (w, c) in a.terms() {
            for (k, kc) in self.alg.coproduct_word(w).terms() {
                let v = self.eval_word(f, &k[1]);
                if v.is_zero() {
                    continue;
                }
                out.add_term(k[0].clone(), &(c * kc) * &v);
            }
        }
        out
    }

    /// `a * f = f(a₁) a₂`
    pub fn right_conv(&self, f: &Functional, a: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (w, c) in a.terms() {
            for (k, kc) in self.alg.coproduct_word(w).terms() {
                let v = self.eval_word(f, &k[0]);
                if v.is_zero() {
                    continue;
                }
                out.add_term(k[1].clone(), &(c * kc) * &v);
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// χ divided by `q - q⁻¹`
    Lambda,
    Raw,
}

impl std::str::FromStr for Normalization {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "lambda" => Ok(Normalization::Lambda),
            "raw" => Ok(Normalization::Raw),
            _ => Err(format!("unknown normalization `{s}` (expected lambda or raw)")),
        }
    }
}

/// χ and f on the flattened double index `I = (i₁, i₂) ↦ n·i₁ + i₂`.
#[derive(Debug, Clone)]
pub struct BasisFunctionals {
    pub dim: usize,
    pub n: usize,
    pub chi: Vec<Functional>,
    pub f: Vec<Vec<Functional>>,
    pub normalization: Normalization,
}

impl BasisFunctionals {
    /// Splits a flat index into its pair.
    pub fn pair(&self, i: usize) -> (usize, usize) {
        (i / self.n, i % self.n)
    }

    /// `"i1,i2"` with indices from 1.
    pub fn label(&self, i: usize) -> String {
        let (a, b) = self.pair(i);
        format!("{},{}", a + 1, b + 1)
    }
}

/// `f_{I}^{J}` from `L⁺ · (L⁻ ∘ S)` and `χ_K` as the counit-subtracted
/// diagonal contraction.
pub fn build_f_chi(dual: &Dual, norm: Normalization) -> Result<BasisFunctionals, DualError> {
    let n = dual.n();
    let dim = n * n;
    let g = |k1: usize, l1: usize, l2: usize, k2: usize| {
        Functional::conv(
            &Functional::lp(k1, l1),
            &Functional::twist(Twist::S, &Functional::lm(l2, k2)),
        )
    };
    let mut f = Vec::with_capacity(dim);
    for i in 0..dim {
        let (i1, i2) = (i / n, i % n);
        let mut row = Vec::with_capacity(dim);
        for j in 0..dim {
            let (j1, j2) = (j / n, j % n);
            row.push(g(j1, i1, i2, j2));
        }
        f.push(row);
    }
    let scale = match norm {
        Normalization::Raw => QScalar::one(),
        Normalization::Lambda => {
            let lambda = match dual.algebra().specialized_at() {
                Some(q0) => QScalar::lambda().specialize_scalar(q0)?,
                None => QScalar::lambda(),
            };
            if lambda.is_zero() {
                let at = dual
                    .algebra()
                    .specialized_at()
                    .map(|x| x.to_string())
                    .unwrap_or_default();
                return Err(DualError::LambdaVanishes(at));
            }
            lambda.inv()?
        }
    };
    let mut chi = Vec::with_capacity(dim);
    for k in 0..dim {
        let (k1, k2) = (k / n, k % n);
        let mut parts = Vec::new();
        if k1 == k2 {
            parts.push(Functional::counit());
        }
        for j in 0..n {
            parts.push(g(k1, j, j, k2).neg());
        }
        chi.push(Functional::scale(scale.clone(), &Functional::sum(parts)));
    }
    Ok(BasisFunctionals {
        dim,
        n,
        chi,
        f,
        normalization: norm,
    })
}

/// Elements `x^j` with `χ_i(x^j) = δ_i^j` and `ε(x^j) = 0`.
#[derive(Debug, Clone)]
pub struct XBasis {
    pub x: Vec<AlgebraElement>,
}

/// Solves for the x-basis among centered T-generators `T^k_l - ε(T^k_l)`.
pub fn solve_x_basis(dual: &Dual, basis: &BasisFunctionals) -> Result<XBasis, DualError> {
    let alg = dual.algebra();
    let frt = alg.frt().ok_or(DualError::NotFrt)?;
    let n = frt.n;
    let centered: Vec<AlgebraElement> = (0..n * n)
        .map(|k| {
            let g = alg.gen_elem(frt.t[k / n][k % n]);
            let e = alg.counit(&g);
            &g - &AlgebraElement::scalar(e)
        })
        .collect();
    let c = Matrix::from_fn(basis.dim, centered.len(), |i, k| dual.eval(&basis.chi[i], &centered[k]));
    let inv = c.inverse().ok_or(DualError::XBasisSingular)?;
    let x = (0..basis.dim)
        .map(|j| {
            let mut e = AlgebraElement::zero();
            for (k, ck) in centered.iter().enumerate() {
                e.add_scaled(ck, &inv[(k, j)]);
            }
            e
        })
        .collect();
    Ok(XBasis { x })
}
