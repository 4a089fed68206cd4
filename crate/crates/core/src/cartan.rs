//! Contraction, Lie derivatives, operator commutation relations and the
//! Defect Index on the wedge algebra.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::calculus::{Calculus, OneForm, VectorField};
use crate::dual::Functional;
use crate::ncalg::AlgebraElement;
use crate::qscalar::QScalar;
use crate::wedge::{MultiIndex, TensorForm, TensorVector, Wedge, WedgeError};

#[derive(Debug, Error)]
pub enum CartanError {
    #[error(transparent)]
    Wedge(#[from] WedgeError),
    #[error("operator `{0}` is not supported here")]
    Unsupported(String),
    #[error("form is not homogeneous")]
    NotHomogeneous,
}

fn sign(p: usize) -> QScalar {
    if p.is_multiple_of(2) {
        QScalar::one()
    } else {
        QScalar::from_int(-1)
    }
}

/// Cartan calculus over a wedge algebra.
#[derive(Debug, Clone)]
pub struct Cartan {
    wedge: Arc<Wedge>,
}

impl Cartan {
    pub fn new(wedge: Arc<Wedge>) -> Cartan {
        Cartan { wedge }
    }

    pub fn wedge(&self) -> &Arc<Wedge> {
        &self.wedge
    }

    pub fn calculus(&self) -> &Arc<Calculus> {
        self.wedge.calculus()
    }

    pub fn dim(&self) -> usize {
        self.wedge.dim()
    }

    fn f(&self, i: usize, j: usize) -> &Functional {
        &self.calculus().basis().f[i][j]
    }

    fn chi(&self, i: usize) -> &Functional {
        &self.calculus().basis().chi[i]
    }

    /// `i_V(ϑ) = ⟨V, ϑ⟩`, computed on the preimage as `⟨V, 𝓘_{1…n} ϑ⟩`.
    pub fn contract(&self, v: &VectorField, x: &TensorForm) -> Result<TensorForm, CartanError> {
        let n = x.degree();
        if n == 0 {
            return Ok(TensorForm::zero(0));
        }
        let y = self.wedge.apply_matrix(self.wedge.braid().iota(n)?, x);
        Ok(self.wedge.general_bracket(&TensorVector::from_vector_field(v), &y))
    }

    /// `ℓ_V = i_V d + d i_V`
    pub fn lie(&self, v: &VectorField, x: &TensorForm) -> Result<TensorForm, CartanError> {
        let w = &self.wedge;
        let first = self.contract(v, &w.exterior_d(x)?)?;
        if x.degree() == 0 {
            return Ok(first);
        }
        Ok(first.add(&w.exterior_d(&self.contract(v, x)?)?))
    }

    /// `ℓ^R_{h_i}(τ) = τ * χ_i`
    pub fn lie_right(&self, i: usize, x: &TensorForm) -> TensorForm {
        self.right_conv(self.chi(i), x)
    }

    /// `f * ϑ = (id ⊗ f) Δ_R(ϑ)`
    pub fn left_conv(&self, f: &Functional, x: &TensorForm) -> TensorForm {
        let dual = self.calculus().dual();
        let mut out = TensorForm::zero(x.degree());
        for (k, t) in self.wedge.right_coaction_form(x) {
            let c = t.contract_slot(1, |w| dual.eval_word(f, w)).to_element();
            out.add_term(k, c);
        }
        out
    }

    /// `ϑ * f = (f ⊗ id) Δ_L(ϑ)`
    pub fn right_conv(&self, f: &Functional, x: &TensorForm) -> TensorForm {
        let dual = self.calculus().dual();
        let mut out = TensorForm::zero(x.degree());
        for (k, a) in x.coeffs() {
            out.add_term(k.clone(), dual.right_conv(f, a));
        }
        out
    }

    /// `Σ_i b^i (f_i^j * ϑ)` for each `j`, with `V = b^i t_i`.
    pub fn twisted(&self, v: &VectorField, x: &TensorForm) -> Vec<TensorForm> {
        let d = self.dim();
        (0..d)
            .map(|j| {
                let mut acc = TensorForm::zero(x.degree());
                for (i, b) in v.coeffs.iter().enumerate() {
                    if b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&self.wedge.left_mul(b, &self.left_conv(self.f(j, i), x)));
                }
                acc
            })
            .collect()
    }

    /// `DI_i^k(a) = d(M_i^j)(f_j^k * a) − (a * f_i^j) d(M_j^k)`
    pub fn defect_index(&self, i: usize, k: usize, a: &AlgebraElement) -> OneForm {
        let calc = self.calculus();
        let dual = calc.dual();
        let mut out = OneForm::zero(self.dim());
        for j in 0..self.dim() {
            let left = calc.right_multiply_form(&calc.differential(calc.m(i, j)), &dual.left_conv(self.f(k, j), a));
            let right = calc.left_multiply_form(&dual.right_conv(self.f(j, i), a), &calc.differential(calc.m(j, k)));
            out = &(&out + &left) - &right;
        }
        out
    }

    /// `f_i^l_k = χ_i(N^l_k)`
    pub fn structure_constant(&self, i: usize, l: usize, k: usize) -> QScalar {
        let calc = self.calculus();
        calc.dual().eval(self.chi(i), calc.n(l, k))
    }

    /// `(−1)^p`, exposed for callers building graded expressions.
    pub fn grading_sign(p: usize) -> QScalar {
        sign(p)
    }

    pub fn image(&self, x: &TensorForm) -> Result<TensorForm, CartanError> {
        Ok(self.wedge.image(x)?)
    }

    pub fn wedge_eq(&self, x: &TensorForm, y: &TensorForm) -> Result<bool, CartanError> {
        Ok(self.wedge.wedge_eq(x, y)?)
    }
}

pub type FormMap = BTreeMap<MultiIndex, AlgebraElement>;

/// First-order operators acting from the left on forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Op {
    /// exterior `d`
    D,
    /// `i_{t_j}`
    I(usize),
    /// `ℓ_{t_j}`
    L(usize),
    /// `t_j`, defined on functions only
    T(usize),
    /// left multiplication by a form
    Mul(TensorForm),
}

impl Op {
    pub fn degree(&self) -> isize {
        match self {
            Op::D => 1,
            Op::I(_) => -1,
            Op::L(_) | Op::T(_) => 0,
            Op::Mul(x) => x.degree() as isize,
        }
    }

    fn odd(&self) -> bool {
        self.degree().rem_euclid(2) == 1
    }

    fn reindex(&self, j: usize) -> Op {
        match self {
            Op::I(_) => Op::I(j),
            Op::L(_) => Op::L(j),
            Op::T(_) => Op::T(j),
            other => other.clone(),
        }
    }

    fn index(&self) -> Option<usize> {
        match self {
            Op::I(j) | Op::L(j) | Op::T(j) => Some(*j),
            _ => None,
        }
    }
}

/// Word key without form payloads; `None` if the word multiplies by a form.
pub fn word_key(w: &[Op]) -> Option<Vec<(u8, usize)>> {
    w.iter()
        .map(|op| match op {
            Op::D => Some((0, 0)),
            Op::I(j) => Some((1, *j)),
            Op::L(j) => Some((2, *j)),
            Op::T(j) => Some((3, *j)),
            Op::Mul(_) => None,
        })
        .collect()
}

/// `Σ ϑ_k W_k`: forms on the left, operator words on the right.
#[derive(Debug, Clone, Default)]
pub struct NormalForm {
    pub terms: Vec<(TensorForm, Vec<Op>)>,
}

/// `Σ c (X ⊗ Y)` in the braided tensor algebra of operators.
#[derive(Debug, Clone, Default)]
pub struct BraidedTensor {
    pub terms: Vec<(QScalar, Vec<Op>, Vec<Op>)>,
}

impl BraidedTensor {
    /// Coefficients keyed by (left word, right word); `None` if a form factor occurs.
    pub fn scalar_terms(&self) -> Option<BTreeMap<(Vec<(u8, usize)>, Vec<(u8, usize)>), QScalar>> {
        let mut out: BTreeMap<_, QScalar> = BTreeMap::new();
        for (c, x, y) in &self.terms {
            let key = (word_key(x)?, word_key(y)?);
            let e = out.entry(key).or_insert_with(QScalar::zero);
            *e = &*e + c;
        }
        out.retain(|_, v| !v.is_zero());
        Some(out)
    }
}

impl Cartan {
    /// `B̂_{ik}^{rs} = f_i^s(N^r_k)`
    pub fn b_hat(&self, i: usize, k: usize, r: usize, s: usize) -> QScalar {
        let d = self.dim();
        self.wedge.braid().b_hat[(k * d + i, s * d + r)].clone()
    }

    /// The operator acting on `x`.
    pub fn apply_op(&self, op: &Op, x: &TensorForm) -> Result<TensorForm, CartanError> {
        let calc = self.calculus();
        Ok(match op {
            Op::D => self.wedge.exterior_d(x)?,
            Op::I(j) => self.contract(&calc.t(*j), x)?,
            Op::L(j) => self.lie(&calc.t(*j), x)?,
            Op::T(j) => {
                if x.degree() != 0 {
                    return Err(CartanError::Unsupported(format!("t on a {}-form", x.degree())));
                }
                TensorForm::function(calc.apply_vector(&calc.t(*j), &x.coeff(&[])))
            }
            Op::Mul(y) => self.wedge.wedge(y, x)?,
        })
    }

    /// Rightmost operator acts first.
    pub fn apply_word(&self, word: &[Op], x: &TensorForm) -> Result<TensorForm, CartanError> {
        let mut cur = x.clone();
        for op in word.iter().rev() {
            cur = self.apply_op(op, &cur)?;
        }
        Ok(cur)
    }

    /// `op □ x`: `d □ ϑ = (−1)^p ϑ d`, `i_{t_j} □ ϑ = (−1)^p (f_j^k * ϑ) i_{t_k}`,
    /// `ℓ_{t_j} □ ϑ = (f_j^k * ϑ) ℓ_{t_k}`, `t_j □ a = (f_j^k * a) t_k`.
    pub fn pass_op(&self, op: &Op, x: &TensorForm) -> Result<Vec<(TensorForm, Op)>, CartanError> {
        let p = x.degree();
        Ok(match op {
            Op::D => vec![(x.scale(&sign(p)), Op::D)],
            Op::Mul(_) => vec![],
            Op::I(j) | Op::L(j) | Op::T(j) => {
                if matches!(op, Op::T(_)) && p != 0 {
                    return Err(CartanError::Unsupported(format!("t on a {p}-form")));
                }
                let sg = if matches!(op, Op::I(_)) {
                    sign(p)
                } else {
                    QScalar::one()
                };
                (0..self.dim())
                    .map(|k| (self.left_conv(self.f(k, *j), x).scale(&sg), op.reindex(k)))
                    .filter(|(y, _)| !y.is_zero())
                    .collect()
            }
        })
    }

    fn pass_word(&self, word: &[Op], x: &TensorForm) -> Result<Vec<(TensorForm, Vec<Op>)>, CartanError> {
        let mut cur = vec![(x.clone(), Vec::new())];
        for op in word.iter().rev() {
            let mut next = Vec::new();
            for (y, w) in &cur {
                for (z, op2) in self.pass_op(op, y)? {
                    let mut w2 = vec![op2];
                    w2.extend_from_slice(w);
                    next.push((z, w2));
                }
            }
            cur = next;
        }
        Ok(cur)
    }

    /// Rewrites `word · ϑ` into `Σ ϑ_k W_k` with the commutation relations
    /// `D ϑ = D(ϑ) + D □ ϑ`.
    pub fn commutation_normal_form(&self, word: &[Op], x: &TensorForm) -> Result<NormalForm, CartanError> {
        let mut cur = vec![(x.clone(), Vec::new())];
        for op in word.iter().rev() {
            let mut next = Vec::new();
            for (y, w) in &cur {
                let acted = self.apply_op(op, y)?;
                if !acted.is_zero() {
                    next.push((acted, w.clone()));
                }
                for (z, op2) in self.pass_op(op, y)? {
                    let mut w2 = vec![op2];
                    w2.extend_from_slice(w);
                    next.push((z, w2));
                }
            }
            cur = next;
        }
        Ok(NormalForm { terms: cur })
    }

    /// `(1 ⊗ y)(x ⊗ 1) = Σ c (x' ⊗ y')`
    fn braid_pair(&self, y: &Op, x: &Op) -> Vec<(QScalar, Op, Op)> {
        match (y, x) {
            (_, Op::Mul(psi)) => {
                let odd = y.odd() && psi.degree() % 2 == 1;
                let sg = if odd { QScalar::from_int(-1) } else { QScalar::one() };
                match y.index() {
                    None => vec![(sg, x.clone(), y.clone())],
                    Some(j) => (0..self.dim())
                        .map(|l| (sg.clone(), Op::Mul(self.left_conv(self.f(l, j), psi)), y.reindex(l)))
                        .filter(|(_, m, _)| !matches!(m, Op::Mul(z) if z.is_zero()))
                        .collect(),
                }
            }
            (Op::Mul(_), _) => vec![(QScalar::one(), x.clone(), y.clone())],
            (Op::D, _) | (_, Op::D) => {
                let sg = if y.odd() && x.odd() {
                    QScalar::from_int(-1)
                } else {
                    QScalar::one()
                };
                vec![(sg, x.clone(), y.clone())]
            }
            _ => {
                let (i, j) = (y.index().unwrap(), x.index().unwrap());
                let odd = y.odd() && x.odd();
                let mut out = Vec::new();
                for r in 0..self.dim() {
                    for s in 0..self.dim() {
                        let mut c = self.b_hat(i, j, r, s);
                        if c.is_zero() {
                            continue;
                        }
                        if odd {
                            c = -c;
                        }
                        out.push((c, x.reindex(r), y.reindex(s)));
                    }
                }
                out
            }
        }
    }

    /// `(1 ⊗ Y)(x ⊗ 1)` by braiding `x` leftwards through `Y`.
    fn braid_through(&self, ys: &[Op], x: &Op) -> Vec<(QScalar, Op, Vec<Op>)> {
        let Some((last, rest)) = ys.split_last() else {
            return vec![(QScalar::one(), x.clone(), Vec::new())];
        };
        let mut out = Vec::new();
        for (c, x1, y1) in self.braid_pair(last, x) {
            for (c2, x2, mut ys2) in self.braid_through(rest, &x1) {
                ys2.push(y1.clone());
                out.push((&c * &c2, x2, ys2));
            }
        }
        out
    }

    /// `δ(A₁ ⋯ Aₙ) = δ(A₁) ⋯ δ(Aₙ)` with `δ(A) = A ⊗ 1 + 1 ⊗ A` (`A ⊗ 1` for
    /// form multiplications), multiplied with the operator braidings.
    pub fn delta(&self, word: &[Op]) -> BraidedTensor {
        let mut cur = vec![(QScalar::one(), Vec::new(), Vec::new())];
        for op in word {
            let mut next = Vec::new();
            for (c, xs, ys) in &cur {
                for (c2, x2, ys2) in self.braid_through(ys, op) {
                    let mut xs2 = xs.clone();
                    xs2.push(x2);
                    next.push((c * &c2, xs2, ys2));
                }
                if !matches!(op, Op::Mul(_)) {
                    let mut ys2 = ys.clone();
                    ys2.push(op.clone());
                    next.push((c.clone(), xs.clone(), ys2));
                }
            }
            cur = next;
        }
        BraidedTensor { terms: cur }
    }

    /// `Σ c (X ⊗ Y) □ ϑ = Σ c X(Y □ ϑ)`
    pub fn box_apply(&self, t: &BraidedTensor, x: &TensorForm) -> Result<NormalForm, CartanError> {
        let mut out = NormalForm::default();
        for (c, xs, ys) in &t.terms {
            for (y, w) in self.pass_word(ys, x)? {
                let z = self.apply_word(xs, &y)?.scale(c);
                if !z.is_zero() {
                    out.terms.push((z, w));
                }
            }
        }
        Ok(out)
    }

    /// `δ(i_V)` for `V = b^i t_i`.
    pub fn delta_contract(&self, v: &VectorField) -> BraidedTensor {
        let mut out = BraidedTensor::default();
        for (i, b) in v.coeffs.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let word = [Op::Mul(TensorForm::function(b.clone())), Op::I(i)];
            out.terms.extend(self.delta(&word).terms);
        }
        out
    }

    /// Braided product of two operator tensors.
    pub fn tensor_product(&self, a: &BraidedTensor, b: &BraidedTensor) -> BraidedTensor {
        let mut out = BraidedTensor::default();
        for (c1, x1, y1) in &a.terms {
            for (c2, x2, y2) in &b.terms {
                // (X₁ ⊗ Y₁)(X₂ ⊗ Y₂): braid each op of X₂ through Y₁ in turn
                let mut partial = vec![(c1 * c2, x1.clone(), y1.clone())];
                for op in x2 {
                    let mut next = Vec::new();
                    for (c, xs, ys) in &partial {
                        for (c3, x3, ys3) in self.braid_through(ys, op) {
                            let mut xs3 = xs.clone();
                            xs3.push(x3);
                            next.push((c * &c3, xs3, ys3));
                        }
                    }
                    partial = next;
                }
                for (c, xs, mut ys) in partial {
                    ys.extend_from_slice(y2);
                    out.terms.push((c, xs, ys));
                }
            }
        }
        out
    }

    /// `δ(ℓ_V) = δi_V δd + δd δi_V`
    pub fn delta_lie(&self, v: &VectorField) -> BraidedTensor {
        let di = self.delta_contract(v);
        let dd = self.delta(&[Op::D]);
        let mut out = self.tensor_product(&di, &dd);
        out.terms.extend(self.tensor_product(&dd, &di).terms);
        out
    }

    /// Equality of normal forms after `ℓ_{t_j} → i_{t_j} d + d i_{t_j}`,
    /// comparing form coefficients by W-image.
    pub fn normal_eq(&self, a: &NormalForm, b: &NormalForm) -> Result<bool, CartanError> {
        Ok(self.normal_images(a)? == self.normal_images(b)?)
    }

    /// W-images of the form coefficients, keyed by operator word.
    pub fn normal_images(&self, a: &NormalForm) -> Result<BTreeMap<Vec<(u8, usize)>, TensorForm>, CartanError> {
        let mut out: BTreeMap<Vec<(u8, usize)>, TensorForm> = BTreeMap::new();
        for (x, w) in &a.terms {
            let key = word_key(w).ok_or_else(|| CartanError::Unsupported("form factor in word".into()))?;
            for k in expand_lie(&key) {
                let slot = out.entry(k).or_insert_with(|| TensorForm::zero(x.degree()));
                if slot.degree() != x.degree() {
                    return Err(CartanError::NotHomogeneous);
                }
                *slot = slot.add(x);
            }
        }
        let mut imgs = BTreeMap::new();
        for (k, x) in out {
            let img = self.wedge.image(&x)?;
            if !img.is_zero() {
                imgs.insert(k, img);
            }
        }
        Ok(imgs)
    }

    /// `Σ ϑ_k ∧ W_k(ψ)`
    pub fn apply_normal_form(&self, a: &NormalForm, psi: &TensorForm) -> Result<TensorForm, CartanError> {
        let mut acc: Option<TensorForm> = None;
        for (x, w) in &a.terms {
            let y = self.wedge.wedge(x, &self.apply_word(w, psi)?)?;
            acc = Some(match acc {
                Some(s) if s.degree() == y.degree() => s.add(&y),
                Some(s) if s.is_zero() => y,
                Some(s) if y.is_zero() => s,
                Some(_) => return Err(CartanError::NotHomogeneous),
                None => y,
            });
        }
        Ok(acc.unwrap_or_else(|| TensorForm::zero(psi.degree())))
    }

    pub fn fmt_op(&self, op: &Op) -> String {
        let b = self.calculus().basis();
        match op {
            Op::D => "d".into(),
            Op::I(j) => format!("i[{}]", b.label(*j)),
            Op::L(j) => format!("lie[{}]", b.label(*j)),
            Op::T(j) => format!("t[{}]", b.label(*j)),
            Op::Mul(x) => format!("({})", self.wedge.fmt_form(x)),
        }
    }

    pub fn fmt_normal_form(&self, a: &NormalForm) -> String {
        if a.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = a
            .terms
            .iter()
            .map(|(x, w)| {
                let ops: Vec<String> = w.iter().map(|o| self.fmt_op(o)).collect();
                if ops.is_empty() {
                    format!("[{}]", self.wedge.fmt_form(x))
                } else {
                    format!("[{}] {}", self.wedge.fmt_form(x), ops.join(" "))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

fn expand_lie(key: &[(u8, usize)]) -> Vec<Vec<(u8, usize)>> {
    let mut out = vec![Vec::new()];
    for &(k, j) in key {
        if k == 2 {
            let mut next = Vec::new();
            for w in &out {
                let mut a = w.clone();
                a.extend_from_slice(&[(1, j), (0, 0)]);
                let mut b = w.clone();
                b.extend_from_slice(&[(0, 0), (1, j)]);
                next.push(a);
                next.push(b);
            }
            out = next;
        } else {
            for w in &mut out {
                w.push((k, j));
            }
        }
    }
    out
}
