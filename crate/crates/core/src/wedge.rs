//! Tensor fields, the braiding σ̂, the antisymmetrizers W and the exterior
//! differential.
//!
//! Exterior forms are carried by a preimage in Γ^⊗n; the form itself is the
//! W-image of that preimage, so `ϑ ∧ ϑ'` is the tensor product of preimages
//! and two forms are equal when their images agree.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::calculus::{Calculus, OneForm, VectorField};
use crate::linalg::{Matrix, SparseMatrix};
use crate::ncalg::{AlgebraElement, TensorElement};
use crate::qscalar::QScalar;

pub const DEFAULT_WEDGE_CAP: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WedgeError {
    #[error("braid equation fails at entry ({0}, {1})")]
    BraidEquation(usize, usize),
    #[error("braiding is not invertible")]
    SingularBraiding,
    #[error("Cartan-Maurer tensor for index {0} is not a 2-form")]
    MaurerCartan(usize),
    #[error("degree {degree} exceeds the wedge degree cap {cap}")]
    DegreeCap { degree: usize, cap: usize },
}

pub type MultiIndex = Vec<u8>;

/// `τ = ω^{i₁} ⊗ … ⊗ ω^{iₙ} a_{i₁…iₙ}`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorForm {
    degree: usize,
    coeffs: BTreeMap<MultiIndex, AlgebraElement>,
}

/// `v = b^{i₁…iₚ} t_{i₁} ⊗ … ⊗ t_{iₚ}`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorVector {
    degree: usize,
    coeffs: BTreeMap<MultiIndex, AlgebraElement>,
}

macro_rules! tensor_common {
    ($t:ident) => {
        impl $t {
            pub fn zero(degree: usize) -> Self {
                $t {
                    degree,
                    coeffs: BTreeMap::new(),
                }
            }

            pub fn term(idx: &[u8], c: AlgebraElement) -> Self {
                let mut x = $t::zero(idx.len());
                x.add_term(idx.to_vec(), c);
                x
            }

            /// The basis tensor with unit coefficient.
            pub fn basis(idx: &[u8]) -> Self {
                $t::term(idx, AlgebraElement::one())
            }

            pub fn degree(&self) -> usize {
                self.degree
            }

            pub fn coeffs(&self) -> &BTreeMap<MultiIndex, AlgebraElement> {
                &self.coeffs
            }

            pub fn coeff(&self, idx: &[u8]) -> AlgebraElement {
                self.coeffs.get(idx).cloned().unwrap_or_else(AlgebraElement::zero)
            }

            pub fn is_zero(&self) -> bool {
                self.coeffs.is_empty()
            }

            pub fn add_term(&mut self, idx: MultiIndex, c: AlgebraElement) {
                assert_eq!(idx.len(), self.degree, "tensor degree mismatch");
                if c.is_zero() {
                    return;
                }
                let slot = self.coeffs.entry(idx).or_insert_with(AlgebraElement::zero);
                *slot = &*slot + &c;
                if slot.is_zero() {
                    self.coeffs.retain(|_, v| !v.is_zero());
                }
            }

            pub fn add(&self, o: &$t) -> $t {
                let mut out = self.clone();
                if self.degree != o.degree && self.is_zero() {
                    out = $t::zero(o.degree);
                }
                for (k, v) in &o.coeffs {
                    out.add_term(k.clone(), v.clone());
                }
                out
            }

            pub fn sub(&self, o: &$t) -> $t {
                self.add(&o.neg())
            }

            pub fn neg(&self) -> $t {
                self.scale(&QScalar::from_int(-1))
            }

            pub fn scale(&self, c: &QScalar) -> $t {
                let mut out = $t::zero(self.degree);
                for (k, v) in &self.coeffs {
                    out.add_term(k.clone(), v.scale(c));
                }
                out
            }
        }
    };
}

tensor_common!(TensorForm);
tensor_common!(TensorVector);

impl TensorForm {
    /// Degree-0 form.
    pub fn function(a: AlgebraElement) -> Self {
        TensorForm::term(&[], a)
    }

    pub fn from_one_form(rho: &OneForm) -> Self {
        let mut x = TensorForm::zero(1);
        for (i, c) in rho.coeffs.iter().enumerate() {
            x.add_term(vec![i as u8], c.clone());
        }
        x
    }

    pub fn to_one_form(&self, dim: usize) -> OneForm {
        assert_eq!(self.degree, 1);
        OneForm {
            coeffs: (0..dim).map(|i| self.coeff(&[i as u8])).collect(),
        }
    }
}

impl TensorVector {
    pub fn from_vector_field(v: &VectorField) -> Self {
        let mut x = TensorVector::zero(1);
        for (i, c) in v.coeffs.iter().enumerate() {
            x.add_term(vec![i as u8], c.clone());
        }
        x
    }
}

fn flat(idx: &[u8], d: usize) -> usize {
    idx.iter().fold(0, |acc, &i| acc * d + i as usize)
}

fn unflat(mut x: usize, d: usize, n: usize) -> MultiIndex {
    let mut out = vec![0u8; n];
    for s in (0..n).rev() {
        out[s] = (x % d) as u8;
        x /= d;
    }
    out
}

/// σ̂, its inverse and the antisymmetrizer tensors up to the degree cap.
#[derive(Debug, Clone)]
pub struct BraidData {
    pub dim: usize,
    /// Row `(k,l)` (lower), column `(i,j)` (upper): `σ̂_{kl}^{ij} = f_k^j(M_l^i)`.
    pub sigma: Matrix,
    /// `σ̂⁻¹` by exact inversion.
    pub sigma_inv: Matrix,
    /// `B̂_{ik}^{rs} = f_k^r(N^s_i)`, independent of the inversion.
    pub b_hat: Matrix,
    cap: usize,
    w: Vec<SparseMatrix>,
    iota: Vec<SparseMatrix>,
}

impl BraidData {
    pub fn cap(&self) -> usize {
        self.cap
    }

    /// `W_{1…n}`, rows indexed by the lower multi-index.
    pub fn w(&self, n: usize) -> Result<&SparseMatrix, WedgeError> {
        self.w.get(n).ok_or(WedgeError::DegreeCap {
            degree: n,
            cap: self.cap,
        })
    }

    /// `𝓘_{1…n}`
    pub fn iota(&self, n: usize) -> Result<&SparseMatrix, WedgeError> {
        self.iota.get(n).ok_or(WedgeError::DegreeCap {
            degree: n,
            cap: self.cap,
        })
    }

    /// `σ̂_{k,k+1}` on `n` slots, `k` from 0.
    pub fn sigma_at(&self, n: usize, k: usize) -> SparseMatrix {
        SparseMatrix::embed(&SparseMatrix::from_dense(&self.sigma), self.dim, n, k)
    }

    /// `σ̂₁₂ σ̂₂₃ ⋯ σ̂_{k,k+1}` on `n` slots (identity for k = 0).
    pub fn sigma_chain(&self, n: usize, k: usize) -> SparseMatrix {
        let mut acc = SparseMatrix::identity(self.dim.pow(n as u32));
        for s in 0..k {
            acc = acc.mul(&self.sigma_at(n, s));
        }
        acc
    }

    /// `𝓘` on `len` slots, embedded at `start` among `n` slots.
    pub fn iota_on(&self, n: usize, start: usize, len: usize) -> Result<SparseMatrix, WedgeError> {
        Ok(SparseMatrix::embed(self.iota(len)?, self.dim, n, start))
    }

    /// `W` on `len` slots, embedded at `start` among `n` slots.
    pub fn w_on(&self, n: usize, start: usize, len: usize) -> Result<SparseMatrix, WedgeError> {
        Ok(SparseMatrix::embed(self.w(len)?, self.dim, n, start))
    }

    /// Builds `𝓘_{1…n}` from the alternating sum of σ̂ chains.
    fn iota_from_sum(&self, n: usize) -> SparseMatrix {
        let size = self.dim.pow(n as u32);
        let mut acc = SparseMatrix::zero(size);
        let mut chain = SparseMatrix::identity(size);
        for k in 0..n {
            if k > 0 {
                chain = chain.mul(&self.sigma_at(n, k - 1));
            }
            let sign = if k % 2 == 0 {
                QScalar::one()
            } else {
                QScalar::from_int(-1)
            };
            acc = acc.add(&chain.scale(&sign));
        }
        acc
    }
}

/// σ̂ with its braid-equation check, B̂ by both routes, and W, 𝓘 up to `cap`.
pub fn build_braid(calc: &Calculus, cap: usize) -> Result<BraidData, WedgeError> {
    let d = calc.dim();
    let dual = calc.dual();
    let f = &calc.basis().f;
    let sigma = Matrix::from_fn(d * d, d * d, |r, c| {
        let (k, l, i, j) = (r / d, r % d, c / d, c % d);
        dual.eval(&f[j][k], calc.m(l, i))
    });
    let b_hat = Matrix::from_fn(d * d, d * d, |r, c| {
        let (i, k, rr, s) = (r / d, r % d, c / d, c % d);
        dual.eval(&f[rr][k], calc.n(s, i))
    });

    let s12 = SparseMatrix::embed(&SparseMatrix::from_dense(&sigma), d, 3, 0);
    let s23 = SparseMatrix::embed(&SparseMatrix::from_dense(&sigma), d, 3, 1);
    let lhs = s12.mul(&s23).mul(&s12);
    let rhs = s23.mul(&s12).mul(&s23);
    if lhs != rhs {
        let (a, b) = lhs.to_dense().first_difference(&rhs.to_dense()).unwrap_or((0, 0));
        return Err(WedgeError::BraidEquation(a, b));
    }
    let sigma_inv = sigma.inverse().ok_or(WedgeError::SingularBraiding)?;

    let mut bd = BraidData {
        dim: d,
        sigma,
        sigma_inv,
        b_hat,
        cap,
        w: Vec::new(),
        iota: Vec::new(),
    };
    bd.w.push(SparseMatrix::identity(1));
    bd.iota.push(SparseMatrix::identity(1));
    for n in 1..=cap {
        let iota = bd.iota_from_sum(n);
        let w = if n == 1 {
            SparseMatrix::identity(d)
        } else {
            SparseMatrix::embed(&bd.w[n - 1], d, n, 1).mul(&iota)
        };
        bd.iota.push(iota);
        bd.w.push(w);
    }
    Ok(bd)
}

/// Exterior algebra operations on top of a [`Calculus`].
#[derive(Debug)]
pub struct Wedge {
    calc: Arc<Calculus>,
    braid: BraidData,
    dw: Vec<TensorForm>,
}

impl Wedge {
    /// `dω^i` is the 2-form whose W-image is `ω^a ⊗ ω^b χ_a(M_b^i)`.
    pub fn new(calc: Arc<Calculus>, cap: usize) -> Result<Wedge, WedgeError> {
        let braid = build_braid(&calc, cap.max(2))?;
        let d = calc.dim();
        let w2 = braid.w(2)?.to_dense();
        let mut dw = Vec::with_capacity(d);
        for (i, target) in maurer_cartan(&calc).iter().enumerate() {
            let b: Vec<QScalar> = (0..d * d)
                .map(|k| target.coeff(&unflat(k, d, 2)).as_scalar().unwrap_or_else(QScalar::zero))
                .collect();
            let y = w2.solve(&b).ok_or(WedgeError::MaurerCartan(i))?;
            let mut pre = TensorForm::zero(2);
            for (k, v) in y.into_iter().enumerate() {
                pre.add_term(unflat(k, d, 2), AlgebraElement::scalar(v));
            }
            dw.push(pre);
        }
        Ok(Wedge { calc, braid, dw })
    }

    /// Custom preimages for dω^i.
    pub fn from_parts(calc: Arc<Calculus>, braid: BraidData, dw: Vec<TensorForm>) -> Wedge {
        Wedge { calc, braid, dw }
    }

    pub fn calculus(&self) -> &Arc<Calculus> {
        &self.calc
    }

    pub fn braid(&self) -> &BraidData {
        &self.braid
    }

    pub fn dim(&self) -> usize {
        self.calc.dim()
    }

    /// Preimage of `dω^i`.
    pub fn d_omega(&self, i: usize) -> &TensorForm {
        &self.dw[i]
    }

    fn check_degree(&self, n: usize) -> Result<(), WedgeError> {
        if n > self.braid.cap {
            return Err(WedgeError::DegreeCap {
                degree: n,
                cap: self.braid.cap,
            });
        }
        Ok(())
    }

    pub fn omega(&self, i: usize) -> TensorForm {
        TensorForm::basis(&[i as u8])
    }

    pub fn right_mul(&self, tau: &TensorForm, a: &AlgebraElement) -> TensorForm {
        let alg = self.calc.algebra();
        let mut out = TensorForm::zero(tau.degree);
        for (k, c) in &tau.coeffs {
            out.add_term(k.clone(), alg.mul(c, a));
        }
        out
    }

    /// `a ω^{i₁} ⊗ … ⊗ ω^{iₙ} = ω^{l₁} ⊗ … ⊗ ω^{lₙ} (f_{iₙ,lₙ} * … * f_{i₁,l₁} * a)`
    pub fn left_mul(&self, a: &AlgebraElement, tau: &TensorForm) -> TensorForm {
        let alg = self.calc.algebra();
        let mut out = TensorForm::zero(tau.degree);
        for (idx, c) in &tau.coeffs {
            for (l, x) in self.pass_left(a, idx) {
                out.add_term(l, alg.mul(&x, c));
            }
        }
        out
    }

    /// Moves `a` to the right through `ω^{idx}`.
    fn pass_left(&self, a: &AlgebraElement, idx: &[u8]) -> Vec<(MultiIndex, AlgebraElement)> {
        let dual = self.calc.dual();
        let f = &self.calc.basis().f;
        let mut cur = vec![(Vec::new(), a.clone())];
        for &i in idx {
            let mut next = Vec::new();
            for (pre, x) in &cur {
                for l in 0..self.dim() {
                    let y = dual.left_conv(&f[i as usize][l], x);
                    if y.is_zero() {
                        continue;
                    }
                    let mut p = pre.clone();
                    p.push(l as u8);
                    next.push((p, y));
                }
            }
            cur = next;
        }
        cur
    }

    /// `τ ⊗ τ'`, which on preimages is also `τ ∧ τ'`.
    pub fn tensor(&self, x: &TensorForm, y: &TensorForm) -> TensorForm {
        let mut out = TensorForm::zero(x.degree + y.degree);
        for (i, a) in &x.coeffs {
            for (j, b) in &self.left_mul(a, y).coeffs {
                let mut k = i.clone();
                k.extend_from_slice(j);
                out.add_term(k, b.clone());
            }
        }
        out
    }

    pub fn wedge(&self, x: &TensorForm, y: &TensorForm) -> Result<TensorForm, WedgeError> {
        self.check_degree(x.degree + y.degree)?;
        Ok(self.tensor(x, y))
    }

    /// The W-image of a preimage: the form as an element of Γ^⊗n.
    pub fn image(&self, x: &TensorForm) -> Result<TensorForm, WedgeError> {
        Ok(self.apply_matrix(self.braid.w(x.degree)?, x))
    }

    /// Applies a numerical tensor on `Γ^⊗n` to the coefficient vector of `x`.
    pub fn apply_matrix(&self, w: &SparseMatrix, x: &TensorForm) -> TensorForm {
        let n = x.degree;
        let d = self.dim();
        let mut out = TensorForm::zero(n);
        let mut by_col: BTreeMap<usize, &AlgebraElement> = BTreeMap::new();
        for (k, c) in &x.coeffs {
            by_col.insert(flat(k, d), c);
        }
        for r in 0..w.size() {
            let mut acc = AlgebraElement::zero();
            for (c, v) in w.row(r) {
                if let Some(a) = by_col.get(c) {
                    acc.add_scaled(a, v);
                }
            }
            out.add_term(unflat(r, d, n), acc);
        }
        out
    }

    pub fn wedge_eq(&self, x: &TensorForm, y: &TensorForm) -> Result<bool, WedgeError> {
        if x.degree != y.degree {
            return Ok(x.is_zero() && y.is_zero());
        }
        Ok(self.image(x)? == self.image(y)?)
    }

    /// Exterior derivative on preimages:
    /// `d(ω^{i₁…iₙ} a) = Σ_s (−1)^{s} ω^{i₁…} ⊗ dω^{iₛ} ⊗ … a + (−1)^n ω^{i₁…iₙ} ⊗ da`.
    pub fn exterior_d(&self, x: &TensorForm) -> Result<TensorForm, WedgeError> {
        let n = x.degree;
        self.check_degree(n + 1)?;
        let mut out = TensorForm::zero(n + 1);
        for (idx, a) in &x.coeffs {
            for s in 0..n {
                let sign = if s % 2 == 0 {
                    QScalar::one()
                } else {
                    QScalar::from_int(-1)
                };
                let dw = &self.dw[idx[s] as usize];
                for (mid, c) in &dw.coeffs {
                    let mut k = idx[..s].to_vec();
                    k.extend_from_slice(mid);
                    k.extend_from_slice(&idx[s + 1..]);
                    let coef = self.calc.algebra().mul(c, a).scale(&sign);
                    out.add_term(k, coef);
                }
            }
            let da = TensorForm::from_one_form(&self.calc.differential(a));
            let sign = if n.is_multiple_of(2) {
                QScalar::one()
            } else {
                QScalar::from_int(-1)
            };
            let tail = TensorForm::basis(idx);
            out = out.add(&self.tensor(&tail, &da).scale(&sign));
        }
        Ok(out)
    }

    /// `⟨v, τ⟩` with the mirrored pairing `⟨t_{j₁}⊗…⊗t_{jₚ}, ω^{i₁}⊗…⟩ = δ^{i₁}_{jₚ}⋯δ^{iₚ}_{j₁}`.
    pub fn general_bracket(&self, v: &TensorVector, tau: &TensorForm) -> TensorForm {
        let p = v.degree;
        let n = tau.degree;
        if p > n {
            return TensorForm::zero(0);
        }
        let mut out = TensorForm::zero(n - p);
        for (j, b) in &v.coeffs {
            let mirrored: Vec<u8> = j.iter().rev().copied().collect();
            for (i, a) in &tau.coeffs {
                if i[..p] != mirrored[..] {
                    continue;
                }
                let rest = TensorForm::term(&i[p..], a.clone());
                let moved = self.left_mul(b, &rest);
                for (k, c) in moved.coeffs {
                    out.add_term(k, c);
                }
            }
        }
        out
    }

    /// `b v`
    pub fn vector_left_mul(&self, b: &AlgebraElement, v: &TensorVector) -> TensorVector {
        let alg = self.calc.algebra();
        let mut out = TensorVector::zero(v.degree);
        for (k, c) in &v.coeffs {
            out.add_term(k.clone(), alg.mul(b, c));
        }
        out
    }

    /// `v □ a`, passing `a` leftwards through each `t` with `t_j □ c = (f_{k,j} * c) t_k`.
    pub fn vector_right_mul(&self, v: &TensorVector, a: &AlgebraElement) -> TensorVector {
        let alg = self.calc.algebra();
        let dual = self.calc.dual();
        let f = &self.calc.basis().f;
        let mut out = TensorVector::zero(v.degree);
        for (idx, b) in &v.coeffs {
            let mut cur: Vec<(MultiIndex, AlgebraElement)> = vec![(Vec::new(), a.clone())];
            for &j in idx.iter().rev() {
                let mut next = Vec::new();
                for (suffix, x) in &cur {
                    for k in 0..self.dim() {
                        let y = dual.left_conv(&f[k][j as usize], x);
                        if y.is_zero() {
                            continue;
                        }
                        let mut s = vec![k as u8];
                        s.extend_from_slice(suffix);
                        next.push((s, y));
                    }
                }
                cur = next;
            }
            for (k, x) in cur {
                out.add_term(k, alg.mul(b, &x));
            }
        }
        out
    }

    pub fn vector_tensor(&self, x: &TensorVector, y: &TensorVector) -> TensorVector {
        let alg = self.calc.algebra();
        let mut out = TensorVector::zero(x.degree + y.degree);
        for (i, a) in &x.coeffs {
            // t_I □ b ⊗ t_J = t_I ⊗ b t_J, so move b^J through t_I to the left
            for (j, b) in &y.coeffs {
                let moved = self.vector_right_mul(&TensorVector::basis(i), b);
                for (k, c) in &moved.coeffs {
                    let mut key = k.clone();
                    key.extend_from_slice(j);
                    out.add_term(key, alg.mul(a, c));
                }
            }
        }
        out
    }

    /// Left coaction on Γ^⊗n: entry `I` holds `Σ x ⊗ y` for `Σ x ⊗ ω^I y`.
    pub fn left_coaction_form(&self, tau: &TensorForm) -> BTreeMap<MultiIndex, TensorElement> {
        let alg = self.calc.algebra();
        tau.coeffs.iter().map(|(k, a)| (k.clone(), alg.coproduct(a))).collect()
    }

    /// Right coaction on Γ^⊗n: entry `K` holds `Σ x ⊗ y` for `Σ ω^K x ⊗ y`.
    pub fn right_coaction_form(&self, tau: &TensorForm) -> BTreeMap<MultiIndex, TensorElement> {
        self.right_coaction(&tau.coeffs, tau.degree, true)
    }

    /// Left coaction on Ξ^⊗p: entry `J` holds `Σ x ⊗ y` for `Σ x ⊗ y t_J`.
    pub fn left_coaction_vector(&self, v: &TensorVector) -> BTreeMap<MultiIndex, TensorElement> {
        let alg = self.calc.algebra();
        v.coeffs.iter().map(|(k, a)| (k.clone(), alg.coproduct(a))).collect()
    }

    /// Right coaction on Ξ^⊗p: entry `K` holds `Σ x ⊗ y` for `Σ x t_K ⊗ y`.
    pub fn right_coaction_vector(&self, v: &TensorVector) -> BTreeMap<MultiIndex, TensorElement> {
        self.right_coaction(&v.coeffs, v.degree, false)
    }

    fn right_coaction(
        &self,
        coeffs: &BTreeMap<MultiIndex, AlgebraElement>,
        degree: usize,
        forms: bool,
    ) -> BTreeMap<MultiIndex, TensorElement> {
        let alg = self.calc.algebra();
        let d = self.dim();
        let one = AlgebraElement::one();
        let mut out: BTreeMap<MultiIndex, TensorElement> = BTreeMap::new();
        for (idx, a) in coeffs {
            let cop = alg.coproduct(a);
            for kf in 0..d.pow(degree as u32) {
                let k = unflat(kf, d, degree);
                let mut prod = AlgebraElement::one();
                for s in 0..degree {
                    let (ks, is) = (k[s] as usize, idx[s] as usize);
                    let e = if forms {
                        self.calc.m(ks, is)
                    } else {
                        self.calc.n(ks, is)
                    };
                    prod = alg.mul(&prod, e);
                    if prod.is_zero() {
                        break;
                    }
                }
                if prod.is_zero() {
                    continue;
                }
                let factor = TensorElement::pure(&[&one, &prod]);
                let term = if forms {
                    alg.tensor_mul(&factor, &cop)
                } else {
                    alg.tensor_mul(&cop, &factor)
                };
                let slot = out.entry(k).or_insert_with(|| TensorElement::zero(2));
                *slot = &*slot + &term;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    pub fn fmt_form(&self, x: &TensorForm) -> String {
        let alg = self.calc.algebra();
        let b = self.calc.basis();
        if x.degree == 0 {
            return alg.fmt(&x.coeff(&[]));
        }
        let parts: Vec<String> = x
            .coeffs
            .iter()
            .map(|(k, c)| {
                let om: Vec<String> = k.iter().map(|&i| format!("omega[{}]", b.label(i as usize))).collect();
                format!("tensor({}) * ({})", om.join(", "), alg.fmt(c))
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// `ω^a ⊗ ω^b χ_a(M_b^i)` for each i.
pub fn maurer_cartan(calc: &Calculus) -> Vec<TensorForm> {
    let d = calc.dim();
    let dual = calc.dual();
    let chi = &calc.basis().chi;
    (0..d)
        .map(|i| {
            let mut x = TensorForm::zero(2);
            for a in 0..d {
                for b in 0..d {
                    let v = dual.eval(&chi[a], calc.m(b, i));
                    x.add_term(vec![a as u8, b as u8], AlgebraElement::scalar(v));
                }
            }
            x
        })
        .collect()
}

/// `Σ W_{ij}^{kl} M_k^m M_l^n` and `Σ M_i^k M_j^l W_{kl}^{mn}` for every `(ij, mn)`.
pub fn wmm_sides(calc: &Calculus, w2: &SparseMatrix) -> Vec<(usize, usize, AlgebraElement, AlgebraElement)> {
    let d = calc.dim();
    let alg = calc.algebra();
    let mut out = Vec::new();
    for r in 0..d * d {
        for c in 0..d * d {
            let (i, j, m, n) = (r / d, r % d, c / d, c % d);
            let mut lhs = AlgebraElement::zero();
            for (&kl, w) in w2.row(r) {
                let (k, l) = (kl / d, kl % d);
                lhs.add_scaled(&alg.mul(calc.m(k, m), calc.m(l, n)), w);
            }
            let mut rhs = AlgebraElement::zero();
            for k in 0..d {
                for l in 0..d {
                    let w = w2.get(k * d + l, c);
                    if w.is_zero() {
                        continue;
                    }
                    rhs.add_scaled(&alg.mul(calc.m(i, k), calc.m(j, l)), &w);
                }
            }
            out.push((r, c, lhs, rhs));
        }
    }
    out
}
