//! First-order bicovariant calculus: 1-forms, vector fields, the adjoint
//! matrices and the duality bracket.

use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use thiserror::Error;

use crate::dual::{build_f_chi, BasisFunctionals, Dual, DualError, Normalization};
use crate::ncalg::{Algebra, AlgebraElement, TensorElement};
use crate::qscalar::QScalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CalculusError {
    #[error(transparent)]
    Dual(#[from] DualError),
    #[error("adjoint invariant `{check}` fails at {witness}")]
    Adjoint { check: String, witness: String },
}

/// `ρ = ω^i a_i`, coefficients on the right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneForm {
    pub coeffs: Vec<AlgebraElement>,
}

/// `V = a^i t_i`, coefficients on the left.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorField {
    pub coeffs: Vec<AlgebraElement>,
}

macro_rules! module_ops {
    ($t:ident) => {
        impl $t {
            pub fn zero(dim: usize) -> Self {
                $t {
                    coeffs: vec![AlgebraElement::zero(); dim],
                }
            }

            pub fn basis(dim: usize, i: usize) -> Self {
                let mut x = $t::zero(dim);
                x.coeffs[i] = AlgebraElement::one();
                x
            }

            pub fn dim(&self) -> usize {
                self.coeffs.len()
            }

            pub fn is_zero(&self) -> bool {
                self.coeffs.iter().all(|c| c.is_zero())
            }

            pub fn scale(&self, c: &QScalar) -> Self {
                $t {
                    coeffs: self.coeffs.iter().map(|x| x.scale(c)).collect(),
                }
            }
        }

        impl Add for &$t {
            type Output = $t;
            fn add(self, o: &$t) -> $t {
                $t {
                    coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(x, y)| x + y).collect(),
                }
            }
        }

        impl Sub for &$t {
            type Output = $t;
            fn sub(self, o: &$t) -> $t {
                $t {
                    coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(x, y)| x - y).collect(),
                }
            }
        }

        impl Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                $t {
                    coeffs: self.coeffs.iter().map(|x| -x).collect(),
                }
            }
        }
    };
}

module_ops!(OneForm);
module_ops!(VectorField);

/// `M[j][i] = M_j^i` and `N[l][k] = N^l_k = S(M_k^l)`.
#[derive(Debug, Clone)]
pub struct AdjointData {
    pub m: Vec<Vec<AlgebraElement>>,
    pub n: Vec<Vec<AlgebraElement>>,
}

/// Builds M from `M_{i₁i₂}^{j₁j₂} = S⁻¹(T^{j₂}_{i₂}) T^{i₁}_{j₁}` and N = S(M),
/// then checks the counit and coproduct of both.
pub fn adjoint_matrices(alg: &Algebra) -> Result<AdjointData, CalculusError> {
    let frt = alg.frt().ok_or(DualError::NotFrt)?;
    let n = frt.n;
    let dim = n * n;
    let t = |i: usize, j: usize| alg.gen_elem(frt.t[i][j]);
    let m: Vec<Vec<AlgebraElement>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    let (i1, i2, j1, j2) = (i / n, i % n, j / n, j % n);
                    alg.mul(&alg.antipode_inv(&t(j2, i2)), &t(i1, j1))
                })
                .collect()
        })
        .collect();
    let nm: Vec<Vec<AlgebraElement>> = (0..dim)
        .map(|l| (0..dim).map(|k| alg.antipode(&m[k][l])).collect())
        .collect();
    let label = |i: usize| format!("{},{}", i / n + 1, i % n + 1);
    for (name, mat) in [("M", &m), ("N", &nm)] {
        for i in 0..dim {
            for j in 0..dim {
                let want = if i == j { QScalar::one() } else { QScalar::zero() };
                if alg.counit(&mat[i][j]) != want {
                    return Err(CalculusError::Adjoint {
                        check: format!("counit of {name}"),
                        witness: format!("{name}[{}][{}]", label(i), label(j)),
                    });
                }
                let mut rhs = TensorElement::zero(2);
                for l in 0..dim {
                    rhs = &rhs + &TensorElement::pure(&[&mat[i][l], &mat[l][j]]);
                }
                if alg.coproduct(&mat[i][j]) != rhs {
                    return Err(CalculusError::Adjoint {
                        check: format!("coproduct of {name}"),
                        witness: format!("{name}[{}][{}]", label(i), label(j)),
                    });
                }
            }
        }
    }
    Ok(AdjointData { m, n: nm })
}

/// The calculus induced by the FRT functionals of an instance.
#[derive(Debug)]
pub struct Calculus {
    alg: Arc<Algebra>,
    dual: Arc<Dual>,
    basis: BasisFunctionals,
    adj: AdjointData,
}

impl Calculus {
    pub fn new(alg: Arc<Algebra>, norm: Normalization) -> Result<Calculus, CalculusError> {
        let dual = Arc::new(Dual::new(alg.clone())?);
        let basis = build_f_chi(&dual, norm)?;
        let adj = adjoint_matrices(&alg)?;
        Ok(Calculus { alg, dual, basis, adj })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn dual(&self) -> &Arc<Dual> {
        &self.dual
    }

    pub fn basis(&self) -> &BasisFunctionals {
        &self.basis
    }

    pub fn adjoint(&self) -> &AdjointData {
        &self.adj
    }

    pub fn dim(&self) -> usize {
        self.basis.dim
    }

    pub fn m(&self, j: usize, i: usize) -> &AlgebraElement {
        &self.adj.m[j][i]
    }

    pub fn n(&self, l: usize, k: usize) -> &AlgebraElement {
        &self.adj.n[l][k]
    }

    pub fn omega(&self, i: usize) -> OneForm {
        OneForm::basis(self.dim(), i)
    }

    pub fn t(&self, i: usize) -> VectorField {
        VectorField::basis(self.dim(), i)
    }

    /// `η^i = ω^j S(M_j^i)`
    pub fn eta(&self, i: usize) -> OneForm {
        OneForm {
            coeffs: (0..self.dim()).map(|j| self.adj.n[i][j].clone()).collect(),
        }
    }

    /// `h_i = S⁻¹(N^j_i) t_j = M_i^j t_j`
    pub fn h(&self, i: usize) -> VectorField {
        VectorField {
            coeffs: (0..self.dim()).map(|j| self.adj.m[i][j].clone()).collect(),
        }
    }

    pub fn right_invariant_bases(&self) -> (Vec<OneForm>, Vec<VectorField>) {
        (
            (0..self.dim()).map(|i| self.eta(i)).collect(),
            (0..self.dim()).map(|i| self.h(i)).collect(),
        )
    }

    /// `ρ a`
    pub fn right_multiply_form(&self, rho: &OneForm, a: &AlgebraElement) -> OneForm {
        OneForm {
            coeffs: rho.coeffs.iter().map(|c| self.alg.mul(c, a)).collect(),
        }
    }

    /// `b ρ`, using `b ω^i = ω^j (f_{i,j} * b)`.
    pub fn left_multiply_form(&self, b: &AlgebraElement, rho: &OneForm) -> OneForm {
        let dim = self.dim();
        let mut out = OneForm::zero(dim);
        for i in 0..dim {
            if rho.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..dim {
                let fb = self.dual.left_conv(&self.basis.f[i][j], b);
                if fb.is_zero() {
                    continue;
                }
                out.coeffs[j] = &out.coeffs[j] + &self.alg.mul(&fb, &rho.coeffs[i]);
            }
        }
        out
    }

    /// `b_i ω^i` in right-coefficient form.
    pub fn form_from_left(&self, left: &[AlgebraElement]) -> OneForm {
        let dim = self.dim();
        let mut out = OneForm::zero(dim);
        for (i, b) in left.iter().enumerate() {
            out = &out + &self.left_multiply_form(b, &self.omega(i));
        }
        out
    }

    /// Left coefficients `b_j` with `ρ = b_j ω^j`, from `ω^i a = [(f_{i,j}∘S) * a] ω^j`.
    pub fn form_to_left(&self, rho: &OneForm) -> Vec<AlgebraElement> {
        let dim = self.dim();
        let mut out = vec![AlgebraElement::zero(); dim];
        for (i, a) in rho.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, slot) in out.iter_mut().enumerate() {
                let fs = crate::dual::Functional::twist(crate::dual::Twist::S, &self.basis.f[i][j]);
                *slot = &*slot + &self.dual.left_conv(&fs, a);
            }
        }
        out
    }

    /// `b V`
    pub fn left_multiply_vector(&self, b: &AlgebraElement, v: &VectorField) -> VectorField {
        VectorField {
            coeffs: v.coeffs.iter().map(|c| self.alg.mul(b, c)).collect(),
        }
    }

    /// `V □ a`, using `t_i □ a = (f_{j,i} * a) t_j`.
    pub fn right_multiply_vector(&self, v: &VectorField, a: &AlgebraElement) -> VectorField {
        let dim = self.dim();
        let mut out = VectorField::zero(dim);
        for i in 0..dim {
            if v.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..dim {
                let fa = self.dual.left_conv(&self.basis.f[j][i], a);
                if fa.is_zero() {
                    continue;
                }
                out.coeffs[j] = &out.coeffs[j] + &self.alg.mul(&v.coeffs[i], &fa);
            }
        }
        out
    }

    /// `V(b) = a^i (χ_i * b)`
    pub fn apply_vector(&self, v: &VectorField, b: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (i, c) in v.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out = &out + &self.alg.mul(c, &self.dual.left_conv(&self.basis.chi[i], b));
        }
        out
    }

    /// `da = ω^i (χ_i * a)`
    pub fn differential(&self, a: &AlgebraElement) -> OneForm {
        OneForm {
            coeffs: self.basis.chi.iter().map(|chi| self.dual.left_conv(chi, a)).collect(),
        }
    }

    /// `P(ω^i a_i) = ε(a_i) ω^i`
    pub fn project_p(&self, rho: &OneForm) -> OneForm {
        OneForm {
            coeffs: rho
                .coeffs
                .iter()
                .map(|c| AlgebraElement::scalar(self.alg.counit(c)))
                .collect(),
        }
    }

    /// `⟨b^j t_j, ω^i a_i⟩ = b^i a_i`
    pub fn bracket(&self, v: &VectorField, rho: &OneForm) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (b, a) in v.coeffs.iter().zip(&rho.coeffs) {
            if b.is_zero() || a.is_zero() {
                continue;
            }
            out = &out + &self.alg.mul(b, a);
        }
        out
    }

    /// Left coaction on Γ: entry i holds `Σ x ⊗ y` for `Σ x ⊗ ω^i y`.
    pub fn left_coaction_form(&self, rho: &OneForm) -> Vec<TensorElement> {
        rho.coeffs.iter().map(|a| self.alg.coproduct(a)).collect()
    }

    /// Right coaction on Γ: entry k holds `Σ x ⊗ y` for `Σ ω^k x ⊗ y`.
    pub fn right_coaction_form(&self, rho: &OneForm) -> Vec<TensorElement> {
        let dim = self.dim();
        let one = AlgebraElement::one();
        (0..dim)
            .map(|k| {
                let mut acc = TensorElement::zero(2);
                for (j, a) in rho.coeffs.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    let m = TensorElement::pure(&[&one, &self.adj.m[k][j]]);
                    acc = &acc + &self.alg.tensor_mul(&m, &self.alg.coproduct(a));
                }
                acc
            })
            .collect()
    }

    /// Left coaction on Ξ: entry i holds `Σ x ⊗ y` for `Σ x ⊗ y t_i`.
    pub fn left_coaction_vector(&self, v: &VectorField) -> Vec<TensorElement> {
        v.coeffs.iter().map(|a| self.alg.coproduct(a)).collect()
    }

    /// Right coaction on Ξ: entry j holds `Σ x ⊗ y` for `Σ x t_j ⊗ y`.
    pub fn right_coaction_vector(&self, v: &VectorField) -> Vec<TensorElement> {
        let dim = self.dim();
        let one = AlgebraElement::one();
        (0..dim)
            .map(|j| {
                let mut acc = TensorElement::zero(2);
                for (i, a) in v.coeffs.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    let nn = TensorElement::pure(&[&one, &self.adj.n[j][i]]);
                    acc = &acc + &self.alg.tensor_mul(&self.alg.coproduct(a), &nn);
                }
                acc
            })
            .collect()
    }

    /// `Σ_i M_j^i N^k_i`, which the invariance of `ω^i t_i` requires to be `δ_j^k I`.
    pub fn invariance_contraction(&self, j: usize, k: usize) -> AlgebraElement {
        (0..self.dim())
            .map(|i| self.alg.mul(&self.adj.m[j][i], &self.adj.n[k][i]))
            .fold(AlgebraElement::zero(), |acc, x| &acc + &x)
    }

    pub fn fmt_form(&self, rho: &OneForm) -> String {
        let parts: Vec<String> = rho
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("omega[{}] * ({})", self.basis.label(i), self.alg.fmt(c)))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    pub fn fmt_vector(&self, v: &VectorField) -> String {
        let parts: Vec<String> = v
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({}) * t[{}]", self.alg.fmt(c), self.basis.label(i)))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}
