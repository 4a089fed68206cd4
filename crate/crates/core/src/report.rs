//! Check results shared by every verification routine.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::calculus::{OneForm, VectorField};
use crate::linalg::{Matrix, SparseMatrix};
use crate::ncalg::{AlgebraElement, TensorElement};
use crate::qscalar::{QScalar, ScalarError};
use crate::wedge::TensorForm;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRow {
    pub check: String,
    pub lhs: String,
    pub rhs: String,
    pub equal: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckRow {
    pub fn new(check: impl Into<String>, lhs: String, rhs: String, equal: bool) -> Self {
        CheckRow {
            check: check.into(),
            lhs,
            rhs,
            equal,
            witness: None,
        }
    }

    pub fn with_witness(mut self, w: impl Into<String>) -> Self {
        let w = w.into();
        if !w.is_empty() {
            self.witness = Some(w);
        }
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub rows: Vec<CheckRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub skipped: Vec<String>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, row: CheckRow) {
        self.rows.push(row);
    }

    /// Records `lhs == rhs` using the given printer for both sides.
    pub fn compare<T: PartialEq>(
        &mut self,
        check: impl Into<String>,
        witness: impl Into<String>,
        lhs: &T,
        rhs: &T,
        show: impl Fn(&T) -> String,
    ) -> bool {
        let equal = lhs == rhs;
        self.rows
            .push(CheckRow::new(check, show(lhs), show(rhs), equal).with_witness(witness));
        equal
    }

    pub fn extend(&mut self, other: Report) {
        self.rows.extend(other.rows);
        self.skipped.extend(other.skipped);
    }

    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|r| r.equal)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRow> {
        self.rows.iter().filter(|r| !r.equal)
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// Evaluation of every coefficient at a rational value of q.
pub trait Specialize: Sized {
    fn specialize_at(&self, q0: &BigRational) -> Result<Self, ScalarError>;

    /// Entries for which this holds are dropped from specialized maps.
    fn is_null(&self) -> bool {
        false
    }
}

impl Specialize for QScalar {
    fn specialize_at(&self, q0: &BigRational) -> Result<Self, ScalarError> {
        self.specialize_scalar(q0)
    }

    fn is_null(&self) -> bool {
        self.is_zero()
    }
}

impl Specialize for AlgebraElement {
    fn specialize_at(&self, q0: &BigRational) -> Result<Self, ScalarError> {
        self.specialize(q0)
    }

    fn is_null(&self) -> bool {
        self.is_zero()
    }
}

impl Specialize for TensorElement {
    fn specialize_at(&self, q0: &BigRational) -> Result<Self, ScalarError> {
        self.specialize(q0)
    }
}

impl Specialize for OneForm {
    fn specialize_at(&self, q0: &BigRational) -> Result<Self, ScalarError> {
        Ok(OneForm {
            coeffs: self.coeffs.specialize_at(q0)?,
        })
    }
}

impl Specialize for VectorField {
    fn specialize_at(&self, q0: &BigRational) -> Result<Self, ScalarError> {
        Ok(VectorField {
            coeffs: self.coeffs.specialize_at(q0)?,
        })
    }
}

impl Specialize for TensorForm {
    fn specialize_at(&self, q0: &BigRational) -> Result<Self, ScalarError> {
        let mut out = TensorForm::zero(self.degree());
        for (k, c) in self.coeffs() {
            out.add_term(k.clone(), c.specialize(q0)?);
        }
        Ok(out)
    }

    fn is_null(&self) -> bool {
        self.is_zero()
    }
}

impl Specialize for Matrix {
    fn specialize_at(&self, q0: &BigRational) -> Result<Self, ScalarError> {
        let rows = self
            .to_rows()
            .iter()
            .map(|r| r.specialize_at(q0))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix::from_rows(rows))
    }
}

impl<T: Specialize> Specialize for Vec<T> {
    fn specialize_at(&self, q0: &BigRational) -> Result<Self, ScalarError> {
        self.iter().map(|x| x.specialize_at(q0)).collect()
    }
}

impl Specialize for SparseMatrix {
    fn specialize_at(&self, q0: &BigRational) -> Result<Self, ScalarError> {
        Ok(SparseMatrix::from_dense(&self.to_dense().specialize_at(q0)?))
    }
}

impl Specialize for bool {
    fn specialize_at(&self, _: &BigRational) -> Result<Self, ScalarError> {
        Ok(*self)
    }
}

impl<K: Clone + Ord, V: Specialize> Specialize for BTreeMap<K, V> {
    fn specialize_at(&self, q0: &BigRational) -> Result<Self, ScalarError> {
        let mut out = BTreeMap::new();
        for (k, v) in self {
            let v = v.specialize_at(q0)?;
            if !v.is_null() {
                out.insert(k.clone(), v);
            }
        }
        Ok(out)
    }
}
