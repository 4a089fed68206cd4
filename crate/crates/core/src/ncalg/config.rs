//! JSON form of an instance. Scalars stay as strings so that a document
//! survives a load/save cycle byte for byte.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermConfig {
    pub coeff: String,
    pub word: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorTermConfig {
    pub coeff: String,
    pub left: Vec<String>,
    pub right: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleConfig {
    pub lhs: Vec<String>,
    pub rhs: Vec<TermConfig>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrtConfig {
    #[serde(rename = "R")]
    pub r: Vec<Vec<String>>,
    #[serde(rename = "T")]
    pub t: Vec<Vec<String>>,
    pub det: String,
    pub det_inv: String,
    pub det_expr: Vec<TermConfig>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceConfig {
    pub generators: Vec<String>,
    pub rules: Vec<RuleConfig>,
    pub coproduct: IndexMap<String, Vec<TensorTermConfig>>,
    pub counit: IndexMap<String, String>,
    pub antipode: IndexMap<String, Vec<TermConfig>>,
    pub antipode_inv: IndexMap<String, Vec<TermConfig>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frt: Option<FrtConfig>,
}

impl InstanceConfig {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("config serializes");
        s.push('\n');
        s
    }

    /// Applies `f` to every scalar string in the document.
    pub fn map_scalars<E>(&self, mut f: impl FnMut(&str) -> Result<String, E>) -> Result<InstanceConfig, E> {
        let mut out = self.clone();
        let mut terms = |ts: &mut Vec<TermConfig>| -> Result<(), E> {
            for t in ts.iter_mut() {
                t.coeff = f(&t.coeff)?;
            }
            Ok(())
        };
        for r in out.rules.iter_mut() {
            terms(&mut r.rhs)?;
        }
        for ts in out.antipode.values_mut() {
            terms(ts)?;
        }
        for ts in out.antipode_inv.values_mut() {
            terms(ts)?;
        }
        if let Some(frt) = out.frt.as_mut() {
            terms(&mut frt.det_expr)?;
        }
        for ts in out.coproduct.values_mut() {
            for t in ts.iter_mut() {
                t.coeff = f(&t.coeff)?;
            }
        }
        for v in out.counit.values_mut() {
            *v = f(v)?;
        }
        if let Some(frt) = out.frt.as_mut() {
            for row in frt.r.iter_mut() {
                for x in row.iter_mut() {
                    *x = f(x)?;
                }
            }
        }
        Ok(out)
    }
}
