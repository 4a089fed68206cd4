use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_rational::BigRational;
use smallvec::SmallVec;

use super::config::{InstanceConfig, TermConfig};
use super::element::{scalar_factor, AlgebraElement, Gen, Word};
use super::tensor::TensorElement;
use super::AlgebraError;
use crate::qscalar::QScalar;

pub const DEFAULT_MAX_WORD_LEN: usize = 32;

/// FRT data of a matrix quantum group: the R-matrix, the generator grid of T
/// and the determinant generators.
#[derive(Debug, Clone)]
pub struct FrtData {
    pub n: usize,
    pub r: Vec<Vec<QScalar>>,
    pub t: Vec<Vec<Gen>>,
    pub det: Gen,
    pub det_inv: Gen,
    pub det_expr: AlgebraElement,
}

impl FrtData {
    /// `R^{ij}_{kl}`, indices from 0.
    pub fn r(&self, i: usize, j: usize, k: usize, l: usize) -> &QScalar {
        &self.r[i * self.n + j][k * self.n + l]
    }
}

type Memo<V> = RwLock<HashMap<Word, Arc<V>>>;

/// A Hopf algebra presented by generators, quadratic rewrite rules and
/// structure maps on generators.
pub struct Algebra {
    names: Vec<String>,
    index: HashMap<String, Gen>,
    rules: Vec<Option<AlgebraElement>>,
    coproduct: Vec<TensorElement>,
    counit: Vec<QScalar>,
    antipode: Vec<AlgebraElement>,
    antipode_inv: Vec<AlgebraElement>,
    frt: Option<FrtData>,
    config: InstanceConfig,
    max_word_len: usize,
    nf_memo: Memo<AlgebraElement>,
    cop_memo: Memo<TensorElement>,
    s_memo: Memo<AlgebraElement>,
    si_memo: Memo<AlgebraElement>,
    specialized_at: Option<BigRational>,
}

impl std::fmt::Debug for Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Algebra")
            .field("generators", &self.names)
            .finish_non_exhaustive()
    }
}

fn parse_scalar(s: &str) -> Result<QScalar, AlgebraError> {
    s.parse().map_err(AlgebraError::Scalar)
}

impl Algebra {
    pub fn from_json(text: &str) -> Result<Algebra, AlgebraError> {
        let cfg = InstanceConfig::from_json(text).map_err(|e| AlgebraError::Config(e.to_string()))?;
        Algebra::from_config(cfg)
    }

    pub fn from_config(cfg: InstanceConfig) -> Result<Algebra, AlgebraError> {
        let n = cfg.generators.len();
        if n == 0 || n > Gen::MAX as usize {
            return Err(AlgebraError::Config(format!("unsupported generator count {n}")));
        }
        let mut index = HashMap::new();
        for (i, g) in cfg.generators.iter().enumerate() {
            if index.insert(g.clone(), i as Gen).is_some() {
                return Err(AlgebraError::Config(format!("duplicate generator {g}")));
            }
        }
        let lookup = |s: &str| -> Result<Gen, AlgebraError> {
            index
                .get(s)
                .copied()
                .ok_or_else(|| AlgebraError::UnknownGenerator(s.to_string()))
        };
        let word = |ws: &[String]| -> Result<Word, AlgebraError> {
            Ok(Word(ws.iter().map(|s| lookup(s)).collect::<Result<_, _>>()?))
        };
        let raw_terms = |ts: &[TermConfig]| -> Result<Vec<(QScalar, Word)>, AlgebraError> {
            ts.iter()
                .map(|t| Ok((parse_scalar(&t.coeff)?, word(&t.word)?)))
                .collect()
        };

        let mut rules: Vec<Option<AlgebraElement>> = vec![None; n * n];
        for r in &cfg.rules {
            let lhs = word(&r.lhs)?;
            if lhs.len() != 2 {
                return Err(AlgebraError::Config(format!(
                    "rule lhs must have length 2: {:?}",
                    r.lhs
                )));
            }
            let mut rhs = AlgebraElement::zero();
            for (c, w) in raw_terms(&r.rhs)? {
                if w >= lhs {
                    return Err(AlgebraError::NotTerminating(format!(
                        "{} -> ... {} ...",
                        r.lhs.join("*"),
                        w.gens()
                            .iter()
                            .map(|&g| cfg.generators[g as usize].as_str())
                            .collect::<Vec<_>>()
                            .join("*")
                    )));
                }
                rhs.add_term(w, c);
            }
            let slot = &mut rules[lhs.gens()[0] as usize * n + lhs.gens()[1] as usize];
            if slot.is_some() {
                return Err(AlgebraError::Config(format!("duplicate rule for {:?}", r.lhs)));
            }
            *slot = Some(rhs);
        }

        let require = |table: &str, has: &dyn Fn(&str) -> bool| -> Result<(), AlgebraError> {
            for g in &cfg.generators {
                if !has(g) {
                    return Err(AlgebraError::MissingEntry {
                        table: table.to_string(),
                        generator: g.clone(),
                    });
                }
            }
            Ok(())
        };
        require("coproduct", &|g| cfg.coproduct.contains_key(g))?;
        require("counit", &|g| cfg.counit.contains_key(g))?;
        require("antipode", &|g| cfg.antipode.contains_key(g))?;
        require("antipode_inv", &|g| cfg.antipode_inv.contains_key(g))?;
        for table in [
            cfg.coproduct.keys().collect::<Vec<_>>(),
            cfg.counit.keys().collect(),
            cfg.antipode.keys().collect(),
            cfg.antipode_inv.keys().collect(),
        ] {
            for k in table {
                lookup(k)?;
            }
        }

        let mut alg = Algebra {
            names: cfg.generators.clone(),
            index: index.clone(),
            rules,
            coproduct: Vec::new(),
            counit: Vec::new(),
            antipode: Vec::new(),
            antipode_inv: Vec::new(),
            frt: None,
            config: cfg.clone(),
            max_word_len: DEFAULT_MAX_WORD_LEN,
            nf_memo: RwLock::new(HashMap::new()),
            cop_memo: RwLock::new(HashMap::new()),
            s_memo: RwLock::new(HashMap::new()),
            si_memo: RwLock::new(HashMap::new()),
            specialized_at: None,
        };

        for g in &cfg.generators {
            let mut t = TensorElement::zero(2);
            for term in &cfg.coproduct[g] {
                let c = parse_scalar(&term.coeff)?;
                let l = alg.normal_form_word(&word(&term.left)?);
                let r = alg.normal_form_word(&word(&term.right)?);
                t.add_scaled(&TensorElement::pure(&[&l, &r]), &c);
            }
            alg.coproduct.push(t);

            let e = parse_scalar(&cfg.counit[g])?;
            if !e.is_constant() {
                return Err(AlgebraError::Config(format!(
                    "counit of {g} must be a rational constant, got {e}"
                )));
            }
            alg.counit.push(e);

            let s = alg.normal_form_raw(&raw_terms(&cfg.antipode[g])?);
            alg.antipode.push(s);
            let si = alg.normal_form_raw(&raw_terms(&cfg.antipode_inv[g])?);
            alg.antipode_inv.push(si);
        }

        if let Some(frt) = &cfg.frt {
            let n = frt.t.len();
            if n == 0 || frt.t.iter().any(|row| row.len() != n) {
                return Err(AlgebraError::Config("T must be a square grid".into()));
            }
            if frt.r.len() != n * n || frt.r.iter().any(|row| row.len() != n * n) {
                return Err(AlgebraError::Config(format!("R must be {0}x{0}", n * n)));
            }
            let r = frt
                .r
                .iter()
                .map(|row| row.iter().map(|x| parse_scalar(x)).collect())
                .collect::<Result<Vec<Vec<_>>, _>>()?;
            let t = frt
                .t
                .iter()
                .map(|row| row.iter().map(|x| lookup(x)).collect())
                .collect::<Result<Vec<Vec<_>>, _>>()?;
            let det_expr = alg.normal_form_raw(&raw_terms(&frt.det_expr)?);
            alg.frt = Some(FrtData {
                n,
                r,
                t,
                det: lookup(&frt.det)?,
                det_inv: lookup(&frt.det_inv)?,
                det_expr,
            });
        }
        Ok(alg)
    }

    pub fn config(&self) -> &InstanceConfig {
        &self.config
    }

    pub fn to_json(&self) -> String {
        self.config.to_json()
    }

    pub fn frt(&self) -> Option<&FrtData> {
        self.frt.as_ref()
    }

    pub fn num_generators(&self) -> usize {
        self.names.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, g: Gen) -> &str {
        &self.names[g as usize]
    }

    pub fn generator(&self, name: &str) -> Result<Gen, AlgebraError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| AlgebraError::UnknownGenerator(name.to_string()))
    }

    /// The generator as an element (its one-letter word is always normal).
    pub fn gen(&self, name: &str) -> Result<AlgebraElement, AlgebraError> {
        Ok(self.normal_form_word(&Word::single(self.generator(name)?)))
    }

    pub fn gen_elem(&self, g: Gen) -> AlgebraElement {
        self.normal_form_word(&Word::single(g))
    }

    pub fn set_max_word_len(&mut self, len: usize) {
        self.max_word_len = len;
    }

    pub fn max_word_len(&self) -> usize {
        self.max_word_len
    }

    /// Rewrite rule for the pair `(g, h)`, if any.
    pub fn rule(&self, g: Gen, h: Gen) -> Option<&AlgebraElement> {
        self.rules[g as usize * self.names.len() + h as usize].as_ref()
    }

    pub fn rules(&self) -> impl Iterator<Item = (Word, &AlgebraElement)> {
        let n = self.names.len();
        self.rules.iter().enumerate().filter_map(move |(i, r)| {
            r.as_ref()
                .map(|r| (Word::from_slice(&[(i / n) as Gen, (i % n) as Gen]), r))
        })
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        w.gens().windows(2).all(|p| self.rule(p[0], p[1]).is_none())
    }

    /// All normal words of the given length.
    pub fn normal_words(&self, len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..len {
            let mut next = Vec::new();
            for w in &out {
                for g in 0..self.names.len() as Gen {
                    if w.gens().last().is_none_or(|&l| self.rule(l, g).is_none()) {
                        let mut v = w.clone();
                        v.0.push(g);
                        next.push(v);
                    }
                }
            }
            out = next;
        }
        out
    }

    /// Normal form of a single word.
    pub fn normal_form_word(&self, w: &Word) -> AlgebraElement {
        (*self.nf_arc(w)).clone()
    }

    fn nf_arc(&self, w: &Word) -> Arc<AlgebraElement> {
        if w.len() < 2 {
            return Arc::new(AlgebraElement::word(w.clone()));
        }
        if let Some(v) = self.nf_memo.read().unwrap().get(w) {
            return v.clone();
        }
        if w.len() > self.max_word_len {
            panic!(
                "{}",
                AlgebraError::DegreeCap {
                    len: w.len(),
                    cap: self.max_word_len
                }
            );
        }
        let g = w.gens();
        let pos = (0..g.len() - 1).find(|&i| self.rule(g[i], g[i + 1]).is_some());
        let result = match pos {
            None => AlgebraElement::word(w.clone()),
            Some(i) => {
                let rhs = self.rule(g[i], g[i + 1]).unwrap();
                let mut out = AlgebraElement::zero();
                for (rw, c) in rhs.terms() {
                    let mut v: SmallVec<[Gen; 8]> = SmallVec::from_slice(&g[..i]);
                    v.extend_from_slice(rw.gens());
                    v.extend_from_slice(&g[i + 2..]);
                    out.add_scaled(&self.nf_arc(&Word(v)), c);
                }
                out
            }
        };
        let arc = Arc::new(result);
        self.nf_memo.write().unwrap().insert(w.clone(), arc.clone());
        arc
    }

    /// Normal form of a linear combination of arbitrary words.
    pub fn normal_form_raw(&self, terms: &[(QScalar, Word)]) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (c, w) in terms {
            out.add_scaled(&self.nf_arc(w), c);
        }
        out
    }

    /// Normal form of named words; errors on unknown symbols or overlong words.
    pub fn normal_form(&self, terms: &[(QScalar, Vec<&str>)]) -> Result<AlgebraElement, AlgebraError> {
        let mut raw = Vec::new();
        for (c, names) in terms {
            let w = Word(names.iter().map(|s| self.generator(s)).collect::<Result<_, _>>()?);
            if w.len() > self.max_word_len {
                return Err(AlgebraError::DegreeCap {
                    len: w.len(),
                    cap: self.max_word_len,
                });
            }
            raw.push((c.clone(), w));
        }
        Ok(self.normal_form_raw(&raw))
    }

    pub fn mul(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (w1, c1) in x.terms() {
            for (w2, c2) in y.terms() {
                let c = c1 * c2;
                if w1.is_empty() || w2.is_empty() {
                    out.add_term(w1.concat(w2), c);
                } else {
                    out.add_scaled(&self.nf_arc(&w1.concat(w2)), &c);
                }
            }
        }
        out
    }

    pub fn product(&self, xs: &[&AlgebraElement]) -> AlgebraElement {
        xs.iter().fold(AlgebraElement::one(), |acc, x| self.mul(&acc, x))
    }

    pub fn pow(&self, x: &AlgebraElement, k: usize) -> AlgebraElement {
        (0..k).fold(AlgebraElement::one(), |acc, _| self.mul(&acc, x))
    }

    /// Slotwise product in the tensor power of A.
    pub fn tensor_mul(&self, x: &TensorElement, y: &TensorElement) -> TensorElement {
        assert_eq!(x.arity(), y.arity(), "tensor arity mismatch");
        let mut out = TensorElement::zero(x.arity());
        for (k1, c1) in x.terms() {
            for (k2, c2) in y.terms() {
                let mut partial = TensorElement::unit(0);
                for (a, b) in k1.iter().zip(k2.iter()) {
                    let f = self.nf_arc(&a.concat(b));
                    partial = partial.tensor(&TensorElement::from_element(&f));
                }
                out.add_scaled(&partial, &(c1 * c2));
            }
        }
        out
    }

    /// Multiplies the slots of a tensor together in order.
    pub fn multiply_out(&self, t: &TensorElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (k, c) in t.terms() {
            let mut w = Word::empty();
            for x in k.iter() {
                w = w.concat(x);
            }
            out.add_scaled(&self.nf_arc(&w), c);
        }
        out
    }

    fn cop_word(&self, w: &Word) -> Arc<TensorElement> {
        if w.is_empty() {
            return Arc::new(TensorElement::unit(2));
        }
        if w.len() == 1 {
            return Arc::new(self.coproduct[w.gens()[0] as usize].clone());
        }
        if let Some(v) = self.cop_memo.read().unwrap().get(w) {
            return v.clone();
        }
        let g = w.gens();
        let head = self.cop_word(&Word::from_slice(&g[..g.len() - 1]));
        let last = &self.coproduct[g[g.len() - 1] as usize];
        let arc = Arc::new(self.tensor_mul(&head, last));
        self.cop_memo.write().unwrap().insert(w.clone(), arc.clone());
        arc
    }

    pub fn coproduct_word(&self, w: &Word) -> Arc<TensorElement> {
        self.cop_word(w)
    }

    pub fn coproduct(&self, x: &AlgebraElement) -> TensorElement {
        let mut out = TensorElement::zero(2);
        for (w, c) in x.terms() {
            out.add_scaled(&self.cop_word(w), c);
        }
        out
    }

    /// Iterated coproduct into `k` slots (`k >= 1`).
    pub fn coproduct_n(&self, x: &AlgebraElement, k: usize) -> TensorElement {
        let mut t = TensorElement::from_element(x);
        for _ in 1..k {
            let last = t.arity() - 1;
            t = t.map_slot(last, 2, |w| (*self.cop_word(w)).clone());
        }
        t
    }

    pub fn counit_word(&self, w: &Word) -> QScalar {
        let mut acc = QScalar::one();
        for &g in w.gens() {
            acc = &acc * &self.counit[g as usize];
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    pub fn counit(&self, x: &AlgebraElement) -> QScalar {
        x.terms().map(|(w, c)| c * &self.counit_word(w)).sum()
    }

    fn anti_word(&self, w: &Word, inverse: bool) -> Arc<AlgebraElement> {
        let (table, memo) = if inverse {
            (&self.antipode_inv, &self.si_memo)
        } else {
            (&self.antipode, &self.s_memo)
        };
        if w.is_empty() {
            return Arc::new(AlgebraElement::one());
        }
        if w.len() == 1 {
            return Arc::new(table[w.gens()[0] as usize].clone());
        }
        if let Some(v) = memo.read().unwrap().get(w) {
            return v.clone();
        }
        let g = w.gens();
        let head = self.anti_word(&Word::from_slice(&g[..g.len() - 1]), inverse);
        let last = &table[g[g.len() - 1] as usize];
        let arc = Arc::new(self.mul(last, &head));
        memo.write().unwrap().insert(w.clone(), arc.clone());
        arc
    }

    pub fn antipode(&self, x: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (w, c) in x.terms() {
            out.add_scaled(&self.anti_word(w, false), c);
        }
        out
    }

    pub fn antipode_inv(&self, x: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (w, c) in x.terms() {
            out.add_scaled(&self.anti_word(w, true), c);
        }
        out
    }

    pub fn antipode_word(&self, w: &Word) -> Arc<AlgebraElement> {
        self.anti_word(w, false)
    }

    pub fn antipode_inv_word(&self, w: &Word) -> Arc<AlgebraElement> {
        self.anti_word(w, true)
    }

    /// The same instance with `q` replaced by `q0` everywhere.
    pub fn specialize(&self, q0: &BigRational) -> Result<Algebra, AlgebraError> {
        let cfg = self.config.map_scalars(|s| {
            let v = parse_scalar(s)?;
            Ok::<_, AlgebraError>(v.specialize_scalar(q0).map_err(AlgebraError::Scalar)?.to_string())
        })?;
        let mut alg = Algebra::from_config(cfg)?;
        alg.max_word_len = self.max_word_len;
        alg.specialized_at = Some(q0.clone());
        Ok(alg)
    }

    /// The value of `q` if this instance came from [`Algebra::specialize`].
    pub fn specialized_at(&self) -> Option<&BigRational> {
        self.specialized_at.as_ref()
    }

    /// Replaces a generator's antipode image; used for negative controls.
    pub fn with_antipode_override(&self, gen: &str, image: &AlgebraElement) -> Result<Algebra, AlgebraError> {
        let mut cfg = self.config.clone();
        self.generator(gen)?;
        cfg.antipode.insert(gen.to_string(), self.to_terms(image));
        Algebra::from_config(cfg)
    }

    /// Config-style term list of an element.
    pub fn to_terms(&self, x: &AlgebraElement) -> Vec<TermConfig> {
        x.terms()
            .map(|(w, c)| TermConfig {
                coeff: c.to_string(),
                word: w.gens().iter().map(|&g| self.names[g as usize].clone()).collect(),
            })
            .collect()
    }

    pub fn word_str(&self, w: &Word) -> String {
        if w.is_empty() {
            return "I".to_string();
        }
        w.gens()
            .iter()
            .map(|&g| self.names[g as usize].as_str())
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Text form in the DSL syntax, highest words first.
    pub fn fmt(&self, x: &AlgebraElement) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        let terms: Vec<_> = x.terms().collect();
        for (i, (w, c)) in terms.into_iter().rev().enumerate() {
            let neg = c.numer().leading().is_some_and(|l| l.sign() == num_bigint::Sign::Minus);
            let abs = if neg { -c } else { c.clone() };
            let body = if w.is_empty() {
                scalar_factor(&abs)
            } else if abs.is_one() {
                self.word_str(w)
            } else {
                format!("{}*{}", scalar_factor(&abs), self.word_str(w))
            };
            match (i, neg) {
                (0, false) => {}
                (0, true) => out.push('-'),
                (_, false) => out.push_str(" + "),
                (_, true) => out.push_str(" - "),
            }
            out.push_str(&body);
        }
        out
    }

    pub fn fmt_tensor(&self, t: &TensorElement) -> String {
        if t.is_zero() {
            return "0".to_string();
        }
        t.terms()
            .map(|(k, c)| {
                let factors = k.iter().map(|w| self.word_str(w)).collect::<Vec<_>>().join(" ⊗ ");
                if c.is_one() {
                    format!("({factors})")
                } else {
                    format!("{}*({factors})", scalar_factor(c))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}
