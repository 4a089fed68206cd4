//! FRT construction of a 2×2 matrix quantum group from an R-matrix.

use indexmap::IndexMap;

use super::config::{FrtConfig, InstanceConfig, RuleConfig, TensorTermConfig, TermConfig};
use super::{verify_hopf_axioms, Algebra, AlgebraError};
use crate::linalg::Matrix;
use crate::qscalar::QScalar;

/// The standard GL_q(2) R-matrix with rows and columns ordered 11, 12, 21, 22.
pub fn standard_r_matrix() -> Vec<Vec<QScalar>> {
    let q = QScalar::q();
    let z = QScalar::zero;
    let o = QScalar::one;
    vec![
        vec![q.clone(), z(), z(), z()],
        vec![z(), o(), z(), z()],
        vec![z(), QScalar::lambda(), o(), z()],
        vec![z(), z(), z(), q],
    ]
}

fn r_at(r: &[Vec<QScalar>], i: usize, j: usize, k: usize, l: usize) -> &QScalar {
    &r[2 * i + j][2 * k + l]
}

/// Checks `R12 R13 R23 = R23 R13 R12` on the threefold tensor square.
fn check_yang_baxter(r: &[Vec<QScalar>]) -> Result<(), AlgebraError> {
    let split = |x: usize| (x / 4, (x / 2) % 2, x % 2);
    let d = |a: usize, b: usize| if a == b { QScalar::one() } else { QScalar::zero() };
    let r12 = Matrix::from_fn(8, 8, |x, y| {
        let ((a, b, c), (e, f, g)) = (split(x), split(y));
        r_at(r, a, b, e, f) * &d(c, g)
    });
    let r23 = Matrix::from_fn(8, 8, |x, y| {
        let ((a, b, c), (e, f, g)) = (split(x), split(y));
        r_at(r, b, c, f, g) * &d(a, e)
    });
    let r13 = Matrix::from_fn(8, 8, |x, y| {
        let ((a, b, c), (e, f, g)) = (split(x), split(y));
        r_at(r, a, c, e, g) * &d(b, f)
    });
    let lhs = r12.mul(&r13).mul(&r23);
    let rhs = r23.mul(&r13).mul(&r12);
    if let Some((x, y)) = lhs.first_difference(&rhs) {
        return Err(AlgebraError::YangBaxter(format!("({x},{y})")));
    }
    Ok(())
}

fn term(c: &QScalar, word: &[&str]) -> TermConfig {
    TermConfig {
        coeff: c.to_string(),
        word: word.iter().map(|s| s.to_string()).collect(),
    }
}

/// Builds the FRT presentation for a 4×4 R-matrix.
///
/// `names` lists T¹₁, T¹₂, T²₁, T²₂, then the determinant and its inverse.
/// Generators are ordered T¹₁, T²₂, T¹₂, T²₁, det, det⁻¹ so that the
/// deglex order orients every relation.
pub fn build_frt_instance(r: &[Vec<QScalar>], names: &[&str]) -> Result<InstanceConfig, AlgebraError> {
    if r.len() != 4 || r.iter().any(|row| row.len() != 4) {
        return Err(AlgebraError::Unsupported(
            "only 2x2 quantum matrices (4x4 R-matrices) are supported".into(),
        ));
    }
    if names.len() != 6 {
        return Err(AlgebraError::Config(
            "expected six names: T11 T12 T21 T22 det det_inv".into(),
        ));
    }
    let rm = Matrix::from_rows(r.to_vec());
    if rm.inverse().is_none() {
        return Err(AlgebraError::SingularR);
    }
    check_yang_baxter(r)?;

    let (t11, t12, t21, t22, det, det_inv) = (names[0], names[1], names[2], names[3], names[4], names[5]);
    let tname = [[t11, t12], [t21, t22]];
    let generators: Vec<String> = [t11, t22, t12, t21, det, det_inv]
        .iter()
        .map(|s| s.to_string())
        .collect();
    // Position of T^i_j in the generator order.
    let gpos = |i: usize, j: usize| [[0usize, 2], [3, 1]][i][j];

    let kappa = r_at(r, 0, 0, 0, 0)
        .checked_div(r_at(r, 0, 1, 0, 1))
        .map_err(|_| AlgebraError::Unsupported("R^{12}_{12} must be nonzero".into()))?;

    // Columns: the 16 quadratic words in T, then the single word `det`,
    // sorted in decreasing deglex order.
    let mut cols: Vec<Vec<usize>> = Vec::new();
    for x in 0..4 {
        for y in 0..4 {
            cols.push(vec![x, y]);
        }
    }
    cols.sort_by(|a, b| b.cmp(a));
    cols.push(vec![4]);
    let col_of = |w: &[usize]| cols.iter().position(|c| c.as_slice() == w).unwrap();

    let mut rows: Vec<Vec<QScalar>> = Vec::new();
    // R^{ij}_{kl} T^k_m T^l_n - T^j_l T^i_k R^{kl}_{mn} = 0
    for i in 0..2 {
        for j in 0..2 {
            for m in 0..2 {
                for n in 0..2 {
                    let mut row = vec![QScalar::zero(); cols.len()];
                    for k in 0..2 {
                        for l in 0..2 {
                            let c = r_at(r, i, j, k, l);
                            row[col_of(&[gpos(k, m), gpos(l, n)])] += c;
                            let c = r_at(r, k, l, m, n);
                            row[col_of(&[gpos(j, l), gpos(i, k)])] -= c;
                        }
                    }
                    rows.push(row);
                }
            }
        }
    }
    // T¹₁T²₂ - κ T¹₂T²₁ - det = 0
    let mut row = vec![QScalar::zero(); cols.len()];
    row[col_of(&[0, 1])] += &QScalar::one();
    row[col_of(&[2, 3])] -= &kappa;
    row[col_of(&[4])] -= &QScalar::one();
    rows.push(row);

    let mut m = Matrix::from_rows(rows);
    let pivots = m.rref();
    let name_of = |w: &[usize]| -> Vec<String> { w.iter().map(|&g| generators[g].clone()).collect() };

    let mut rules = Vec::new();
    for (ri, &pc) in pivots.iter().enumerate() {
        if cols[pc].len() != 2 {
            return Err(AlgebraError::Unsupported(
                "RTT relations force a linear relation among generators".into(),
            ));
        }
        let mut rhs = Vec::new();
        for (c, w) in cols.iter().enumerate().rev() {
            if c == pc || m[(ri, c)].is_zero() {
                continue;
            }
            rhs.push(TermConfig {
                coeff: (-&m[(ri, c)]).to_string(),
                word: name_of(w),
            });
        }
        rules.push(RuleConfig {
            lhs: name_of(&cols[pc]),
            rhs,
        });
    }
    rules.sort_by_key(|r| {
        r.lhs
            .iter()
            .map(|s| generators.iter().position(|g| g == s).unwrap())
            .collect::<Vec<_>>()
    });
    for central in [det, det_inv] {
        for x in [t11, t22, t12, t21] {
            rules.push(RuleConfig {
                lhs: vec![central.to_string(), x.to_string()],
                rhs: vec![term(&QScalar::one(), &[x, central])],
            });
        }
    }
    rules.push(RuleConfig {
        lhs: vec![det.to_string(), det_inv.to_string()],
        rhs: vec![term(&QScalar::one(), &[])],
    });
    rules.push(RuleConfig {
        lhs: vec![det_inv.to_string(), det.to_string()],
        rhs: vec![term(&QScalar::one(), &[])],
    });

    let one = QScalar::one();
    let mut coproduct = IndexMap::new();
    let mut counit = IndexMap::new();
    for (i, j) in [(0, 0), (1, 1), (0, 1), (1, 0)] {
        let terms = (0..2)
            .map(|k| TensorTermConfig {
                coeff: one.to_string(),
                left: vec![tname[i][k].to_string()],
                right: vec![tname[k][j].to_string()],
            })
            .collect();
        coproduct.insert(tname[i][j].to_string(), terms);
        counit.insert(tname[i][j].to_string(), if i == j { "1" } else { "0" }.to_string());
    }
    for g in [det, det_inv] {
        coproduct.insert(
            g.to_string(),
            vec![TensorTermConfig {
                coeff: one.to_string(),
                left: vec![g.to_string()],
                right: vec![g.to_string()],
            }],
        );
        counit.insert(g.to_string(), "1".to_string());
    }

    let kinv = kappa.inv()?;
    let neg = |c: &QScalar| -c;
    let mut antipode = IndexMap::new();
    antipode.insert(t11.to_string(), vec![term(&one, &[t22, det_inv])]);
    antipode.insert(t22.to_string(), vec![term(&one, &[t11, det_inv])]);
    antipode.insert(t12.to_string(), vec![term(&neg(&kinv), &[t12, det_inv])]);
    antipode.insert(t21.to_string(), vec![term(&neg(&kappa), &[t21, det_inv])]);
    antipode.insert(det.to_string(), vec![term(&one, &[det_inv])]);
    antipode.insert(det_inv.to_string(), vec![term(&one, &[det])]);
    let mut antipode_inv = IndexMap::new();
    antipode_inv.insert(t11.to_string(), vec![term(&one, &[t22, det_inv])]);
    antipode_inv.insert(t22.to_string(), vec![term(&one, &[t11, det_inv])]);
    antipode_inv.insert(t12.to_string(), vec![term(&neg(&kappa), &[t12, det_inv])]);
    antipode_inv.insert(t21.to_string(), vec![term(&neg(&kinv), &[t21, det_inv])]);
    antipode_inv.insert(det.to_string(), vec![term(&one, &[det_inv])]);
    antipode_inv.insert(det_inv.to_string(), vec![term(&one, &[det])]);

    let cfg = InstanceConfig {
        generators,
        rules,
        coproduct,
        counit,
        antipode,
        antipode_inv,
        frt: Some(FrtConfig {
            r: r.iter()
                .map(|row| row.iter().map(|x| x.to_string()).collect())
                .collect(),
            t: tname
                .iter()
                .map(|row| row.iter().map(|s| s.to_string()).collect())
                .collect(),
            det: det.to_string(),
            det_inv: det_inv.to_string(),
            det_expr: vec![term(&one, &[t11, t22]), term(&neg(&kappa), &[t12, t21])],
        }),
    };

    let alg = Algebra::from_config(cfg.clone())?;
    let report = verify_hopf_axioms(&alg);
    if let Some(bad) = report.failures().next() {
        return Err(AlgebraError::HopfAxioms(format!(
            "{} fails on {}",
            bad.check,
            bad.witness.clone().unwrap_or_default()
        )));
    }
    Ok(cfg)
}

/// The bundled GL_q(2) instance with generators a, b, c, d, det, det_inv.
pub fn gl_q2() -> InstanceConfig {
    build_frt_instance(&standard_r_matrix(), &["a", "b", "c", "d", "det", "det_inv"]).expect("standard R-matrix builds")
}
