//! The `expressions` suite: identities written in the expression language.

use num_rational::BigRational;

use qcartan_core::cartan::Cartan;
use qcartan_core::report::{CheckRow, Report};

use crate::dsl::{parse, Expr, ParseError};
use crate::eval::{EvalError, Evaluator};

pub const SUITE: &str = "expressions";

/// `(name, lhs, rhs)`
pub const IDENTITIES: &[(&str, &str, &str)] = &[
    ("pairing-diagonal", "bracket(t[1,1], omega[1,1])", "1"),
    ("pairing-off-diagonal", "bracket(t[1,1], omega[1,2])", "0"),
    ("right-pairing-diagonal", "bracket(h[2,1], eta[2,1])", "1"),
    ("leibniz", "d(a * b)", "d(a) * b + a * d(b)"),
    ("leibniz-mixed", "d(c * det_inv)", "d(c) * det_inv + c * d(det_inv)"),
    ("d-squared", "d(d(b))", "0"),
    ("d-squared-on-forms", "d(d(omega[1,2] * c))", "0"),
    ("field-is-left-convolution", "conv(chi[1,2], a * c)", "t[1,2](a * c)"),
    (
        "right-field-is-right-convolution",
        "conv(b * d, chi[2,1])",
        "h[2,1](b * d)",
    ),
    ("chi-kills-unit", "chi[2,2](1)", "0"),
    ("counit-convolution", "conv(eps, a * b)", "a * b"),
    ("twist-inverse", "twist(S, twist(Sinv, chi[1,2]))", "chi[1,2]"),
    ("contract-exact", "i(t[2,2], d(b * c))", "t[2,2](b * c)"),
    ("lie-on-functions", "lie(t[1,1], a)", "t[1,1](a)"),
    ("lie-commutes-with-d", "lie(t[1,2], d(c))", "d(lie(t[1,2], c))"),
    (
        "cartan-magic-formula",
        "lie(t[1,1], omega[2,2])",
        "i(t[1,1], d(omega[2,2])) + d(i(t[1,1], omega[2,2]))",
    ),
    ("right-lie-on-exact-forms", "lieR([1,1], d(a))", "lie(t[1,1], d(a))"),
    ("projection", "P(omega[1,2] * (a + 2))", "3 * omega[1,2]"),
    ("q-arithmetic", "(q - q^-1) * (q + q^-1)", "q^2 - q^-2"),
    ("scalar-division", "(q^2 - 1) / (q - 1)", "q + 1"),
];

/// Expressions that must parse, print and reparse to the same tree.
pub const ROUND_TRIP: &[&str] = &[
    "q^-1 * a * b + (q - q^-1) * c * d",
    "bracket(t[1,1], omega[1,1])",
    "gbracket(t[2,1], wedge(omega[1,1], omega[2,2]))",
    "tensor(omega[1,1], omega[1,2]) * a - -b * omega[2,1]",
    "DI([1,1], [2,2], a * d)",
    "delta(lie[1,1] * i[2,1] * d)",
    "conv(twist(S, f[1,1,2,2]), Lp[1,2])",
    "M[1,2,2,1] - N[2,1,1,2]^2",
];

fn run_err(e: impl std::fmt::Display) -> String {
    format!("error: {e}")
}

fn compare(
    ev: &Evaluator<'_>,
    lhs: &Expr,
    rhs: &Expr,
    q0: Option<&BigRational>,
) -> Result<(String, String, bool), EvalError> {
    let (l, r) = (ev.eval(lhs)?, ev.eval(rhs)?);
    let equal = ev.equal(&l, &r, q0)?;
    Ok((ev.show(&l), ev.show(&r), equal))
}

/// Parses every identity; the first failure is a configuration error.
pub fn parsed() -> Result<Vec<(&'static str, Expr, Expr)>, ParseError> {
    IDENTITIES
        .iter()
        .map(|(name, l, r)| Ok((*name, parse(l)?, parse(r)?)))
        .collect()
}

pub fn run(cartan: &Cartan, q0: Option<&BigRational>) -> Result<Report, ParseError> {
    let ev = Evaluator::new(cartan);
    let mut rep = Report::new();
    for (name, lhs, rhs) in parsed()? {
        let check = format!("{SUITE}/{name}");
        let stated = format!("{lhs} = {rhs}");
        rep.push(match compare(&ev, &lhs, &rhs, q0) {
            Ok((l, r, eq)) => CheckRow::new(check, l, r, eq).with_witness(stated),
            Err(e) => CheckRow::new(check, lhs.to_string(), rhs.to_string(), false)
                .with_witness(format!("{stated}; {}", run_err(e))),
        });
    }
    for src in ROUND_TRIP {
        let check = format!("{SUITE}/print-parse-round-trip");
        let row = match parse(src) {
            Ok(e) => {
                let printed = e.to_string();
                match parse(&printed) {
                    Ok(back) => CheckRow::new(check, src.to_string(), printed, back == e).with_witness(*src),
                    Err(err) => CheckRow::new(check, src.to_string(), printed, false).with_witness(run_err(err)),
                }
            }
            Err(err) => CheckRow::new(check, src.to_string(), String::new(), false).with_witness(run_err(err)),
        };
        rep.push(row);
    }
    Ok(rep)
}
