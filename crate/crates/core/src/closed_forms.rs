//! Closed-form right-hand sides, assembled in factored form and expanded once.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factored::QFactored;
use crate::laurent::LaurentPoly;
use crate::qbinomial::{q_binomial_factored, q_binomial_general_factored, q_int, QBinomialArgs};

fn binom(n: i64, k: i64) -> QFactored {
    q_binomial_factored(QBinomialArgs { n, k })
}

fn ratio(a: i64, b: i64) -> QFactored {
    q_int(a).checked_div(&q_int(b)).expect("bracket denominators are nonzero")
}

fn expand(f: QFactored) -> Result<LaurentPoly> {
    f.expand().map_err(|_| Error::NotPolynomial)
}

/// `[D]_q / [k0]_q * [D - d1 + k0 - 1 choose k0 - 1]_q * [d1 - 1 choose k0 - 1]_q`,
/// the closed form of the refined sum `f(D/2, d1, k0)` for `1 <= k0 <= d1`.
pub fn prop3_rhs(doubled_d0: i64, d1: i64, k0: i64) -> Result<LaurentPoly> {
    if !(1 <= k0 && k0 <= d1) {
        return Err(Error::InvalidHypothesis(format!(
            "needs 1 <= k0 <= d1 (got d1={d1}, k0={k0})"
        )));
    }
    let f = &(&ratio(doubled_d0, k0) * &q_binomial_general_factored(doubled_d0 - d1 + k0 - 1, k0 - 1))
        * &q_binomial_general_factored(d1 - 1, k0 - 1);
    expand(f)
}

/// `[2 d0]_q / [d0]_q * [d0 choose d1]_q * [d0 + d1 - 1 choose d0]_q` for `d0 > d1 >= 1`.
pub fn theorem1_rhs(d0: i64, d1: i64) -> Result<LaurentPoly> {
    if !(d0 > d1 && d1 >= 1) {
        return Err(Error::InvalidHypothesis(format!(
            "thm1 needs d0 > d1 >= 1 (got d0={d0}, d1={d1})"
        )));
    }
    expand(&(&ratio(2 * d0, d0) * &binom(d0, d1)) * &binom(d0 + d1 - 1, d0))
}

/// `[2 d1 + d2]_q / [d2]_q * [d1 + d2 - 1 choose d1]_q^2` for `d1, d2 >= 1`.
/// The second spelling `[d1 + d2 - 1 choose d2 - 1]_q^2` is computed too and
/// must agree.
pub fn theorem2_rhs(d1: i64, d2: i64) -> Result<LaurentPoly> {
    if !(d1 >= 1 && d2 >= 1) {
        return Err(Error::InvalidHypothesis(format!(
            "thm2 needs d1 >= 1 and d2 >= 1 (got d1={d1}, d2={d2})"
        )));
    }
    let prefactor = ratio(2 * d1 + d2, d2);
    let theorem_form = expand(&prefactor * &binom(d1 + d2 - 1, d1).powi(2)?)?;
    let series_form = expand(&prefactor * &binom(d1 + d2 - 1, d2 - 1).powi(2)?)?;
    if theorem_form != series_form {
        return Err(Error::RouteMismatch(format!(
            "binomial spellings of the thm2 closed form at d1={d1}, d2={d2}"
        )));
    }
    Ok(theorem_form)
}

/// Looijenga pairs with a closed-form log generating series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SurfaceTag {
    #[serde(rename = "dP1_04")]
    Dp1_04,
    #[serde(rename = "F0_04")]
    F0_04,
}

impl SurfaceTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            SurfaceTag::Dp1_04 => "dP1_04",
            SurfaceTag::F0_04 => "F0_04",
        }
    }
}

impl fmt::Display for SurfaceTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SurfaceTag {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "dP1_04" => Ok(SurfaceTag::Dp1_04),
            "F0_04" => Ok(SurfaceTag::F0_04),
            other => Err(format!("unknown surface {other:?} (expected dP1_04 or F0_04)")),
        }
    }
}

/// The generating-series value for `surface` at degree `(p, r)`:
/// `(d0, d1)` for dP1(0,4) and `(d1, d2)` for F0(0,4).
///
/// dP1(0,4) is written with `[d0 + d1 - 1 choose d1 - 1]_q`, thm1 with
/// `[d0 + d1 - 1 choose d0]_q`; both are computed and compared.
pub fn nlog_value(surface: SurfaceTag, p: i64, r: i64) -> Result<LaurentPoly> {
    match surface {
        SurfaceTag::Dp1_04 => {
            let (d0, d1) = (p, r);
            let theorem = theorem1_rhs(d0, d1)?;
            let series = expand(&(&ratio(2 * d0, d0) * &binom(d0, d1)) * &binom(d0 + d1 - 1, d1 - 1))?;
            if theorem != series {
                return Err(Error::RouteMismatch(format!("dP1_04 spellings at d0={d0}, d1={d1}")));
            }
            Ok(series)
        }
        SurfaceTag::F0_04 => theorem2_rhs(p, r),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qbinomial::qbinom;
    use num_bigint::BigInt;

    fn p(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    fn choose(n: u64, k: u64) -> BigInt {
        (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn prop3_examples() {
        for d in 1..12 {
            for d1 in 1..6 {
                assert_eq!(prop3_rhs(d, d1, 1).unwrap(), qbinom(d, 1));
            }
        }
        assert_eq!(prop3_rhs(8, 2, 2).unwrap(), qbinom(8, 2));
        let direct = ratio(8, 2).expand().unwrap() * qbinom(7, 1) * qbinom(1, 1);
        assert_eq!(prop3_rhs(8, 2, 2).unwrap(), direct);
        assert!(matches!(prop3_rhs(8, 3, 4), Err(Error::InvalidHypothesis(_))));
        assert!(matches!(prop3_rhs(8, 3, 0), Err(Error::InvalidHypothesis(_))));
    }

    #[test]
    fn theorem1_examples() {
        let two_one = p(&[(3, 1), (1, 1), (-1, 1), (-3, 1)]);
        assert_eq!(theorem1_rhs(2, 1).unwrap(), two_one);
        let three_one = p(&[(3, 1), (-3, 1)]) * qbinom(3, 1) * qbinom(3, 3);
        assert_eq!(theorem1_rhs(3, 1).unwrap(), three_one);
        assert!(matches!(theorem1_rhs(2, 2), Err(Error::InvalidHypothesis(_))));
        assert_eq!(nlog_value(SurfaceTag::Dp1_04, 2, 1).unwrap(), two_one);
        assert!(matches!(nlog_value(SurfaceTag::Dp1_04, 1, 1), Err(Error::InvalidHypothesis(_))));
    }

    #[test]
    fn theorem2_examples() {
        let one_one = p(&[(2, 1), (0, 1), (-2, 1)]);
        assert_eq!(theorem2_rhs(1, 1).unwrap(), one_one);
        let one_two = p(&[(2, 1), (-2, 1)]) * p(&[(1, 1), (-1, 1)]) * p(&[(1, 1), (-1, 1)]);
        assert_eq!(theorem2_rhs(1, 2).unwrap(), one_two);
        assert!(matches!(theorem2_rhs(1, 0), Err(Error::InvalidHypothesis(_))));
        assert_eq!(nlog_value(SurfaceTag::F0_04, 1, 1).unwrap(), one_one);
    }

    #[test]
    fn bracket_ratio_is_two_term() {
        for d0 in 1..10 {
            assert_eq!(ratio(2 * d0, d0).expand().unwrap(), p(&[(d0, 1), (-d0, 1)]));
        }
    }

    #[test]
    fn spelling_equivalence() {
        for d0 in 2..=15 {
            for d1 in 1..d0 {
                assert_eq!(qbinom(d0 + d1 - 1, d1 - 1), qbinom(d0 + d1 - 1, d0));
            }
        }
        for d1 in 1..=15 {
            for d2 in 1..=15 {
                assert_eq!(qbinom(d1 + d2 - 1, d1), qbinom(d1 + d2 - 1, d2 - 1));
            }
        }
    }

    #[test]
    fn q_to_one_and_palindromes() {
        for d0 in 2..=10u64 {
            for d1 in 1..d0 {
                let v = theorem1_rhs(d0 as i64, d1 as i64).unwrap();
                assert_eq!(v.coeff_sum(), 2 * choose(d0, d1) * choose(d0 + d1 - 1, d0));
                assert_eq!(v.reverse(), v);
            }
        }
        for d1 in 1..=10u64 {
            for d2 in 1..=10u64 {
                let v = theorem2_rhs(d1 as i64, d2 as i64).unwrap();
                let c = choose(d1 + d2 - 1, d1);
                let expected = BigInt::from(2 * d1 + d2) * &c * &c / BigInt::from(d2);
                assert_eq!(v.coeff_sum(), expected);
                assert_eq!(v.reverse(), v);
            }
        }
    }

    #[test]
    fn surface_tags() {
        assert_eq!("dP1_04".parse::<SurfaceTag>().unwrap(), SurfaceTag::Dp1_04);
        assert_eq!(SurfaceTag::F0_04.to_string(), "F0_04");
        assert!("P2".parse::<SurfaceTag>().is_err());
        assert_eq!(serde_json::to_string(&SurfaceTag::Dp1_04).unwrap(), r#""dP1_04""#);
    }
}
