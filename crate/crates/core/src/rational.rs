//! Unreduced fractions of Laurent polynomials, compared by cross-multiplication.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, RenderStyle};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunction {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self { num, den })
    }

    pub fn zero() -> Self {
        LaurentPoly::zero().into()
    }

    pub fn one() -> Self {
        LaurentPoly::one().into()
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial value, if the denominator divides the numerator.
    pub fn to_poly(&self) -> Result<LaurentPoly> {
        self.num.exact_div(&self.den)
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn render(&self, style: RenderStyle) -> String {
        match style {
            RenderStyle::Json => serde_json::to_string(self).expect("rational JSON"),
            RenderStyle::Plain => {
                if self.den.is_one() {
                    self.num.render(style)
                } else {
                    format!("({})/({})", self.num.render(style), self.den.render(style))
                }
            }
            RenderStyle::Latex => {
                if self.den.is_one() {
                    self.num.render(style)
                } else {
                    format!("\\frac{{{}}}{{{}}}", self.num.render(style), self.den.render(style))
                }
            }
        }
    }
}

impl From<LaurentPoly> for RationalFunction {
    fn from(num: LaurentPoly) -> Self {
        Self {
            num,
            den: LaurentPoly::one(),
        }
    }
}

/// `a/b == c/d` iff `a*d == c*b`.
impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RationalFunction {}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(RenderStyle::Plain))
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;

    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction {
                num: &self.num + &rhs.num,
                den: self.den.clone(),
            };
        }
        RationalFunction {
            num: &self.num * &rhs.den + &rhs.num * &self.den,
            den: &self.den * &rhs.den,
        }
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;

    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;

    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;

    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction {
            num: &self.num * &rhs.num,
            den: &self.den * &rhs.den,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    fn rf(n: &[(i64, i64)], d: &[(i64, i64)]) -> RationalFunction {
        RationalFunction::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn cross_multiplied_equality() {
        assert_eq!(rf(&[(2, 1), (0, -1)], &[(1, 1), (0, -1)]), rf(&[(1, 1), (0, 1)], &[(0, 1)]));
        let a = rf(&[(3, 2), (-1, 1)], &[(0, 1)]);
        assert_eq!(a, a.clone());
        assert_ne!(rf(&[(0, 1)], &[(1, 1), (0, -1)]), rf(&[(0, 1)], &[(1, 1), (0, 1)]));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RationalFunction::new(LaurentPoly::one(), LaurentPoly::zero()).unwrap_err(),
            Error::DivisionByZero
        );
    }

    #[test]
    fn field_operations() {
        let a = rf(&[(0, 1)], &[(0, 1), (2, -1)]);
        let b = rf(&[(1, 1)], &[(0, 1), (2, 1)]);
        let s = &a + &b;
        assert_eq!(&s - &b, a);
        let prod = &a * &b;
        assert_eq!(&prod * &b.recip().unwrap(), a);
        // 1/(1-x) - x/(1-x) = 1
        let c = rf(&[(0, 1)], &[(0, 1), (1, -1)]);
        let d = rf(&[(1, 1)], &[(0, 1), (1, -1)]);
        assert_eq!((&c - &d).to_poly().unwrap(), LaurentPoly::one());
    }

    #[test]
    fn rendering() {
        let a = rf(&[(0, 1)], &[(0, 1), (2, -1)]);
        assert_eq!(a.render(RenderStyle::Plain), "(1)/(-q + 1)");
        assert_eq!(a.render(RenderStyle::Json), r#"{"num":[[0,"1"]],"den":[[2,"-1"],[0,"1"]]}"#);
        assert_eq!(RationalFunction::from(p(&[(2, 3)])).render(RenderStyle::Plain), "3*q");
    }
}
