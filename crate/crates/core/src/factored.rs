//! Signed monomials times products of cyclotomic-style factors `(1 - x^e)`.
//!
//! A [`QFactored`] value is `sign * x^p * prod (1 - x^e)^m_e` with integer
//! multiplicities, which makes Pochhammer ratios and q-binomial quotients
//! exact group operations on exponent maps. Only at the end is a value
//! expanded into a [`LaurentPoly`].

use std::collections::BTreeMap;
use std::ops::Mul;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::rational::RationalFunction;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QFactored {
    zero: bool,
    negative: bool,
    x_power: i64,
    /// Keys are >= 1, values are nonzero.
    factors: BTreeMap<i64, i64>,
}

impl QFactored {
    pub fn zero() -> Self {
        Self {
            zero: true,
            negative: false,
            x_power: 0,
            factors: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(false, 0)
    }

    /// `+-x^p`.
    pub fn monomial(negative: bool, x_power: i64) -> Self {
        Self {
            zero: false,
            negative,
            x_power,
            factors: BTreeMap::new(),
        }
    }

    /// The single factor `1 - x^e`, normalized so the stored key is positive:
    /// `1 - x^(-e) = -x^(-e) (1 - x^e)` and `1 - x^0 = 0`.
    pub fn one_minus(e: i64) -> Self {
        match e {
            0 => Self::zero(),
            e if e > 0 => Self {
                zero: false,
                negative: false,
                x_power: 0,
                factors: BTreeMap::from([(e, 1)]),
            },
            e => Self {
                zero: false,
                negative: true,
                x_power: e,
                factors: BTreeMap::from([(-e, 1)]),
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    /// `-1`, `0` or `1`.
    pub fn sign(&self) -> i32 {
        match (self.zero, self.negative) {
            (true, _) => 0,
            (false, true) => -1,
            (false, false) => 1,
        }
    }

    pub fn x_power(&self) -> i64 {
        self.x_power
    }

    pub fn multiplicity(&self, e: i64) -> i64 {
        self.factors.get(&e).copied().unwrap_or(0)
    }

    /// `(e, multiplicity)` pairs in increasing `e`.
    pub fn factors(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.factors.iter().map(|(&e, &m)| (e, m))
    }

    pub fn negate(&self) -> Self {
        if self.zero {
            return Self::zero();
        }
        Self {
            negative: !self.negative,
            ..self.clone()
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.zero {
            return Err(Error::DivisionByZero);
        }
        Ok(Self {
            zero: false,
            negative: self.negative,
            x_power: -self.x_power,
            factors: self.factors.iter().map(|(&e, &m)| (e, -m)).collect(),
        })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inverse()?)
    }

    pub fn powi(&self, n: i64) -> Result<Self> {
        if n < 0 {
            return self.inverse()?.powi(-n);
        }
        if self.zero {
            return Ok(if n == 0 { Self::one() } else { Self::zero() });
        }
        Ok(Self {
            zero: false,
            negative: self.negative && n % 2 == 1,
            x_power: self.x_power * n,
            factors: if n == 0 {
                BTreeMap::new()
            } else {
                self.factors.iter().map(|(&e, &m)| (e, m * n)).collect()
            },
        })
    }

    /// The part with negative multiplicities, as a positive product
    /// `prod (1 - x^e)^(-m_e)`.
    pub fn denominator(&self) -> Self {
        let factors: BTreeMap<i64, i64> = self
            .factors
            .iter()
            .filter(|(_, &m)| m < 0)
            .map(|(&e, &m)| (e, -m))
            .collect();
        Self {
            zero: false,
            negative: false,
            x_power: 0,
            factors,
        }
    }

    /// Expands into a Laurent polynomial. Negative multiplicities are handled
    /// by exact division; `NotPolynomial` if the value is not a polynomial.
    pub fn expand(&self) -> Result<LaurentPoly> {
        if self.zero {
            return Ok(LaurentPoly::zero());
        }
        let mut p = LaurentPoly::monomial(if self.negative { -1 } else { 1 }, self.x_power);
        for (&e, &m) in &self.factors {
            for _ in 0..m.max(0) {
                p = p.mul_one_minus(e);
            }
        }
        // Largest divisors first: they shrink the polynomial fastest.
        for (&e, &m) in self.factors.iter().rev() {
            for _ in 0..(-m).max(0) {
                p = p.div_one_minus(e).map_err(|_| Error::NotPolynomial)?;
            }
        }
        Ok(p)
    }

    /// Positive multiplicities go to the numerator, negative ones to the
    /// denominator; sign and monomial stay in the numerator.
    pub fn to_rational(&self) -> RationalFunction {
        if self.zero {
            return RationalFunction::zero();
        }
        let mut num = LaurentPoly::monomial(if self.negative { -1 } else { 1 }, self.x_power);
        let mut den = LaurentPoly::one();
        for (&e, &m) in &self.factors {
            for _ in 0..m.abs() {
                if m > 0 {
                    num = num.mul_one_minus(e);
                } else {
                    den = den.mul_one_minus(e);
                }
            }
        }
        RationalFunction::new(num, den).expect("product of (1 - x^e) is nonzero")
    }
}

impl Mul for &QFactored {
    type Output = QFactored;

    fn mul(self, rhs: &QFactored) -> QFactored {
        if self.zero || rhs.zero {
            return QFactored::zero();
        }
        let mut factors = self.factors.clone();
        for (&e, &m) in &rhs.factors {
            let entry = factors.entry(e).or_insert(0);
            *entry += m;
            if *entry == 0 {
                factors.remove(&e);
            }
        }
        QFactored {
            zero: false,
            negative: self.negative != rhs.negative,
            x_power: self.x_power + rhs.x_power,
            factors,
        }
    }
}

impl Mul for QFactored {
    type Output = QFactored;

    fn mul(self, rhs: QFactored) -> QFactored {
        &self * &rhs
    }
}

impl std::iter::Product for QFactored {
    fn product<I: Iterator<Item = QFactored>>(iter: I) -> Self {
        iter.fold(QFactored::one(), |acc, f| &acc * &f)
    }
}
