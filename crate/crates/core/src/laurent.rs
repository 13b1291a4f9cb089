//! Laurent polynomials in `x = q^(1/2)` with arbitrary-precision integer
//! coefficients.
//!
//! Every exponent counts half-steps of `q`, so the symmetric brackets
//! `q^(a/2) - q^(-a/2)` stay integral. Storage is dense between the lowest and
//! highest nonzero term; both ends are trimmed, which keeps the derived
//! equality identical to equality of the term mappings.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Output style for [`LaurentPoly::render`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderStyle {
    Plain,
    Latex,
    Json,
}

/// An exact Laurent polynomial `sum c_e x^e`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    /// Exponent of `coeffs[0]`; zero for the zero polynomial.
    low: i64,
    /// Empty for zero, otherwise first and last entries are nonzero.
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `coeff * x^e`; a zero coefficient gives the zero polynomial.
    pub fn monomial(coeff: impl Into<BigInt>, e: i64) -> Self {
        let coeff = coeff.into();
        if coeff.is_zero() {
            return Self::zero();
        }
        Self {
            low: e,
            coeffs: vec![coeff],
        }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs in any order.
    /// Repeated exponents are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let terms: Vec<(i64, BigInt)> = terms.into_iter().map(|(e, c)| (e, c.into())).collect();
        let (Some(lo), Some(hi)) = (
            terms.iter().map(|t| t.0).min(),
            terms.iter().map(|t| t.0).max(),
        ) else {
            return Self::zero();
        };
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - lo) as usize] += c;
        }
        Self::from_dense(lo, coeffs)
    }

    /// Trims zeros at both ends.
    pub(crate) fn from_dense(low: i64, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead);
        Self {
            low: low + lead as i64,
            coeffs,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn min_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn max_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        let i = e - self.low;
        if i < 0 || i >= self.coeffs.len() as i64 {
            return BigInt::zero();
        }
        self.coeffs[i as usize].clone()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        let low = self.low;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (low + i as i64, c))
    }

    /// Substitutes `x -> 1/x`.
    pub fn reverse(&self) -> Self {
        match self.max_exponent() {
            None => Self::zero(),
            Some(hi) => {
                let coeffs = self.coeffs.iter().rev().cloned().collect();
                Self { low: -hi, coeffs }
            }
        }
    }

    /// Value at `x = 1`, i.e. the `q -> 1` specialization.
    pub fn coeff_sum(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Multiplies by `x^e`.
    pub fn shift(&self, e: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            low: self.low + e,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            low: self.low,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by `(1 - x^e)` for `e >= 1` in linear time.
    pub fn mul_one_minus(&self, e: i64) -> Self {
        assert!(e >= 1, "mul_one_minus needs a positive exponent");
        if self.is_zero() {
            return Self::zero();
        }
        let e = e as usize;
        let n = self.coeffs.len();
        let mut out = vec![BigInt::zero(); n + e];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
            out[i + e] -= c;
        }
        Self::from_dense(self.low, out)
    }

    /// Exact division by `(1 - x^e)` for `e >= 1`, in linear time.
    pub fn div_one_minus(&self, e: i64) -> Result<Self> {
        assert!(e >= 1, "div_one_minus needs a positive exponent");
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let e = e as usize;
        let n = self.coeffs.len();
        if n <= e {
            return Err(Error::NotDivisible);
        }
        // a_i = q_i - q_{i-e}  =>  q_i = a_i + q_{i-e}
        let qlen = n - e;
        let mut q: Vec<BigInt> = Vec::with_capacity(qlen);
        for i in 0..qlen {
            let mut v = self.coeffs[i].clone();
            if i >= e {
                v += &q[i - e];
            }
            q.push(v);
        }
        for i in qlen..n {
            // a_i = -q_{i-e} on the top e positions
            let expected = if i >= e { -&q[i - e] } else { BigInt::zero() };
            if self.coeffs[i] != expected {
                return Err(Error::NotDivisible);
            }
        }
        Ok(Self::from_dense(self.low, q))
    }

    /// Returns `q` with `self = q * divisor`.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let (n, m) = (self.coeffs.len(), divisor.coeffs.len());
        if n < m {
            return Err(Error::NotDivisible);
        }
        let lead = &divisor.coeffs[0];
        let qlen = n - m + 1;
        let mut rem = self.coeffs.clone();
        let mut quot = Vec::with_capacity(qlen);
        for i in 0..qlen {
            if rem[i].is_zero() {
                quot.push(BigInt::zero());
                continue;
            }
            if !(&rem[i] % lead).is_zero() {
                return Err(Error::NotDivisible);
            }
            let t = &rem[i] / lead;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[i + j] -= &t * d;
                }
            }
            quot.push(t);
        }
        if rem[qlen..].iter().any(|c| !c.is_zero()) {
            return Err(Error::NotDivisible);
        }
        Ok(Self::from_dense(self.low - divisor.low, quot))
    }

    pub fn render(&self, style: RenderStyle) -> String {
        match style {
            RenderStyle::Plain => self.render_plain(),
            RenderStyle::Latex => self.render_latex(),
            RenderStyle::Json => serde_json::to_string(self).expect("polynomial JSON"),
        }
    }

    fn render_plain(&self) -> String {
        render_terms(self, |e| match (e % 2 == 0, e / 2) {
            (true, 0) => None,
            (true, 1) => Some("q".to_string()),
            (true, p) if p > 0 => Some(format!("q^{p}")),
            (true, p) => Some(format!("q^({p})")),
            (false, _) => Some(format!("q^({e}/2)")),
        }, "*")
    }

    fn render_latex(&self) -> String {
        render_terms(self, |e| match (e % 2 == 0, e / 2) {
            (true, 0) => None,
            (true, 1) => Some("q".to_string()),
            (true, p) => Some(format!("q^{{{p}}}")),
            (false, _) => Some(format!("q^{{{e}/2}}")),
        }, "")
    }

    /// Parses the JSON pair-list form.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))
    }
}

/// Shared plain/LaTeX layout: decreasing exponents, signs folded into the
/// separators, unit coefficients dropped in front of a power of `q`.
fn render_terms(p: &LaurentPoly, power: impl Fn(i64) -> Option<String>, times: &str) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (e, c)) in p.terms().rev().enumerate() {
        let negative = c.is_negative();
        let sep = match (i, negative) {
            (0, false) => "",
            (0, true) => "-",
            (_, false) => " + ",
            (_, true) => " - ",
        };
        out.push_str(sep);
        let abs = c.abs();
        match power(e) {
            None => out.push_str(&abs.to_string()),
            Some(pw) if abs.is_one() => out.push_str(&pw),
            Some(pw) => {
                out.push_str(&abs.to_string());
                out.push_str(times);
                out.push_str(&pw);
            }
        }
    }
    out
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self.render_plain())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_plain())
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.term_count()))?;
        for (e, c) in self.terms().rev() {
            seq.serialize_element(&(e, c.to_string()))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct PairsVisitor;

        impl<'de> Visitor<'de> for PairsVisitor {
            type Value = LaurentPoly;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an array of [exponent, \"coefficient\"] pairs")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<LaurentPoly, A::Error> {
                let mut terms = Vec::new();
                while let Some((e, c)) = seq.next_element::<(i64, String)>()? {
                    let c: BigInt = c
                        .parse()
                        .map_err(|_| de::Error::custom(format!("bad coefficient {c:?}")))?;
                    terms.push((e, c));
                }
                Ok(LaurentPoly::from_terms(terms))
            }
        }

        deserializer.deserialize_seq(PairsVisitor)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::monomial(c, 0)
    }
}

impl From<BigInt> for LaurentPoly {
    fn from(c: BigInt) -> Self {
        Self::monomial(c, 0)
    }
}

impl<'a> Add<&'a LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let hi = self.max_exponent().max(rhs.max_exponent()).unwrap();
        let mut out = vec![BigInt::zero(); (hi - low + 1) as usize];
        for p in [self, rhs] {
            let off = (p.low - low) as usize;
            for (i, c) in p.coeffs.iter().enumerate() {
                out[off + i] += c;
            }
        }
        LaurentPoly::from_dense(low, out)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;

    fn neg(mut self) -> LaurentPoly {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl<'a> Sub<&'a LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        LaurentPoly::from_dense(self.low + rhs.low, out)
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &'a LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self + rhs;
    }
}

impl AddAssign for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        *self = &*self + &rhs;
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self - rhs;
    }
}

impl Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |acc, p| acc + p)
    }
}

impl<'a> Sum<&'a LaurentPoly> for LaurentPoly {
    fn sum<I: Iterator<Item = &'a LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |acc, p| acc + p)
    }
}

impl Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::one(), |acc, p| acc * p)
    }
}
