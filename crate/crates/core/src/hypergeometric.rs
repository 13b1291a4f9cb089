//! Terminating basic hypergeometric series with monomial parameters, and
//! Jackson's q-Pfaff-Saalschütz summation for balanced 3phi2 series.
//!
//! Every parameter is a power of `x = q^(1/2)` and is stored as its
//! x-exponent, so `q^t` is stored as `2t`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factored::QFactored;
use crate::laurent::LaurentPoly;
use crate::qbinomial::q_pochhammer;
use crate::rational::RationalFunction;

/// `_{r+1}phi_r [upper; lower; q, z]` with `z = x^z_exp`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiSeries {
    upper: Vec<i64>,
    lower: Vec<i64>,
    z_exp: i64,
}

impl PhiSeries {
    pub fn new(upper: Vec<i64>, lower: Vec<i64>, z_exp: i64) -> Result<Self> {
        if upper.len() != lower.len() + 1 {
            return Err(Error::InvalidSeries(format!(
                "need one more upper than lower parameter (got {} and {})",
                upper.len(),
                lower.len()
            )));
        }
        Ok(Self { upper, lower, z_exp })
    }

    /// Convenience constructor from q-exponents (`q^t` for each entry).
    pub fn from_q_exponents(upper: &[i64], lower: &[i64], z_q_exp: i64) -> Result<Self> {
        Self::new(
            upper.iter().map(|t| 2 * t).collect(),
            lower.iter().map(|t| 2 * t).collect(),
            2 * z_q_exp,
        )
    }

    pub fn upper(&self) -> &[i64] {
        &self.upper
    }

    pub fn lower(&self) -> &[i64] {
        &self.lower
    }

    pub fn z_exp(&self) -> i64 {
        self.z_exp
    }

    /// Smallest `N` with some upper parameter equal to `q^(-N)`.
    pub fn termination_order(&self) -> Option<u32> {
        self.upper
            .iter()
            .filter(|&&t| t <= 0 && t % 2 == 0)
            .map(|&t| (-t / 2) as u32)
            .min()
    }

    /// Fails with `PoleInDenominator` if some `(b; q)_l`, `l <= n`, vanishes.
    fn check_lower(&self, n: u32) -> Result<()> {
        if self.lower.iter().any(|&t| q_pochhammer(t, n).is_zero()) {
            return Err(Error::PoleInDenominator);
        }
        Ok(())
    }

    /// The terms `l = 0..=N` in factored form, built from the term ratio
    /// `prod (1 - a_i q^l) / ((1 - q^(l+1)) prod (1 - b_i q^l)) * z`.
    pub fn terms(&self) -> Result<Vec<QFactored>> {
        let n = self.termination_order().ok_or(Error::NonTerminating)?;
        self.check_lower(n)?;
        let mut terms = vec![QFactored::one()];
        let mut current = QFactored::one();
        for l in 0..n as i64 {
            let num: QFactored = self
                .upper
                .iter()
                .map(|&a| QFactored::one_minus(a + 2 * l))
                .product();
            if num.is_zero() {
                break;
            }
            let den: QFactored = std::iter::once(QFactored::one_minus(2 * l + 2))
                .chain(self.lower.iter().map(|&b| QFactored::one_minus(b + 2 * l)))
                .product();
            let ratio = &num.checked_div(&den)? * &QFactored::monomial(false, self.z_exp);
            current = &current * &ratio;
            terms.push(current.clone());
        }
        Ok(terms)
    }
}

/// Exact value of a terminating series as one fraction over a common
/// denominator assembled in factored form.
pub fn phi_evaluate(series: &PhiSeries) -> Result<RationalFunction> {
    let terms = series.terms()?;
    let mut common: std::collections::BTreeMap<i64, i64> = Default::default();
    for t in &terms {
        for (e, m) in t.denominator().factors() {
            let slot = common.entry(e).or_insert(0);
            *slot = (*slot).max(m);
        }
    }
    let common: QFactored = common
        .into_iter()
        .map(|(e, m)| QFactored::one_minus(e).powi(m).expect("nonzero factor"))
        .product();
    let mut num = LaurentPoly::zero();
    for t in &terms {
        num += (t * &common).expand()?;
    }
    RationalFunction::new(num, common.expand()?)
}

/// Parameters `a, b, c, N` of a Saalschützian 3phi2; exponents in x-units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SaalschutzInstance {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    #[serde(rename = "N")]
    pub n: u32,
}

impl SaalschutzInstance {
    pub fn new(a: i64, b: i64, c: i64, n: u32) -> Self {
        Self { a, b, c, n }
    }

    /// From q-exponents of `a, b, c`.
    pub fn from_q_exponents(a: i64, b: i64, c: i64, n: u32) -> Self {
        Self::new(2 * a, 2 * b, 2 * c, n)
    }

    /// x-exponent of the derived lower parameter `a b q^(1-N) / c`.
    pub fn second_lower(&self) -> i64 {
        self.a + self.b + 2 * (1 - self.n as i64) - self.c
    }

    /// `3phi2 [a, b, q^(-N); c, a b q^(1-N)/c; q, q]`.
    pub fn lhs_series(&self) -> PhiSeries {
        PhiSeries {
            upper: vec![self.a, self.b, -2 * self.n as i64],
            lower: vec![self.c, self.second_lower()],
            z_exp: 2,
        }
    }
}

/// `(c/a; q)_N (c/b; q)_N / ((c; q)_N (c/(ab); q)_N)`.
pub fn saalschutz_rhs(inst: &SaalschutzInstance) -> Result<RationalFunction> {
    let SaalschutzInstance { a, b, c, n } = *inst;
    let den = &q_pochhammer(c, n) * &q_pochhammer(c - a - b, n);
    if den.is_zero() {
        return Err(Error::PoleInDenominator);
    }
    let num = &q_pochhammer(c - a, n) * &q_pochhammer(c - b, n);
    Ok(num.checked_div(&den)?.to_rational())
}

/// Checks the summation on one instance. `Err(Degenerate)` when either side
/// has a pole, which callers report separately from failures.
pub fn verify_saalschutz(inst: &SaalschutzInstance) -> Result<bool> {
    let degenerate = |e: Error| match e {
        Error::PoleInDenominator => Error::Degenerate,
        other => other,
    };
    let lhs = phi_evaluate(&inst.lhs_series()).map_err(degenerate)?;
    let rhs = saalschutz_rhs(inst).map_err(degenerate)?;
    Ok(lhs == rhs)
}

/// Reads off `(a, b, c, N)` when `series` is a balanced terminating 3phi2
/// with `z = q`. The first terminating upper parameter plays `q^(-N)` and the
/// first lower parameter plays `c`.
pub fn match_saalschutz(series: &PhiSeries) -> Option<SaalschutzInstance> {
    if series.upper.len() != 3 || series.lower.len() != 2 || series.z_exp != 2 {
        return None;
    }
    for (i, &t) in series.upper.iter().enumerate() {
        if t > 0 || t % 2 != 0 {
            continue;
        }
        let n = (-t / 2) as u32;
        let rest: Vec<i64> = (0..3).filter(|&j| j != i).map(|j| series.upper[j]).collect();
        for (ci, di) in [(0, 1), (1, 0)] {
            let inst = SaalschutzInstance::new(rest[0], rest[1], series.lower[ci], n);
            if inst.second_lower() == series.lower[di] {
                return Some(inst);
            }
        }
    }
    None
}

pub fn is_saalschutzian(series: &PhiSeries) -> bool {
    match_saalschutz(series).is_some()
}

/// The 3phi2 from the thm1 argument:
/// `[q^(-2d1), q^(-d1), q^(1-d1); q^(1+d0-2d1), q^(1-d0-2d1); q, q]`.
pub fn theorem1_proof_series(d0: i64, d1: i64) -> PhiSeries {
    PhiSeries::from_q_exponents(&[-2 * d1, -d1, 1 - d1], &[1 + d0 - 2 * d1, 1 - d0 - 2 * d1], 1)
        .expect("3phi2 shape")
}

/// The 3phi2 from the thm2 argument:
/// `[q^(1+d1+d2), q^(1-d2), q^(1-d1); q^2, q^2; q, q]`.
pub fn theorem2_proof_series(d1: i64, d2: i64) -> PhiSeries {
    PhiSeries::from_q_exponents(&[1 + d1 + d2, 1 - d2, 1 - d1], &[2, 2], 1).expect("3phi2 shape")
}

/// The 3phi2 from the induction step of the refined sum, with `D = 2 d0`:
/// `[q^(-D+2d1-2k0 n), q^(-k0), q^(1-k0); q^(1+d1-k0-k0 n), q^(1-D+d1-k0-k0 n); q, q]`.
pub fn refined_step_series(doubled_d0: i64, d1: i64, k0: i64, n: i64) -> PhiSeries {
    PhiSeries::from_q_exponents(
        &[-doubled_d0 + 2 * d1 - 2 * k0 * n, -k0, 1 - k0],
        &[1 + d1 - k0 - k0 * n, 1 - doubled_d0 + d1 - k0 - k0 * n],
        1,
    )
    .expect("3phi2 shape")
}
