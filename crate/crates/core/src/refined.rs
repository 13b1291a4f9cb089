//! The refined partition sum `f(d0, d1, k0)` and the left-hand sides of the
//! two multivariate q-binomial theorems.
//!
//! The first argument of `f` is carried doubled (`D = 2 d0`): it only ever
//! enters through `2 d0`, and the doubling makes the half-integer instance
//! `d0 = d1 + d2/2` exact.
//!
//! Inside `f` the binomials use [`q_binomial_general`], the product formula
//! for every integer top. For the theorem instances all tops are
//! nonnegative, so nothing changes there; for small `D` the tops run negative
//! and only the product formula keeps the closed form valid.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::partition::{enumerate_indices, PartitionedIndex};
use crate::qbinomial::{q_binomial_general, qbinom};

/// Parameters of `f(D/2, d1, k0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FSumSpec {
    /// `2 d0`; odd values encode half-integer `d0`.
    pub doubled_d0: i64,
    /// Target of `sum n_i k_i`.
    pub d1: u32,
    /// Target of `sum k_i`.
    pub k0: u32,
}

impl FSumSpec {
    pub fn new(doubled_d0: i64, d1: u32, k0: u32) -> Self {
        Self { doubled_d0, d1, k0 }
    }
}

/// One summand of a left-hand side, as listed by traces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summand {
    pub index: PartitionedIndex,
    /// The trailing binomial's bottom for thm1 (`k0`) and thm2
    /// (`sum k_i`); absent for bare `f` terms.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k0: Option<u32>,
    pub term: LaurentPoly,
}

/// `sum_{j<i} (n_j - n_i) k_j` for every `i`.
fn correction_sums(idx: &PartitionedIndex) -> Vec<i64> {
    let pairs: Vec<(i64, i64)> = idx.pairs().collect();
    (0..pairs.len())
        .map(|i| pairs[..i].iter().map(|&(nj, kj)| (nj - pairs[i].0) * kj).sum())
        .collect()
}

/// `prod_i [D - 2 sum_{j<i} (n_j - n_i) k_j  choose  k_i]_q`.
pub fn f_term(doubled_d0: i64, idx: &PartitionedIndex) -> LaurentPoly {
    let mut term = LaurentPoly::one();
    for ((_, k), corr) in idx.pairs().zip(correction_sums(idx)) {
        let b = q_binomial_general(doubled_d0 - 2 * corr, k);
        if b.is_zero() {
            return LaurentPoly::zero();
        }
        term = &term * &b;
    }
    term
}

/// `f` by direct enumeration of its index set.
pub fn f_enumerated(spec: FSumSpec) -> LaurentPoly {
    f_summands(spec).into_iter().map(|s| s.term).sum::<LaurentPoly>() + empty_sum_unit(spec)
}

/// The empty index contributes the empty product when both targets are 0.
fn empty_sum_unit(spec: FSumSpec) -> LaurentPoly {
    if spec.d1 == 0 && spec.k0 == 0 {
        LaurentPoly::one()
    } else {
        LaurentPoly::zero()
    }
}

/// Per-index terms of `f`, in enumeration order.
pub fn f_summands(spec: FSumSpec) -> Vec<Summand> {
    if spec.d1 == 0 || spec.k0 == 0 || spec.k0 > spec.d1 {
        return Vec::new();
    }
    enumerate_indices(spec.d1, Some(spec.k0))
        .into_iter()
        .map(|index| Summand {
            term: f_term(spec.doubled_d0, &index),
            index,
            k0: None,
        })
        .collect()
}

/// Memo table for [`f_recursive_with`], keyed by `(D, d1, k0)`.
#[derive(Debug, Default, Clone)]
pub struct FCache {
    values: HashMap<(i64, u32, u32), LaurentPoly>,
    binomials: HashMap<(i64, i64), LaurentPoly>,
}

impl FCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn binomial(&mut self, n: i64, k: i64) -> LaurentPoly {
        self.binomials
            .entry((n, k))
            .or_insert_with(|| q_binomial_general(n, k))
            .clone()
    }
}

/// `f` through the recursion on the smallest part:
/// `f(D, d1, k0) = sum_{k=1}^{k0} sum_{n=1}^{d1/k0} f(D, d1 - n k0, k0 - k) [D - 2 d1 + 2 n k0  choose  k]`.
pub fn f_recursive(spec: FSumSpec) -> LaurentPoly {
    f_recursive_with(spec, &mut FCache::new())
}

/// [`f_recursive`] with a caller-owned cache that may be shared across calls.
pub fn f_recursive_with(spec: FSumSpec, cache: &mut FCache) -> LaurentPoly {
    let FSumSpec { doubled_d0, d1, k0 } = spec;
    if k0 == 0 {
        return if d1 == 0 { LaurentPoly::one() } else { LaurentPoly::zero() };
    }
    if d1 == 0 || k0 > d1 {
        return LaurentPoly::zero();
    }
    if let Some(v) = cache.values.get(&(doubled_d0, d1, k0)) {
        return v.clone();
    }
    let mut total = LaurentPoly::zero();
    for n in 1..=d1 / k0 {
        let rest = d1 - n * k0;
        let top = doubled_d0 - 2 * d1 as i64 + 2 * (n * k0) as i64;
        for k in 1..=k0 {
            let inner = f_recursive_with(FSumSpec::new(doubled_d0, rest, k0 - k), cache);
            if inner.is_zero() {
                continue;
            }
            total += &inner * &cache.binomial(top, k as i64);
        }
    }
    cache.values.insert((doubled_d0, d1, k0), total.clone());
    total
}

fn check_theorem1(d0: i64, d1: i64) -> Result<()> {
    if d0 > d1 && d1 >= 1 {
        Ok(())
    } else {
        Err(Error::InvalidHypothesis(format!(
            "thm1 needs d0 > d1 >= 1 (got d0={d0}, d1={d1})"
        )))
    }
}

fn check_theorem2(d1: i64, d2: i64) -> Result<()> {
    if d1 >= 1 && d2 >= 1 {
        Ok(())
    } else {
        Err(Error::InvalidHypothesis(format!(
            "thm2 needs d1 >= 1 and d2 >= 1 (got d1={d1}, d2={d2})"
        )))
    }
}

/// Summands of the thm1 left-hand side, transcribed directly: all
/// indices with `sum n_i k_i = d0 - d1`, with `k0 = d1 - sum k_i >= 0`.
pub fn theorem1_summands(d0: i64, d1: i64) -> Result<Vec<Summand>> {
    check_theorem1(d0, d1)?;
    let mut out = Vec::new();
    for index in enumerate_indices((d0 - d1) as u32, None) {
        let k0 = d1 - index.total_mult() as i64;
        if k0 < 0 {
            continue;
        }
        let mut term = qbinom(2 * d1, k0);
        for ((_, k), corr) in index.pairs().zip(correction_sums(&index)) {
            term = &term * &qbinom(2 * d0 - 2 * corr, k);
        }
        out.push(Summand {
            index,
            k0: Some(k0 as u32),
            term,
        });
    }
    Ok(out)
}

pub fn theorem1_lhs_direct(d0: i64, d1: i64) -> Result<LaurentPoly> {
    Ok(theorem1_summands(d0, d1)?.into_iter().map(|s| s.term).sum())
}

/// `sum_{k0=0}^{d1} f(d0, d0 - d1, d1 - k0) [2 d1 choose k0]`.
pub fn theorem1_lhs_refined(d0: i64, d1: i64) -> Result<LaurentPoly> {
    check_theorem1(d0, d1)?;
    Ok((0..=d1)
        .map(|k0| {
            let f = f_enumerated(FSumSpec::new(2 * d0, (d0 - d1) as u32, (d1 - k0) as u32));
            f * qbinom(2 * d1, k0)
        })
        .sum())
}

/// thm1 left-hand side; both routes are computed and must agree.
pub fn theorem1_lhs(d0: i64, d1: i64) -> Result<LaurentPoly> {
    let direct = theorem1_lhs_direct(d0, d1)?;
    let refined = theorem1_lhs_refined(d0, d1)?;
    if direct != refined {
        return Err(Error::RouteMismatch(format!("thm1 LHS at d0={d0}, d1={d1}")));
    }
    Ok(direct)
}

/// Summands of the thm2 left-hand side over `sum n_i k_i = d1`; factor
/// `i` has top `d2 + 2 d1 + 2 sum_{j<=i} (n_i - n_j) k_j`, followed by
/// `[d2 choose sum k_i]`.
pub fn theorem2_summands(d1: i64, d2: i64) -> Result<Vec<Summand>> {
    check_theorem2(d1, d2)?;
    let mut out = Vec::new();
    for index in enumerate_indices(d1 as u32, None) {
        let pairs: Vec<(i64, i64)> = index.pairs().collect();
        let total = index.total_mult() as i64;
        let mut term = qbinom(d2, total);
        for (i, &(ni, ki)) in pairs.iter().enumerate() {
            let shift: i64 = pairs[..=i].iter().map(|&(nj, kj)| (ni - nj) * kj).sum();
            term = &term * &qbinom(d2 + 2 * d1 + 2 * shift, ki);
        }
        out.push(Summand {
            index,
            k0: Some(total as u32),
            term,
        });
    }
    Ok(out)
}

pub fn theorem2_lhs_direct(d1: i64, d2: i64) -> Result<LaurentPoly> {
    Ok(theorem2_summands(d1, d2)?.into_iter().map(|s| s.term).sum())
}

/// `sum_{k0>=1} f(d1 + d2/2, d1, k0) [d2 choose k0]`.
pub fn theorem2_lhs_refined(d1: i64, d2: i64) -> Result<LaurentPoly> {
    check_theorem2(d1, d2)?;
    Ok((1..=d1)
        .map(|k0| f_enumerated(FSumSpec::new(2 * d1 + d2, d1 as u32, k0 as u32)) * qbinom(d2, k0))
        .sum())
}

/// thm2 left-hand side; both routes are computed and must agree.
pub fn theorem2_lhs(d1: i64, d2: i64) -> Result<LaurentPoly> {
    let direct = theorem2_lhs_direct(d1, d2)?;
    let refined = theorem2_lhs_refined(d1, d2)?;
    if direct != refined {
        return Err(Error::RouteMismatch(format!("thm2 LHS at d1={d1}, d2={d2}")));
    }
    Ok(direct)
}
