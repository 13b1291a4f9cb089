//! Partitions written as distinct parts with multiplicities.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One summand's index data: parts `n_1 > ... > n_m > 0` with multiplicities
/// `k_1, ..., k_m > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartitionedIndex {
    parts: Vec<u32>,
    mults: Vec<u32>,
}

impl PartitionedIndex {
    pub fn new(parts: Vec<u32>, mults: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidIndex("an index needs at least one part".into()));
        }
        if parts.len() != mults.len() {
            return Err(Error::InvalidIndex(format!(
                "{} parts but {} multiplicities",
                parts.len(),
                mults.len()
            )));
        }
        if parts.windows(2).any(|w| w[0] <= w[1]) || parts.last() == Some(&0) {
            return Err(Error::InvalidIndex(format!(
                "parts must be strictly decreasing and positive: {parts:?}"
            )));
        }
        if mults.contains(&0) {
            return Err(Error::InvalidIndex(format!("multiplicities must be positive: {mults:?}")));
        }
        Ok(Self { parts, mults })
    }

    pub fn m(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn mults(&self) -> &[u32] {
        &self.mults
    }

    /// `(n_i, k_i)` pairs.
    pub fn pairs(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.parts.iter().zip(&self.mults).map(|(&n, &k)| (n as i64, k as i64))
    }

    /// `sum n_i k_i`.
    pub fn weight(&self) -> u64 {
        self.pairs().map(|(n, k)| (n * k) as u64).sum()
    }

    /// `sum k_i`.
    pub fn total_mult(&self) -> u64 {
        self.mults.iter().map(|&k| k as u64).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("index JSON")
    }
}

/// Larger parts first (so `[2,1]` precedes `[2]`), ties by multiplicities
/// in increasing lexicographic order.
fn canonical_order(a: &PartitionedIndex, b: &PartitionedIndex) -> Ordering {
    b.parts.cmp(&a.parts).then_with(|| a.mults.cmp(&b.mults))
}

/// All indices with `sum n_i k_i = d` (and `sum k_i = k0` when given), each
/// once, in canonical order. Without `k0` there is one index per partition of
/// `d`.
pub fn enumerate_indices(d: u32, k0: Option<u32>) -> Vec<PartitionedIndex> {
    let mut out = Vec::new();
    if d == 0 {
        return out;
    }
    let mut parts = Vec::new();
    let mut mults = Vec::new();
    extend(d, d, k0, &mut parts, &mut mults, &mut out);
    out.sort_by(canonical_order);
    out
}

fn extend(
    remaining: u32,
    max_part: u32,
    budget: Option<u32>,
    parts: &mut Vec<u32>,
    mults: &mut Vec<u32>,
    out: &mut Vec<PartitionedIndex>,
) {
    if remaining == 0 {
        if budget.unwrap_or(0) == 0 {
            out.push(PartitionedIndex {
                parts: parts.clone(),
                mults: mults.clone(),
            });
        }
        return;
    }
    // every remaining unit needs multiplicity: sum k_i <= remaining weight
    if budget == Some(0) {
        return;
    }
    for n in (1..=max_part.min(remaining)).rev() {
        let mut k_max = remaining / n;
        if let Some(b) = budget {
            k_max = k_max.min(b);
        }
        for k in 1..=k_max {
            parts.push(n);
            mults.push(k);
            extend(remaining - n * k, n - 1, budget.map(|b| b - k), parts, mults, out);
            parts.pop();
            mults.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Partition numbers by the standard coin-change recurrence.
    fn partition_counts(max: usize) -> Vec<u64> {
        let mut p = vec![0u64; max + 1];
        p[0] = 1;
        for part in 1..=max {
            for total in part..=max {
                p[total] += p[total - part];
            }
        }
        p
    }

    fn idx(parts: &[u32], mults: &[u32]) -> PartitionedIndex {
        PartitionedIndex::new(parts.to_vec(), mults.to_vec()).unwrap()
    }

    #[test]
    fn partitions_of_two() {
        assert_eq!(enumerate_indices(2, None), vec![idx(&[2], &[1]), idx(&[1], &[2])]);
    }

    #[test]
    fn counts_match_partition_numbers() {
        let p = partition_counts(30);
        assert_eq!(enumerate_indices(5, None).len() as u64, p[5]);
        for d in 1..=30u32 {
            assert_eq!(enumerate_indices(d, None).len() as u64, p[d as usize], "d={d}");
        }
        for d in 1..=15u32 {
            let total: usize = (0..=d).map(|k0| enumerate_indices(d, Some(k0)).len()).sum();
            assert_eq!(total as u64, p[d as usize]);
        }
    }

    #[test]
    fn multiplicity_constraint() {
        assert_eq!(enumerate_indices(3, Some(2)), vec![idx(&[2, 1], &[1, 1])]);
        // exhaustive oracle: filter the unconstrained list
        for d in 1..=12 {
            for k0 in 0..=d + 1 {
                let filtered: Vec<_> = enumerate_indices(d, None)
                    .into_iter()
                    .filter(|i| i.total_mult() == k0 as u64)
                    .collect();
                assert_eq!(enumerate_indices(d, Some(k0)), filtered);
            }
        }
    }

    #[test]
    fn every_index_is_valid_and_unique() {
        let all = enumerate_indices(14, None);
        for i in &all {
            assert_eq!(i.weight(), 14);
            assert!(PartitionedIndex::new(i.parts.clone(), i.mults.clone()).is_ok());
        }
        let mut dedup = all.clone();
        dedup.dedup();
        assert_eq!(dedup.len(), all.len());
        assert!(all.windows(2).all(|w| canonical_order(&w[0], &w[1]) == Ordering::Less));
    }

    #[test]
    fn order_ties_by_multiplicities() {
        let five: Vec<_> = enumerate_indices(5, None);
        let pos = |i: &PartitionedIndex| five.iter().position(|x| x == i).unwrap();
        assert!(pos(&idx(&[2, 1], &[1, 3])) < pos(&idx(&[2, 1], &[2, 1])));
        assert!(pos(&idx(&[3, 2], &[1, 1])) < pos(&idx(&[3, 1], &[1, 2])));
        let four = enumerate_indices(4, None);
        assert_eq!(
            four,
            vec![idx(&[4], &[1]), idx(&[3, 1], &[1, 1]), idx(&[2, 1], &[1, 2]), idx(&[2], &[2]), idx(&[1], &[4])]
        );
        assert_eq!(five.first(), Some(&idx(&[5], &[1])));
        assert_eq!(five.last(), Some(&idx(&[1], &[5])));
    }

    #[test]
    fn validation() {
        assert!(PartitionedIndex::new(vec![], vec![]).is_err());
        assert!(PartitionedIndex::new(vec![1, 2], vec![1, 1]).is_err());
        assert!(PartitionedIndex::new(vec![2, 0], vec![1, 1]).is_err());
        assert!(PartitionedIndex::new(vec![2], vec![0]).is_err());
        assert!(PartitionedIndex::new(vec![2], vec![1, 1]).is_err());
        assert_eq!(idx(&[3, 1], &[1, 2]).to_json(), r#"{"parts":[3,1],"mults":[1,2]}"#);
    }
}
