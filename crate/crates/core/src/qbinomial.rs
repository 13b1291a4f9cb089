//! Symmetric q-integers, q-Pochhammer symbols and q-binomial coefficients.
//!
//! Brackets follow the symmetric convention `[a]_q = q^(a/2) - q^(-a/2)`,
//! which in `x = q^(1/2)` is `x^a - x^(-a) = -x^(-a) (1 - x^(2a))`.

use crate::factored::QFactored;
use crate::laurent::LaurentPoly;

/// Arguments of a q-binomial coefficient `[n choose k]_q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QBinomialArgs {
    pub n: i64,
    pub k: i64,
}

/// `[alpha]_q` in factored form.
pub fn q_int(alpha: i64) -> QFactored {
    match alpha {
        0 => QFactored::zero(),
        a if a > 0 => &QFactored::monomial(true, -a) * &QFactored::one_minus(2 * a),
        a => q_int(-a).negate(),
    }
}

/// `(x^t; q)_m = prod_{j<m} (1 - x^(t + 2j))`.
pub fn q_pochhammer(t: i64, m: u32) -> QFactored {
    (0..m as i64).map(|j| QFactored::one_minus(t + 2 * j)).product()
}

/// `[a]_q / [b]_q` in factored form; `None` when `b = 0`.
pub fn q_int_ratio(a: i64, b: i64) -> Option<QFactored> {
    q_int(a).checked_div(&q_int(b)).ok()
}

/// Product formula `[n][n-1]...[n-k+1] / ([k]...[1])`, zero for `k < 0`.
fn product_formula(n: i64, k: i64) -> QFactored {
    if k < 0 {
        return QFactored::zero();
    }
    let num: QFactored = (0..k).map(|i| q_int(n - i)).product();
    let den: QFactored = (1..=k).map(q_int).product();
    num.checked_div(&den).expect("[j]_q is nonzero for j >= 1")
}

/// `[n choose k]_q` in factored form, zero unless `0 <= k <= n`.
pub fn q_binomial_factored(args: QBinomialArgs) -> QFactored {
    if args.k < 0 || args.n < 0 || args.k > args.n {
        return QFactored::zero();
    }
    product_formula(args.n, args.k)
}

/// `[n choose k]_q` as a Laurent polynomial in `x`, zero unless `0 <= k <= n`.
pub fn q_binomial(args: QBinomialArgs) -> LaurentPoly {
    expand_binomial(q_binomial_factored(args))
}

/// Shorthand for [`q_binomial`].
pub fn qbinom(n: i64, k: i64) -> LaurentPoly {
    q_binomial(QBinomialArgs { n, k })
}

/// The q-binomial as a polynomial in `q^(n/2)`: the product formula for every
/// integer `n` and `k >= 0`, zero for `k < 0`. Agrees with [`q_binomial`]
/// whenever `n >= 0`; for negative `n` it equals
/// `(-1)^k [k-n-1 choose k]_q`.
///
/// This is the form the refined partition sum and its closed form need
/// when the top argument `2d0 - ...` runs negative.
pub fn q_binomial_general_factored(n: i64, k: i64) -> QFactored {
    product_formula(n, k)
}

pub fn q_binomial_general(n: i64, k: i64) -> LaurentPoly {
    expand_binomial(q_binomial_general_factored(n, k))
}

fn expand_binomial(f: QFactored) -> LaurentPoly {
    f.expand().expect("q-binomial coefficients are Laurent polynomials")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn p(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    /// Pascal's triangle over plain integers.
    fn binomial_table(max: usize) -> Vec<Vec<BigInt>> {
        let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::from(1)]];
        for n in 1..=max {
            let prev = &rows[n - 1];
            let mut row = vec![BigInt::from(1); n + 1];
            for k in 1..n {
                row[k] = &prev[k - 1] + &prev[k];
            }
            rows.push(row);
        }
        rows
    }

    #[test]
    fn q_integers() {
        assert_eq!(q_int(1).expand().unwrap(), p(&[(1, 1), (-1, -1)]));
        assert!(q_int(0).is_zero());
        assert_eq!(q_int(2).expand().unwrap(), p(&[(2, 1), (-2, -1)]));
        assert_eq!(q_int(-3).expand().unwrap(), -q_int(3).expand().unwrap());
        assert_eq!(q_int(1).to_rational().num(), &p(&[(1, 1), (-1, -1)]));
    }

    #[test]
    fn pochhammer_symbols() {
        let f = q_pochhammer(2, 3);
        assert_eq!(f.factors().collect::<Vec<_>>(), vec![(2, 1), (4, 1), (6, 1)]);
        assert_eq!(f.sign(), 1);
        assert_eq!(q_pochhammer(17, 0), QFactored::one());
        assert!(q_pochhammer(-4, 3).is_zero());
        assert!(!q_pochhammer(-4, 2).is_zero());
        let tele = q_pochhammer(2, 3).checked_div(&q_pochhammer(2, 2)).unwrap();
        assert_eq!(tele, QFactored::one_minus(6));
    }

    #[test]
    fn binomial_examples() {
        // [3]/[1] by plain exact division as the oracle
        let oracle = q_int(3).expand().unwrap().exact_div(&q_int(1).expand().unwrap()).unwrap();
        assert_eq!(qbinom(3, 1), oracle);
        assert_eq!(oracle, p(&[(2, 1), (0, 1), (-2, 1)]));

        let b42 = qbinom(4, 2);
        assert_eq!(b42, p(&[(4, 1), (2, 1), (0, 2), (-2, 1), (-4, 1)]));
        assert_eq!(b42.coeff_sum(), BigInt::from(6));
        let num = [4, 3].iter().map(|&a| q_int(a).expand().unwrap()).product::<LaurentPoly>();
        let den = [2, 1].iter().map(|&a| q_int(a).expand().unwrap()).product::<LaurentPoly>();
        assert_eq!(num.exact_div(&den).unwrap(), b42);

        assert!(qbinom(3, 5).is_zero());
        assert!(qbinom(-1, 0).is_zero());
        assert!(qbinom(3, -1).is_zero());
        assert!(qbinom(5, 0).is_one());
    }

    #[test]
    fn general_binomial_extends_to_negative_tops() {
        assert!(q_binomial_general(-1, 0).is_one());
        assert!(q_binomial_general(4, -1).is_zero());
        assert!(q_binomial_general(3, 5).is_zero());
        for n in -6..0i64 {
            for k in 0..6i64 {
                let expected = qbinom(k - n - 1, k);
                let expected = if k % 2 == 1 { -expected } else { expected };
                assert_eq!(q_binomial_general(n, k), expected, "n={n} k={k}");
            }
        }
        for n in 0..10 {
            for k in -2..12 {
                assert_eq!(q_binomial_general(n, k), qbinom(n, k));
            }
        }
    }

    #[test]
    fn structural_properties_up_to_20() {
        let table = binomial_table(20);
        for n in 0..=20i64 {
            for k in 0..=n {
                let b = qbinom(n, k);
                assert_eq!(b.reverse(), b, "palindromic n={n} k={k}");
                assert_eq!(b, qbinom(n, n - k), "symmetric n={n} k={k}");
                assert_eq!(b.coeff_sum(), table[n as usize][k as usize]);
            }
        }
    }

    #[test]
    fn symmetric_pascal_recurrence() {
        for n in 2..=15i64 {
            for k in 1..n {
                let rhs = qbinom(n - 1, k).shift(k) + qbinom(n - 1, k - 1).shift(k - n);
                assert_eq!(qbinom(n, k), rhs, "n={n} k={k}");
            }
        }
    }

    proptest! {
        #[test]
        fn pochhammer_step(t in -30i64..30, m in 0u32..12) {
            let step = &q_pochhammer(t, m) * &QFactored::one_minus(t + 2 * m as i64);
            prop_assert_eq!(q_pochhammer(t, m + 1), step);
        }
    }
}
