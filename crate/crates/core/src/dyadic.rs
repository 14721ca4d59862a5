//! Binary digits of naturals and the mod-2 arithmetic of binomial and
//! trinomial coefficients.
//!
//! A natural `m` is identified with its dyadic support, the set of exponents
//! `α` with `2^α` occurring in the binary expansion of `m`. Most of the
//! product formulas for Stiefel-Whitney classes reduce to set operations on
//! these supports.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// The set of binary digits of a natural number, stored as a bitmask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyadicSupport(u64);

impl DyadicSupport {
    pub fn of(m: u64) -> Self {
        DyadicSupport(m)
    }

    /// The natural number `Σ 2^α` over the support.
    pub fn value(self) -> u64 {
        self.0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, alpha: u32) -> bool {
        alpha < 64 && self.0 >> alpha & 1 == 1
    }

    pub fn union(self, other: Self) -> Self {
        DyadicSupport(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        DyadicSupport(self.0 & other.0)
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Exponents in increasing order.
    pub fn exponents(self) -> impl Iterator<Item = u32> {
        let bits = self.0;
        (0..64).filter(move |&a| bits >> a & 1 == 1)
    }

    /// The powers of two `2^α`, in increasing order.
    pub fn powers(self) -> impl Iterator<Item = u64> {
        self.exponents().map(|a| 1u64 << a)
    }
}

impl FromIterator<u32> for DyadicSupport {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        DyadicSupport(iter.into_iter().fold(0, |acc, a| acc | 1u64 << a))
    }
}

/// The diminished sum `m • m'`: the natural whose support is the union of the
/// supports of `m` and `m'`. Equals `m + m' - overlap_value(m, m')`.
pub fn diminished_sum(m: u64, m_prime: u64) -> u64 {
    DyadicSupport::of(m).union(DyadicSupport::of(m_prime)).value()
}

/// Number of common binary digits of `m` and `m'`.
pub fn overlap_count(m: u64, m_prime: u64) -> u32 {
    DyadicSupport::of(m).intersection(DyadicSupport::of(m_prime)).len()
}

/// Value of the common binary digits, `Σ 2^α` over the intersection of the
/// supports. This is the exponent of `e` (per unit of degree) relating
/// `s_m s_m'` to `s_{m • m'}`.
pub fn overlap_value(m: u64, m_prime: u64) -> u64 {
    DyadicSupport::of(m).intersection(DyadicSupport::of(m_prime)).value()
}

/// Parity of the trinomial coefficient `(a+b+c)! / (a! b! c!)`: odd exactly
/// when the three supports are pairwise disjoint.
pub fn trinomial_parity(a: u64, b: u64, c: u64) -> bool {
    a & b == 0 && b & c == 0 && a & c == 0
}

/// Exact binomial coefficient `C(n, k)` for natural `n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Binomial coefficient with an arbitrary integer upper index, i.e. the
/// coefficient of `t^k` in `(1+t)^n`. For `n < 0` this is
/// `(-1)^k C(-n+k-1, k)`.
pub fn signed_binomial(n: i64, k: u64) -> BigInt {
    if n >= 0 {
        return binomial(n as u64, k);
    }
    let magnitude = binomial(n.unsigned_abs() + k - 1, k);
    if k.is_multiple_of(2) {
        magnitude
    } else {
        -magnitude
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn factorial(n: u64) -> BigInt {
        (1..=n).fold(BigInt::one(), |acc, i| acc * i)
    }

    // Coefficients of (1+t)^n up to t^len, by long division of 1 by (1+t)^|n|
    // when n is negative.
    fn series_oracle(n: i64, len: usize) -> Vec<BigInt> {
        let base: Vec<BigInt> = (0..=n.unsigned_abs())
            .map(|k| {
                let mut c = BigInt::one();
                for i in 0..k {
                    c = c * (n.unsigned_abs() - i) / (i + 1);
                }
                c
            })
            .collect();
        if n >= 0 {
            let mut out = base;
            out.resize(len + 1, BigInt::zero());
            return out;
        }
        let mut out = vec![BigInt::zero(); len + 1];
        for k in 0..=len {
            let mut rhs = if k == 0 { BigInt::one() } else { BigInt::zero() };
            for j in 1..base.len().min(k + 1) {
                rhs -= &base[j] * &out[k - j];
            }
            out[k] = rhs;
        }
        out
    }

    #[test]
    fn diminished_sum_examples() {
        assert_eq!(diminished_sum(3, 6), 7);
        assert_eq!(diminished_sum(0, 9), 9);
        assert_eq!(diminished_sum(5, 5), 5);
    }

    #[test]
    fn overlap_examples() {
        assert_eq!(overlap_count(3, 6), 1);
        assert_eq!(overlap_count(11, 0), 0);
        assert_eq!(overlap_count(7, 7), 3);
        assert_eq!(overlap_value(3, 6), 2);
    }

    #[test]
    fn trinomial_examples() {
        assert!(trinomial_parity(1, 2, 4));
        assert!(!trinomial_parity(1, 1, 0));
        assert!(trinomial_parity(0, 0, 0));
    }

    #[test]
    fn trinomial_parity_matches_factorials() {
        let fact: Vec<BigInt> = (0..=192).map(factorial).collect();
        for a in 0..=64u64 {
            for b in 0..=64u64 {
                for c in 0..=64u64 {
                    let q = &fact[(a + b + c) as usize]
                        / (&fact[a as usize] * &fact[b as usize] * &fact[c as usize]);
                    let odd = (&q % 2u32) == BigInt::one();
                    assert_eq!(trinomial_parity(a, b, c), odd, "({a},{b},{c})");
                }
            }
        }
    }

    #[test]
    fn signed_binomial_examples() {
        assert_eq!(signed_binomial(-5, 2), BigInt::from(15));
        assert_eq!(signed_binomial(17, 0), BigInt::one());
        assert_eq!(signed_binomial(-1, 3), BigInt::from(-1));
        assert_eq!(signed_binomial(4, 7), BigInt::zero());
    }

    #[test]
    fn signed_binomial_matches_series() {
        for n in -16i64..=16 {
            let series = series_oracle(n, 32);
            for k in 0..=32u64 {
                assert_eq!(signed_binomial(n, k), series[k as usize], "n={n} k={k}");
            }
        }
    }

    #[test]
    fn support_roundtrip() {
        let s = DyadicSupport::of(0b1011_0001);
        assert_eq!(s.exponents().collect::<Vec<_>>(), vec![0, 4, 5, 7]);
        assert_eq!(s.exponents().collect::<DyadicSupport>(), s);
        assert_eq!(s.powers().sum::<u64>(), s.value());
    }

    proptest! {
        #[test]
        fn diminished_sum_reconstructs(m in 0u64..=1024, mp in 0u64..=1024) {
            prop_assert_eq!(diminished_sum(m, mp) + overlap_value(m, mp), m + mp);
        }

        #[test]
        fn diminished_sum_semilattice(a in 0u64..4096, b in 0u64..4096, c in 0u64..4096) {
            prop_assert_eq!(diminished_sum(a, b), diminished_sum(b, a));
            prop_assert_eq!(
                diminished_sum(a, diminished_sum(b, c)),
                diminished_sum(diminished_sum(a, b), c)
            );
            prop_assert_eq!(diminished_sum(a, a), a);
            prop_assert_eq!(diminished_sum(a, 0), a);
        }
    }
}
