//! Exact integer number theory shared by the rest of the library:
//! factorization, Möbius function, aperiodic word counts, multiplicative
//! orders and the Euler-polynomial value sequence.

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// Canonical prime factorization: strictly increasing primes with
/// multiplicities >= 1. `factorize(1)` yields the empty product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Reconstructs the factored integer.
    pub fn value(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, m)| p.pow(m))
            .product::<u64>()
            .max(1)
    }

    pub fn distinct_primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }
}

/// Trial-division factorization; inputs stay well below 10^7 at desk scale.
pub fn factorize(n: u64) -> Factorization {
    assert!(n >= 1, "factorize requires n >= 1");
    let mut factors = Vec::new();
    let mut rest = n;
    let mut p = 2u64;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            let mut m = 0u32;
            while rest.is_multiple_of(p) {
                rest /= p;
                m += 1;
            }
            factors.push((p, m));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Factorization { factors }
}

/// Möbius function.
pub fn mobius(n: u64) -> i64 {
    let f = factorize(n);
    if f.factors.iter().any(|&(_, m)| m > 1) {
        return 0;
    }
    if f.factors.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Divisors of n in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// T(sigma, n): the number of aperiodic length-`sigma` words over an
/// `n`-letter alphabet, via Möbius inversion. Overflow is an error.
pub fn aperiodic_count(sigma: u64, n: u64) -> Result<u128> {
    assert!(sigma >= 1 && n >= 2);
    let mut total: i128 = 0;
    for d in divisors(sigma) {
        let mu = mobius(sigma / d);
        if mu == 0 {
            continue;
        }
        let term = (n as u128)
            .checked_pow(
                d.try_into()
                    .map_err(|_| Error::Overflow("aperiodic_count"))?,
            )
            .ok_or(Error::Overflow("aperiodic_count"))?;
        let term: i128 = term
            .try_into()
            .map_err(|_| Error::Overflow("aperiodic_count"))?;
        total = total
            .checked_add(mu as i128 * term)
            .ok_or(Error::Overflow("aperiodic_count"))?;
    }
    debug_assert!(total > 0);
    Ok(total as u128)
}

/// Smallest t >= 1 with p^t = 1 mod `sigma`. Errors unless gcd(p, sigma) = 1.
pub fn mult_order_mod(p: u64, sigma: u64) -> Result<u64> {
    assert!(sigma >= 2);
    let p = p % sigma;
    if gcd(p, sigma) != 1 {
        return Err(Error::NotCoprime { a: p, m: sigma });
    }
    let mut acc = p % sigma;
    let mut t = 1;
    while acc != 1 {
        acc = acc * p % sigma;
        t += 1;
    }
    Ok(t)
}

/// Euler polynomial E_m(x) as exact rational coefficients (index = degree),
/// by the recurrence E_m(x) = x^m - (1/2) sum_{j<m} C(m,j) E_j(x).
fn euler_polys(up_to: usize) -> Vec<Vec<BigRational>> {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut polys: Vec<Vec<BigRational>> = Vec::with_capacity(up_to + 1);
    for m in 0..=up_to {
        let mut coeffs = vec![BigRational::zero(); m + 1];
        coeffs[m] = BigRational::one();
        let mut binom = BigInt::one();
        for (j, prev) in polys.iter().enumerate().take(m) {
            // binom = C(m, j)
            let factor = &half * BigRational::from_integer(binom.clone());
            for (deg, c) in prev.iter().enumerate() {
                coeffs[deg] -= &factor * c;
            }
            binom = binom * BigInt::from(m - j) / BigInt::from(j + 1);
        }
        polys.push(coeffs);
    }
    polys
}

/// The integer sequence (-1)^k 7^(2k) E_{2k}(3/7): 1, 12, 732, 109332, ...
pub fn euler_sequence(k: u32) -> BigInt {
    let m = 2 * k as usize;
    let poly = euler_polys(m).pop().unwrap();
    let x = BigRational::new(BigInt::from(3), BigInt::from(7));
    let mut value = BigRational::zero();
    for c in poly.iter().rev() {
        value = value * &x + c;
    }
    let scale = BigInt::from(49).pow(k);
    let mut out = value * BigRational::from_integer(scale);
    if k % 2 == 1 {
        out = -out;
    }
    assert!(
        out.denom().is_one(),
        "euler_sequence produced a non-integer"
    );
    assert!(out.numer().is_positive());
    out.numer().clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(12).factors, vec![(2, 2), (3, 1)]);
        assert_eq!(factorize(1).factors, vec![]);
        assert_eq!(factorize(19683).factors, vec![(3, 9)]);
        for n in 1..500 {
            assert_eq!(factorize(n).value(), n);
        }
    }

    #[test]
    fn mobius_examples() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(4), 0);
    }

    #[test]
    fn mobius_multiplicative_on_coprime_pairs() {
        for a in 1..200u64 {
            for b in 1..100u64 {
                if gcd(a, b) == 1 {
                    assert_eq!(mobius(a * b), mobius(a) * mobius(b), "a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn aperiodic_count_examples() {
        assert_eq!(aperiodic_count(2, 3).unwrap(), 6);
        assert_eq!(aperiodic_count(4, 3).unwrap(), 72);
        for n in 2..10 {
            assert_eq!(aperiodic_count(1, n).unwrap(), n as u128);
        }
    }

    /// Exact-period word counts by brute enumeration partition n^sigma,
    /// and the exact-sigma class has size T(sigma, n).
    #[test]
    fn aperiodic_count_matches_enumeration() {
        for n in 2u64..=4 {
            for sigma in 1u64..=8 {
                let mut per_divisor = std::collections::HashMap::new();
                for code in 0..n.pow(sigma as u32) {
                    let mut word = Vec::with_capacity(sigma as usize);
                    let mut c = code;
                    for _ in 0..sigma {
                        word.push(c % n);
                        c /= n;
                    }
                    let d = divisors(sigma)
                        .into_iter()
                        .find(|&d| {
                            (0..sigma as usize)
                                .all(|i| word[i] == word[(i + d as usize) % sigma as usize])
                        })
                        .unwrap();
                    *per_divisor.entry(d).or_insert(0u128) += 1;
                }
                let total: u128 = per_divisor.values().sum();
                assert_eq!(total, (n as u128).pow(sigma as u32));
                assert_eq!(
                    per_divisor.get(&sigma).copied().unwrap_or(0),
                    aperiodic_count(sigma, n).unwrap(),
                    "sigma={sigma} n={n}"
                );
            }
        }
    }

    #[test]
    fn aperiodic_count_overflow_is_error() {
        assert!(matches!(aperiodic_count(200, 100), Err(Error::Overflow(_))));
    }

    #[test]
    fn mult_order_examples() {
        assert_eq!(mult_order_mod(3, 7).unwrap(), 6);
        assert_eq!(mult_order_mod(2, 11).unwrap(), 10);
        for p in [3u64, 5, 7, 9, 11] {
            assert_eq!(mult_order_mod(p, 2).unwrap(), 1);
        }
        assert!(mult_order_mod(6, 9).is_err());
    }

    #[test]
    fn mult_order_bounded_by_sigma_minus_one() {
        for sigma in 2u64..60 {
            for p in 2u64..60 {
                if gcd(p, sigma) == 1 {
                    assert!(mult_order_mod(p, sigma).unwrap() < sigma);
                }
            }
        }
    }

    #[test]
    fn euler_sequence_first_terms() {
        let want = [1i64, 12, 732, 109332];
        for (k, w) in want.iter().enumerate() {
            assert_eq!(euler_sequence(k as u32), BigInt::from(*w));
        }
    }
}
