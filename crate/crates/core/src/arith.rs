//! Integer primitives: factorization, Kronecker and Eichler symbols, and
//! negative discriminants.

use crate::error::{Error, Result};
use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// A positive integer together with its prime factorization.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FactoredInt {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl FactoredInt {
    pub fn value(&self) -> u64 {
        self.value
    }

    /// `(prime, exponent)` pairs, ascending by prime.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> Vec<u64> {
        self.factors.iter().map(|&(p, _)| p).collect()
    }

    /// Number of distinct prime divisors.
    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    pub fn divisible_by(&self, p: u64) -> bool {
        self.factors.iter().any(|&(q, _)| q == p)
    }

    /// Builds the factorization of a product of distinct primes.
    pub fn from_primes(primes: &[u64]) -> Result<Self> {
        let value = primes.iter().try_fold(1u64, |acc, &p| acc.checked_mul(p));
        let value = value.ok_or_else(|| Error::InvalidLevel("product overflows u64".into()))?;
        factorize(value)
    }
}

/// Trial-division factorization. Rejects zero.
pub fn factorize(n: u64) -> Result<FactoredInt> {
    if n == 0 {
        return Err(Error::Zero);
    }
    let mut factors = Vec::new();
    let mut m = n;
    let mut p = 2u64;
    while p.saturating_mul(p) <= m {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        factors.push((m, 1));
    }
    Ok(FactoredInt { value: n, factors })
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut p = 3u64;
    while p * p <= n {
        if n % p == 0 {
            return false;
        }
        p += 2;
    }
    true
}

/// Primes `p <= n` in ascending order.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter(|(_, &s)| s)
        .map(|(i, _)| i as u64)
        .collect()
}

/// Floor of the square root.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

pub fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Jacobi symbol `(a/n)` for odd positive `n`.
fn jacobi(a: i64, n: u64) -> i8 {
    debug_assert!(n % 2 == 1);
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut result = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Kronecker symbol `(d/n)` with the usual extension to `n = 2` and `n < 0`.
pub fn kronecker(d: i64, n: i64) -> Result<i8> {
    if n == 0 {
        return Err(Error::Zero);
    }
    let mut result = 1i8;
    let mut m = n.unsigned_abs();
    if n < 0 && d < 0 {
        result = -result;
    }
    let twos = m.trailing_zeros();
    if twos > 0 {
        if d % 2 == 0 {
            return Ok(0);
        }
        m >>= twos;
        let r = d.rem_euclid(8);
        if twos % 2 == 1 && (r == 3 || r == 5) {
            result = -result;
        }
    }
    Ok(result * jacobi(d, m))
}

/// Eichler symbol `{-D/p}` for the quadratic order of discriminant `-D`:
/// `1` when `p` divides the conductor, otherwise the Kronecker symbol.
///
/// For odd `p` this is the three-case rule `1 if p^2 | D`, `0 if p || D`,
/// `(-D/p)` if `p` does not divide `D`. At `p = 2` the conductor of `-D` is
/// even exactly when `4 | D` and `D/4 = 0, 3 (mod 4)`; the remaining even
/// cases are ramified at 2 and give `0`.
pub fn eichler_symbol(d: u64, p: u64) -> i8 {
    let di = d as i64;
    if p == 2 {
        if d % 2 == 1 {
            return kronecker(-di, 2).expect("nonzero");
        }
        if d % 4 == 2 {
            return 0;
        }
        return match (d / 4) % 4 {
            0 | 3 => 1,
            _ => 0,
        };
    }
    if d % (p * p) == 0 {
        1
    } else if d % p == 0 {
        0
    } else {
        kronecker(-di, p as i64).expect("nonzero")
    }
}

/// A negative discriminant `d = d0 * f^2` with `d0` fundamental.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Discriminant {
    d: i64,
    fundamental: i64,
    conductor: u64,
}

impl Discriminant {
    pub fn new(d: i64) -> Result<Self> {
        if d >= 0 || !matches!(d.rem_euclid(4), 0 | 1) {
            return Err(Error::InvalidDiscriminant(d));
        }
        let fac = factorize(d.unsigned_abs())?;
        let mut f = 1u64;
        for &(p, e) in fac.factors() {
            if p != 2 {
                f *= p.pow(e / 2);
            }
        }
        let mut d0 = d / (f * f) as i64;
        while d0 % 4 == 0 && matches!((d0 / 4).rem_euclid(4), 0 | 1) {
            d0 /= 4;
            f *= 2;
        }
        Ok(Self {
            d,
            fundamental: d0,
            conductor: f,
        })
    }

    pub fn value(&self) -> i64 {
        self.d
    }

    /// `|d|`.
    pub fn abs(&self) -> u64 {
        self.d.unsigned_abs()
    }

    pub fn is_fundamental(&self) -> bool {
        self.conductor == 1
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// The fundamental discriminant `d / f^2`.
    pub fn fundamental_part(&self) -> i64 {
        self.fundamental
    }

    /// Whether `p` ramifies in the quadratic field `Q(sqrt d)`.
    pub fn ramifies(&self, p: u64) -> bool {
        self.fundamental.unsigned_abs() % p == 0
    }
}

/// Whether `-D` is a discriminant, i.e. `D = 0, 3 (mod 4)` and `D > 0`.
pub fn is_negative_discriminant(d: u64) -> bool {
    d > 0 && matches!(d % 4, 0 | 3)
}

/// All `(d, f)` with `-D = d f^2` and `d` a discriminant, ascending in `f`.
pub fn discriminant_decompositions(big_d: u64) -> Vec<(Discriminant, u64)> {
    let mut out = Vec::new();
    let mut f = 1u64;
    while f * f <= big_d {
        if big_d % (f * f) == 0 {
            let d = -((big_d / (f * f)) as i64);
            if let Ok(disc) = Discriminant::new(d) {
                out.push((disc, f));
            }
        }
        f += 1;
    }
    out
}

/// Modular inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let e = a.rem_euclid(m).extended_gcd(&m);
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorize_examples() {
        assert!(factorize(1).unwrap().factors().is_empty());
        assert_eq!(factorize(66).unwrap().factors(), &[(2, 1), (3, 1), (11, 1)]);
        assert_eq!(
            factorize(210).unwrap().factors(),
            &[(2, 1), (3, 1), (5, 1), (7, 1)]
        );
        assert_eq!(factorize(360).unwrap().factors(), &[(2, 3), (3, 2), (5, 1)]);
        assert!(matches!(factorize(0), Err(Error::Zero)));
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(-4, 2).unwrap(), 0);
        assert_eq!(kronecker(-3, 11).unwrap(), -1);
        assert_eq!(kronecker(-8, 11).unwrap(), 1);
        assert_eq!(kronecker(-3, 2).unwrap(), -1);
        assert_eq!(kronecker(-7, 2).unwrap(), 1);
        assert!(kronecker(5, 0).is_err());
    }

    fn legendre_by_squares(a: i64, p: u64) -> i8 {
        let r = a.rem_euclid(p as i64) as u64;
        if r == 0 {
            return 0;
        }
        if (1..p).any(|x| x * x % p == r) {
            1
        } else {
            -1
        }
    }

    #[test]
    fn kronecker_matches_legendre_at_odd_primes() {
        for p in primes_up_to(60).into_iter().filter(|&p| p > 2) {
            for a in -200..200 {
                assert_eq!(kronecker(a, p as i64).unwrap(), legendre_by_squares(a, p));
            }
        }
    }

    #[test]
    fn kronecker_is_multiplicative_in_lower_argument() {
        for d in (-500i64..=500).step_by(7) {
            for m in (-500i64..=500).step_by(13).filter(|&m| m != 0) {
                for n in (-500i64..=500).step_by(17).filter(|&n| n != 0) {
                    let lhs = kronecker(d, m * n).unwrap();
                    let rhs = kronecker(d, m).unwrap() * kronecker(d, n).unwrap();
                    assert_eq!(lhs, rhs, "d={d} m={m} n={n}");
                }
            }
        }
    }

    #[test]
    fn eichler_symbol_examples() {
        assert_eq!(eichler_symbol(12, 2), 1);
        assert_eq!(eichler_symbol(6, 3), 0);
        assert_eq!(eichler_symbol(3, 11), -1);
        // -4 and -8 are fundamental and ramified at 2
        assert_eq!(eichler_symbol(4, 2), 0);
        assert_eq!(eichler_symbol(8, 2), 0);
        // -16 and -28 have conductor 2
        assert_eq!(eichler_symbol(16, 2), 1);
        assert_eq!(eichler_symbol(28, 2), 1);
    }

    #[test]
    fn eichler_symbol_is_kronecker_off_the_divisors() {
        for d in 1..=2000u64 {
            for p in primes_up_to(50) {
                if d % p != 0 {
                    assert_eq!(eichler_symbol(d, p), kronecker(-(d as i64), p as i64).unwrap());
                }
            }
        }
    }

    #[test]
    fn eichler_symbol_is_one_exactly_on_conductor_primes() {
        for big_d in (3..=2000u64).filter(|&d| is_negative_discriminant(d)) {
            let disc = Discriminant::new(-(big_d as i64)).unwrap();
            for p in primes_up_to(50) {
                let expected = if disc.conductor() % p == 0 {
                    1
                } else {
                    kronecker(-(big_d as i64), p as i64).unwrap()
                };
                assert_eq!(eichler_symbol(big_d, p), expected, "D={big_d} p={p}");
            }
        }
    }

    #[test]
    fn decompositions_examples() {
        let v: Vec<(i64, u64)> = discriminant_decompositions(3)
            .iter()
            .map(|(d, f)| (d.value(), *f))
            .collect();
        assert_eq!(v, vec![(-3, 1)]);
        let v: Vec<(i64, u64)> = discriminant_decompositions(12)
            .iter()
            .map(|(d, f)| (d.value(), *f))
            .collect();
        assert_eq!(v, vec![(-12, 1), (-3, 2)]);
        assert!(discriminant_decompositions(5).is_empty());
    }

    #[test]
    fn decompositions_are_consistent() {
        for big_d in 1..=2000u64 {
            let decs = discriminant_decompositions(big_d);
            assert_eq!(!decs.is_empty(), is_negative_discriminant(big_d));
            for (d, f) in decs {
                assert_eq!(d.value() * (f * f) as i64, -(big_d as i64));
                assert!(matches!(d.value().rem_euclid(4), 0 | 1));
            }
        }
    }

    #[test]
    fn discriminant_conductor() {
        let d = Discriminant::new(-12).unwrap();
        assert_eq!((d.fundamental_part(), d.conductor()), (-3, 2));
        let d = Discriminant::new(-64).unwrap();
        assert_eq!((d.fundamental_part(), d.conductor()), (-4, 4));
        let d = Discriminant::new(-36).unwrap();
        assert_eq!((d.fundamental_part(), d.conductor()), (-4, 3));
        let d = Discriminant::new(-8).unwrap();
        assert!(d.is_fundamental());
        assert!(Discriminant::new(-5).is_err());
        assert!(Discriminant::new(4).is_err());
        for big_d in (3..=2000u64).filter(|&d| is_negative_discriminant(d)) {
            let d = Discriminant::new(-(big_d as i64)).unwrap();
            let f = d.conductor() as i64;
            assert_eq!(d.fundamental_part() * f * f, d.value());
            assert!(Discriminant::new(d.fundamental_part()).unwrap().is_fundamental());
        }
    }
}
