//! Class numbers of imaginary quadratic orders and the closed formula for the
//! Cohen-Eisenstein coefficients.

use crate::arith::{
    discriminant_decompositions, eichler_symbol, factorize, is_prime, kronecker, Discriminant,
    FactoredInt,
};
use crate::error::{Error, Result};
use crate::rational::{int, rat, Rational};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// A primitive reduced positive definite binary form `a x^2 + b xy + c y^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ReducedForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl ReducedForm {
    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }
}

/// All primitive reduced forms of discriminant `d`, ordered by `(a, b)`.
pub fn reduced_forms(d: &Discriminant) -> Vec<ReducedForm> {
    let dd = d.value();
    let abs = d.abs() as i64;
    let mut out = Vec::new();
    let mut a = 1i64;
    // reduced forms satisfy 3a^2 <= |d|
    while 3 * a * a <= abs {
        for b in -a + 1..=a {
            if (b - dd).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - dd;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            if a.gcd(&b).gcd(&c) != 1 {
                continue;
            }
            out.push(ReducedForm { a, b, c });
        }
        a += 1;
    }
    out
}

/// Class number of the imaginary quadratic order of discriminant `d`.
pub fn class_number(d: &Discriminant) -> u64 {
    reduced_forms(d).len() as u64
}

pub fn class_number_of(d: i64) -> Result<u64> {
    Ok(class_number(&Discriminant::new(d)?))
}

/// Half the number of units: 3 for `d = -3`, 2 for `d = -4`, 1 otherwise.
pub fn unit_factor(d: &Discriminant) -> u64 {
    match d.value() {
        -3 => 3,
        -4 => 2,
        _ => 1,
    }
}

/// Level data `N = P * M`: `P` is the product of the odd number of primes
/// ramified in the quaternion algebra, `M` is square-free and prime to `P`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LevelConfig {
    ramified: FactoredInt,
    m: FactoredInt,
}

impl LevelConfig {
    pub fn new(ramified: &[u64], m: u64) -> Result<Self> {
        let mut primes = ramified.to_vec();
        primes.sort_unstable();
        primes.dedup();
        if primes.len() != ramified.len() {
            return Err(Error::InvalidLevel("repeated ramified prime".into()));
        }
        if primes.len() % 2 == 0 {
            return Err(Error::InvalidLevel(format!(
                "need an odd number of ramified primes, got {}",
                primes.len()
            )));
        }
        if let Some(&p) = primes.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::InvalidLevel(format!("{p} is not prime")));
        }
        let m = factorize(m).map_err(|_| Error::InvalidLevel("M must be positive".into()))?;
        if !m.is_squarefree() {
            return Err(Error::InvalidLevel(format!("M = {} is not square-free", m.value())));
        }
        if let Some(&p) = primes.iter().find(|&&p| m.divisible_by(p)) {
            return Err(Error::InvalidLevel(format!("M is divisible by ramified prime {p}")));
        }
        let ramified = FactoredInt::from_primes(&primes)?;
        m.value()
            .checked_mul(ramified.value())
            .ok_or_else(|| Error::InvalidLevel("level overflows u64".into()))?;
        Ok(Self { ramified, m })
    }

    pub fn p(&self) -> &FactoredInt {
        &self.ramified
    }

    pub fn m(&self) -> &FactoredInt {
        &self.m
    }

    pub fn ramified_primes(&self) -> Vec<u64> {
        self.ramified.primes()
    }

    pub fn m_primes(&self) -> Vec<u64> {
        self.m.primes()
    }

    pub fn level(&self) -> u64 {
        self.ramified.value() * self.m.value()
    }

    /// All primes dividing `N`, ascending.
    pub fn level_primes(&self) -> Vec<u64> {
        let mut v = self.ramified_primes();
        v.extend(self.m_primes());
        v.sort_unstable();
        v
    }

    pub fn omega(&self) -> usize {
        self.ramified.omega() + self.m.omega()
    }

    /// Number of primes dividing `N` that ramify in `Q(sqrt(-D))`.
    pub fn ramified_count(&self, d: &Discriminant) -> usize {
        self.level_primes().iter().filter(|&&p| d.ramifies(p)).count()
    }

    /// `(-D/p) != 1` for `p | P` and `(-D/q) != -1` for `q | M`.
    pub fn kronecker_condition(&self, big_d: u64) -> std::result::Result<(), u64> {
        let d = -(big_d as i64);
        for p in self.ramified_primes() {
            if kronecker(d, p as i64).expect("p > 0") == 1 {
                return Err(p);
            }
        }
        for q in self.m_primes() {
            if kronecker(d, q as i64).expect("q > 0") == -1 {
                return Err(q);
            }
        }
        Ok(())
    }

    pub fn is_coprime_to_level(&self, n: u64) -> bool {
        n.gcd(&self.level()) == 1
    }
}

/// `H(D) = 1/2 sum_{-D = d f^2} h(d)/u(d) prod_{p|P} (1 - {d/p}) prod_{q|M} (1 + {d/q})`.
///
/// Zero when `-D` is not a discriminant; the constant term is the mass.
pub fn closed_form_h(big_d: u64, cfg: &LevelConfig) -> Rational {
    if big_d == 0 {
        return mass(cfg);
    }
    let mut total = Rational::zero();
    for (d, _f) in discriminant_decompositions(big_d) {
        let mut local = 1i64;
        for p in cfg.ramified_primes() {
            local *= 1 - eichler_symbol(d.abs(), p) as i64;
        }
        for q in cfg.m_primes() {
            local *= 1 + eichler_symbol(d.abs(), q) as i64;
        }
        if local == 0 {
            continue;
        }
        total += rat(class_number(&d) as i64 * local, unit_factor(&d) as i64);
    }
    total / int(2)
}

/// `2^(omega(N) - 1 - s(D)) h(-D) / u(-D)` for fundamental `-D` under the
/// Kronecker condition.
pub fn corollary_h(big_d: u64, cfg: &LevelConfig) -> Result<Rational> {
    let d = Discriminant::new(-(big_d as i64))?;
    if !d.is_fundamental() {
        return Err(Error::NotFundamental(big_d));
    }
    cfg.kronecker_condition(big_d)
        .map_err(|prime| Error::KroneckerCondition { d: big_d, prime })?;
    let exp = cfg.omega() as i64 - 1 - cfg.ramified_count(&d) as i64;
    let two_pow = if exp >= 0 {
        int(1i64 << exp)
    } else {
        rat(1, 1i64 << (-exp))
    };
    Ok(two_pow * rat(class_number(&d) as i64, unit_factor(&d) as i64))
}

/// `(1/24) prod_{p|P} (p - 1) prod_{q|M} (q + 1)`.
pub fn mass(cfg: &LevelConfig) -> Rational {
    let mut m = Rational::one();
    for p in cfg.ramified_primes() {
        m *= int(p as i64 - 1);
    }
    for q in cfg.m_primes() {
        m *= int(q as i64 + 1);
    }
    m / int(24)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::is_negative_discriminant;

    fn cfg(p: &[u64], m: u64) -> LevelConfig {
        LevelConfig::new(p, m).unwrap()
    }

    #[test]
    fn class_number_examples() {
        assert_eq!(class_number_of(-3).unwrap(), 1);
        assert_eq!(class_number_of(-23).unwrap(), 3);
        assert_eq!(class_number_of(-12).unwrap(), 1);
        assert_eq!(class_number_of(-4).unwrap(), 1);
        assert_eq!(class_number_of(-47).unwrap(), 5);
        let forms = reduced_forms(&Discriminant::new(-23).unwrap());
        assert_eq!(
            forms,
            vec![
                ReducedForm { a: 1, b: 1, c: 6 },
                ReducedForm { a: 2, b: -1, c: 3 },
                ReducedForm { a: 2, b: 1, c: 3 },
            ]
        );
        assert!(class_number_of(-5).is_err());
        assert!(class_number_of(5).is_err());
    }

    #[test]
    fn unit_factor_examples() {
        let u = |d| unit_factor(&Discriminant::new(d).unwrap());
        assert_eq!((u(-3), u(-4), u(-23), u(-12), u(-16)), (3, 2, 1, 1, 1));
    }

    #[test]
    fn closed_form_examples() {
        let c = cfg(&[11], 1);
        assert_eq!(closed_form_h(3, &c), rat(1, 3));
        assert_eq!(closed_form_h(8, &c), int(0));
        assert_eq!(closed_form_h(5, &c), int(0));
    }

    #[test]
    fn corollary_examples() {
        let c = cfg(&[11], 1);
        assert_eq!(corollary_h(3, &c).unwrap(), rat(1, 3));
        assert_eq!(corollary_h(11, &c).unwrap(), rat(1, 2));
        assert_eq!(corollary_h(4, &c).unwrap(), rat(1, 2));
        assert!(matches!(corollary_h(12, &c), Err(Error::NotFundamental(12))));
        // -8 splits at 11
        assert!(matches!(
            corollary_h(8, &c),
            Err(Error::KroneckerCondition { prime: 11, .. })
        ));
    }

    #[test]
    fn mass_examples() {
        assert_eq!(mass(&cfg(&[11], 1)), rat(5, 12));
        assert_eq!(mass(&cfg(&[2, 3, 11], 1)), rat(5, 6));
        assert_eq!(mass(&cfg(&[2, 3, 7], 5)), int(3));
    }

    #[test]
    fn level_validation() {
        assert!(LevelConfig::new(&[2, 3], 1).is_err());
        assert!(LevelConfig::new(&[11], 4).is_err());
        assert!(LevelConfig::new(&[11], 22).is_err());
        assert!(LevelConfig::new(&[9], 1).is_err());
        assert!(LevelConfig::new(&[11], 0).is_err());
        let c = cfg(&[7, 3, 2], 5);
        assert_eq!(c.ramified_primes(), vec![2, 3, 7]);
        assert_eq!(c.level(), 210);
        assert_eq!(c.omega(), 4);
    }

    #[test]
    fn closed_form_matches_corollary() {
        for c in [cfg(&[11], 1), cfg(&[2, 3, 11], 1), cfg(&[2, 3, 7], 5), cfg(&[13], 7)] {
            for big_d in 1..=2000u64 {
                let Ok(d) = Discriminant::new(-(big_d as i64)) else { continue };
                if !d.is_fundamental() || c.kronecker_condition(big_d).is_err() {
                    continue;
                }
                assert_eq!(closed_form_h(big_d, &c), corollary_h(big_d, &c).unwrap(), "D={big_d}");
            }
        }
    }

    #[test]
    fn closed_form_support_and_denominators() {
        for c in [cfg(&[11], 1), cfg(&[2, 3, 11], 1), cfg(&[2, 3, 7], 5)] {
            for big_d in 1..=2000u64 {
                let h = closed_form_h(big_d, &c);
                assert!(h >= int(0));
                assert!((int(6) * &h).is_integer(), "D={big_d} H={h}");
                if !is_negative_discriminant(big_d) {
                    assert_eq!(h, int(0));
                }
            }
        }
    }

    #[test]
    fn gross_prime_level() {
        for n in [11u64, 23, 37] {
            let c = cfg(&[n], 1);
            for big_d in 1..=1000u64 {
                let Ok(d) = Discriminant::new(-(big_d as i64)) else { continue };
                let k = kronecker(-(big_d as i64), n as i64).unwrap();
                if !d.is_fundamental() || k == 1 {
                    continue;
                }
                let expected = rat((1 - k as i64) * class_number(&d) as i64, 2 * unit_factor(&d) as i64);
                assert_eq!(closed_form_h(big_d, &c), expected);
            }
        }
    }
}
