//! Exact rationals and their `num/den` text form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Always `num/den`, denominator positive, including `n/1` for integers.
pub fn to_frac_string(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn serialize_frac<S: serde::Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&to_frac_string(x))
}

pub fn parse_frac(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Reduction of a rational modulo a prime `l`; `None` if `l` divides the denominator.
pub fn reduce_mod(x: &Rational, l: u64) -> Option<u64> {
    let l = BigInt::from(l);
    let den = x.denom().mod_floor(&l);
    if den.is_zero() {
        return None;
    }
    let num = x.numer().mod_floor(&l);
    let inv = mod_inverse_big(&den, &l)?;
    let r = (num * inv).mod_floor(&l);
    Some(u64::try_from(r).expect("residue fits"))
}

fn mod_inverse_big(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if !e.gcd.abs().is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

pub fn nonneg(x: &Rational) -> bool {
    !x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frac_strings() {
        assert_eq!(to_frac_string(&rat(5, 12)), "5/12");
        assert_eq!(to_frac_string(&int(3)), "3/1");
        assert_eq!(to_frac_string(&rat(2, -4)), "-1/2");
        assert_eq!(parse_frac("-1/2"), Some(rat(-1, 2)));
        assert_eq!(parse_frac("7"), Some(int(7)));
        assert_eq!(parse_frac("1/0"), None);
    }

    #[test]
    fn reduction() {
        assert_eq!(reduce_mod(&rat(1, 3), 5), Some(2));
        assert_eq!(reduce_mod(&rat(-2, 1), 5), Some(3));
        assert_eq!(reduce_mod(&rat(1, 5), 5), None);
    }
}
