//! Definite quaternion algebras `(a, b)` over the rationals.

use crate::arith::{factorize, is_prime, kronecker};
use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A place of the rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinite => write!(f, "inf"),
        }
    }
}

fn valuation(mut x: i128, p: i128) -> (u32, i128) {
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    (v, x)
}

/// A rational `x` replaced by an integer in the same square class.
fn square_class_rep(x: &Rational) -> i128 {
    let n = x.numer().to_i128().expect("numerator fits i128");
    let d = x.denom().to_i128().expect("denominator fits i128");
    n * d
}

fn hilbert_int(a: i128, b: i128, place: Place) -> i8 {
    assert!(a != 0 && b != 0, "Hilbert symbol of zero");
    let p = match place {
        Place::Infinite => return if a < 0 && b < 0 { -1 } else { 1 },
        Place::Finite(p) => p as i128,
    };
    let (alpha, u) = valuation(a, p);
    let (beta, v) = valuation(b, p);
    if p == 2 {
        let eps = |x: i128| i128::from(x.rem_euclid(4) == 3);
        let omega = |x: i128| i128::from(matches!(x.rem_euclid(8), 3 | 5));
        let e = eps(u) * eps(v) + alpha as i128 * omega(v) + beta as i128 * omega(u);
        return if e % 2 == 0 { 1 } else { -1 };
    }
    let leg = |x: i128| kronecker((x.rem_euclid(p)) as i64, p as i64).expect("p > 0");
    let mut s = 1i8;
    if (alpha * beta) % 2 == 1 && p.rem_euclid(4) == 3 {
        s = -s;
    }
    if beta % 2 == 1 {
        s *= leg(u);
    }
    if alpha % 2 == 1 {
        s *= leg(v);
    }
    s
}

/// Hilbert symbol `(a, b)_v`: `+1` iff `z^2 = a x^2 + b y^2` has a nontrivial
/// solution over the completion at `v`.
pub fn hilbert_symbol(a: &Rational, b: &Rational, place: Place) -> i8 {
    hilbert_int(square_class_rep(a), square_class_rep(b), place)
}

/// The algebra with `i^2 = a`, `j^2 = b`, `ij = -ji = k`, for negative integers `a, b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuaternionAlgebra {
    a: i64,
    b: i64,
    ramified: Vec<u64>,
}

const SEARCH_BOUND: i64 = 4000;

fn squarefree(n: u64) -> bool {
    factorize(n).map(|f| f.is_squarefree()).unwrap_or(false)
}

impl QuaternionAlgebra {
    /// Builds `(a, b)` and certifies its ramified set from Hilbert symbols.
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if a >= 0 || b >= 0 {
            return Err(Error::InvalidLevel(format!("({a}, {b}) is not definite")));
        }
        let ramified = Self::finite_ramification(a, b);
        Ok(Self { a, b, ramified })
    }

    fn finite_ramification(a: i64, b: i64) -> Vec<u64> {
        let mut primes = factorize((2 * a * b).unsigned_abs()).expect("nonzero").primes();
        primes.retain(|&p| hilbert_int(a as i128, b as i128, Place::Finite(p)) == -1);
        primes
    }

    /// Smallest `|a| + |b|` among negative square-free `a, b` whose finite
    /// ramification is exactly `ramified`; ties broken by smaller `|a|`.
    pub fn with_ramification(ramified: &[u64]) -> Result<Self> {
        let mut target = ramified.to_vec();
        target.sort_unstable();
        target.dedup();
        if target.is_empty() || target.len() % 2 == 0 || !target.iter().all(|&p| is_prime(p)) {
            return Err(Error::InvalidLevel(format!(
                "ramified set {target:?} must be an odd number of primes"
            )));
        }
        for s in 2..=SEARCH_BOUND {
            for abs_a in 1..=s / 2 {
                let abs_b = s - abs_a;
                if !squarefree(abs_a as u64) || !squarefree(abs_b as u64) {
                    continue;
                }
                let (a, b) = (-abs_a, -abs_b);
                let prod = (2 * a * b).unsigned_abs();
                if !target.iter().all(|&p| prod % p == 0) {
                    continue;
                }
                if Self::finite_ramification(a, b) == target {
                    return Self::new(a, b);
                }
            }
        }
        Err(Error::SearchExhausted {
            ramified: target,
            bound: SEARCH_BOUND,
        })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn ramified_primes(&self) -> &[u64] {
        &self.ramified
    }

    /// Product of the finite ramified primes.
    pub fn discriminant(&self) -> u64 {
        self.ramified.iter().product()
    }

    /// Hilbert symbols at all places where `(a, b)` can be nontrivial.
    pub fn local_symbols(&self) -> Vec<(Place, i8)> {
        let mut out: Vec<(Place, i8)> = factorize((2 * self.a * self.b).unsigned_abs())
            .expect("nonzero")
            .primes()
            .into_iter()
            .map(|p| (Place::Finite(p), hilbert_int(self.a as i128, self.b as i128, Place::Finite(p))))
            .collect();
        out.push((Place::Infinite, hilbert_int(self.a as i128, self.b as i128, Place::Infinite)));
        out
    }

    pub fn element(&self, coords: [Rational; 4]) -> QuatElement {
        QuatElement {
            a: self.a,
            b: self.b,
            coords,
        }
    }

    pub fn from_ints(&self, c: [i64; 4]) -> QuatElement {
        self.element(c.map(int))
    }

    pub fn one(&self) -> QuatElement {
        self.from_ints([1, 0, 0, 0])
    }

    /// Diagonal of the bilinear form `trd(x conj(y))` in the basis `1, i, j, k`.
    pub fn trace_form_diagonal(&self) -> [i64; 4] {
        [2, -2 * self.a, -2 * self.b, 2 * self.a * self.b]
    }
}

/// Integer quaternion product in the basis `1, i, j, k` of `(a, b)`.
pub(crate) fn mul_coords<T>(a: &T, b: &T, x: &[T; 4], y: &[T; 4]) -> [T; 4]
where
    T: Clone
        + std::ops::Add<Output = T>
        + std::ops::Sub<Output = T>
        + for<'r> std::ops::Mul<&'r T, Output = T>,
    for<'r> &'r T: std::ops::Mul<&'r T, Output = T>,
{
    let ab = a * b;
    let m = |u: &T, v: &T| u * v;
    [
        m(&x[0], &y[0]) + m(&x[1], &y[1]) * a + m(&x[2], &y[2]) * b - m(&x[3], &y[3]) * &ab,
        m(&x[0], &y[1]) + m(&x[1], &y[0]) - m(&x[2], &y[3]) * b + m(&x[3], &y[2]) * b,
        m(&x[0], &y[2]) + m(&x[2], &y[0]) + m(&x[1], &y[3]) * a - m(&x[3], &y[1]) * a,
        m(&x[0], &y[3]) + m(&x[3], &y[0]) + m(&x[1], &y[2]) - m(&x[2], &y[1]),
    ]
}

pub(crate) fn mul_bigint(a: i64, b: i64, x: &[BigInt; 4], y: &[BigInt; 4]) -> [BigInt; 4] {
    mul_coords(&BigInt::from(a), &BigInt::from(b), x, y)
}

/// An element of a quaternion algebra with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuatElement {
    a: i64,
    b: i64,
    coords: [Rational; 4],
}

impl QuatElement {
    pub fn coords(&self) -> &[Rational; 4] {
        &self.coords
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.a != other.a || self.b != other.b {
            return Err(Error::MixedAlgebras);
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coords = mul_coords(&int(self.a), &int(self.b), &self.coords, &other.coords);
        Ok(Self { coords, ..*self })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut coords = self.coords.clone();
        for (c, o) in coords.iter_mut().zip(&other.coords) {
            *c += o;
        }
        Ok(Self { coords, ..*self })
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self {
            coords: self.coords.clone().map(|c| c * s),
            ..*self
        }
    }

    pub fn conj(&self) -> Self {
        let [x0, x1, x2, x3] = self.coords.clone();
        Self {
            coords: [x0, -x1, -x2, -x3],
            ..*self
        }
    }

    pub fn norm(&self) -> Rational {
        let [x0, x1, x2, x3] = &self.coords;
        x0 * x0 - int(self.a) * x1 * x1 - int(self.b) * x2 * x2 + int(self.a * self.b) * x3 * x3
    }

    pub fn trace(&self) -> Rational {
        int(2) * &self.coords[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_scalar(&self) -> bool {
        self.coords[1..].iter().all(|c| c.is_zero())
    }

    /// `x^{-1} = conj(x) / norm(x)`, `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(self.conj().scale(&(int(1) / n)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primes_up_to;
    use crate::rational::rat;
    use proptest::prelude::*;

    /// Nontrivial primitive solution of `z^2 = a x^2 + b y^2` modulo `p^k`.
    fn solvable_mod(a: i64, b: i64, p: i64, k: u32) -> bool {
        let m = p.pow(k);
        for x in 0..m {
            for y in 0..m {
                for z in 0..m {
                    if x % p == 0 && y % p == 0 && z % p == 0 {
                        continue;
                    }
                    if (z * z - a * x * x - b * y * y).rem_euclid(m) == 0 {
                        return true;
                    }
                }
            }
        }
        false
    }

    #[test]
    fn hilbert_examples() {
        let m1 = int(-1);
        assert_eq!(hilbert_symbol(&m1, &m1, Place::Infinite), -1);
        assert_eq!(hilbert_symbol(&m1, &m1, Place::Finite(2)), -1);
        assert_eq!(hilbert_symbol(&m1, &m1, Place::Finite(3)), 1);
        assert_eq!(hilbert_symbol(&rat(-1, 4), &m1, Place::Finite(2)), -1);
        assert_eq!(hilbert_symbol(&int(-1), &int(-11), Place::Finite(11)), -1);
    }

    #[test]
    fn hilbert_at_two_matches_search_mod_64() {
        let units = [-15i64, -7, -5, -3, -1, 1, 3, 5, 7, 15];
        let vals: Vec<i64> = units.iter().flat_map(|&u| [u, 2 * u]).collect();
        for &a in &vals {
            for &b in &vals {
                let expected = if solvable_mod(a, b, 2, 6) { 1 } else { -1 };
                assert_eq!(hilbert_int(a as i128, b as i128, Place::Finite(2)), expected, "({a},{b})");
            }
        }
    }

    #[test]
    fn hilbert_at_odd_primes_matches_search() {
        for p in [3i64, 5] {
            for a in [-14i64, -7, -3, -2, -1, 1, 2, 3, 5, 6, 7, 10] {
                for b in [-11i64, -5, -3, -1, 1, 2, 3, 5, 7, 14] {
                    let expected = if solvable_mod(a, b, p, 3) { 1 } else { -1 };
                    assert_eq!(hilbert_int(a as i128, b as i128, Place::Finite(p as u64)), expected, "p={p} ({a},{b})");
                }
            }
        }
    }

    #[test]
    fn construct_examples() {
        let h = QuaternionAlgebra::with_ramification(&[2]).unwrap();
        assert_eq!((h.a(), h.b()), (-1, -1));
        let b11 = QuaternionAlgebra::with_ramification(&[11]).unwrap();
        assert_eq!(b11.ramified_primes(), &[11]);
        let b66 = QuaternionAlgebra::with_ramification(&[2, 3, 11]).unwrap();
        assert_eq!(b66.ramified_primes(), &[2, 3, 11]);
        let b42 = QuaternionAlgebra::with_ramification(&[7, 3, 2]).unwrap();
        assert_eq!(b42.ramified_primes(), &[2, 3, 7]);
        assert!(QuaternionAlgebra::with_ramification(&[2, 3]).is_err());
        assert!(QuaternionAlgebra::with_ramification(&[]).is_err());
    }

    #[test]
    fn product_formula_for_constructed_algebras() {
        let primes = primes_up_to(40);
        let mut sets: Vec<Vec<u64>> = primes.iter().map(|&p| vec![p]).collect();
        for (i, &p) in primes.iter().enumerate() {
            for (j, &q) in primes.iter().enumerate().skip(i + 1) {
                for &r in primes.iter().skip(j + 1).take(3) {
                    sets.push(vec![p, q, r]);
                }
            }
        }
        for s in sets.iter().take(60) {
            let alg = QuaternionAlgebra::with_ramification(s).unwrap();
            let prod: i32 = alg.local_symbols().iter().map(|&(_, e)| e as i32).product();
            assert_eq!(prod, 1, "{s:?}");
            assert_eq!(alg.ramified_primes(), s.as_slice());
        }
    }

    #[test]
    fn basis_relations() {
        let alg = QuaternionAlgebra::new(-2, -5).unwrap();
        let one = alg.one();
        let i = alg.from_ints([0, 1, 0, 0]);
        let j = alg.from_ints([0, 0, 1, 0]);
        let k = alg.from_ints([0, 0, 0, 1]);
        assert_eq!(one.norm(), int(1));
        assert_eq!(i.trace(), int(0));
        assert_eq!(i.norm(), int(2));
        assert_eq!(i.mul(&i).unwrap(), alg.from_ints([-2, 0, 0, 0]));
        assert_eq!(j.mul(&j).unwrap(), alg.from_ints([-5, 0, 0, 0]));
        assert_eq!(i.mul(&j).unwrap(), k);
        assert_eq!(j.mul(&i).unwrap(), k.scale(&int(-1)));
        assert_eq!(k.mul(&k).unwrap(), alg.from_ints([-10, 0, 0, 0]));
        let other = QuaternionAlgebra::new(-1, -1).unwrap().one();
        assert!(matches!(one.mul(&other), Err(Error::MixedAlgebras)));
    }

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-40i64..40, 1i64..9).prop_map(|(n, d)| rat(n, d))
    }

    fn element(alg: &QuaternionAlgebra) -> impl Strategy<Value = QuatElement> {
        let alg = alg.clone();
        [small_rat(), small_rat(), small_rat(), small_rat()].prop_map(move |c| alg.element(c))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn norm_trace_conj_laws(
            (x, y) in (element(&QuaternionAlgebra::new(-3, -7).unwrap()), element(&QuaternionAlgebra::new(-3, -7).unwrap())),
            s in small_rat(),
        ) {
            let xy = x.mul(&y).unwrap();
            prop_assert_eq!(xy.norm(), x.norm() * y.norm());
            prop_assert_eq!(x.add(&y).unwrap().trace(), x.trace() + y.trace());
            prop_assert_eq!(x.scale(&s).trace(), x.trace() * &s);
            prop_assert_eq!(xy.conj(), y.conj().mul(&x.conj()).unwrap());
            let n = x.mul(&x.conj()).unwrap();
            prop_assert!(n.is_scalar());
            prop_assert_eq!(&n.coords()[0], &x.norm());
            let t = x.add(&x.conj()).unwrap();
            prop_assert!(t.is_scalar());
            prop_assert_eq!(&t.coords()[0], &x.trace());
            if !x.is_zero() {
                prop_assert!(x.norm() > int(0));
            }
        }
    }
}
