//! Exact matrices over the rationals and over prime fields.

use crate::rational::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Matrix = Vec<Vec<Rational>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![Rational::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] += &a[i][l] * &b[l][j];
            }
        }
    }
    out
}

pub fn mat_vec(a: &Matrix, v: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

pub fn trace(a: &Matrix) -> Rational {
    (0..a.len()).map(|i| a[i][i].clone()).sum()
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of `{x : A x = 0}`.
pub fn kernel(a: &Matrix) -> Vec<Vec<Rational>> {
    let cols = if a.is_empty() { 0 } else { a[0].len() };
    let mut m = a.clone();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// Characteristic polynomial `det(xI - A)`, coefficients from constant term up
/// (monic), by Faddeev-LeVerrier.
pub fn charpoly(a: &Matrix) -> Vec<Rational> {
    let n = a.len();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut m = vec![vec![Rational::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = mat_mul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        m = next;
        let am = mat_mul(a, &m);
        coeffs[n - k] = -trace(&am) / Rational::from_integer(BigInt::from(k));
    }
    coeffs
}

pub fn eval_poly(p: &[Rational], x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

/// Integer roots of a polynomial within `[-bound, bound]`, each listed once, ascending.
pub fn integer_roots(p: &[Rational], bound: i64) -> Vec<i64> {
    (-bound..=bound)
        .filter(|&x| eval_poly(p, &Rational::from_integer(BigInt::from(x))).is_zero())
        .collect()
}

/// Scales a rational vector to a primitive integer vector whose first nonzero
/// entry is positive.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rational::from_integer(den.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    let sign = ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    ints.into_iter()
        .map(|x| if sign { -(x / &g) } else { x / &g })
        .collect()
}

/// Arithmetic in `F_p` on row vectors.
pub mod modp {
    fn inv(a: u64, p: u64) -> u64 {
        let mut r = 1u64;
        let mut base = a % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = (r as u128 * base as u128 % p as u128) as u64;
            }
            base = (base as u128 * base as u128 % p as u128) as u64;
            e >>= 1;
        }
        r
    }

    /// Reduced row echelon form with zero rows removed.
    pub fn rref(mut m: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
        let rows = m.len();
        let cols = if rows == 0 { 0 } else { m[0].len() };
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(piv) = (r..rows).find(|&i| m[i][c] % p != 0) else {
                continue;
            };
            m.swap(r, piv);
            let iv = inv(m[r][c], p);
            for x in m[r].iter_mut() {
                *x = *x * iv % p;
            }
            for i in 0..rows {
                if i != r && m[i][c] != 0 {
                    let f = m[i][c];
                    for j in 0..cols {
                        m[i][j] = (m[i][j] + p * p - f * m[r][j] % p) % p;
                    }
                }
            }
            r += 1;
        }
        m.truncate(r);
        m
    }

    /// Basis of `{x : A x = 0}` over `F_p`.
    pub fn kernel(a: Vec<Vec<u64>>, cols: usize, p: u64) -> Vec<Vec<u64>> {
        let m = rref(a, p);
        let pivots: Vec<usize> = m
            .iter()
            .map(|row| row.iter().position(|&x| x != 0).expect("nonzero row"))
            .collect();
        (0..cols)
            .filter(|c| !pivots.contains(c))
            .map(|f| {
                let mut v = vec![0u64; cols];
                v[f] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = (p - m[r][f]) % p;
                }
                v
            })
            .collect()
    }
}

pub fn residue(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn charpoly_examples() {
        // [[1,2],[3,4]]: x^2 - 5x - 2
        assert_eq!(charpoly(&m(&[&[1, 2], &[3, 4]])), vec![int(-2), int(-5), int(1)]);
        let a = m(&[&[2, 0, 0], &[0, -1, 0], &[0, 0, 3]]);
        assert_eq!(integer_roots(&charpoly(&a), 10), vec![-1, 2, 3]);
    }

    #[test]
    fn charpoly_matches_determinant() {
        let a = m(&[&[1, 2, 0, 1], &[0, 3, 1, 1], &[2, 0, 1, 5], &[1, 1, 1, 1]]);
        let cp = charpoly(&a);
        for x in -3..=3 {
            let mut shifted = a.clone();
            for (i, row) in shifted.iter_mut().enumerate() {
                for (j, e) in row.iter_mut().enumerate() {
                    *e = if i == j { int(x) - &*e } else { -e.clone() };
                }
            }
            assert_eq!(eval_poly(&cp, &int(x)), crate::lattice::rational_det(shifted));
        }
    }

    #[test]
    fn kernels() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = kernel(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mat_vec(&a, v).iter().all(|x| x.is_zero()));
        }
        let kp = modp::kernel(vec![vec![1, 2, 3], vec![0, 1, 1]], 3, 5);
        assert_eq!(kp.len(), 1);
        let v = &kp[0];
        assert_eq!((v[0] + 2 * v[1] + 3 * v[2]) % 5, 0);
        assert_eq!((v[1] + v[2]) % 5, 0);
    }

    #[test]
    fn primitive_scaling() {
        let v = vec![rat(-1, 2), rat(1, 3), int(0)];
        assert_eq!(
            primitive_integer_vector(&v),
            vec![BigInt::from(3), BigInt::from(-2), BigInt::zero()]
        );
    }
}
