//! Brandt matrices, the weight 2 theta series they define, and rational
//! eigenvectors.

use crate::arith::{factorize, is_prime};
use crate::error::{Error, Result};
use crate::linalg::{charpoly, identity, integer_roots, kernel, mat_vec, primitive_integer_vector, Matrix};
use crate::order::{pairing_form, IdealClassSet};
use crate::qform::{mass, LevelConfig};
use crate::rational::Rational;
use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrandtMatrix {
    m: u64,
    entries: Matrix,
}

impl BrandtMatrix {
    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i][j]
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn row_sums(&self) -> Vec<Rational> {
        self.entries.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn trace(&self) -> Rational {
        crate::linalg::trace(&self.entries)
    }
}

/// Representation numbers of the pairing lattices: `counts[i][j][m]` is the
/// number of `x in conj(I_j) I_i` with `nrd(x) = m N(I_i) N(I_j)`.
#[derive(Clone, Debug)]
pub struct BrandtData {
    m_max: u64,
    unit_counts: Vec<u64>,
    counts: Vec<Vec<Vec<u64>>>,
}

impl BrandtData {
    pub fn new(classes: &IdealClassSet, m_max: u64) -> Result<Self> {
        let n = classes.len();
        let alg = classes.algebra();
        let ideals = classes.ideals();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let series: Vec<Vec<u64>> = pairs
            .par_iter()
            .map(|&(i, j)| Ok(pairing_form(alg, &ideals[j], &ideals[i])?.theta_counts(m_max)))
            .collect::<Result<_>>()?;
        let mut counts = vec![vec![Vec::new(); n]; n];
        for (&(i, j), s) in pairs.iter().zip(series) {
            counts[j][i] = s.clone();
            counts[i][j] = s;
        }
        Ok(Self {
            m_max,
            unit_counts: classes.unit_counts().to_vec(),
            counts,
        })
    }

    pub fn m_max(&self) -> u64 {
        self.m_max
    }

    pub fn matrix(&self, m: u64) -> BrandtMatrix {
        assert!(m <= self.m_max, "B_{m} beyond the computed range {}", self.m_max);
        let n = self.unit_counts.len();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        Rational::new(
                            BigInt::from(self.counts[i][j][m as usize]),
                            BigInt::from(self.unit_counts[j]),
                        )
                    })
                    .collect()
            })
            .collect();
        BrandtMatrix { m, entries }
    }

    pub fn theta(&self, i: usize, j: usize) -> QSeries {
        QSeries {
            coeffs: (0..=self.m_max).map(|m| self.matrix_entry(i, j, m)).collect(),
        }
    }

    fn matrix_entry(&self, i: usize, j: usize, m: u64) -> Rational {
        Rational::new(
            BigInt::from(self.counts[i][j][m as usize]),
            BigInt::from(self.unit_counts[j]),
        )
    }
}

pub fn brandt_matrix(classes: &IdealClassSet, m: u64) -> Result<BrandtMatrix> {
    Ok(BrandtData::new(classes, m)?.matrix(m))
}

/// Row sum of `B_m`, the number of integral left ideals of norm `m` in the
/// order. Multiplicative in `m`; the factor at `p^k` is `1` for ramified `p`,
/// `sigma(p^k)` for `p` prime to the level, and the coefficient of `X^k` in
/// `(1 + qX) / ((1 - X)(1 - qX))` for `q | M`. It agrees with
/// [`divisor_sum_prime_to`] whenever `gcd(m, M) = 1`.
pub fn expected_row_sum(m: u64, cfg: &LevelConfig) -> u64 {
    if m == 0 {
        return 0;
    }
    let f = factorize(m).expect("m >= 1");
    f.factors()
        .iter()
        .map(|&(p, k)| {
            if cfg.p().divisible_by(p) {
                1
            } else if cfg.m().divisible_by(p) {
                let pk = p.pow(k);
                (pk * p - 1) / (p - 1) + p * (pk - 1) / (p - 1)
            } else {
                (p.pow(k + 1) - 1) / (p - 1)
            }
        })
        .product()
}

/// `sum_{d | m, (d, P) = 1} d`.
pub fn divisor_sum_prime_to(m: u64, p: u64) -> u64 {
    (1..=m).filter(|d| m % d == 0 && num_integer::gcd(*d, p) == 1).sum()
}

/// A truncated q-expansion with exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<Rational>,
}

impl QSeries {
    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coefficient(&self, m: usize) -> &Rational {
        &self.coeffs[m]
    }
}

pub fn theta_weight2(classes: &IdealClassSet, i: usize, j: usize, m_max: u64) -> Result<QSeries> {
    Ok(BrandtData::new(classes, m_max)?.theta(i, j))
}

/// `sum 1/(2 w_i) + sum_{m >= 1} b_m q^m`.
pub fn eisenstein_e2(cfg: &LevelConfig, m_max: u64) -> QSeries {
    let mut coeffs = vec![mass(cfg)];
    coeffs.extend((1..=m_max).map(|m| Rational::from_integer(expected_row_sum(m, cfg).into())));
    QSeries { coeffs }
}

/// A one-dimensional rational eigenspace of the Hecke algebra at the good primes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenSpace {
    /// `(p, a_p)` for the splitting primes, ascending in `p`.
    pub eigenvalues: Vec<(u64, i64)>,
    /// Right eigenvector `v` with `(v_i / w_i)` primitive integral.
    pub v: Vec<BigInt>,
    /// `(v_i / w_i)`, the left eigenvector.
    pub c: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenSystem {
    pub u: Vec<BigInt>,
    pub v: Vec<BigInt>,
    pub c: Vec<BigInt>,
    pub eigenvalues: BTreeMap<u64, i64>,
}

/// All simultaneous rational eigenspaces of `B_p` for the given primes, with
/// their eigenvalue tuples.
fn joint_eigenspaces(data: &BrandtData, primes: &[u64]) -> Vec<(Vec<i64>, Vec<Vec<Rational>>)> {
    let n = data.unit_counts.len();
    let mut spaces: Vec<(Vec<i64>, Matrix)> = vec![(Vec::new(), Vec::new())];
    for &p in primes {
        let b = data.matrix(p);
        let roots = integer_roots(&charpoly(&b.entries), (p + 1) as i64);
        let mut next = Vec::new();
        for (tuple, stack) in &spaces {
            for &lambda in &roots {
                let mut shifted = b.entries.clone();
                let id = identity(n);
                for (r, row) in shifted.iter_mut().enumerate() {
                    for (c, x) in row.iter_mut().enumerate() {
                        *x -= &id[r][c] * Rational::from_integer(lambda.into());
                    }
                }
                let mut st = stack.clone();
                st.extend(shifted);
                if !kernel(&st).is_empty() {
                    let mut t = tuple.clone();
                    t.push(lambda);
                    next.push((t, st));
                }
            }
        }
        spaces = next;
    }
    spaces.into_iter().map(|(t, st)| (t, kernel(&st))).collect()
}

/// The one-dimensional cusp eigenspaces and the dimensions of any rational
/// eigenspaces the primes fail to split.
pub fn rational_eigenspaces(
    classes: &IdealClassSet,
    data: &BrandtData,
    primes: &[u64],
) -> Result<(Vec<EigenSpace>, Vec<usize>)> {
    let level = classes.config().level();
    if let Some(&p) = primes.iter().find(|&&p| level % p == 0 || !is_prime(p)) {
        return Err(Error::InvalidLevel(format!("{p} is not a good prime")));
    }
    let w: Vec<BigInt> = classes.w().into_iter().map(BigInt::from).collect();
    let cfg = classes.config();
    let mut lines = Vec::new();
    let mut unsplit = Vec::new();
    for (tuple, basis) in joint_eigenspaces(data, primes) {
        let eisenstein = primes
            .iter()
            .zip(&tuple)
            .all(|(&p, &a)| a == expected_row_sum(p, cfg) as i64);
        if eisenstein {
            continue;
        }
        if basis.len() != 1 {
            unsplit.push(basis.len());
            continue;
        }
        let scaled: Vec<Rational> = basis[0]
            .iter()
            .zip(&w)
            .map(|(x, wi)| x / Rational::from_integer(wi.clone()))
            .collect();
        let c = primitive_integer_vector(&scaled);
        let v = c.iter().zip(&w).map(|(a, b)| a * b).collect();
        lines.push(EigenSpace {
            eigenvalues: primes.iter().copied().zip(tuple).collect(),
            v,
            c,
        });
    }
    lines.sort_by(|a, b| a.eigenvalues.cmp(&b.eigenvalues));
    Ok((lines, unsplit))
}

/// `u`, a selected cusp eigenvector `v`, and its eigenvalues at every good
/// prime up to the data's range. `leading` selects by a prefix of the
/// eigenvalue tuple; otherwise the lexicographically first space is taken.
pub fn rational_eigensystem(
    classes: &IdealClassSet,
    data: &BrandtData,
    primes: &[u64],
    leading: Option<&[i64]>,
) -> Result<EigenSystem> {
    let (lines, unsplit) = rational_eigenspaces(classes, data, primes)?;
    let chosen = lines
        .into_iter()
        .find(|l| {
            leading.is_none_or(|lead| {
                lead.len() <= l.eigenvalues.len()
                    && lead.iter().zip(&l.eigenvalues).all(|(a, (_, b))| a == b)
            })
        })
        .ok_or(Error::NoRationalSplitting { dims: unsplit })?;
    Ok(eigensystem_from(classes, data, chosen))
}

/// Completes an eigenspace with `a_p` for every good prime `p <= m_max`.
pub fn eigensystem_from(classes: &IdealClassSet, data: &BrandtData, line: EigenSpace) -> EigenSystem {
    let level = classes.config().level();
    let v: Vec<Rational> = line.v.iter().map(|x| Rational::from_integer(x.clone())).collect();
    let pivot = v.iter().position(|x| !x.is_zero()).expect("nonzero eigenvector");
    let mut eigenvalues = BTreeMap::new();
    for p in (2..=data.m_max()).filter(|&p| is_prime(p) && level % p != 0) {
        let bv = mat_vec(&data.matrix(p).entries, &v);
        let a = &bv[pivot] / &v[pivot];
        debug_assert!(bv.iter().zip(&v).all(|(x, y)| *x == &a * y));
        eigenvalues.insert(p, a.to_integer().try_into().expect("eigenvalue fits"));
    }
    EigenSystem {
        u: vec![BigInt::from(1); classes.len()],
        v: line.v,
        c: line.c,
        eigenvalues,
    }
}
