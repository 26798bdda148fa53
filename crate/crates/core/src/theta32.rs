//! Weight 3/2: theta series of the trace-zero lattices of `Z + 2R_i`, the
//! Cohen-Eisenstein series `H`, the cusp-side series `G`, and optimal
//! embedding counts.

use crate::arith::{kronecker, Discriminant};
use crate::brandt::{BrandtData, EigenSystem};
use crate::error::{Error, Result};
use crate::lattice::{functional_kernel, Lattice, QuadForm};
use crate::order::IdealClassSet;
use crate::qform::unit_factor;
use crate::rational::{int, rat, Rational};
use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

/// The trace-zero part `S^0_i` of `Z + 2R_i` with its norm form.
#[derive(Clone, Debug)]
pub struct TernaryLattice {
    pub class_index: usize,
    basis: Vec<[Rational; 4]>,
    form: QuadForm,
}

impl TernaryLattice {
    pub fn basis(&self) -> &[[Rational; 4]] {
        &self.basis
    }

    pub fn form(&self) -> &QuadForm {
        &self.form
    }

    /// Determinant of the even Gram matrix.
    pub fn determinant(&self) -> Rational {
        self.form.determinant()
    }
}

pub fn ternary_lattice(classes: &IdealClassSet, i: usize) -> Result<TernaryLattice> {
    let alg = classes.algebra();
    let r = &classes.right_orders()[i];
    let two = int(2);
    let mut gens = vec![[int(1), int(0), int(0), int(0)]];
    gens.extend(r.basis().into_iter().map(|b| b.map(|c| c * &two)));
    let l = Lattice::from_generators(&gens)?;
    // trd(f_r) is proportional to the first coordinate of each basis row
    let t: Vec<BigInt> = l.int_rows().iter().map(|row| row[0].clone()).collect();
    let kernel = functional_kernel(&t);
    let lb = l.basis();
    let basis: Vec<[Rational; 4]> = kernel
        .iter()
        .map(|k| {
            let mut x: [Rational; 4] = Default::default();
            for (coef, b) in k.iter().zip(&lb) {
                for c in 0..4 {
                    x[c] += Rational::from_integer(coef.clone()) * &b[c];
                }
            }
            x
        })
        .collect();
    let diag = alg.trace_form_diagonal();
    let gram: Vec<Vec<Rational>> = basis
        .iter()
        .map(|x| {
            basis
                .iter()
                .map(|y| (0..4).map(|c| &x[c] * &y[c] * int(diag[c])).sum())
                .collect()
        })
        .collect();
    Ok(TernaryLattice {
        class_index: i,
        basis,
        form: QuadForm::from_rational_gram(&gram)?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SeriesKind {
    Theta(usize),
    CohenEisenstein,
    Cusp,
}

/// Coefficients at `0..=D_max`, index `0` holding the constant term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfIntegralSeries {
    pub kind: SeriesKind,
    coeffs: Vec<Rational>,
}

impl HalfIntegralSeries {
    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coefficient(&self, d: u64) -> &Rational {
        &self.coeffs[d as usize]
    }

    pub fn d_max(&self) -> u64 {
        self.coeffs.len() as u64 - 1
    }

    pub fn constant_term(&self) -> &Rational {
        &self.coeffs[0]
    }

    /// Indices `D = 1, 2 mod 4` with a nonzero coefficient.
    pub fn plus_space_violations(&self) -> Vec<u64> {
        (0..=self.d_max())
            .filter(|d| matches!(d % 4, 1 | 2) && !self.coeffs[*d as usize].is_zero())
            .collect()
    }
}

/// Representation numbers of every `S^0_i` up to `D_max`.
#[derive(Clone, Debug)]
pub struct TernaryCounts {
    d_max: u64,
    w: Vec<u64>,
    lattices: Vec<TernaryLattice>,
    all: Vec<Vec<u64>>,
    primitive: Vec<Vec<u64>>,
}

impl TernaryCounts {
    pub fn new(classes: &IdealClassSet, d_max: u64) -> Result<Self> {
        let lattices: Vec<TernaryLattice> =
            (0..classes.len()).map(|i| ternary_lattice(classes, i)).collect::<Result<_>>()?;
        let sweeps: Vec<(Vec<u64>, Vec<u64>)> = lattices
            .par_iter()
            .map(|l| l.form.theta_counts_with_primitive(d_max))
            .collect();
        let (all, primitive) = sweeps.into_iter().unzip();
        Ok(Self {
            d_max,
            w: classes.w(),
            lattices,
            all,
            primitive,
        })
    }

    pub fn d_max(&self) -> u64 {
        self.d_max
    }

    pub fn lattices(&self) -> &[TernaryLattice] {
        &self.lattices
    }

    /// `#{b in S^0_i : N(b) = D}` for `D >= 1`.
    pub fn count(&self, i: usize, d: u64) -> u64 {
        self.all[i][d as usize]
    }

    pub fn primitive_count(&self, i: usize, d: u64) -> u64 {
        self.primitive[i][d as usize]
    }

    /// `g_i = 1/2 + 1/2 sum #{N(b) = D} q^D`.
    pub fn g(&self, i: usize) -> HalfIntegralSeries {
        let mut coeffs = vec![rat(1, 2)];
        coeffs.extend((1..=self.d_max).map(|d| rat(self.count(i, d) as i64, 2)));
        HalfIntegralSeries {
            kind: SeriesKind::Theta(i),
            coeffs,
        }
    }

    fn combine(&self, weights: &[Rational], kind: SeriesKind) -> HalfIntegralSeries {
        let series: Vec<HalfIntegralSeries> = (0..self.w.len()).map(|i| self.g(i)).collect();
        let coeffs = (0..=self.d_max as usize)
            .map(|d| series.iter().zip(weights).map(|(g, c)| &g.coeffs[d] * c).sum())
            .collect();
        HalfIntegralSeries { kind, coeffs }
    }

    /// `H = sum g_i / w_i`.
    pub fn cohen_h(&self) -> HalfIntegralSeries {
        let weights: Vec<Rational> = self.w.iter().map(|&w| rat(1, w as i64)).collect();
        self.combine(&weights, SeriesKind::CohenEisenstein)
    }

    /// `G = sum (v_i / w_i) g_i`.
    pub fn cusp_g(&self, eig: &EigenSystem) -> HalfIntegralSeries {
        let weights: Vec<Rational> = eig.c.iter().map(|c| Rational::from_integer(c.clone())).collect();
        self.combine(&weights, SeriesKind::Cusp)
    }

    /// `h(O_d, R_i) = u(d) #{primitive b in S^0_i : N(b) = |d|} / w_i`.
    pub fn optimal_embedding_count(&self, i: usize, d: &Discriminant) -> Result<u64> {
        let num = unit_factor(d) * self.primitive_count(i, d.abs());
        let w = self.w[i];
        if num % w != 0 {
            return Err(Error::NonIntegralEmbeddingCount {
                class: i,
                d: d.value(),
            });
        }
        Ok(num / w)
    }
}

pub fn g_coefficients(classes: &IdealClassSet, i: usize, d_max: u64) -> Result<HalfIntegralSeries> {
    Ok(TernaryCounts::new(classes, d_max)?.g(i))
}

pub fn cohen_h(classes: &IdealClassSet, d_max: u64) -> Result<HalfIntegralSeries> {
    Ok(TernaryCounts::new(classes, d_max)?.cohen_h())
}

pub fn cusp_g(classes: &IdealClassSet, eig: &EigenSystem, d_max: u64) -> Result<HalfIntegralSeries> {
    Ok(TernaryCounts::new(classes, d_max)?.cusp_g(eig))
}

pub fn optimal_embedding_count(classes: &IdealClassSet, i: usize, d: &Discriminant) -> Result<u64> {
    TernaryCounts::new(classes, d.abs())?.optimal_embedding_count(i, d)
}

/// The right-hand side of the embedding sum:
/// `h(d) prod_{p|P} (1 - {d/p}) prod_{q|M} (1 + {d/q})`.
pub fn embedding_total(d: &Discriminant, cfg: &crate::qform::LevelConfig) -> i64 {
    let mut total = crate::qform::class_number(d) as i64;
    for p in cfg.ramified_primes() {
        total *= 1 - crate::arith::eichler_symbol(d.abs(), p) as i64;
    }
    for q in cfg.m_primes() {
        total *= 1 + crate::arith::eichler_symbol(d.abs(), q) as i64;
    }
    total
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceRow {
    pub m: u64,
    #[serde(serialize_with = "crate::rational::serialize_frac")]
    pub trace: Rational,
    #[serde(serialize_with = "crate::rational::serialize_frac")]
    pub class_number_sum: Rational,
    pub pass: bool,
}

/// `Tr B_m` against `sum_{s^2 <= 4m} H(4m - s^2)`.
pub fn trace_identity_check(data: &BrandtData, h: &HalfIntegralSeries, m_max: u64) -> Vec<TraceRow> {
    assert!(4 * m_max <= h.d_max(), "H is needed up to 4 m_max");
    (0..=m_max)
        .map(|m| {
            let trace = data.matrix(m).trace();
            let bound = crate::arith::isqrt(4 * m) as i64;
            let sum: Rational = (-bound..=bound)
                .map(|s| h.coefficient(4 * m - (s * s) as u64).clone())
                .sum();
            TraceRow {
                m,
                pass: trace == sum,
                trace,
                class_number_sum: sum,
            }
        })
        .collect()
}

/// `kronecker(-D, p)` for `-D` a discriminant.
pub fn symbol(big_d: u64, p: u64) -> i8 {
    kronecker(-(big_d as i64), p as i64).expect("p is positive")
}
