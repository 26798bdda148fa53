//! Eisenstein congruences mod `l` and the divisibility comparison between
//! `m_D` and class numbers.

use crate::arith::{is_prime, Discriminant};
use crate::brandt::{expected_row_sum, EigenSystem};
use crate::error::{Error, Result};
use crate::qform::{class_number, LevelConfig};
use crate::rational::{reduce_mod, Rational};
use crate::theta32::HalfIntegralSeries;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceFailure {
    pub index: u64,
    pub lhs: u64,
    pub rhs: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceReport {
    pub l: u64,
    pub lambda: Option<u64>,
    /// Largest prime (eigenvalue suite) or `D` (coefficient suite) examined.
    pub checked_up_to: u64,
    pub failures: Vec<CongruenceFailure>,
    /// Why `lambda` is absent, when it is.
    pub note: Option<String>,
}

impl CongruenceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.note.is_none()
    }
}

fn check_odd_prime(l: u64) -> Result<()> {
    if l == 2 || !is_prime(l) {
        return Err(Error::CongruencePrecondition(format!("{l} is not an odd prime")));
    }
    Ok(())
}

/// `a_p = b_p mod l` for good primes `p <= p_max`.
pub fn eigenvalue_congruence(
    eig: &EigenSystem,
    cfg: &LevelConfig,
    w: &[u64],
    l: u64,
    p_max: u64,
) -> Result<CongruenceReport> {
    check_odd_prime(l)?;
    if let Some(wi) = w.iter().find(|&&wi| wi % l == 0) {
        return Err(Error::CongruencePrecondition(format!("l = {l} divides w = {wi}")));
    }
    let mut failures = Vec::new();
    for (&p, &a) in eig.eigenvalues.range(..=p_max) {
        let lhs = a.rem_euclid(l as i64) as u64;
        let rhs = expected_row_sum(p, cfg) % l;
        if lhs != rhs {
            failures.push(CongruenceFailure { index: p, lhs, rhs });
        }
    }
    Ok(CongruenceReport {
        l,
        lambda: None,
        checked_up_to: p_max,
        failures,
        note: None,
    })
}

/// Finds `lambda` with `lambda G = H mod l` and checks it on every coefficient.
pub fn coefficient_congruence(
    h: &HalfIntegralSeries,
    g: &HalfIntegralSeries,
    l: u64,
) -> Result<CongruenceReport> {
    check_odd_prime(l)?;
    let d_max = h.d_max().min(g.d_max());
    let mut report = CongruenceReport {
        l,
        lambda: None,
        checked_up_to: d_max,
        failures: Vec::new(),
        note: None,
    };
    let mut hs = Vec::with_capacity(d_max as usize + 1);
    let mut gs = Vec::with_capacity(d_max as usize + 1);
    for d in 0..=d_max {
        match (reduce_mod(h.coefficient(d), l), reduce_mod(g.coefficient(d), l)) {
            (Some(a), Some(b)) => {
                hs.push(a);
                gs.push(b);
            }
            _ => {
                report.note = Some(format!("coefficient at D = {d} has denominator divisible by {l}"));
                return Ok(report);
            }
        }
    }
    let Some(first) = (0..hs.len()).find(|&d| hs[d] != 0 && gs[d] != 0) else {
        report.note = Some(if hs.iter().chain(&gs).all(|&x| x == 0) {
            "indeterminate".to_string()
        } else {
            "no index with both sides nonzero".to_string()
        });
        return Ok(report);
    };
    let lambda = hs[first] * crate::arith::mod_inverse(gs[first] as i64, l as i64).expect("l prime") as u64 % l;
    for d in 0..hs.len() {
        let lhs = lambda * gs[d] % l;
        if lhs != hs[d] {
            report.failures.push(CongruenceFailure {
                index: d as u64,
                lhs,
                rhs: hs[d],
            });
        }
    }
    if report.failures.is_empty() {
        report.lambda = Some(lambda);
    } else {
        report.note = Some(format!("lambda = {lambda} from D = {first} is not consistent"));
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisibilityRow {
    #[serde(rename = "D")]
    pub big_d: u64,
    pub fundamental: bool,
    pub s: usize,
    pub h: u64,
    pub h_mod_l: u64,
    #[serde(rename = "m_D", serialize_with = "crate::rational::serialize_frac")]
    pub m_d: Rational,
    #[serde(rename = "m_D_mod_l")]
    pub m_d_mod_l: u64,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisibilityTable {
    pub l: u64,
    pub rows: Vec<DivisibilityRow>,
    pub agreements: usize,
    pub disagreements: usize,
}

/// Fundamental `-D` with `(-D/p) != 1` for `p | P` and `(-D/q) != -1` for `q | M`.
pub fn admissible(big_d: u64, cfg: &LevelConfig) -> Option<Discriminant> {
    let d = Discriminant::new(-(big_d as i64)).ok()?;
    if !d.is_fundamental() || cfg.kronecker_condition(big_d).is_err() {
        return None;
    }
    Some(d)
}

/// `l | m_D` against `l | h(-D)` over the admissible family.
pub fn divisibility_table(
    cfg: &LevelConfig,
    g: &HalfIntegralSeries,
    l: u64,
    d_max: u64,
) -> Result<DivisibilityTable> {
    check_odd_prime(l)?;
    let d_max = d_max.min(g.d_max());
    let mut rows = Vec::new();
    for big_d in 3..=d_max {
        let Some(d) = admissible(big_d, cfg) else { continue };
        let h = class_number(&d);
        let m_d = g.coefficient(big_d).clone();
        let m_d_mod_l = reduce_mod(&m_d, l).ok_or_else(|| {
            Error::CongruencePrecondition(format!("m_D at D = {big_d} has denominator divisible by {l}"))
        })?;
        rows.push(DivisibilityRow {
            big_d,
            fundamental: true,
            s: cfg.ramified_count(&d),
            h,
            h_mod_l: h % l,
            agree: (h % l == 0) == (m_d_mod_l == 0),
            m_d,
            m_d_mod_l,
        });
    }
    let agreements = rows.iter().filter(|r| r.agree).count();
    Ok(DivisibilityTable {
        l,
        disagreements: rows.len() - agreements,
        agreements,
        rows,
    })
}

/// Whether every coefficient is an integer.
pub fn integral_coefficients(g: &HalfIntegralSeries) -> bool {
    g.coefficients().iter().skip(1).all(|c| c.is_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brandt::{rational_eigensystem, BrandtData};
    use crate::order::build_classes;
    use crate::theta32::TernaryCounts;

    #[test]
    fn level_eleven_mod_five() {
        let cfg = LevelConfig::new(&[11], 1).unwrap();
        let classes = build_classes(&cfg).unwrap();
        let data = BrandtData::new(&classes, 50).unwrap();
        let eig = rational_eigensystem(&classes, &data, &[2, 3], None).unwrap();
        let ev = eigenvalue_congruence(&eig, &cfg, &classes.w(), 5, 50).unwrap();
        assert!(ev.passed());
        let bad = eigenvalue_congruence(&eig, &cfg, &classes.w(), 7, 50).unwrap();
        assert!(!bad.failures.is_empty());
        assert!(eigenvalue_congruence(&eig, &cfg, &classes.w(), 3, 50).is_err());

        let t = TernaryCounts::new(&classes, 500).unwrap();
        let h = t.cohen_h();
        let g = t.cusp_g(&eig);
        assert!(integral_coefficients(&g));
        let cc = coefficient_congruence(&h, &g, 5).unwrap();
        assert!(cc.lambda.is_some() && cc.passed());
        let c3 = coefficient_congruence(&h, &g, 3).unwrap();
        assert!(c3.lambda.is_none());

        let table = divisibility_table(&cfg, &g, 5, 500).unwrap();
        assert_eq!(table.disagreements, 0);
        let row = table.rows.iter().find(|r| r.big_d == 47).unwrap();
        assert_eq!(row.h, 5);
        assert_eq!(row.m_d_mod_l, 0);
    }

    #[test]
    fn degenerate_series() {
        let cfg = LevelConfig::new(&[11], 1).unwrap();
        let classes = build_classes(&cfg).unwrap();
        let t = TernaryCounts::new(&classes, 20).unwrap();
        let g = t.g(0);
        let zero = t.cusp_g(&EigenSystem {
            u: vec![1.into(); 2],
            v: vec![0.into(); 2],
            c: vec![0.into(); 2],
            eigenvalues: Default::default(),
        });
        let r = coefficient_congruence(&zero, &zero, 5).unwrap();
        assert_eq!(r.note.as_deref(), Some("indeterminate"));
        let r = coefficient_congruence(&g, &zero, 5).unwrap();
        assert!(r.lambda.is_none());
    }
}
