//! Maximal and Eichler orders, left ideal classes and their right orders.

use crate::arith::{isqrt_u128, FactoredInt};
use crate::error::{Error, Result};
use crate::lattice::{Lattice, QuadForm, Row};
use crate::linalg::{modp, residue};
use crate::qform::{mass, LevelConfig};
use crate::quatalg::QuaternionAlgebra;
use crate::rational::{int, parse_frac, to_frac_string, Rational};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

/// A lattice that is a ring: contains 1, closed under multiplication, integral.
#[derive(Clone, Debug)]
pub struct OrderLattice {
    algebra: QuaternionAlgebra,
    lattice: Lattice,
    form: QuadForm,
}

impl PartialEq for OrderLattice {
    fn eq(&self, other: &Self) -> bool {
        self.algebra == other.algebra && self.lattice == other.lattice
    }
}

impl Eq for OrderLattice {}

impl OrderLattice {
    pub fn new(algebra: &QuaternionAlgebra, lattice: Lattice) -> Result<Self> {
        if !lattice.contains_one() {
            return Err(Error::BadLattice("order does not contain 1".into()));
        }
        if !lattice.is_integral_ring(algebra) {
            return Err(Error::BadLattice("order is not integral".into()));
        }
        if !lattice.is_closed_under_product(algebra) {
            return Err(Error::BadLattice("order is not closed under multiplication".into()));
        }
        let form = lattice.norm_form(algebra, &Rational::one())?;
        Ok(Self {
            algebra: algebra.clone(),
            lattice,
            form,
        })
    }

    pub fn algebra(&self) -> &QuaternionAlgebra {
        &self.algebra
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn basis(&self) -> Vec<[Rational; 4]> {
        self.lattice.basis()
    }

    /// The reduced norm as an (LLL-reduced) quadratic form.
    pub fn norm_form(&self) -> &QuadForm {
        &self.form
    }

    pub fn reduced_discriminant(&self) -> u64 {
        reduced_discriminant(self)
    }

    pub fn unit_count(&self) -> u64 {
        unit_count(self)
    }
}

/// The Z-order spanned by `1, i, j, k`.
pub fn standard_order(alg: &QuaternionAlgebra) -> OrderLattice {
    let rows: Vec<Row> = (0..4)
        .map(|r| std::array::from_fn(|c| BigInt::from(u8::from(r == c))))
        .collect();
    let lattice = Lattice::from_int_rows(rows, BigInt::one()).expect("identity basis");
    OrderLattice::new(alg, lattice).expect("Z<1,i,j,k> is an order")
}

/// `sqrt(det trd(x conj y))`.
pub fn reduced_discriminant(o: &OrderLattice) -> u64 {
    let det = o.lattice.gram_det(&o.algebra);
    let det = det.to_integer().to_u128().expect("order gram determinant is a positive integer");
    let r = isqrt_u128(det);
    debug_assert_eq!(r * r, det);
    r as u64
}

/// Number of elements of reduced norm 1.
pub fn unit_count(o: &OrderLattice) -> u64 {
    o.form.count_of_value(1)
}

fn ring_closure(alg: &QuaternionAlgebra, mut l: Lattice) -> Option<Lattice> {
    loop {
        if !l.is_integral_ring(alg) {
            return None;
        }
        let next = l.sum(&Lattice::product(alg, &l, &l)).ok()?;
        if next == l {
            return Some(l);
        }
        l = next;
    }
}

/// A maximal order, obtained by saturating `Z<1,i,j,k>` one prime at a time.
pub fn maximal_order(alg: &QuaternionAlgebra) -> Result<OrderLattice> {
    let target: u64 = alg.ramified_primes().iter().product();
    let mut o = standard_order(alg);
    loop {
        let disc = o.reduced_discriminant();
        if disc == target {
            return Ok(o);
        }
        let excess = crate::arith::factorize(disc / target)?;
        let p = excess.primes()[0];
        o = enlarge_at(&o, p).ok_or(Error::SaturationFailed(p))?;
    }
}

/// An order containing `o` with index `p`, or `None` if `o` is maximal at `p`.
fn enlarge_at(o: &OrderLattice, p: u64) -> Option<OrderLattice> {
    let alg = &o.algebra;
    let basis = o.basis();
    let pr = Rational::from_integer(BigInt::from(p));
    let pi = p as i64;
    for idx in 1..(pi * pi * pi * pi) {
        let digits = [idx % pi, idx / pi % pi, idx / (pi * pi) % pi, idx / (pi * pi * pi)];
        let mut x: [Rational; 4] = Default::default();
        for (d, b) in digits.iter().zip(&basis) {
            for c in 0..4 {
                x[c] += int(*d) * &b[c];
            }
        }
        let x = x.map(|c| c / &pr);
        let e = alg.element(x.clone());
        if !e.trace().is_integer() || !e.norm().is_integer() {
            continue;
        }
        let mut gens = basis.clone();
        gens.push(x);
        let Ok(l) = Lattice::from_generators(&gens) else { continue };
        if let Some(closed) = ring_closure(alg, l) {
            return OrderLattice::new(alg, closed).ok();
        }
    }
    None
}

/// Coordinates of `x` in the basis of `o`, reduced mod `q`.
fn coords_mod(o: &Lattice, x: &[Rational; 4], q: u64) -> Vec<u64> {
    o.coords(x)
        .expect("element lies in the order")
        .iter()
        .map(|c| residue(c, q))
        .collect()
}

fn combine(basis: &[[Rational; 4]], coeffs: &[u64]) -> [Rational; 4] {
    let mut x: [Rational; 4] = Default::default();
    for (b, &c) in basis.iter().zip(coeffs) {
        for k in 0..4 {
            x[k] += &b[k] * int(c as i64);
        }
    }
    x
}

/// The Eichler order `O ∩ O'` of level `M` inside the maximal order `omax`.
pub fn eichler_order(omax: &OrderLattice, m: &FactoredInt) -> Result<OrderLattice> {
    let alg = &omax.algebra;
    let mut e = omax.clone();
    for q in m.primes() {
        if alg.ramified_primes().contains(&q) {
            return Err(Error::InvalidLevel(format!("{q} ramifies in the algebra")));
        }
        e = refine_at(omax, &e, q)?;
    }
    let disc = e.reduced_discriminant();
    let expected = omax.reduced_discriminant() * m.value();
    if disc != expected {
        return Err(Error::BadLattice(format!(
            "Eichler order has discriminant {disc}, expected {expected}"
        )));
    }
    Ok(e)
}

/// `{x in cur : z x in J}` with `J = qO + Oz` a left `O`-ideal of norm `q`.
fn refine_at(omax: &OrderLattice, cur: &OrderLattice, q: u64) -> Result<OrderLattice> {
    let alg = &omax.algebra;
    let obasis = omax.basis();
    let qi = q as i64;
    let z = (1..qi.pow(4))
        .map(|idx| {
            let digits: Vec<u64> = (0..4).map(|k| (idx / qi.pow(k) % qi) as u64).collect();
            combine(&obasis, &digits)
        })
        .find(|x| {
            let n = alg.element(x.clone()).norm().to_integer();
            residue(&n, q) == 0
        })
        .ok_or(Error::SplittingNotFound(q))?;
    let ze = alg.element(z.clone());
    // J / qO inside O / qO
    let jrows: Vec<Vec<u64>> = obasis
        .iter()
        .map(|b| coords_mod(omax.lattice(), alg.element(b.clone()).mul(&ze).expect("same algebra").coords(), q))
        .collect();
    let w = modp::rref(jrows, q);
    if w.len() != 2 {
        return Err(Error::SplittingNotFound(q));
    }
    let annihilator = modp::kernel(w, 4, q);
    let cbasis = cur.basis();
    let images: Vec<Vec<u64>> = cbasis
        .iter()
        .map(|b| coords_mod(omax.lattice(), ze.mul(&alg.element(b.clone())).expect("same algebra").coords(), q))
        .collect();
    let constraints: Vec<Vec<u64>> = annihilator
        .iter()
        .map(|phi| {
            (0..4)
                .map(|r| (0..4).map(|c| phi[c] * images[r][c]).sum::<u64>() % q)
                .collect()
        })
        .collect();
    let kernel = modp::kernel(constraints, 4, q);
    let qr = int(qi);
    let mut gens: Vec<[Rational; 4]> = cbasis.iter().map(|b| b.clone().map(|c| c * &qr)).collect();
    gens.extend(kernel.iter().map(|k| combine(&cbasis, k)));
    let lattice = Lattice::from_generators(&gens)?;
    OrderLattice::new(alg, lattice)
}

/// A left ideal of a fixed order, with its reduced norm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftIdeal {
    lattice: Lattice,
    norm: Rational,
}

fn fourth_root(x: &Rational) -> Option<Rational> {
    let root = |n: &BigInt| -> Option<BigInt> {
        let r = n.sqrt().sqrt();
        (r.pow(4) == *n).then_some(r)
    };
    Some(Rational::new(root(x.numer())?, root(x.denom())?))
}

impl LeftIdeal {
    /// Wraps `lattice`, assumed stable under left multiplication by `o`.
    pub fn new(o: &OrderLattice, lattice: Lattice) -> Result<Self> {
        let ratio = lattice.gram_det(&o.algebra) / o.lattice.gram_det(&o.algebra);
        let norm = fourth_root(&ratio)
            .ok_or_else(|| Error::BadLattice("ideal index is not a square".into()))?;
        Ok(Self { lattice, norm })
    }

    pub fn unit(o: &OrderLattice) -> Self {
        Self {
            lattice: o.lattice.clone(),
            norm: Rational::one(),
        }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn norm(&self) -> &Rational {
        &self.norm
    }

    /// `conj(I) I / N(I)`.
    pub fn right_order(&self, alg: &QuaternionAlgebra) -> Result<OrderLattice> {
        let l = Lattice::product(alg, &self.lattice.conj(), &self.lattice);
        OrderLattice::new(alg, l.scale(&(Rational::one() / &self.norm))?)
    }

    pub fn right_multiply(&self, alg: &QuaternionAlgebra, x: &[Rational; 4]) -> Result<Self> {
        let xe = alg.element(x.clone());
        let gens: Vec<[Rational; 4]> = self
            .lattice
            .basis()
            .into_iter()
            .map(|b| alg.element(b).mul(&xe).map(|p| p.coords().clone()))
            .collect::<Result<_>>()?;
        Ok(Self {
            lattice: Lattice::from_generators(&gens)?,
            norm: &self.norm * xe.norm(),
        })
    }
}

/// The form `nrd(x) / (N(I) N(J))` on `conj(I) J`.
pub fn pairing_form(alg: &QuaternionAlgebra, i: &LeftIdeal, j: &LeftIdeal) -> Result<QuadForm> {
    let l = Lattice::product(alg, &i.lattice.conj(), &j.lattice);
    l.norm_form(alg, &(&i.norm * &j.norm))
}

/// `J = I x` for some `x`, decided by looking for a norm-1 vector of the pairing form.
pub fn is_equivalent(alg: &QuaternionAlgebra, i: &LeftIdeal, j: &LeftIdeal) -> Result<bool> {
    Ok(pairing_form(alg, i, j)?.count_of_value(1) > 0)
}

/// Left ideal class representatives with their right orders and unit counts.
#[derive(Clone, Debug)]
pub struct IdealClassSet {
    cfg: LevelConfig,
    order: OrderLattice,
    ideals: Vec<LeftIdeal>,
    right_orders: Vec<OrderLattice>,
    unit_counts: Vec<u64>,
}

impl IdealClassSet {
    pub fn config(&self) -> &LevelConfig {
        &self.cfg
    }

    pub fn algebra(&self) -> &QuaternionAlgebra {
        &self.order.algebra
    }

    pub fn order(&self) -> &OrderLattice {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn ideals(&self) -> &[LeftIdeal] {
        &self.ideals
    }

    pub fn right_orders(&self) -> &[OrderLattice] {
        &self.right_orders
    }

    /// `e_i = |R_i^*|`.
    pub fn unit_counts(&self) -> &[u64] {
        &self.unit_counts
    }

    /// `w_i = e_i / 2`.
    pub fn w(&self) -> Vec<u64> {
        self.unit_counts.iter().map(|e| e / 2).collect()
    }

    /// `sum 1/e_i`.
    pub fn mass(&self) -> Rational {
        self.unit_counts.iter().map(|&e| Rational::new(1.into(), e.into())).sum()
    }
}

/// Small-norm counts of the right order, a conjugation invariant used to skip
/// equivalence tests that cannot succeed.
fn order_signature(r: &OrderLattice) -> Vec<u64> {
    r.form.theta_counts(6)
}

/// Neighbours `pI + Oy` of index `p^2` in `I`, in a fixed order.
fn neighbours(o: &OrderLattice, ideal: &LeftIdeal, p: u64) -> Result<Vec<LeftIdeal>> {
    let alg = &o.algebra;
    let ib = ideal.lattice.basis();
    let obasis: Vec<_> = o.basis().into_iter().map(|b| alg.element(b)).collect();
    let pn = &ideal.norm * int(p as i64);
    let pi = p as i64;
    let mut found: BTreeMap<Vec<Vec<u64>>, [Rational; 4]> = BTreeMap::new();
    for idx in 1..pi.pow(4) {
        let digits: Vec<u64> = (0..4).map(|k| (idx / pi.pow(k) % pi) as u64).collect();
        let y = combine(&ib, &digits);
        let ye = alg.element(y.clone());
        let ratio = ye.norm() / &pn;
        if !ratio.is_integer() {
            continue;
        }
        let span: Vec<Vec<u64>> = obasis
            .iter()
            .map(|b| coords_mod(&ideal.lattice, b.mul(&ye).expect("same algebra").coords(), p))
            .collect();
        let key = modp::rref(span, p);
        found.entry(key).or_insert(y);
    }
    let pr = int(pi);
    let mut out = Vec::with_capacity(found.len());
    for (key, y) in found {
        if key.len() != 2 {
            continue;
        }
        let mut gens: Vec<[Rational; 4]> = ib.iter().map(|b| b.clone().map(|c| c * &pr)).collect();
        let ye = alg.element(y);
        for b in &obasis {
            gens.push(b.mul(&ye)?.coords().clone());
        }
        let lattice = Lattice::from_generators(&gens)?;
        out.push(LeftIdeal {
            lattice,
            norm: pn.clone(),
        });
    }
    Ok(out)
}

/// Breadth-first search over `p`-neighbours until the mass is exhausted.
pub fn left_ideal_classes(o: &OrderLattice, cfg: &LevelConfig) -> Result<IdealClassSet> {
    let alg = &o.algebra;
    let level = cfg.level();
    let p = (2..).find(|p| crate::arith::is_prime(*p) && level % p != 0).expect("primes are infinite");
    let target = mass(cfg);
    let first = LeftIdeal::unit(o);
    let mut set = IdealClassSet {
        cfg: cfg.clone(),
        order: o.clone(),
        ideals: vec![first],
        right_orders: vec![o.clone()],
        unit_counts: vec![unit_count(o)],
    };
    let mut signatures = vec![order_signature(o)];
    let mut total = set.mass();
    let mut cursor = 0;
    while total < target {
        let Some(current) = set.ideals.get(cursor).cloned() else {
            return Err(Error::BadLattice("neighbour graph exhausted before the mass".into()));
        };
        cursor += 1;
        for cand in neighbours(o, &current, p)? {
            let r = cand.right_order(alg)?;
            let sig = order_signature(&r);
            let mut known = false;
            for (k, ideal) in set.ideals.iter().enumerate() {
                if signatures[k] == sig && is_equivalent(alg, ideal, &cand)? {
                    known = true;
                    break;
                }
            }
            if known {
                continue;
            }
            let e = unit_count(&r);
            total += Rational::new(1.into(), e.into());
            set.ideals.push(cand);
            set.right_orders.push(r);
            set.unit_counts.push(e);
            signatures.push(sig);
            if total >= target {
                break;
            }
        }
    }
    if total != target {
        return Err(Error::MassOvershoot {
            reached: to_frac_string(&total),
            expected: to_frac_string(&target),
        });
    }
    Ok(set)
}

/// Algebra, maximal order, Eichler order and its ideal classes for `cfg`.
pub fn build_classes(cfg: &LevelConfig) -> Result<IdealClassSet> {
    let alg = QuaternionAlgebra::with_ramification(&cfg.ramified_primes())?;
    let omax = maximal_order(&alg)?;
    let o = eichler_order(&omax, cfg.m())?;
    left_ideal_classes(&o, cfg)
}

const CACHE_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct CachedAlgebra {
    a: i64,
    b: i64,
}

#[derive(Serialize, Deserialize)]
struct CachedClass {
    basis: Vec<String>,
    norm: String,
    e: u64,
    w: u64,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    ramified: Vec<u64>,
    #[serde(rename = "M")]
    m: u64,
    algebra: CachedAlgebra,
    classes: Vec<CachedClass>,
}

pub fn cache_path(dir: &Path, cfg: &LevelConfig) -> PathBuf {
    let ram: Vec<String> = cfg.ramified_primes().iter().map(u64::to_string).collect();
    dir.join(format!("classes_{}_M{}.json", ram.join("-"), cfg.m().value()))
}

impl IdealClassSet {
    pub fn to_json(&self) -> Result<String> {
        let file = CacheFile {
            version: CACHE_VERSION,
            ramified: self.cfg.ramified_primes(),
            m: self.cfg.m().value(),
            algebra: CachedAlgebra {
                a: self.algebra().a(),
                b: self.algebra().b(),
            },
            classes: self
                .ideals
                .iter()
                .zip(&self.unit_counts)
                .map(|(ideal, &e)| CachedClass {
                    basis: ideal
                        .lattice
                        .basis()
                        .iter()
                        .flat_map(|b| b.iter().map(to_frac_string))
                        .collect(),
                    norm: to_frac_string(&ideal.norm),
                    e,
                    w: e / 2,
                })
                .collect(),
        };
        Ok(serde_json::to_string_pretty(&file)?)
    }

    /// Rebuilds a class set, recomputing right orders and unit counts and
    /// re-certifying the mass.
    pub fn from_json(text: &str, cfg: &LevelConfig) -> Result<Self> {
        let file: CacheFile = serde_json::from_str(text)?;
        if file.version != CACHE_VERSION {
            return Err(Error::Cache(format!("unsupported version {}", file.version)));
        }
        if file.ramified != cfg.ramified_primes() || file.m != cfg.m().value() {
            return Err(Error::Cache("configuration mismatch".into()));
        }
        let alg = QuaternionAlgebra::new(file.algebra.a, file.algebra.b)?;
        if alg.ramified_primes() != cfg.ramified_primes().as_slice() {
            return Err(Error::Cache("algebra has the wrong ramification".into()));
        }
        let mut lattices = Vec::new();
        for class in &file.classes {
            if class.basis.len() != 16 {
                return Err(Error::Cache("basis must have 16 entries".into()));
            }
            let vals: Vec<Rational> = class
                .basis
                .iter()
                .map(|s| parse_frac(s).ok_or_else(|| Error::Cache(format!("bad rational {s}"))))
                .collect::<Result<_>>()?;
            let gens: Vec<[Rational; 4]> = vals
                .chunks(4)
                .map(|c| [c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()])
                .collect();
            lattices.push(Lattice::from_generators(&gens)?);
        }
        let Some(first) = lattices.first() else {
            return Err(Error::Cache("no classes".into()));
        };
        let o = OrderLattice::new(&alg, first.clone())?;
        if o.reduced_discriminant() != cfg.level() {
            return Err(Error::Cache("order has the wrong level".into()));
        }
        let mut set = IdealClassSet {
            cfg: cfg.clone(),
            order: o.clone(),
            ideals: Vec::new(),
            right_orders: Vec::new(),
            unit_counts: Vec::new(),
        };
        for (lattice, class) in lattices.into_iter().zip(&file.classes) {
            let prod = Lattice::product(&alg, o.lattice(), &lattice);
            if !lattice.contains_lattice(&prod) {
                return Err(Error::Cache("ideal is not stable under the order".into()));
            }
            let ideal = LeftIdeal::new(&o, lattice)?;
            if parse_frac(&class.norm).as_ref() != Some(&ideal.norm) {
                return Err(Error::Cache("stored norm does not match".into()));
            }
            let r = ideal.right_order(&alg)?;
            let e = unit_count(&r);
            if e != class.e || e / 2 != class.w {
                return Err(Error::Cache("stored unit count does not match".into()));
            }
            set.ideals.push(ideal);
            set.right_orders.push(r);
            set.unit_counts.push(e);
        }
        if set.mass() != mass(cfg) {
            return Err(Error::Cache("classes do not account for the mass".into()));
        }
        Ok(set)
    }

    /// Loads from `dir` when a valid cache file exists, else builds and stores one.
    pub fn load_or_build(cfg: &LevelConfig, dir: Option<&Path>) -> Result<Self> {
        let Some(dir) = dir else {
            return build_classes(cfg);
        };
        let path = cache_path(dir, cfg);
        if let Ok(text) = std::fs::read_to_string(&path) {
            if let Ok(set) = Self::from_json(&text, cfg) {
                return Ok(set);
            }
        }
        let set = build_classes(cfg)?;
        std::fs::create_dir_all(dir)?;
        std::fs::write(&path, set.to_json()?)?;
        Ok(set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn classes(ram: &[u64], m: u64) -> IdealClassSet {
        build_classes(&LevelConfig::new(ram, m).unwrap()).unwrap()
    }

    #[test]
    fn maximal_orders() {
        let h = QuaternionAlgebra::with_ramification(&[2]).unwrap();
        let o = maximal_order(&h).unwrap();
        assert_eq!(o.reduced_discriminant(), 2);
        assert_eq!(o.unit_count(), 24);
        for ram in [vec![3], vec![11], vec![2, 3, 11], vec![2, 3, 7], vec![5, 7, 13]] {
            let alg = QuaternionAlgebra::with_ramification(&ram).unwrap();
            let o = maximal_order(&alg).unwrap();
            assert_eq!(o.reduced_discriminant(), ram.iter().product::<u64>(), "{ram:?}");
        }
    }

    #[test]
    fn eichler_orders() {
        let h = QuaternionAlgebra::with_ramification(&[2]).unwrap();
        let o = maximal_order(&h).unwrap();
        let e = eichler_order(&o, &crate::arith::factorize(3).unwrap()).unwrap();
        assert_eq!(e.reduced_discriminant(), 6);
        assert!(o.lattice().contains_lattice(e.lattice()));
        let same = eichler_order(&o, &crate::arith::factorize(1).unwrap()).unwrap();
        assert_eq!(same, o);
        let b = QuaternionAlgebra::with_ramification(&[2, 3, 7]).unwrap();
        let o42 = maximal_order(&b).unwrap();
        let e = eichler_order(&o42, &crate::arith::factorize(5).unwrap()).unwrap();
        assert_eq!(e.reduced_discriminant(), 210);
        let e = eichler_order(&o, &crate::arith::factorize(15).unwrap()).unwrap();
        assert_eq!(e.reduced_discriminant(), 30);
    }

    #[test]
    fn class_sets() {
        let s = classes(&[2], 1);
        assert_eq!(s.len(), 1);
        assert_eq!(s.w(), vec![12]);
        let s = classes(&[11], 1);
        assert_eq!(s.len(), 2);
        let mut w = s.w();
        w.sort_unstable();
        assert_eq!(w, vec![2, 3]);
        assert_eq!(s.mass(), rat(5, 12));
        assert!(!is_equivalent(s.algebra(), &s.ideals()[0], &s.ideals()[1]).unwrap());
        let s = classes(&[2, 3, 11], 1);
        assert_eq!(s.mass(), rat(5, 6));
        for r in s.right_orders() {
            assert_eq!(r.reduced_discriminant(), 66);
        }
        assert!(s.w().iter().all(|w| 12 % w == 0));
    }

    #[test]
    fn equivalence_under_right_multiplication() {
        let s = classes(&[11], 1);
        let alg = s.algebra().clone();
        for ideal in s.ideals() {
            assert!(is_equivalent(&alg, ideal, ideal).unwrap());
            let x = [int(1), int(2), int(-1), int(3)];
            let moved = ideal.right_multiply(&alg, &x).unwrap();
            assert!(is_equivalent(&alg, ideal, &moved).unwrap());
            assert!(is_equivalent(&alg, &moved, ideal).unwrap());
        }
    }

    #[test]
    fn cache_round_trip() {
        let cfg = LevelConfig::new(&[11], 1).unwrap();
        let s = build_classes(&cfg).unwrap();
        let text = s.to_json().unwrap();
        let back = IdealClassSet::from_json(&text, &cfg).unwrap();
        assert_eq!(back.unit_counts(), s.unit_counts());
        assert_eq!(back.ideals(), s.ideals());
        let other = LevelConfig::new(&[2, 3, 11], 1).unwrap();
        assert!(IdealClassSet::from_json(&text, &other).is_err());
        let tampered = text.replacen("\"e\": 4", "\"e\": 2", 1);
        if tampered != text {
            assert!(IdealClassSet::from_json(&tampered, &cfg).is_err());
        }
    }
}
