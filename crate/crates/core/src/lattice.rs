//! Full-rank lattices in a quaternion algebra and exact enumeration of
//! positive definite integral quadratic forms.
//!
//! Lattices are stored as an integer basis in Hermite normal form over a
//! common positive denominator. Quadratic forms are stored by their even
//! Gram matrix `G`, with `Q(x) = x^T G x / 2`; all enumeration decisions are
//! made in exact arithmetic.

use crate::error::{Error, Result};
use crate::quatalg::{mul_bigint, QuaternionAlgebra};
use crate::rational::{int, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Row = [BigInt; 4];

fn zero_row() -> Row {
    [BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::zero()]
}

/// Row Hermite normal form of integer generators spanning a rank-4 lattice.
///
/// Returns `None` if the rank is below 4.
pub fn hnf(mut rows: Vec<Row>) -> Option<[Row; 4]> {
    let mut pivot_row = 0;
    for col in 0..4 {
        loop {
            let mut best: Option<usize> = None;
            for (r, row) in rows.iter().enumerate().skip(pivot_row) {
                if row[col].is_zero() {
                    continue;
                }
                if best.is_none_or(|b| row[col].abs() < rows[b][col].abs()) {
                    best = Some(r);
                }
            }
            let b = best?;
            rows.swap(pivot_row, b);
            let mut done = true;
            for r in pivot_row + 1..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                let q = rows[r][col].div_floor(&rows[pivot_row][col]);
                let pr = rows[pivot_row].clone();
                for (x, y) in rows[r].iter_mut().zip(pr.iter()) {
                    *x -= &q * y;
                }
                if !rows[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[pivot_row][col].is_negative() {
            for x in rows[pivot_row].iter_mut() {
                *x = -x.clone();
            }
        }
        let pr = rows[pivot_row].clone();
        for row in rows.iter_mut().take(pivot_row) {
            let q = row[col].div_floor(&pr[col]);
            if !q.is_zero() {
                for (x, y) in row.iter_mut().zip(pr.iter()) {
                    *x -= &q * y;
                }
            }
        }
        pivot_row += 1;
        // drop rows that became zero to keep the working set small
        let (head, tail) = rows.split_at(pivot_row);
        let mut kept: Vec<Row> = head.to_vec();
        kept.extend(tail.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned());
        rows = kept;
    }
    let mut out: [Row; 4] = [zero_row(), zero_row(), zero_row(), zero_row()];
    for (o, r) in out.iter_mut().zip(rows) {
        *o = r;
    }
    Some(out)
}

/// A full-rank lattice `{ sum c_r rows[r] / denom }` in the basis `1, i, j, k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    denom: BigInt,
    rows: [Row; 4],
}

fn common_denominator(gens: &[[Rational; 4]]) -> BigInt {
    gens.iter()
        .flat_map(|g| g.iter())
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

impl Lattice {
    pub fn from_generators(gens: &[[Rational; 4]]) -> Result<Self> {
        let d = common_denominator(gens);
        let rows = gens
            .iter()
            .map(|g| g.clone().map(|x| (x * Rational::from_integer(d.clone())).to_integer()))
            .collect();
        Self::from_int_rows(rows, d)
    }

    /// Lattice spanned by `rows / denom`.
    pub fn from_int_rows(rows: Vec<Row>, denom: BigInt) -> Result<Self> {
        let rows = hnf(rows).ok_or_else(|| Error::BadLattice("rank below 4".into()))?;
        let mut l = Self { denom, rows };
        l.normalize();
        Ok(l)
    }

    fn normalize(&mut self) {
        let g = self
            .rows
            .iter()
            .flat_map(|r| r.iter())
            .fold(self.denom.clone(), |acc, x| acc.gcd(x));
        if !g.is_one() {
            self.denom /= &g;
            for r in self.rows.iter_mut() {
                for x in r.iter_mut() {
                    *x /= &g;
                }
            }
        }
    }

    pub fn denom(&self) -> &BigInt {
        &self.denom
    }

    pub fn int_rows(&self) -> &[Row; 4] {
        &self.rows
    }

    pub fn basis(&self) -> Vec<[Rational; 4]> {
        self.rows
            .iter()
            .map(|r| r.clone().map(|x| Rational::new(x, self.denom.clone())))
            .collect()
    }

    /// Coordinates of `x` in the lattice basis, or `None` if `x` is not in the lattice.
    pub fn coords(&self, x: &[Rational; 4]) -> Option<[BigInt; 4]> {
        let d = Rational::from_integer(self.denom.clone());
        let mut v: Vec<Rational> = x.iter().map(|c| c * &d).collect();
        if v.iter().any(|c| !c.is_integer()) {
            return None;
        }
        let mut out = zero_row();
        for col in 0..4 {
            let target = v[col].to_integer();
            let (q, r) = target.div_rem(&self.rows[col][col]);
            if !r.is_zero() {
                return None;
            }
            for c in col..4 {
                v[c] -= Rational::from_integer(&q * &self.rows[col][c]);
            }
            out[col] = q;
        }
        Some(out)
    }

    pub fn contains(&self, x: &[Rational; 4]) -> bool {
        self.coords(x).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis().iter().all(|b| self.contains(b))
    }

    pub fn sum(&self, other: &Lattice) -> Result<Lattice> {
        let mut gens = self.basis();
        gens.extend(other.basis());
        Lattice::from_generators(&gens)
    }

    pub fn scale(&self, s: &Rational) -> Result<Lattice> {
        let gens: Vec<[Rational; 4]> = self
            .basis()
            .into_iter()
            .map(|b| b.map(|x| x * s))
            .collect();
        Lattice::from_generators(&gens)
    }

    pub fn conj(&self) -> Lattice {
        let rows: Vec<Row> = self
            .rows
            .iter()
            .map(|r| {
                let [a, b, c, d] = r.clone();
                [a, -b, -c, -d]
            })
            .collect();
        Lattice::from_int_rows(rows, self.denom.clone()).expect("conjugation preserves rank")
    }

    /// The lattice spanned by all products `x y`.
    pub fn product(alg: &QuaternionAlgebra, lhs: &Lattice, rhs: &Lattice) -> Lattice {
        let mut rows = Vec::with_capacity(16);
        for x in lhs.rows.iter() {
            for y in rhs.rows.iter() {
                rows.push(mul_bigint(alg.a(), alg.b(), x, y));
            }
        }
        Lattice::from_int_rows(rows, &lhs.denom * &rhs.denom).expect("product of full-rank lattices")
    }

    /// `trd(x conj(y))` on the basis, exactly.
    pub fn trace_gram(&self, alg: &QuaternionAlgebra) -> [[Rational; 4]; 4] {
        let diag = alg.trace_form_diagonal();
        let d2 = Rational::from_integer(&self.denom * &self.denom);
        let mut g: [[Rational; 4]; 4] = Default::default();
        for r in 0..4 {
            for s in 0..4 {
                let mut acc = BigInt::zero();
                for c in 0..4 {
                    acc += &self.rows[r][c] * &self.rows[s][c] * diag[c];
                }
                g[r][s] = Rational::from_integer(acc) / &d2;
            }
        }
        g
    }

    /// Determinant of the trace Gram matrix.
    pub fn gram_det(&self, alg: &QuaternionAlgebra) -> Rational {
        let g = self.trace_gram(alg);
        let rows: Vec<Vec<Rational>> = g.iter().map(|r| r.to_vec()).collect();
        rational_det(rows)
    }

    /// The quadratic form `nrd(x) / scale` on this lattice.
    pub fn norm_form(&self, alg: &QuaternionAlgebra, scale: &Rational) -> Result<QuadForm> {
        let g = self.trace_gram(alg);
        let rows: Vec<Vec<Rational>> = g.iter().map(|r| r.iter().map(|x| x / scale).collect()).collect();
        QuadForm::from_rational_gram(&rows)
    }

    pub fn is_integral_ring(&self, alg: &QuaternionAlgebra) -> bool {
        let g = self.trace_gram(alg);
        (0..4).all(|r| {
            (0..4).all(|s| g[r][s].is_integer()) && g[r][r].to_integer().is_even()
        })
    }

    pub fn contains_one(&self) -> bool {
        self.contains(&[int(1), int(0), int(0), int(0)])
    }

    /// Whether `L * L` is contained in `L`.
    pub fn is_closed_under_product(&self, alg: &QuaternionAlgebra) -> bool {
        let p = Lattice::product(alg, self, self);
        self.contains_lattice(&p)
    }
}

/// Exact determinant by fraction elimination.
pub fn rational_det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let piv = m[c][c].clone();
        det *= &piv;
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &piv;
            for k in c..n {
                let t = &f * &m[c][k];
                m[r][k] -= t;
            }
        }
    }
    det
}

type Q128 = Ratio<i128>;

/// A positive definite integral quadratic form `Q(x) = x^T G x / 2` with
/// `G` integral and of even diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadForm {
    dim: usize,
    gram: Vec<i64>,
}

impl QuadForm {
    pub fn new(dim: usize, gram: Vec<i64>) -> Result<Self> {
        if gram.len() != dim * dim {
            return Err(Error::BadLattice("gram has wrong size".into()));
        }
        for i in 0..dim {
            if gram[i * dim + i] % 2 != 0 {
                return Err(Error::BadLattice("odd diagonal".into()));
            }
            for j in 0..dim {
                if gram[i * dim + j] != gram[j * dim + i] {
                    return Err(Error::BadLattice("gram not symmetric".into()));
                }
            }
        }
        let f = Self { dim, gram };
        f.lll_reduced()
    }

    pub fn from_rational_gram(g: &[Vec<Rational>]) -> Result<Self> {
        let dim = g.len();
        let mut gram = Vec::with_capacity(dim * dim);
        for row in g {
            for x in row {
                if !x.is_integer() {
                    return Err(Error::BadLattice(format!("non-integral gram entry {x}")));
                }
                let v = x
                    .to_integer()
                    .to_i64()
                    .ok_or_else(|| Error::BadLattice("gram entry overflows i64".into()))?;
                gram.push(v);
            }
        }
        Self::new(dim, gram)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gram(&self) -> &[i64] {
        &self.gram
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.gram[i * self.dim + j]
    }

    pub fn value(&self, x: &[i64]) -> i64 {
        let mut acc = 0i128;
        for i in 0..self.dim {
            for j in 0..self.dim {
                acc += x[i] as i128 * self.entry(i, j) as i128 * x[j] as i128;
            }
        }
        (acc / 2) as i64
    }

    pub fn determinant(&self) -> Rational {
        let rows: Vec<Vec<Rational>> = (0..self.dim)
            .map(|i| (0..self.dim).map(|j| int(self.entry(i, j))).collect())
            .collect();
        rational_det(rows)
    }

    /// LLL-reduced equivalent form (exact, `delta = 3/4`); errors if not
    /// positive definite.
    fn lll_reduced(self) -> Result<Self> {
        let n = self.dim;
        let g: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| int(self.entry(i, j))).collect())
            .collect();
        let mut t: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| BigInt::from(u8::from(i == j))).collect())
            .collect();
        let transformed = |t: &Vec<Vec<BigInt>>| -> Vec<Vec<Rational>> {
            let mut out = vec![vec![Rational::zero(); n]; n];
            for i in 0..n {
                for j in 0..n {
                    let mut acc = Rational::zero();
                    for a in 0..n {
                        if t[i][a].is_zero() {
                            continue;
                        }
                        for b in 0..n {
                            if t[j][b].is_zero() {
                                continue;
                            }
                            acc += Rational::from_integer(&t[i][a] * &t[j][b]) * &g[a][b];
                        }
                    }
                    out[i][j] = acc;
                }
            }
            out
        };
        let gso = |h: &Vec<Vec<Rational>>| -> Result<(Vec<Vec<Rational>>, Vec<Rational>)> {
            let mut mu = vec![vec![Rational::zero(); n]; n];
            let mut bstar = vec![Rational::zero(); n];
            for i in 0..n {
                for j in 0..i {
                    let mut v = h[i][j].clone();
                    for k in 0..j {
                        v -= &mu[j][k] * &mu[i][k] * &bstar[k];
                    }
                    mu[i][j] = v / &bstar[j];
                }
                let mut v = h[i][i].clone();
                for k in 0..i {
                    v -= &mu[i][k] * &mu[i][k] * &bstar[k];
                }
                if !v.is_positive() {
                    return Err(Error::BadLattice("form is not positive definite".into()));
                }
                bstar[i] = v;
            }
            Ok((mu, bstar))
        };
        let half = Rational::new(1.into(), 2.into());
        let delta = Rational::new(3.into(), 4.into());
        let mut k = 1;
        let mut h = transformed(&t);
        gso(&h)?;
        while k < n {
            for j in (0..k).rev() {
                let (mu, _) = gso(&h)?;
                if mu[k][j].abs() > half {
                    let r = mu[k][j].round().to_integer();
                    let tj = t[j].clone();
                    for (x, y) in t[k].iter_mut().zip(tj.iter()) {
                        *x -= &r * y;
                    }
                    h = transformed(&t);
                }
            }
            let (mu, bstar) = gso(&h)?;
            let lhs = bstar[k].clone();
            let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &bstar[k - 1];
            if lhs >= rhs {
                k += 1;
            } else {
                t.swap(k, k - 1);
                h = transformed(&t);
                k = (k - 1).max(1);
            }
        }
        let mut gram = Vec::with_capacity(n * n);
        for row in &h {
            for x in row {
                gram.push(
                    x.to_integer()
                        .to_i64()
                        .ok_or_else(|| Error::BadLattice("reduced gram overflows".into()))?,
                );
            }
        }
        Ok(Self { dim: n, gram })
    }

    /// Fincke-Pohst decomposition `Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2`.
    fn decomposition(&self) -> Vec<Vec<Q128>> {
        let n = self.dim;
        let mut q: Vec<Vec<Q128>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| Q128::new(self.entry(i, j) as i128, 2))
                    .collect()
            })
            .collect();
        for i in 0..n {
            for j in i + 1..n {
                q[j][i] = q[i][j];
                q[i][j] = q[i][j] / q[i][i];
            }
            for k in i + 1..n {
                for l in k..n {
                    let t = q[k][i] * q[i][l];
                    q[k][l] -= t;
                }
            }
        }
        q
    }

    /// Visits every `x != 0` with `Q(x) <= bound`, passing `(x, Q(x))`.
    pub fn for_each_vector<F: FnMut(&[i64], u64)>(&self, bound: u64, mut visit: F) {
        let n = self.dim;
        let q = self.decomposition();
        let mut x = vec![0i64; n];
        let mut centers = vec![Q128::zero(); n];
        let mut rem = vec![Q128::zero(); n + 1];
        rem[n] = Q128::from_integer(bound as i128);
        self.descend(n, &q, &mut x, &mut centers, &mut rem, &mut visit);
    }

    fn descend<F: FnMut(&[i64], u64)>(
        &self,
        level: usize,
        q: &[Vec<Q128>],
        x: &mut [i64],
        centers: &mut [Q128],
        rem: &mut [Q128],
        visit: &mut F,
    ) {
        if level == 0 {
            if x.iter().any(|&c| c != 0) {
                let v = self.value(x);
                visit(x, v as u64);
            }
            return;
        }
        let i = level - 1;
        let n = self.dim;
        let mut c = Q128::zero();
        for j in i + 1..n {
            c -= q[i][j] * Q128::from_integer(x[j] as i128);
        }
        centers[i] = c;
        let r = rem[level] / q[i][i];
        let (lo, hi) = integer_window(&c, &r);
        for xi in lo..=hi {
            x[i] = xi;
            let d = Q128::from_integer(xi as i128) - c;
            rem[i] = rem[level] - q[i][i] * d * d;
            self.descend(i, q, x, centers, rem, visit);
        }
        x[i] = 0;
    }

    /// Number of vectors with `Q(x) = m` for each `0 <= m <= bound` (the zero
    /// vector counts at `m = 0`).
    pub fn theta_counts(&self, bound: u64) -> Vec<u64> {
        let mut counts = vec![0u64; bound as usize + 1];
        counts[0] = 1;
        self.for_each_vector(bound, |_, v| counts[v as usize] += 1);
        counts
    }

    /// Total and primitive (coordinate gcd 1) counts per value, zero vector excluded.
    pub fn theta_counts_with_primitive(&self, bound: u64) -> (Vec<u64>, Vec<u64>) {
        let mut all = vec![0u64; bound as usize + 1];
        let mut prim = vec![0u64; bound as usize + 1];
        self.for_each_vector(bound, |x, v| {
            all[v as usize] += 1;
            let g = x.iter().fold(0i64, |acc, &c| acc.gcd(&c));
            if g == 1 {
                prim[v as usize] += 1;
            }
        });
        (all, prim)
    }

    pub fn count_of_value(&self, m: u64) -> u64 {
        let mut count = 0;
        self.for_each_vector(m, |_, v| {
            if v == m {
                count += 1;
            }
        });
        count
    }

    /// Smallest value on a nonzero vector.
    pub fn minimum(&self) -> u64 {
        let bound = (0..self.dim).map(|i| self.entry(i, i) as u64 / 2).min().unwrap_or(0);
        let mut best = bound;
        self.for_each_vector(bound, |x, v| {
            if x.iter().any(|&c| c != 0) {
                best = best.min(v);
            }
        });
        best
    }
}

/// Integers `x` with `(x - c)^2 <= r`, as an inclusive range (empty when `lo > hi`).
fn integer_window(c: &Q128, r: &Q128) -> (i64, i64) {
    if *r < Q128::zero() {
        return (1, 0);
    }
    let fl = r.floor().to_integer();
    let s = crate::arith::isqrt_u128(fl.max(0) as u128) as i128;
    let fits = |x: i128| {
        let d = Q128::from_integer(x) - c;
        d * d <= *r
    };
    let cf = c.floor().to_integer();
    let mut lo = cf - s - 1;
    while !fits(lo) && lo <= cf + s + 2 {
        lo += 1;
    }
    let mut hi = cf + s + 2;
    while !fits(hi) && hi >= lo {
        hi -= 1;
    }
    (lo as i64, hi as i64)
}

/// Integer basis of the kernel of the functional `x -> sum t_i x_i` on `Z^n`.
pub fn functional_kernel(t: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = t.len();
    // rows [t_i | e_i]; reduce the first column to a single nonzero row
    let mut rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut r = vec![t[i].clone()];
            r.extend((0..n).map(|j| BigInt::from(u8::from(i == j))));
            r
        })
        .collect();
    loop {
        let nz: Vec<usize> = (0..n).filter(|&i| !rows[i][0].is_zero()).collect();
        if nz.len() <= 1 {
            break;
        }
        let p = *nz.iter().min_by_key(|&&i| rows[i][0].abs()).expect("nonempty");
        for &i in &nz {
            if i == p {
                continue;
            }
            let q = rows[i][0].div_floor(&rows[p][0]);
            let pr = rows[p].clone();
            for (x, y) in rows[i].iter_mut().zip(pr.iter()) {
                *x -= &q * y;
            }
        }
    }
    rows.into_iter()
        .filter(|r| r[0].is_zero())
        .map(|r| r[1..].to_vec())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn brute_counts(f: &QuadForm, bound: u64, box_size: i64) -> Vec<u64> {
        let n = f.dim();
        let mut counts = vec![0u64; bound as usize + 1];
        let total = (2 * box_size + 1).pow(n as u32);
        for idx in 0..total {
            let mut x = vec![0i64; n];
            let mut r = idx;
            for c in x.iter_mut() {
                *c = r % (2 * box_size + 1) - box_size;
                r /= 2 * box_size + 1;
            }
            let v = f.value(&x);
            if v as u64 <= bound {
                counts[v as usize] += 1;
            }
        }
        counts
    }

    #[test]
    fn enumeration_matches_brute_force() {
        // sum of four squares and a skewed ternary form
        let f4 = QuadForm::new(4, vec![2, 0, 0, 0, 0, 2, 0, 0, 0, 0, 2, 0, 0, 0, 0, 2]).unwrap();
        let counts = f4.theta_counts(10);
        assert_eq!(counts, brute_counts(&f4, 10, 4));
        // r_4(n) = 8 * sum of divisors not divisible by 4
        assert_eq!(&counts[..6], &[1, 8, 24, 32, 24, 48]);
        let f3 = QuadForm::new(3, vec![4, 1, 3, 1, 6, -2, 3, -2, 22]).unwrap();
        assert_eq!(f3.theta_counts(40), brute_counts(&f3, 40, 12));
        assert_eq!(f4.minimum(), 1);
        assert_eq!(f3.minimum(), 2);
    }

    #[test]
    fn lll_preserves_theta() {
        let skew = QuadForm {
            dim: 3,
            gram: vec![2, 41, 9, 41, 842, 185, 9, 185, 52],
        };
        let reduced = QuadForm::new(3, skew.gram.clone()).unwrap();
        assert_eq!(reduced.determinant(), skew.determinant());
        assert_eq!(reduced.theta_counts(30), brute_counts(&reduced, 30, 8));
        assert!(QuadForm::new(2, vec![2, 3, 3, 2]).is_err());
    }

    #[test]
    fn window_is_exact() {
        let (lo, hi) = integer_window(&Q128::new(1, 3), &Q128::new(4, 1));
        assert_eq!((lo, hi), (-1, 2));
        let (lo, hi) = integer_window(&Q128::new(1, 2), &Q128::new(1, 4));
        assert_eq!((lo, hi), (0, 1));
        let (lo, hi) = integer_window(&Q128::new(0, 1), &Q128::new(-1, 1));
        assert!(lo > hi);
    }

    #[test]
    fn hnf_and_membership() {
        let gens = vec![
            [int(2), int(0), int(0), int(0)],
            [int(0), int(2), int(0), int(0)],
            [int(0), int(0), int(2), int(0)],
            [int(0), int(0), int(0), int(2)],
            [int(1), int(1), int(1), int(1)],
        ];
        let l = Lattice::from_generators(&gens).unwrap();
        assert!(l.contains(&[int(1), int(1), int(1), int(1)]));
        assert!(!l.contains(&[int(1), int(0), int(0), int(0)]));
        assert!(l.contains(&[int(2), int(0), int(0), int(0)]));
        let half = l.scale(&rat(1, 2)).unwrap();
        assert!(half.contains(&[rat(1, 2), rat(1, 2), rat(1, 2), rat(1, 2)]));
        assert!(half.contains(&[int(1), int(0), int(0), int(0)]));
        assert_eq!(half.denom(), &BigInt::from(2));
    }

    #[test]
    fn kernel_of_functional() {
        let t: Vec<BigInt> = [2, 4, 6, 0].iter().map(|&x| BigInt::from(x)).collect();
        let k = functional_kernel(&t);
        assert_eq!(k.len(), 3);
        for v in &k {
            let s: BigInt = v.iter().zip(&t).map(|(a, b)| a * b).sum();
            assert!(s.is_zero());
        }
        let m: Vec<Vec<Rational>> = k
            .iter()
            .map(|v| v.iter().map(|x| Rational::from_integer(x.clone())).collect())
            .collect();
        // the kernel has index 1 in its saturation: gcd of 3x3 minors is 1
        let mut g = BigInt::zero();
        for skip in 0..4 {
            let minor: Vec<Vec<Rational>> = m
                .iter()
                .map(|r| r.iter().enumerate().filter(|(c, _)| *c != skip).map(|(_, x)| x.clone()).collect())
                .collect();
            g = g.gcd(&rational_det(minor).to_integer());
        }
        assert!(g.is_one());
    }
}
