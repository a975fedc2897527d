//! Continued fractions of `p/(p'-p)`, incidence matrices and `(r, s)` pairs.

use num_integer::Integer;

use crate::error::{Error, Result};

/// Continued-fraction data of an admissible pair `p < p' < 2p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CFData {
    pub p: i64,
    pub pp: i64,
    /// `nu_0, ..., nu_n`; the last partial quotient is `nu_n + 2`.
    pub nu: Vec<i64>,
    /// `t_m = nu_0 + ... + nu_{m-1}` for `m = 1..=n`.
    pub t: Vec<i64>,
    pub d: i64,
}

impl CFData {
    /// Builds the data for an explicit `nu` sequence (no `(p, p')` attached).
    pub fn from_nu(nu: Vec<i64>) -> Result<Self> {
        if nu.is_empty() || nu.iter().any(|&v| v < 0) {
            return Err(Error::Precondition(format!("bad partial quotients {nu:?}")));
        }
        let n = nu.len() - 1;
        let t = (1..=n).map(|m| nu[..m].iter().sum()).collect();
        let d = nu.iter().sum();
        Ok(Self { p: 0, pp: 0, nu, t, d })
    }

    pub fn n(&self) -> usize {
        self.nu.len() - 1
    }

    /// The partial quotients `[nu_0, ..., nu_{n-1}, nu_n + 2]`.
    pub fn quotients(&self) -> Vec<i64> {
        let mut q = self.nu.clone();
        *q.last_mut().expect("non-empty") += 2;
        q
    }

    /// Evaluates the continued fraction as a reduced `(num, den)`.
    pub fn value(&self) -> (i64, i64) {
        let q = self.quotients();
        let (mut num, mut den) = (*q.last().expect("non-empty"), 1i64);
        for &a in q.iter().rev().skip(1) {
            (num, den) = (a * num + den, num);
        }
        (num, den)
    }
}

fn check_pair(p: i64, pp: i64) -> Result<()> {
    let bad = |reason: &str| Err(Error::InvalidPair { p, pp, reason: reason.into() });
    if p < 1 || pp <= p {
        return bad("need 1 <= p < p'");
    }
    if p.gcd(&pp) != 1 {
        return bad("p and p' are not coprime");
    }
    Ok(())
}

/// Euclidean expansion of `p/(p'-p)` for coprime `p < p' < 2p`.
pub fn continued_fraction(p: i64, pp: i64) -> Result<CFData> {
    check_pair(p, pp)?;
    if pp >= 2 * p {
        return Err(Error::InvalidPair { p, pp, reason: "need p' < 2p".into() });
    }
    let (mut x, mut y) = (p, pp - p);
    let mut nu = Vec::new();
    while y != 0 {
        nu.push(x / y);
        (x, y) = (y, x % y);
    }
    *nu.last_mut().expect("at least one quotient") -= 2;
    let mut cf = CFData::from_nu(nu)?;
    cf.p = p;
    cf.pp = pp;
    Ok(cf)
}

/// Square integer matrix stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub dim: usize,
    pub entries: Vec<i64>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, entries: vec![0; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> i64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn scaled(&self, k: i64) -> Self {
        Self { dim: self.dim, entries: self.entries.iter().map(|v| v * k).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim);
        Self {
            dim: self.dim,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        (0..self.dim)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn quad(&self, v: &[i64]) -> i64 {
        v.iter().zip(self.mul_vec(v)).map(|(a, b)| a * b).sum()
    }

    /// Nested rows, for display and serialisation.
    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.dim).map(|i| self.row(i).to_vec()).collect()
    }
}

/// The incidence matrix and the doubled Cartan-type matrix `2B = 2 Id - I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncMatrix {
    pub inc: Matrix,
    pub two_b: Matrix,
}

impl IncMatrix {
    pub fn new(inc: Matrix) -> Self {
        let two_b = Matrix::identity(inc.dim).scaled(2).sub(&inc);
        Self { inc, two_b }
    }

    pub fn dim(&self) -> usize {
        self.inc.dim
    }
}

/// The fractional incidence matrix of the continued fraction.
pub fn incidence(cf: &CFData) -> Result<IncMatrix> {
    if cf.d < 1 {
        return Err(Error::Precondition("incidence matrix needs d >= 1".into()));
    }
    let d = cf.d as usize;
    let n = cf.n();
    let last_zero = cf.nu[n] == 0;
    let marked: Vec<i64> = cf.t[..n - usize::from(last_zero)].to_vec();
    let mut m = Matrix::zeros(d);
    for i in 1..=d {
        let r = i - 1;
        if i == d {
            if d > 1 {
                m.set(r, d - 2, 1);
            }
            if last_zero {
                m.set(r, d - 1, 1);
            }
        } else if marked.contains(&(i as i64)) {
            if i > 1 {
                m.set(r, i - 2, 1);
            }
            m.set(r, i - 1, 1);
            m.set(r, i, -1);
        } else {
            if i > 1 {
                m.set(r, i - 2, 1);
            }
            m.set(r, i, 1);
        }
    }
    Ok(IncMatrix::new(m))
}

/// Both solutions of `|p' r - p s| = 1` with `1 <= r < p`, `1 <= s < p'`,
/// lexicographically smaller first.
pub fn rs_pair(p: i64, pp: i64) -> Result<((i64, i64), (i64, i64))> {
    check_pair(p, pp)?;
    if p < 2 {
        return Err(Error::InvalidPair { p, pp, reason: "need p >= 2".into() });
    }
    // p' r = ±1 (mod p) has exactly one solution r in 1..p for each sign.
    let inv = mod_inverse(pp.rem_euclid(p), p);
    let r = inv.min(p - inv);
    let s = (pp * r - if (pp * r).rem_euclid(p) == 1 { 1 } else { -1 }) / p;
    let a = (r, s);
    let b = (p - r, pp - s);
    Ok(if a <= b { (a, b) } else { (b, a) })
}

fn mod_inverse(a: i64, m: i64) -> i64 {
    let g = num_integer::Integer::extended_gcd(&a, &m);
    debug_assert_eq!(g.gcd, 1);
    g.x.rem_euclid(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn continued_fraction_examples() {
        let cf = continued_fraction(2, 3).unwrap();
        assert_eq!((cf.nu.clone(), cf.d), (vec![0], 0));
        let cf = continued_fraction(3, 5).unwrap();
        assert_eq!((cf.nu.clone(), cf.d, cf.t.clone()), (vec![1, 0], 1, vec![1]));
        for k in 2..=6 {
            let cf = continued_fraction(2 * k - 1, 2 * k + 1).unwrap();
            assert_eq!((cf.nu.clone(), cf.d), (vec![k - 1, 0], k - 1));
        }
        for (p, pp, nu) in [
            (3, 4, vec![1]),
            (4, 5, vec![2]),
            (5, 7, vec![2, 0]),
            (5, 8, vec![1, 1, 0]),
            (7, 10, vec![2, 1]),
            (7, 12, vec![1, 2, 0]),
        ] {
            assert_eq!(continued_fraction(p, pp).unwrap().nu, nu, "({p},{pp})");
        }
    }

    #[test]
    fn reconstruction() {
        for pp in 3..40 {
            for p in (pp / 2 + 1)..pp {
                if p.gcd(&pp) != 1 {
                    continue;
                }
                let cf = continued_fraction(p, pp).unwrap();
                assert_eq!(cf.value(), (p, pp - p));
                assert_eq!(cf.d, cf.nu.iter().sum::<i64>());
            }
        }
    }

    #[test]
    fn rejects_bad_pairs() {
        assert!(continued_fraction(4, 6).is_err());
        assert!(continued_fraction(3, 7).is_err());
        assert!(continued_fraction(5, 5).is_err());
        assert!(incidence(&continued_fraction(2, 3).unwrap()).is_err());
    }

    #[test]
    fn incidence_examples() {
        let m = incidence(&continued_fraction(5, 6).unwrap()).unwrap();
        assert_eq!(m.inc, Matrix::from_fn(3, |i, j| i64::from(i.abs_diff(j) == 1)));
        let m = incidence(&continued_fraction(5, 7).unwrap()).unwrap();
        assert_eq!(m.inc.rows(), vec![vec![0, 1], vec![1, 1]]);
        let m = incidence(&continued_fraction(3, 5).unwrap()).unwrap();
        assert_eq!((m.inc.rows(), m.two_b.rows()), (vec![vec![1]], vec![vec![1]]));
        for pp in 3..30 {
            for p in (pp / 2 + 1)..pp {
                if p.gcd(&pp) != 1 || continued_fraction(p, pp).unwrap().d == 0 {
                    continue;
                }
                let m = incidence(&continued_fraction(p, pp).unwrap()).unwrap();
                let sum = Matrix::from_fn(m.dim(), |i, j| m.two_b.get(i, j) + m.inc.get(i, j));
                assert_eq!(sum, Matrix::identity(m.dim()).scaled(2));
                assert!(m.inc.entries.iter().all(|v| (-1..=1).contains(v)));
            }
        }
    }

    #[test]
    fn path_and_tadpole() {
        for p in 3..9 {
            let m = incidence(&continued_fraction(p, p + 1).unwrap()).unwrap();
            assert_eq!(m.dim() as i64, p - 2);
            assert_eq!(m.inc, Matrix::from_fn(m.dim(), |i, j| i64::from(i.abs_diff(j) == 1)));
        }
        for k in 2..7 {
            let m = incidence(&continued_fraction(2 * k - 1, 2 * k + 1).unwrap()).unwrap();
            let d = m.dim();
            assert_eq!(d as i64, k - 1);
            let want = Matrix::from_fn(d, |i, j| i64::from(i.abs_diff(j) == 1 || (i == d - 1 && j == d - 1)));
            assert_eq!(m.inc, want);
        }
    }

    #[test]
    fn rs_pair_examples() {
        assert_eq!(rs_pair(3, 4).unwrap(), ((1, 1), (2, 3)));
        assert_eq!(rs_pair(3, 5).unwrap(), ((1, 2), (2, 3)));
        assert_eq!(rs_pair(2, 3).unwrap(), ((1, 1), (1, 2)));
        for pp in 3..40 {
            for p in 2..pp {
                if p.gcd(&pp) != 1 {
                    continue;
                }
                let ((r1, s1), (r2, s2)) = rs_pair(p, pp).unwrap();
                for (r, s) in [(r1, s1), (r2, s2)] {
                    assert_eq!((pp * r - p * s).abs(), 1);
                    assert!((1..p).contains(&r) && (1..pp).contains(&s));
                }
            }
        }
    }
}
