//! q-Pochhammer symbols, Gaussian binomials and the appendix summation formulas.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::qcore::{euler_product, QPoly, QSeries, Sign, UNIT};

/// Upper bound on memoised `(n, a)` entries; beyond it results are computed
/// but not stored.
const MAX_CACHE_ENTRIES: usize = 1 << 15;

type Cache = RwLock<HashMap<(i64, i64), Arc<QPoly>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn shared_zero() -> Arc<QPoly> {
    static ZERO: OnceLock<Arc<QPoly>> = OnceLock::new();
    ZERO.get_or_init(|| Arc::new(QPoly::zero())).clone()
}

fn shared_one() -> Arc<QPoly> {
    static ONE: OnceLock<Arc<QPoly>> = OnceLock::new();
    ONE.get_or_init(|| Arc::new(QPoly::one())).clone()
}

/// Drops every memoised binomial.
pub fn clear_cache() {
    cache().write().expect("qbin cache poisoned").clear();
}

/// `(q)_n = prod_{j=1}^n (1 - q^j)`.
pub fn poch(n: i64) -> Result<QPoly> {
    if n < 0 {
        return Err(Error::NegativeLength(n));
    }
    poch_general(&PochSpec::finite(Sign::Plus, UNIT, n))
}

/// Length of a q-Pochhammer symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PochLength {
    Finite(i64),
    /// Infinite product, truncated at `order` quarter units.
    Infinite { order: i64 },
}

/// `(sign q^{exp/4}; q)_len`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PochSpec {
    pub sign: Sign,
    pub exp: i64,
    pub len: PochLength,
}

impl PochSpec {
    pub fn finite(sign: Sign, exp: i64, n: i64) -> Self {
        Self {
            sign,
            exp,
            len: PochLength::Finite(n),
        }
    }

    pub fn infinite(sign: Sign, exp: i64, order: i64) -> Self {
        Self {
            sign,
            exp,
            len: PochLength::Infinite { order },
        }
    }
}

/// `prod_{j=0}^{n-1} (1 - sign q^{exp/4 + j})` for a finite spec.
pub fn poch_general(spec: &PochSpec) -> Result<QPoly> {
    let n = match spec.len {
        PochLength::Finite(n) => n,
        PochLength::Infinite { .. } => {
            return Err(Error::Precondition(
                "infinite Pochhammer symbol has no polynomial value; use poch_series".into(),
            ))
        }
    };
    if n < 0 {
        return Err(Error::NegativeLength(n));
    }
    let mut p = QPoly::one();
    for j in 0..n {
        p = &p * &QPoly::binomial_factor(spec.sign.value(), spec.exp + j * UNIT);
    }
    Ok(p)
}

/// Series value of any spec; finite specs are truncated.
pub fn poch_series(spec: &PochSpec, order: i64) -> Result<QSeries> {
    match spec.len {
        PochLength::Finite(_) => Ok(QSeries::from_poly(&poch_general(spec)?, order)),
        PochLength::Infinite { order: o } => euler_product(spec.sign, spec.exp, UNIT, 1, o.min(order)),
    }
}

/// Gaussian binomial `[n, a]`, zero outside `0 <= a <= n`.
pub fn qbin(n: i64, a: i64) -> QPoly {
    (*qbin_shared(n, a)).clone()
}

/// Memoised Gaussian binomial shared by reference.
pub fn qbin_shared(n: i64, a: i64) -> Arc<QPoly> {
    if a < 0 || a > n {
        return shared_zero();
    }
    let a = a.min(n - a);
    if a == 0 {
        return shared_one();
    }
    if let Some(p) = cache().read().expect("qbin cache poisoned").get(&(n, a)) {
        return p.clone();
    }
    // [n, a] = [n-1, a-1] + q^a [n-1, a]
    let lower = qbin_shared(n - 1, a - 1);
    let upper = qbin_shared(n - 1, a);
    let mut p = upper.shift(a * UNIT);
    p += &*lower;
    let p = Arc::new(p);
    let mut guard = cache().write().expect("qbin cache poisoned");
    if guard.len() < MAX_CACHE_ENTRIES {
        guard.insert((n, a), p.clone());
    }
    p
}

/// Gaussian binomials truncated at a fixed order, for large `n`.
///
/// Row `n` is built from row `n-1` by the same recurrence as [`qbin`], but
/// every coefficient above `order` is dropped.
pub struct TruncatedBinomials {
    order: i64,
    rows: Vec<Vec<QSeries>>,
}

impl TruncatedBinomials {
    pub fn new(max_n: i64, order: i64) -> Self {
        let mut rows: Vec<Vec<QSeries>> = Vec::with_capacity(max_n.max(0) as usize + 1);
        rows.push(vec![QSeries::one(order)]);
        for n in 1..=max_n {
            let prev = &rows[(n - 1) as usize];
            let mut row = Vec::with_capacity(n as usize + 1);
            for a in 0..=n {
                let lower = if a >= 1 { Some(&prev[(a - 1) as usize]) } else { None };
                let upper = if a < n { Some(&prev[a as usize]) } else { None };
                let mut s = QSeries::zero(order);
                if let Some(l) = lower {
                    s = s.add(l);
                }
                if let Some(u) = upper {
                    s = s.add(&u.shift(a * UNIT));
                }
                row.push(s);
            }
            rows.push(row);
        }
        Self { order, rows }
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn max_n(&self) -> i64 {
        self.rows.len() as i64 - 1
    }

    pub fn get(&self, n: i64, a: i64) -> QSeries {
        if a < 0 || a > n || n < 0 {
            return QSeries::zero(self.order);
        }
        assert!(n <= self.max_n(), "truncated binomial table too small for n = {n}");
        self.rows[n as usize][a as usize].clone()
    }
}

/// `binom(k, 2)` for any integer `k`.
pub(crate) fn tri(k: i64) -> i64 {
    k * (k - 1) / 2
}

/// The appendix summation identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AppendixId {
    /// q-Chu–Vandermonde, `sum q^{k(k+b)} [L,k][a,k+b] = [a+L, b+L]`.
    Qcv1,
    /// q-Chu–Vandermonde, alternating form with `q^{L(L+a-b)}` on the right.
    Qcv2,
    /// q-Chu–Vandermonde, alternating form with linear exponent `k(b-L+1)`.
    Qcv3,
    /// q-Saalschütz specialisation.
    Saalschutz,
}

impl AppendixId {
    pub const ALL: [AppendixId; 4] = [
        AppendixId::Qcv1,
        AppendixId::Qcv2,
        AppendixId::Qcv3,
        AppendixId::Saalschutz,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AppendixId::Qcv1 => "qcv1",
            AppendixId::Qcv2 => "qcv2",
            AppendixId::Qcv3 => "qcv3",
            AppendixId::Saalschutz => "qS",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AppendixParams {
    pub l: i64,
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

/// Both sides of an appendix identity, each evaluated from its own formula.
pub fn appendix_identity(id: AppendixId, p: AppendixParams) -> Result<(QPoly, QPoly)> {
    let AppendixParams { l, a, b, c } = p;
    if l < 0 || a < 0 {
        return Err(Error::Precondition(format!(
            "{} needs a, L >= 0 (got a = {a}, L = {l})",
            id.name()
        )));
    }
    if id == AppendixId::Saalschutz && c < 0 {
        return Err(Error::Precondition(format!("qS needs c >= 0 (got c = {c})")));
    }
    let mut lhs = QPoly::zero();
    let rhs;
    match id {
        AppendixId::Qcv1 => {
            for k in 0..=l {
                let t = &*qbin_shared(l, k) * &*qbin_shared(a, k + b);
                lhs += t.shifted(k * (k + b) * UNIT);
            }
            rhs = qbin(a + l, b + l);
        }
        AppendixId::Qcv2 | AppendixId::Qcv3 => {
            for k in 0..=l {
                let mut t = &*qbin_shared(l, k) * &*qbin_shared(l + a - k, b);
                let mut e = tri(k);
                if id == AppendixId::Qcv3 {
                    e += k * (b - l + 1);
                }
                t = t.shifted(e * UNIT);
                if k % 2 == 1 {
                    t = t.negated();
                }
                lhs += t;
            }
            rhs = if id == AppendixId::Qcv2 {
                qbin(a, b - l).shifted(l * (l + a - b) * UNIT)
            } else {
                qbin(a, b - l)
            };
        }
        AppendixId::Saalschutz => {
            for k in 0..=l {
                let t = &(&*qbin_shared(l, k) * &*qbin_shared(a, k + b)) * &*qbin_shared(k + c, a + l);
                lhs += t.shifted((a - b - k) * (l - k) * UNIT);
            }
            rhs = &*qbin_shared(c, b + l) * &*qbin_shared(c - b, a - b);
        }
    }
    Ok((lhs, rhs))
}

/// `sum_a (-1)^a q^{a(a-1)/2} [n, a]`, the `x = -1` evaluation of the q-binomial theorem.
pub fn newton_at_minus_one(n: i64) -> QPoly {
    let mut acc = QPoly::zero();
    for a in 0..=n {
        let t = qbin(n, a).shifted(tri(a) * UNIT);
        if a % 2 == 1 {
            acc -= &t;
        } else {
            acc += t;
        }
    }
    acc
}

/// Coefficientwise `[x^a]` of `prod_{i<n} (1 + q^i x)`, computed by expanding
/// the product in `x` directly. Independent of the binomial recurrence.
pub fn newton_product_coefficients(n: i64) -> Vec<QPoly> {
    let mut coeffs = vec![QPoly::one()];
    for i in 0..n {
        let mut next = vec![QPoly::zero(); coeffs.len() + 1];
        for (a, c) in coeffs.iter().enumerate() {
            next[a] += c;
            next[a + 1] += c.shift(i * UNIT);
        }
        coeffs = next;
    }
    coeffs
}

/// Sum of coefficients as a `BigInt`, re-exported for callers that only need `q = 1`.
pub fn binomial_at_one(n: i64, a: i64) -> BigInt {
    if a < 0 || a > n {
        return BigInt::zero();
    }
    qbin_shared(n, a).eval_at_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::truncate;

    fn q(c: &[i64]) -> QPoly {
        QPoly::from_coeffs(c)
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(poch(0).unwrap(), QPoly::one());
        assert_eq!(poch(1).unwrap(), q(&[1, -1]));
        // (1-q)(1-q^2)(1-q^3) expanded by hand
        assert_eq!(poch(3).unwrap(), q(&[1, -1, -1, 0, 1, 1, -1]));
        assert!(poch(-1).is_err());
        assert_eq!(poch(2).unwrap().eval_at_one(), BigInt::zero());
    }

    #[test]
    fn general_pochhammer() {
        assert_eq!(poch_general(&PochSpec::finite(Sign::Minus, 0, 1)).unwrap(), q(&[2]));
        assert_eq!(
            poch_general(&PochSpec::finite(Sign::Minus, UNIT, 2)).unwrap(),
            &q(&[1, 1]) * &q(&[1, 0, 1])
        );
        assert_eq!(
            poch_general(&PochSpec::finite(Sign::Plus, 2 * UNIT, 2)).unwrap(),
            &q(&[1, 0, -1]) * &q(&[1, 0, 0, -1])
        );
        assert!(poch_general(&PochSpec::infinite(Sign::Plus, UNIT, 20)).is_err());
    }

    #[test]
    fn gaussian_binomials_match_newton_product() {
        assert_eq!(qbin(3, 1), q(&[1, 1, 1]));
        assert_eq!(qbin(4, 2), q(&[1, 1, 2, 1, 1]));
        assert!(qbin(5, -1).is_zero());
        assert!(qbin(5, 6).is_zero());
        for n in 0..=9 {
            let coeffs = newton_product_coefficients(n);
            for (a, c) in coeffs.iter().enumerate() {
                let a = a as i64;
                assert_eq!(c, &qbin(n, a).shifted(tri(a) * UNIT), "n={n} a={a}");
            }
        }
    }

    #[test]
    fn dual_and_evaluation() {
        let b = qbin(4, 2);
        assert_eq!(b.dual(), b.shift(-4 * UNIT));
        assert_eq!(b.eval_at_one(), BigInt::from(6));
        assert_eq!(binomial_at_one(10, 3), BigInt::from(120));
    }

    #[test]
    fn newton_at_minus_one_is_delta() {
        assert_eq!(newton_at_minus_one(0), QPoly::one());
        for n in 1..=12 {
            assert!(newton_at_minus_one(n).is_zero(), "n = {n}");
        }
    }

    #[test]
    fn appendix_examples() {
        let (l, r) = appendix_identity(AppendixId::Qcv1, AppendixParams { l: 2, a: 2, b: 0, c: 0 }).unwrap();
        assert_eq!(l, q(&[1, 1, 2, 1, 1]));
        assert_eq!(r, qbin(4, 2));
        let (l, r) = appendix_identity(AppendixId::Qcv1, AppendixParams { l: 0, a: 5, b: 2, c: 0 }).unwrap();
        assert_eq!(l, qbin(5, 2));
        assert_eq!(r, qbin(5, 2));
        // b pushes [a, k+b] out of range for every k
        let (l, r) = appendix_identity(AppendixId::Saalschutz, AppendixParams { l: 2, a: 1, b: 5, c: 3 }).unwrap();
        assert!(l.is_zero() && r.is_zero());
        assert!(appendix_identity(AppendixId::Qcv2, AppendixParams { l: -1, a: 0, b: 0, c: 0 }).is_err());
        assert!(appendix_identity(AppendixId::Saalschutz, AppendixParams { l: 1, a: 0, b: 0, c: -1 }).is_err());
    }

    #[test]
    fn truncated_table_matches_exact() {
        let t = TruncatedBinomials::new(12, 20 * UNIT);
        for n in 0..=12 {
            for a in -1..=n + 1 {
                assert_eq!(t.get(n, a), truncate(&qbin(n, a), 20 * UNIT));
            }
        }
    }

    #[test]
    fn binomial_limit_stabilises() {
        let order = 15 * UNIT;
        let t = TruncatedBinomials::new(40, order);
        for a in 0..=5 {
            let limit = crate::qcore::inverse_q_pochhammer(a, order);
            assert_eq!(t.get(a + 15, a), limit);
            assert_eq!(t.get(a + 16, a), limit);
        }
    }
}
