//! q-Trinomial coefficients in the two Andrews–Baxter normalisations.
//!
//! `trinomial(L, b, a)` is the round-bracket coefficient `(L, b; a)_2`
//! and `t_n(n, L, a)` is `T_n(L, a)`. Their `L -> infinity` limits are
//! available as truncated series.

use crate::error::{Error, Result};
use crate::qbinom::{qbin_shared, TruncatedBinomials};
use crate::qcore::{euler_product, partition_series, QPoly, QSeries, Sign, UNIT};

/// Which trinomial normalisation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TrinKind {
    /// `(L, b; a)_2`.
    Round { b: i64 },
    /// `T_n(L, a)`.
    T { n: i64 },
}

pub fn trinomial_of(kind: TrinKind, l: i64, a: i64) -> QPoly {
    match kind {
        TrinKind::Round { b } => trinomial(l, b, a),
        TrinKind::T { n } => t_n(n, l, a),
    }
}

/// `(L, b; a)_2 = sum_k q^{k(k+b)} [L, k] [L-k, k+a]`; zero for `L < 0` or `|a| > L`.
pub fn trinomial(l: i64, b: i64, a: i64) -> QPoly {
    let mut acc = QPoly::zero();
    if l < 0 || a.abs() > l {
        return acc;
    }
    for k in 0..=l {
        let right = qbin_shared(l - k, k + a);
        if right.is_zero() {
            continue;
        }
        let t = &*qbin_shared(l, k) * &*right;
        acc += t.shifted(k * (k + b) * UNIT);
    }
    acc
}

/// `(L; a)_2 = (L, a; a)_2`.
pub fn trinomial_sym(l: i64, a: i64) -> QPoly {
    trinomial(l, a, a)
}

/// `T_n(L, a)` from its explicit sum over `r` with `L - a - r` even.
///
/// The multinomial `(q)_L / ((q)_x (q)_y (q)_r)` is assembled as
/// `[L, r][L-r, x]`, so no division is performed.
pub fn t_n(n: i64, l: i64, a: i64) -> QPoly {
    let mut acc = QPoly::zero();
    if l < 0 || a.abs() > l {
        return acc;
    }
    let mut r = (l - a).rem_euclid(2);
    while r <= l - a.abs() {
        let x = (l - a - r) / 2;
        let t = &*qbin_shared(l, r) * &*qbin_shared(l - r, x);
        // q^{r(r-n)/2} is 2 r (r-n) quarter units
        acc += t.shifted(2 * r * (r - n));
        r += 2;
    }
    acc
}

/// `T_n(L, a)` through `q^{(L-a)(L+a-n)/2} (L, a-n; a)_2` at `q -> 1/q`.
pub fn t_n_via_dual(n: i64, l: i64, a: i64) -> QPoly {
    trinomial(l, a - n, a)
        .dual()
        .shifted(2 * (l - a) * (l + a - n))
}

/// `sum_a x^a (L, b; a)_2` at `q = 1`, as the list of values for `a = -L..=L`.
pub fn trinomial_row_at_one(l: i64, b: i64) -> Vec<num_bigint::BigInt> {
    (-l..=l).map(|a| trinomial(l, b, a).eval_at_one()).collect()
}

/// Parity of `L - a` in the limit of `T_0(L, a)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

/// `((-q^{1/2})_inf ± (q^{1/2})_inf) / (2 (q)_inf)`, sign `+` for even parity.
pub fn t0_limit(parity: Parity, order: i64) -> Result<QSeries> {
    if order < 0 {
        return Err(Error::Precondition(format!("order {order} must be non-negative")));
    }
    let plus = euler_product(Sign::Minus, 2, UNIT, 1, order)?;
    let minus = euler_product(Sign::Plus, 2, UNIT, 1, order)?;
    let num = match parity {
        Parity::Even => plus.add(&minus),
        Parity::Odd => plus.sub(&minus),
    };
    let half = num.div_exact(&num_bigint::BigInt::from(2))?;
    Ok(half.mul(&partition_series(order)))
}

/// `1/(q)_inf`, the limit of `(L; a)_2`.
pub fn trinomial_limit(order: i64) -> Result<QSeries> {
    if order < 0 {
        return Err(Error::Precondition(format!("order {order} must be non-negative")));
    }
    Ok(partition_series(order))
}

/// `T_n(L, a)` truncated, built from a table of truncated binomials.
pub fn t_n_series(n: i64, l: i64, a: i64, table: &TruncatedBinomials) -> QSeries {
    let order = table.order();
    let mut acc = QSeries::zero(order);
    if l < 0 || a.abs() > l {
        return acc;
    }
    let mut r = (l - a).rem_euclid(2);
    while r <= l - a.abs() {
        let e = 2 * r * (r - n);
        if e <= order {
            let x = (l - a - r) / 2;
            let t = table.get(l, r).mul(&table.get(l - r, x)).shift(e);
            acc = acc.add(&t);
        }
        r += 2;
    }
    acc
}

/// `(L, b; a)_2` truncated. Exact when `b >= -a` or more generally when no
/// term carries a negative exponent.
pub fn trinomial_series(l: i64, b: i64, a: i64, table: &TruncatedBinomials) -> QSeries {
    let order = table.order();
    let mut acc = QSeries::zero(order);
    if l < 0 || a.abs() > l {
        return acc;
    }
    for k in 0..=l {
        if k + a < 0 {
            continue;
        }
        let e = k * (k + b) * UNIT;
        if e > order {
            continue;
        }
        let t = table.get(l, k).mul(&table.get(l - k, k + a)).shift(e);
        acc = acc.add(&t);
    }
    acc
}

/// Increases `L` by `step` from `start` until two successive truncations
/// agree, returning the first such `L` and the common series.
pub fn stabilize<F>(start: i64, step: i64, max_l: i64, mut f: F) -> Result<(i64, QSeries)>
where
    F: FnMut(i64) -> QSeries,
{
    let mut l = start;
    let mut prev = f(l);
    while l + step <= max_l {
        let next = f(l + step);
        if next == prev {
            return Ok((l, next));
        }
        l += step;
        prev = next;
    }
    Err(Error::Precondition(format!(
        "no stabilisation up to L = {max_l}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(c: &[i64]) -> QPoly {
        QPoly::from_coeffs(c)
    }

    /// Coefficients of `(1 + x + 1/x)^L` by repeated convolution.
    fn trinomial_triangle(l: usize) -> Vec<i64> {
        let mut row = vec![1i64];
        for _ in 0..l {
            let mut next = vec![0i64; row.len() + 2];
            for (i, &c) in row.iter().enumerate() {
                next[i] += c;
                next[i + 1] += c;
                next[i + 2] += c;
            }
            row = next;
        }
        row
    }

    #[test]
    fn round_bracket_examples() {
        assert_eq!(trinomial(2, 0, 0), q(&[1, 1, 1]));
        assert_eq!(trinomial(1, 0, 0), QPoly::one());
        let vals: Vec<BigInt> = (0..=3).map(|a| trinomial(3, a, a).eval_at_one()).collect();
        assert_eq!(vals, [7, 6, 3, 1].map(BigInt::from));
        assert_eq!(trinomial(3, 0, 0).eval_at_one(), BigInt::from(7));
    }

    #[test]
    fn t_n_examples() {
        assert_eq!(t_n(0, 2, 0), q(&[1, 1, 1]));
        assert_eq!(t_n(0, 1, 0), QPoly::q_pow(2));
        assert_eq!(t_n(1, 2, 1), q(&[1, 1]));
    }

    #[test]
    fn explicit_sum_matches_dual_definition() {
        for n in 0..=1 {
            for l in 0..=16 {
                for a in -l..=l {
                    assert_eq!(t_n(n, l, a), t_n_via_dual(n, l, a), "n={n} L={l} a={a}");
                }
            }
        }
    }

    #[test]
    fn symmetries() {
        for l in 0..=10 {
            for a in -l..=l {
                for n in 0..=1 {
                    assert_eq!(t_n(n, l, a), t_n(n, l, -a));
                }
                for b in -3..=3 {
                    let lhs = trinomial(l, b, a);
                    let rhs = trinomial(l, b - 2 * a, -a).shifted(a * (a - b) * UNIT);
                    assert_eq!(lhs, rhs, "L={l} b={b} a={a}");
                }
            }
        }
    }

    #[test]
    fn q_equals_one_gives_trinomial_triangle() {
        for l in 0..=6 {
            let want: Vec<BigInt> = trinomial_triangle(l as usize).into_iter().map(BigInt::from).collect();
            for b in -2..=2 {
                assert_eq!(trinomial_row_at_one(l, b), want, "L={l} b={b}");
            }
        }
    }

    #[test]
    fn support_is_bounded_by_l() {
        for l in 0..=6 {
            for a in [l + 1, l + 3, -l - 1] {
                assert!(trinomial(l, 0, a).is_zero());
                assert!(t_n(0, l, a).is_zero());
                assert!(t_n(1, l, a).is_zero());
            }
        }
        assert!(trinomial(-1, 0, 0).is_zero());
    }

    #[test]
    fn limit_series_examples() {
        assert_eq!(t0_limit(Parity::Even, 0).unwrap(), QSeries::one(0));
        let odd = t0_limit(Parity::Odd, 2).unwrap();
        assert_eq!(odd.as_poly(), &QPoly::q_pow(2));
        assert_eq!(trinomial_limit(0).unwrap(), QSeries::one(0));
        assert_eq!(trinomial_limit(5 * UNIT).unwrap().into_poly(), q(&[1, 1, 2, 3, 5, 7]));
    }

    #[test]
    fn truncated_versions_agree_with_exact() {
        let table = TruncatedBinomials::new(12, 12 * UNIT);
        for l in 0..=12 {
            for a in -l..=l {
                let exact = crate::qcore::truncate(&t_n(0, l, a), 12 * UNIT);
                assert_eq!(t_n_series(0, l, a, &table), exact);
                let exact = crate::qcore::truncate(&trinomial_sym(l, a), 12 * UNIT);
                assert_eq!(trinomial_series(l, a, a, &table), exact);
            }
        }
    }
}
