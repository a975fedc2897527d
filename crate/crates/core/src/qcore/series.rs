//! Power series in `q^{1/4}` truncated at a fixed order.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{render_power, render_terms, QPoly, UNIT};
use crate::error::{Error, Result};

/// A series known exactly up to and including exponent `order` (quarter units).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QSeries {
    order: i64,
    poly: QPoly,
}

impl QSeries {
    pub fn zero(order: i64) -> Self {
        Self {
            order,
            poly: QPoly::zero(),
        }
    }

    pub fn one(order: i64) -> Self {
        Self::from_poly(&QPoly::one(), order)
    }

    /// Drops every term above `order`.
    pub fn from_poly(p: &QPoly, order: i64) -> Self {
        let terms: BTreeMap<i64, BigInt> = p
            .term_map()
            .range(..=order)
            .map(|(&e, c)| (e, c.clone()))
            .collect();
        Self {
            order,
            poly: QPoly::from_map(terms),
        }
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn as_poly(&self) -> &QPoly {
        &self.poly
    }

    pub fn into_poly(self) -> QPoly {
        self.poly
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.poly.coeff(exp)
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.order.min(rhs.order);
        Self::from_poly(&(&self.poly + &rhs.poly), order)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let order = self.order.min(rhs.order);
        Self::from_poly(&(&self.poly - &rhs.poly), order)
    }

    /// Product at the common order. Both factors must have no negative
    /// exponents for the truncation to be exact.
    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.order.min(rhs.order);
        Self {
            order,
            poly: self.poly.mul_truncated(&rhs.poly, order),
        }
    }

    pub fn mul_poly(&self, rhs: &QPoly) -> Self {
        Self {
            order: self.order,
            poly: self.poly.mul_truncated(rhs, self.order),
        }
    }

    pub fn shift(&self, by: i64) -> Self {
        Self::from_poly(&self.poly.shift(by), self.order)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self {
            order: self.order,
            poly: self.poly.scale(k),
        }
    }

    /// Exact coefficient-wise division by an integer.
    pub fn div_exact(&self, k: &BigInt) -> Result<Self> {
        let mut terms = Vec::with_capacity(self.poly.len());
        for (e, c) in self.poly.terms() {
            let (quot, rem) = c.div_rem(k);
            if !rem.is_zero() {
                return Err(Error::InexactDivision(k.to_string()));
            }
            terms.push((e, quot));
        }
        Ok(Self {
            order: self.order,
            poly: QPoly::from_terms(terms),
        })
    }

    /// Multiplicative inverse; requires constant term `±1` and no negative exponents.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.poly.coeff(0);
        if !(c0.is_one() || (-&c0).is_one()) {
            return Err(Error::Precondition(
                "series inverse needs constant term ±1".into(),
            ));
        }
        if self.poly.min_exp().is_some_and(|e| e < 0) {
            return Err(Error::Precondition(
                "series inverse needs non-negative exponents".into(),
            ));
        }
        if self.order < 0 {
            return Ok(Self::zero(self.order));
        }
        let n = self.order as usize + 1;
        let tail: Vec<(usize, &BigInt)> = self
            .poly
            .terms()
            .filter(|&(e, _)| e > 0 && e <= self.order)
            .map(|(e, c)| (e as usize, c))
            .collect();
        let mut inv = vec![BigInt::zero(); n];
        inv[0] = c0.clone();
        for x in 1..n {
            let mut acc = BigInt::zero();
            for &(e, c) in &tail {
                if e > x {
                    break;
                }
                if !inv[x - e].is_zero() {
                    acc += c * &inv[x - e];
                }
            }
            // inv_x = -c0^{-1} * acc, and c0^{-1} = c0
            inv[x] = -(acc * &c0);
        }
        Ok(Self {
            order: self.order,
            poly: QPoly::from_terms(
                inv.into_iter()
                    .enumerate()
                    .map(|(i, c)| (i as i64, c)),
            ),
        })
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = render_terms(self.poly.terms());
        write!(f, "{body} + O({})", render_power(self.order + 1))
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QSeries({self})")
    }
}

/// Truncates a polynomial at `order` quarter units.
pub fn truncate(p: &QPoly, order: i64) -> QSeries {
    QSeries::from_poly(p, order)
}

/// Sign of `a` in a factor `1 - a q^{..}`; stored as `±1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_i8(s: i8) -> Self {
        if s >= 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// `prod_{j>=0} (1 - sign q^{(start + j*step)/4})^power`, truncated at `order`.
///
/// `power` is `+1` or `-1`.
pub fn euler_product(sign: Sign, start: i64, step: i64, power: i32, order: i64) -> Result<QSeries> {
    if step <= 0 {
        return Err(Error::Precondition(format!("euler_product step {step} must be positive")));
    }
    if power != 1 && power != -1 {
        return Err(Error::Precondition(format!("euler_product power {power} must be ±1")));
    }
    if start < 0 {
        return Err(Error::Precondition(format!("euler_product start {start} must be non-negative")));
    }
    if power == -1 && start == 0 {
        return Err(match sign {
            Sign::Plus => Error::ZeroFactor("inverted Euler product".into()),
            Sign::Minus => Error::Precondition("1/(1+q^0) is not integral".into()),
        });
    }
    let mut acc = QSeries::one(order);
    let mut e = start;
    while e <= order {
        let factor = QPoly::binomial_factor(sign.value(), e);
        if power == 1 {
            acc = acc.mul_poly(&factor);
        } else {
            // 1/(1 - s x) = sum_k s^k x^k
            acc = mul_geometric(&acc, sign, e);
        }
        e += step;
    }
    Ok(acc)
}

/// Multiplies by `1/(1 - s q^{e/4})` for `e > 0`.
pub(crate) fn mul_geometric(series: &QSeries, sign: Sign, e: i64) -> QSeries {
    assert!(e > 0, "geometric factor needs a positive exponent");
    let order = series.order();
    let mut coeffs: BTreeMap<i64, BigInt> = series
        .as_poly()
        .terms()
        .map(|(x, c)| (x, c.clone()))
        .collect();
    let s = BigInt::from(sign.value());
    // r_x = p_x + s r_{x-e}: push each finished coefficient forward.
    let mut cursor = i64::MIN;
    while let Some((&k, c)) = coeffs.range(cursor..).next() {
        if k + e <= order {
            let add = c * &s;
            let slot = coeffs.entry(k + e).or_insert_with(BigInt::zero);
            *slot += add;
            if slot.is_zero() {
                coeffs.remove(&(k + e));
            }
        }
        cursor = k + 1;
    }
    QSeries::from_poly(&QPoly::from_terms(coeffs), order)
}

/// `1/(q)_n` as a series.
pub fn inverse_q_pochhammer(n: i64, order: i64) -> QSeries {
    let mut acc = QSeries::one(order);
    for j in 1..=n {
        if j * UNIT > order {
            break;
        }
        acc = mul_geometric(&acc, Sign::Plus, j * UNIT);
    }
    acc
}

/// `(q)_\infty^{-1}` truncated; the partition generating function.
pub fn partition_series(order: i64) -> QSeries {
    euler_product(Sign::Plus, UNIT, UNIT, -1, order).expect("admissible parameters")
}

impl QSeries {
    pub fn abs_max_coeff(&self) -> BigInt {
        self.poly
            .terms()
            .map(|(_, c)| c.abs())
            .max()
            .unwrap_or_default()
    }
}
