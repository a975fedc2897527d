//! Sparse Laurent polynomials in `q^{1/4}` with arbitrary-precision coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Number of exponent units per power of `q`. Every exponent in this crate
/// counts quarter-powers: the exponent `4` is `q`, `2` is `q^{1/2}`.
pub const UNIT: i64 = 4;

/// A Laurent polynomial `sum c_e q^{e/4}`.
///
/// The term map never stores a zero coefficient, so structural equality is
/// polynomial equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct QPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(1, 0)
    }

    /// `c * q^{exp/4}`.
    pub fn term(c: impl Into<BigInt>, exp: i64) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// `q^{exp/4}`.
    pub fn q_pow(exp: i64) -> Self {
        Self::term(1, exp)
    }

    /// Polynomial in whole powers of `q`: `coeffs[i]` multiplies `q^i`.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| (i as i64 * UNIT, BigInt::from(c))),
        )
    }

    /// Builds from `(exponent, coefficient)` pairs, merging repeats.
    pub fn from_terms<I>(iter: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigInt)>,
    {
        let mut p = Self::zero();
        for (e, c) in iter {
            p.add_term(e, &c);
        }
        p
    }

    /// `1 - sign * q^{exp/4}`.
    pub fn binomial_factor(sign: i8, exp: i64) -> Self {
        let mut p = Self::one();
        p.add_term(exp, &BigInt::from(-(sign as i64)));
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub(crate) fn term_map(&self) -> &BTreeMap<i64, BigInt> {
        &self.terms
    }

    pub(crate) fn from_map(terms: BTreeMap<i64, BigInt>) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        Self { terms }
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Adds `c q^{exp/4}` in place, keeping the map canonical.
    pub fn add_term(&mut self, exp: i64, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Multiplies by `q^{by/4}`.
    pub fn shift(&self, by: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e + by, c.clone())).collect(),
        }
    }

    pub fn shifted(mut self, by: i64) -> Self {
        if by != 0 {
            self.terms = std::mem::take(&mut self.terms)
                .into_iter()
                .map(|(e, c)| (e + by, c))
                .collect();
        }
        self
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e, c * k)).collect(),
        }
    }

    pub fn negated(mut self) -> Self {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }

    /// `q -> 1/q`: every exponent changes sign.
    pub fn dual(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Value at `q = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Substitutes `q -> q^k` for `k >= 1`.
    pub fn dilate(&self, k: i64) -> Self {
        assert!(k >= 1, "dilation factor must be positive");
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e * k, c.clone())).collect(),
        }
    }

    /// `self^n` for `n >= 0`.
    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Product keeping only exponents `<= max_exp`.
    pub fn mul_truncated(&self, rhs: &Self, max_exp: i64) -> Self {
        mul_impl(self, rhs, Some(max_exp))
    }

    /// Exact division by `1 - sign*q^{exp/4}`.
    ///
    /// Fails when the factor does not divide `self`.
    pub fn div_binomial_factor(&self, sign: i8, exp: i64) -> Result<Self> {
        let describe = || format!("(1 {} q^({}))", if sign > 0 { "-" } else { "+" }, exp);
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if exp == 0 {
            // 1 - sign: either 0 (impossible) or 2.
            if sign > 0 {
                return Err(Error::ZeroFactor(describe()));
            }
            let two = BigInt::from(2);
            let mut out = BTreeMap::new();
            for (&e, c) in &self.terms {
                let (quot, rem) = c.div_rem(&two);
                if !rem.is_zero() {
                    return Err(Error::InexactDivision(describe()));
                }
                out.insert(e, quot);
            }
            return Ok(Self { terms: out });
        }
        if exp < 0 {
            // 1 - s q^e = -s q^e (1 - s q^{-e})
            let inner = self.div_binomial_factor(sign, -exp)?;
            let r = inner.shifted(-exp);
            return Ok(if sign > 0 { r.negated() } else { r });
        }
        // p = (1 - s q^e) r  =>  r_x = p_x + s r_{x-e}, swept upwards.
        let lo = self.min_exp().unwrap();
        let hi = self.max_exp().unwrap();
        let mut rem = self.terms.clone();
        let mut quot = BTreeMap::new();
        let s = BigInt::from(sign);
        while let Some((&x, _)) = rem.iter().next() {
            if x + exp > hi {
                break;
            }
            let c = rem.remove(&x).unwrap();
            let carry = &c * &s;
            let entry = rem.entry(x + exp).or_insert_with(BigInt::zero);
            *entry += carry;
            if entry.is_zero() {
                rem.remove(&(x + exp));
            }
            quot.insert(x, c);
        }
        debug_assert!(quot.keys().all(|&k| k >= lo));
        if !rem.is_empty() {
            return Err(Error::InexactDivision(describe()));
        }
        Ok(Self { terms: quot })
    }
}

fn mul_impl(a: &QPoly, b: &QPoly, cap: Option<i64>) -> QPoly {
    if a.is_zero() || b.is_zero() {
        return QPoly::zero();
    }
    let lo = a.min_exp().unwrap() + b.min_exp().unwrap();
    let mut hi = a.max_exp().unwrap() + b.max_exp().unwrap();
    if let Some(c) = cap {
        if lo > c {
            return QPoly::zero();
        }
        hi = hi.min(c);
    }
    let span = (hi - lo + 1) as usize;
    let work = a.len().saturating_mul(b.len());
    if span <= 4 * work + 64 {
        let mut acc = vec![BigInt::zero(); span];
        for (&e1, c1) in &a.terms {
            for (&e2, c2) in &b.terms {
                let e = e1 + e2;
                if e > hi {
                    break;
                }
                acc[(e - lo) as usize] += c1 * c2;
            }
        }
        let terms = acc
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (lo + i as i64, c))
            .collect();
        QPoly { terms }
    } else {
        let mut out = QPoly::zero();
        for (&e1, c1) in &a.terms {
            for (&e2, c2) in &b.terms {
                if e1 + e2 > hi {
                    break;
                }
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }
}

impl<'a> Mul<&'a QPoly> for &'a QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &'a QPoly) -> QPoly {
        mul_impl(self, rhs, None)
    }
}

impl Mul for QPoly {
    type Output = QPoly;
    fn mul(self, rhs: QPoly) -> QPoly {
        mul_impl(&self, &rhs, None)
    }
}

impl AddAssign<&QPoly> for QPoly {
    fn add_assign(&mut self, rhs: &QPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c);
        }
    }
}

impl AddAssign for QPoly {
    fn add_assign(&mut self, rhs: QPoly) {
        if self.is_zero() {
            *self = rhs;
        } else {
            *self += &rhs;
        }
    }
}

impl SubAssign<&QPoly> for QPoly {
    fn sub_assign(&mut self, rhs: &QPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, &-c);
        }
    }
}

impl<'a> Add<&'a QPoly> for &'a QPoly {
    type Output = QPoly;
    fn add(self, rhs: &'a QPoly) -> QPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for QPoly {
    type Output = QPoly;
    fn add(mut self, rhs: QPoly) -> QPoly {
        self += &rhs;
        self
    }
}

impl<'a> Sub<&'a QPoly> for &'a QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &'a QPoly) -> QPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for QPoly {
    type Output = QPoly;
    fn sub(mut self, rhs: QPoly) -> QPoly {
        self -= &rhs;
        self
    }
}

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        self.negated()
    }
}

impl std::iter::Sum for QPoly {
    fn sum<I: Iterator<Item = QPoly>>(iter: I) -> QPoly {
        let mut acc = QPoly::zero();
        for p in iter {
            acc += p;
        }
        acc
    }
}

/// Renders `q^{e/4}` with the exponent reduced over 4: `q`, `q^2`, `q^(1/2)`, `q^(-3/4)`.
pub fn render_power(exp: i64) -> String {
    let g = exp.gcd(&UNIT);
    let (num, den) = (exp / g, UNIT / g);
    match (num, den) {
        (1, 1) => "q".to_string(),
        (n, 1) if n > 0 => format!("q^{n}"),
        (n, 1) => format!("q^({n})"),
        (n, d) => format!("q^({n}/{d})"),
    }
}

pub(crate) fn render_terms<'a, I>(iter: I) -> String
where
    I: Iterator<Item = (i64, &'a BigInt)>,
{
    let mut out = String::new();
    for (i, (e, c)) in iter.enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if e == 0 {
            out.push_str(&mag.to_string());
        } else {
            if !mag.is_one() {
                out.push_str(&mag.to_string());
                out.push('*');
            }
            out.push_str(&render_power(e));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_terms(self.terms()))
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}
