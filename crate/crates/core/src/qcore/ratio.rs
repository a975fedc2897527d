//! Quotients of a polynomial by a product of `(1 - sign q^e)` factors.
//!
//! Every denominator that appears in the Bailey and connection-coefficient
//! formulas has this shape, so equality can be decided by cross-multiplying
//! without any polynomial GCD.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use super::poly::{QPoly, UNIT};
use crate::error::{Error, Result};

/// A denominator factor `1 - sign q^{exp/4}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Factor {
    pub sign: i8,
    pub exp: i64,
}

impl Factor {
    pub fn new(sign: i8, exp: i64) -> Result<Self> {
        let sign = if sign >= 0 { 1 } else { -1 };
        if sign == 1 && exp == 0 {
            return Err(Error::ZeroFactor("denominator".into()));
        }
        Ok(Self { sign, exp })
    }

    pub fn poly(self) -> QPoly {
        QPoly::binomial_factor(self.sign, self.exp)
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign > 0 { '-' } else { '+' };
        if self.exp == 0 {
            write!(f, "(1 {s} 1)")
        } else {
            write!(f, "(1 {s} {})", super::poly::render_power(self.exp))
        }
    }
}

/// `numerator / prod (1 - sign q^e)^mult`.
///
/// Denominator factors are kept with `exp >= 0`; a factor with negative
/// exponent is rewritten as a monomial times its mirror and the monomial
/// moves into the numerator.
#[derive(Clone, Default)]
pub struct FactoredRatio {
    num: QPoly,
    den: BTreeMap<Factor, u32>,
}

impl FactoredRatio {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_poly(QPoly::one())
    }

    pub fn from_poly(num: QPoly) -> Self {
        Self {
            num,
            den: BTreeMap::new(),
        }
    }

    pub fn new<I>(num: QPoly, factors: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i8, i64)>,
    {
        let mut r = Self::from_poly(num);
        for (s, e) in factors {
            r = r.div_factor(s, e)?;
        }
        Ok(r)
    }

    pub fn numerator(&self) -> &QPoly {
        &self.num
    }

    pub fn denominator(&self) -> impl Iterator<Item = (Factor, u32)> + '_ {
        self.den.iter().map(|(&f, &m)| (f, m))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    /// Divides by `1 - sign q^{exp/4}`.
    pub fn div_factor(mut self, sign: i8, exp: i64) -> Result<Self> {
        let f = Factor::new(sign, exp)?;
        if f.exp < 0 {
            // 1/(1 - s q^e) = -s q^{-e} / (1 - s q^{-e})
            self.num = self.num.shifted(-f.exp);
            if f.sign > 0 {
                self.num = self.num.negated();
            }
            *self.den.entry(Factor { sign: f.sign, exp: -f.exp }).or_default() += 1;
        } else {
            *self.den.entry(f).or_default() += 1;
        }
        Ok(self)
    }

    /// Divides by `(sign q^{exp/4}; q)_n = prod_{i<n} (1 - sign q^{exp/4 + i})`.
    pub fn div_pochhammer(mut self, sign: i8, exp: i64, n: i64) -> Result<Self> {
        if n < 0 {
            return Err(Error::NegativeLength(n));
        }
        for i in 0..n {
            self = self.div_factor(sign, exp + i * UNIT)?;
        }
        Ok(self)
    }

    /// Divides by `(q)_n`.
    pub fn div_q_pochhammer(self, n: i64) -> Result<Self> {
        self.div_pochhammer(1, UNIT, n)
    }

    pub fn mul_poly(&self, p: &QPoly) -> Self {
        Self {
            num: &self.num * p,
            den: self.den.clone(),
        }
    }

    pub fn shift(&self, by: i64) -> Self {
        Self {
            num: self.num.shift(by),
            den: self.den.clone(),
        }
    }

    fn den_product(den: &BTreeMap<Factor, u32>) -> QPoly {
        let mut p = QPoly::one();
        for (f, &m) in den {
            let fp = f.poly();
            for _ in 0..m {
                p = &p * &fp;
            }
        }
        p
    }

    /// Cancels denominator factors that divide the numerator exactly.
    pub fn reduced(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        let factors: Vec<Factor> = self.den.keys().copied().collect();
        for f in factors {
            loop {
                let m = self.den.get(&f).copied().unwrap_or(0);
                if m == 0 {
                    break;
                }
                match self.num.div_binomial_factor(f.sign, f.exp) {
                    Ok(q) => {
                        self.num = q;
                        if m == 1 {
                            self.den.remove(&f);
                        } else {
                            self.den.insert(f, m - 1);
                        }
                    }
                    Err(_) => break,
                }
            }
        }
        self
    }

    /// The polynomial value, dividing out every factor exactly.
    pub fn to_poly(&self) -> Result<QPoly> {
        let mut p = self.num.clone();
        for (f, &m) in &self.den {
            for _ in 0..m {
                p = p.div_binomial_factor(f.sign, f.exp)?;
            }
        }
        Ok(p)
    }

    /// Equality by cross-multiplication after cancelling shared factors.
    pub fn ratio_equal(&self, other: &Self) -> bool {
        let mut left = BTreeMap::new();
        let mut right = BTreeMap::new();
        for (f, &m) in &self.den {
            let o = other.den.get(f).copied().unwrap_or(0);
            if m > o {
                left.insert(*f, m - o);
            }
        }
        for (f, &m) in &other.den {
            let o = self.den.get(f).copied().unwrap_or(0);
            if m > o {
                right.insert(*f, m - o);
            }
        }
        // a/(c*l) == b/(c*r)  <=>  a*r == b*l
        &self.num * &Self::den_product(&right) == &other.num * &Self::den_product(&left)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self {
            num: self.num.scale(k),
            den: self.den.clone(),
        }
    }
}

impl PartialEq for FactoredRatio {
    fn eq(&self, other: &Self) -> bool {
        self.ratio_equal(other)
    }
}

impl Eq for FactoredRatio {}

impl<'a> Mul<&'a FactoredRatio> for &'a FactoredRatio {
    type Output = FactoredRatio;
    fn mul(self, rhs: &'a FactoredRatio) -> FactoredRatio {
        let mut den = self.den.clone();
        for (f, &m) in &rhs.den {
            *den.entry(*f).or_default() += m;
        }
        FactoredRatio {
            num: &self.num * &rhs.num,
            den,
        }
    }
}

impl Mul for FactoredRatio {
    type Output = FactoredRatio;
    fn mul(self, rhs: FactoredRatio) -> FactoredRatio {
        &self * &rhs
    }
}

impl<'a> Add<&'a FactoredRatio> for &'a FactoredRatio {
    type Output = FactoredRatio;
    fn add(self, rhs: &'a FactoredRatio) -> FactoredRatio {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        // least common multiple of the two factor multisets
        let mut den = self.den.clone();
        let mut fill_left = BTreeMap::new();
        let mut fill_right = BTreeMap::new();
        for (f, &m) in &rhs.den {
            let have = den.get(f).copied().unwrap_or(0);
            if m > have {
                fill_left.insert(*f, m - have);
                den.insert(*f, m);
            }
        }
        for (f, &m) in &den {
            let have = rhs.den.get(f).copied().unwrap_or(0);
            if m > have {
                fill_right.insert(*f, m - have);
            }
        }
        let num = &(&self.num * &FactoredRatio::den_product(&fill_left))
            + &(&rhs.num * &FactoredRatio::den_product(&fill_right));
        FactoredRatio { num, den }
    }
}

impl Add for FactoredRatio {
    type Output = FactoredRatio;
    fn add(self, rhs: FactoredRatio) -> FactoredRatio {
        &self + &rhs
    }
}

impl Neg for FactoredRatio {
    type Output = FactoredRatio;
    fn neg(self) -> FactoredRatio {
        FactoredRatio {
            num: self.num.negated(),
            den: self.den,
        }
    }
}

impl<'a> Sub<&'a FactoredRatio> for &'a FactoredRatio {
    type Output = FactoredRatio;
    fn sub(self, rhs: &'a FactoredRatio) -> FactoredRatio {
        self + &(-rhs.clone())
    }
}

impl Sub for FactoredRatio {
    type Output = FactoredRatio;
    fn sub(self, rhs: FactoredRatio) -> FactoredRatio {
        &self - &rhs
    }
}

impl std::iter::Sum for FactoredRatio {
    fn sum<I: Iterator<Item = FactoredRatio>>(iter: I) -> FactoredRatio {
        iter.fold(FactoredRatio::zero(), |acc, r| acc + r)
    }
}

impl fmt::Display for FactoredRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({}) / ", self.num)?;
        let mut first = true;
        for (fac, &m) in &self.den {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if m == 1 {
                write!(f, "{fac}")?;
            } else {
                write!(f, "{fac}^{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FactoredRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FactoredRatio({self})")
    }
}

/// Cross-multiplication equality of two factored ratios.
pub fn ratio_equal(r1: &FactoredRatio, r2: &FactoredRatio) -> bool {
    r1.ratio_equal(r2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[i64]) -> QPoly {
        QPoly::from_coeffs(c)
    }

    #[test]
    fn cancels_by_cross_multiplication() {
        let a = FactoredRatio::new(q(&[1, 0, -1]), [(1, UNIT)]).unwrap();
        let b = FactoredRatio::from_poly(q(&[1, 1]));
        assert!(ratio_equal(&a, &b));
        let c = FactoredRatio::new(QPoly::one(), [(1, UNIT)]).unwrap();
        assert!(!ratio_equal(&c, &FactoredRatio::one()));
        assert_eq!(a.to_poly().unwrap(), q(&[1, 1]));
        assert!(c.to_poly().is_err());
    }

    #[test]
    fn zero_factor_rejected() {
        assert!(Factor::new(1, 0).is_err());
        assert!(FactoredRatio::new(QPoly::one(), [(-1, 0)]).is_ok());
    }

    #[test]
    fn negative_exponent_factors_normalise() {
        // 1/(1 + q^{-1}) = q/(1 + q)
        let r = FactoredRatio::new(QPoly::one(), [(-1, -UNIT)]).unwrap();
        let s = FactoredRatio::new(q(&[0, 1]), [(-1, UNIT)]).unwrap();
        assert!(r.ratio_equal(&s));
        assert!(r.denominator().all(|(f, _)| f.exp >= 0));
    }

    #[test]
    fn addition_uses_common_denominator() {
        // 1/(1-q) - q/(1-q) = 1
        let a = FactoredRatio::new(QPoly::one(), [(1, UNIT)]).unwrap();
        let b = FactoredRatio::new(q(&[0, 1]), [(1, UNIT)]).unwrap();
        assert_eq!((&a - &b).to_poly().unwrap(), QPoly::one());
        // 1/2 + 1/2 = 1
        let h = FactoredRatio::new(QPoly::one(), [(-1, 0)]).unwrap();
        assert_eq!((&h + &h).to_poly().unwrap(), QPoly::one());
    }

    #[test]
    fn reduce_cancels_divisible_factors() {
        let r = FactoredRatio::new(q(&[1, 0, -1]), [(1, UNIT), (1, 2 * UNIT)]).unwrap().reduced();
        // (1-q^2)/((1-q)(1-q^2)) -> (1+q)/(1-q^2)
        assert_eq!(r.numerator(), &q(&[1, 1]));
        assert_eq!(r.denominator().collect::<Vec<_>>(), vec![(Factor { sign: 1, exp: 2 * UNIT }, 1)]);
    }
}
