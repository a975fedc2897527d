//! Binomial and trinomial Bailey pairs, the Bailey lemmas at exact
//! specialisations of their free parameters, and the transforms between
//! the two kinds of pair.
//!
//! All sequence entries are [`FactoredRatio`]s; identities are checked with
//! [`FactoredRatio::ratio_equal`], never numerically.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::qbinom::{poch_general, tri, PochSpec};
use crate::qcore::{FactoredRatio, QPoly, Sign, UNIT};
use crate::qtrinom::t_n;

/// `sign q^{exp/4}`, used for `a` and for the lemma parameters `rho`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QMonomial {
    pub sign: i8,
    /// Quarter units.
    pub exp: i64,
}

impl QMonomial {
    pub const ONE: QMonomial = QMonomial { sign: 1, exp: 0 };

    pub fn new(sign: i8, exp: i64) -> Self {
        Self { sign: if sign < 0 { -1 } else { 1 }, exp }
    }

    /// `q^l` for an integer `l`.
    pub fn q_pow(l: i64) -> Self {
        Self::new(1, UNIT * l)
    }

    /// `x^k` as a polynomial.
    pub fn pow_poly(self, k: i64) -> QPoly {
        let c = if self.sign < 0 && k % 2 != 0 { -1 } else { 1 };
        QPoly::term(c, self.exp * k)
    }

    fn sign_enum(self) -> Sign {
        Sign::from_i8(self.sign)
    }
}

impl std::ops::Mul for QMonomial {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(self.sign * o.sign, self.exp + o.exp)
    }
}

impl std::ops::Div for QMonomial {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        Self::new(self.sign * o.sign, self.exp - o.exp)
    }
}

impl std::fmt::Display for QMonomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let m = crate::qcore::poly::render_power(self.exp);
        if self.sign < 0 {
            write!(f, "-{m}")
        } else {
            write!(f, "{m}")
        }
    }
}

/// The parameter `a = sign q^{exp/4}` of a binomial pair.
pub type APar = QMonomial;
/// A lemma parameter `rho`.
pub type RhoSpec = QMonomial;

/// `(x; q)_n` as a polynomial numerator.
fn poch_num(x: QMonomial, n: i64) -> Result<QPoly> {
    poch_general(&PochSpec::finite(x.sign_enum(), x.exp, n))
}

/// `r / (x; q)_n`.
fn div_poch(r: FactoredRatio, x: QMonomial, n: i64) -> Result<FactoredRatio> {
    r.div_pochhammer(x.sign, x.exp, n)
}

fn sign_of(k: i64) -> QPoly {
    if k % 2 == 0 {
        QPoly::one()
    } else {
        QPoly::one().negated()
    }
}

/// `(1 + q^{k})` with `k` in whole powers.
fn one_plus(k: i64) -> QPoly {
    QPoly::binomial_factor(-1, UNIT * k)
}

/// Entrywise [`FactoredRatio::ratio_equal`] on sequences of equal length.
pub fn ratio_seq_equal(a: &[FactoredRatio], b: &[FactoredRatio]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.ratio_equal(y))
}

/// `beta_L = sum_{r <= L} alpha_r / ((q)_{L-r} (aq)_{L+r})`.
#[derive(Debug, Clone, PartialEq)]
pub struct BaileyPair {
    pub a: APar,
    pub alpha: Vec<FactoredRatio>,
    pub beta: Vec<FactoredRatio>,
}

impl BaileyPair {
    /// Largest stored index.
    pub fn m(&self) -> i64 {
        self.alpha.len() as i64 - 1
    }

    /// Recomputes `beta` from `alpha` and compares.
    pub fn verify(&self) -> Result<bool> {
        let again = beta_from_alpha(&self.alpha, self.a, self.m())?;
        Ok(ratio_seq_equal(&again.beta, &self.beta))
    }
}

/// The defining sum, for `L = 0..=M`.
pub fn beta_from_alpha(alpha: &[FactoredRatio], a: APar, m: i64) -> Result<BaileyPair> {
    if m < 0 || alpha.len() < (m + 1) as usize {
        return Err(Error::Precondition(format!("need alpha_0..alpha_{m}")));
    }
    let aq = a * QMonomial::q_pow(1);
    let mut beta = Vec::with_capacity((m + 1) as usize);
    for l in 0..=m {
        let mut acc = FactoredRatio::zero();
        for (r, al) in alpha.iter().enumerate().take((l + 1) as usize) {
            let r = r as i64;
            let t = div_poch(al.clone().div_q_pochhammer(l - r)?, aq, l + r)?;
            acc = &acc + &t;
        }
        beta.push(acc);
    }
    Ok(BaileyPair { a, alpha: alpha[..=(m as usize)].to_vec(), beta })
}

/// `B_L = sum_{r <= L} T_n(L, r)/(q)_L A_r`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrinBaileyPair {
    pub n: i64,
    pub a: Vec<FactoredRatio>,
    pub b: Vec<FactoredRatio>,
}

impl TrinBaileyPair {
    pub fn m(&self) -> i64 {
        self.a.len() as i64 - 1
    }

    pub fn verify(&self) -> Result<bool> {
        let again = b_from_a(&self.a, self.n, self.m())?;
        Ok(ratio_seq_equal(&again.b, &self.b))
    }
}

/// `Q_n(L, r) = T_n(L, r)/(q)_L`, zero for `L < 0`.
pub fn q_kernel(n: i64, l: i64, r: i64) -> Result<FactoredRatio> {
    if l < 0 {
        return Ok(FactoredRatio::zero());
    }
    FactoredRatio::from_poly(t_n(n, l, r)).div_q_pochhammer(l)
}

pub fn b_from_a(a: &[FactoredRatio], n: i64, m: i64) -> Result<TrinBaileyPair> {
    if m < 0 || a.len() < (m + 1) as usize {
        return Err(Error::Precondition(format!("need A_0..A_{m}")));
    }
    if n != 0 && n != 1 {
        return Err(Error::Precondition(format!("trinomial pairs are relative to 0 or 1, got {n}")));
    }
    let mut b = Vec::with_capacity((m + 1) as usize);
    for l in 0..=m {
        let mut acc = FactoredRatio::zero();
        for (r, ar) in a.iter().enumerate().take((l + 1) as usize) {
            if ar.is_zero() {
                continue;
            }
            acc = &acc + &(&q_kernel(n, l, r as i64)? * ar);
        }
        b.push(acc);
    }
    Ok(TrinBaileyPair { n, a: a[..=(m as usize)].to_vec(), b })
}

/// Rejects a `rho` whose Pochhammer symbol `(rho)_L` vanishes for some `L <= m`.
fn check_rho(rho: RhoSpec, m: i64) -> Result<()> {
    if rho.sign > 0 && rho.exp <= 0 && rho.exp % UNIT == 0 && -rho.exp / UNIT < m {
        return Err(Error::ZeroFactor(format!("(rho; q)_L with rho = {rho}")));
    }
    Ok(())
}

/// Both sides of the Bailey lemma at `M`:
/// `sum_L (rho1)_L (rho2)_L (aq/rho1rho2)^L alpha_L / ((aq/rho1)_L (aq/rho2)_L (q)_{M-L} (aq)_{M+L})`
/// and
/// `sum_L (rho1)_L (rho2)_L (aq/rho1rho2)_{M-L} (aq/rho1rho2)^L beta_L / ((aq/rho1)_M (aq/rho2)_M (q)_{M-L})`.
pub fn bailey_lemma_sides(
    pair: &BaileyPair,
    rho1: RhoSpec,
    rho2: RhoSpec,
    m: i64,
) -> Result<(FactoredRatio, FactoredRatio)> {
    if m < 0 || m > pair.m() {
        return Err(Error::IndexOutOfRange { index: m, lo: 0, hi: pair.m() });
    }
    check_rho(rho1, m)?;
    check_rho(rho2, m)?;
    let aq = pair.a * QMonomial::q_pow(1);
    let c1 = aq / rho1;
    let c2 = aq / rho2;
    let c = aq / rho1 / rho2;
    let mut lhs = FactoredRatio::zero();
    let mut rhs = FactoredRatio::zero();
    for l in 0..=m {
        let common = &(&poch_num(rho1, l)? * &poch_num(rho2, l)?) * &c.pow_poly(l);
        let mut t = FactoredRatio::from_poly(common.clone());
        t = div_poch(t, c1, l)?;
        t = div_poch(t, c2, l)?;
        t = t.div_q_pochhammer(m - l)?;
        t = div_poch(t, aq, m + l)?;
        lhs = &lhs + &(&t * &pair.alpha[l as usize]);

        let mut u = FactoredRatio::from_poly(&common * &poch_num(c, m - l)?);
        u = div_poch(u, c1, m)?;
        u = div_poch(u, c2, m)?;
        u = u.div_q_pochhammer(m - l)?;
        rhs = &rhs + &(&u * &pair.beta[l as usize]);
    }
    Ok((lhs, rhs))
}

pub fn bailey_lemma_check(pair: &BaileyPair, rho1: RhoSpec, rho2: RhoSpec, m: i64) -> Result<bool> {
    let (l, r) = bailey_lemma_sides(pair, rho1, rho2, m)?;
    Ok(l.ratio_equal(&r))
}

/// `(-q^{e/4}; q)_n` as a polynomial.
fn minus_poch(e: i64, n: i64) -> Result<QPoly> {
    poch_num(QMonomial::new(-1, e), n)
}

/// Both sides of the trinomial Bailey lemma at `M`.
///
/// Relative to 0:
/// `sum_L (-1)_L q^{L/2} B_L = (-1)_{M+1} sum_L q^{L/2} A_L Q_1(M, L)/(1 + q^L)`.
///
/// Relative to 1:
/// `sum_L (-q^{-1})_L q^L B_L = (-1)_M sum_L A_L {Q_1(M, L) - Q_1(M-1, L+1)/(1 + q^{-L-1}) - Q_1(M-1, L-1)/(1 + q^{L-1})}`.
pub fn trinomial_bailey_lemma_sides(pair: &TrinBaileyPair, m: i64) -> Result<(FactoredRatio, FactoredRatio)> {
    if m < 0 || m > pair.m() {
        return Err(Error::IndexOutOfRange { index: m, lo: 0, hi: pair.m() });
    }
    let mut lhs = FactoredRatio::zero();
    let mut inner = FactoredRatio::zero();
    match pair.n {
        0 => {
            for l in 0..=m {
                let w = minus_poch(0, l)?.shifted(2 * l);
                lhs = &lhs + &pair.b[l as usize].mul_poly(&w);
                let k = q_kernel(1, m, l)?.div_factor(-1, UNIT * l)?.shift(2 * l);
                inner = &inner + &(&k * &pair.a[l as usize]);
            }
            Ok((lhs, inner.mul_poly(&minus_poch(0, m + 1)?)))
        }
        1 => {
            for l in 0..=m {
                let w = minus_poch(-UNIT, l)?.shifted(UNIT * l);
                lhs = &lhs + &pair.b[l as usize].mul_poly(&w);
                let k = &(&q_kernel(1, m, l)?
                    - &q_kernel(1, m - 1, l + 1)?.div_factor(-1, -UNIT * (l + 1))?)
                    - &q_kernel(1, m - 1, l - 1)?.div_factor(-1, UNIT * (l - 1))?;
                inner = &inner + &(&k * &pair.a[l as usize]);
            }
            Ok((lhs, inner.mul_poly(&minus_poch(0, m)?)))
        }
        n => Err(Error::Precondition(format!("trinomial pairs are relative to 0 or 1, got {n}"))),
    }
}

pub fn trinomial_bailey_lemma_check(pair: &TrinBaileyPair, m: i64) -> Result<bool> {
    let (l, r) = trinomial_bailey_lemma_sides(pair, m)?;
    Ok(l.ratio_equal(&r))
}

/// `q^{(L-a)/2} (1 + q^a) T_0(L, a) = (1 + q^L) T_1(L, a) - (1 - q^L) T_1(L-1, a)`.
pub fn t0_t1_relation_check(l: i64, a: i64) -> Result<bool> {
    if l < 1 || a.abs() > l {
        return Err(Error::Precondition(format!("need 1 <= L and |a| <= L, got L={l}, a={a}")));
    }
    let (lhs, rhs) = crate::connect::t0_t1_bridge(l, a);
    Ok(lhs == rhs)
}

/// The telescoping sum behind the relative-0 lemma:
/// `sum_{L=a}^{M} q^{L/2} (-1)_L Q_0(L, a)` against `q^{a/2} (-1)_{M+1} Q_1(M, a)/(1 + q^a)`.
pub fn tbl1_telescoping_sides(a: i64, m: i64) -> Result<(FactoredRatio, FactoredRatio)> {
    if a < 0 || a > m {
        return Err(Error::Precondition(format!("need 0 <= a <= M, got a={a}, M={m}")));
    }
    let mut lhs = FactoredRatio::zero();
    for l in a..=m {
        lhs = &lhs + &q_kernel(0, l, a)?.mul_poly(&minus_poch(0, l)?.shifted(2 * l));
    }
    let rhs = q_kernel(1, m, a)?
        .div_factor(-1, UNIT * a)?
        .mul_poly(&minus_poch(0, m + 1)?.shifted(2 * a));
    Ok((lhs, rhs))
}

/// A pair of either kind.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyPair {
    Bin(BaileyPair),
    Trin(TrinBaileyPair),
}

impl AnyPair {
    pub fn verify(&self) -> Result<bool> {
        match self {
            AnyPair::Bin(p) => p.verify(),
            AnyPair::Trin(p) => p.verify(),
        }
    }
}

/// The pair transforms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Transform {
    /// Binomial pair relative to 1 to trinomial pair relative to 0.
    ToTrin0,
    /// Binomial pair relative to 1 to trinomial pair relative to 1.
    ToTrin1,
    /// Trinomial pair relative to 0 to binomial pair relative to 1.
    ToBin0,
    /// Trinomial pair relative to 1 to binomial pair relative to 1.
    ToBin1,
    /// Binomial pair relative to `q^l` to trinomial pair relative to `n`,
    /// supported on `L = l, l+2, ...`.
    EvenEmbed { l: i64, n: i64 },
}

impl Transform {
    pub fn name(self) -> String {
        match self {
            Transform::ToTrin0 => "toTrin0".into(),
            Transform::ToTrin1 => "toTrin1".into(),
            Transform::ToBin0 => "toBin0".into(),
            Transform::ToBin1 => "toBin1".into(),
            Transform::EvenEmbed { l, n } => format!("evenEmbed({l},{n})"),
        }
    }
}

fn expect_bin(input: &AnyPair, a: APar, what: &str) -> Result<BaileyPair> {
    match input {
        AnyPair::Bin(p) if p.a == a => Ok(p.clone()),
        AnyPair::Bin(p) => Err(Error::WrongRelative(format!("{what} needs a = {a}, got a = {}", p.a))),
        AnyPair::Trin(_) => Err(Error::WrongRelative(format!("{what} needs a binomial pair"))),
    }
}

fn expect_trin(input: &AnyPair, n: i64, what: &str) -> Result<TrinBaileyPair> {
    match input {
        AnyPair::Trin(p) if p.n == n => Ok(p.clone()),
        AnyPair::Trin(p) => Err(Error::WrongRelative(format!("{what} needs n = {n}, got n = {}", p.n))),
        AnyPair::Bin(_) => Err(Error::WrongRelative(format!("{what} needs a trinomial pair"))),
    }
}

/// Applies a transform by its explicit formulas. The output is not checked
/// here; call [`AnyPair::verify`] on it.
pub fn pair_transform(kind: Transform, input: &AnyPair) -> Result<AnyPair> {
    match kind {
        Transform::ToTrin0 | Transform::ToTrin1 => {
            let p = expect_bin(input, QMonomial::ONE, &kind.name())?;
            let one = kind == Transform::ToTrin1;
            let m = p.m();
            let mut a = Vec::new();
            let mut b = Vec::new();
            for l in 0..=m {
                let al = &p.alpha[l as usize];
                a.push(if one {
                    al.shift(-UNIT * tri(l)).div_factor(-1, UNIT * l)?
                } else {
                    al.shift(-2 * l * l)
                });
                let mut acc = FactoredRatio::zero();
                for k in 0..=l {
                    // (q)_{2k}/(q)_k = (q^{k+1}; q)_k
                    let top = poch_num(QMonomial::q_pow(k + 1), k)?;
                    let e = UNIT * tri(l - k) - if one { UNIT * tri(l) } else { 2 * l * l };
                    let mut w = FactoredRatio::from_poly((&sign_of(l - k) * &top).shifted(e))
                        .div_q_pochhammer(l - k)?;
                    if one {
                        w = w.div_factor(-1, UNIT * k)?;
                    }
                    acc = &acc + &(&w * &p.beta[k as usize]);
                }
                b.push(acc);
            }
            Ok(AnyPair::Trin(TrinBaileyPair { n: i64::from(one), a, b }))
        }
        Transform::ToBin0 | Transform::ToBin1 => {
            let one = kind == Transform::ToBin1;
            let p = expect_trin(input, i64::from(one), &kind.name())?;
            let m = p.m();
            let mut alpha = Vec::new();
            let mut beta = Vec::new();
            for l in 0..=m {
                let al = &p.a[l as usize];
                alpha.push(if one {
                    al.mul_poly(&one_plus(l).shifted(UNIT * tri(l)))
                } else {
                    al.shift(2 * l * l)
                });
                let mut acc = FactoredRatio::zero();
                for k in 0..=l {
                    let e = if one { UNIT * tri(k) } else { 2 * k * k };
                    let w = FactoredRatio::from_poly(QPoly::q_pow(e)).div_q_pochhammer(l - k)?;
                    acc = &acc + &(&w * &p.b[k as usize]);
                }
                // (q)_L/(q)_{2L} = 1/(q^{L+1}; q)_L
                let mut pre = QPoly::one();
                if one {
                    pre = one_plus(l);
                }
                let acc = div_poch(acc.mul_poly(&pre), QMonomial::q_pow(l + 1), l)?;
                beta.push(acc);
            }
            Ok(AnyPair::Bin(BaileyPair { a: QMonomial::ONE, alpha, beta }))
        }
        Transform::EvenEmbed { l: ell, n } => {
            if ell < 0 || (n != 0 && n != 1) {
                return Err(Error::Precondition(format!("evenEmbed needs l >= 0 and n in {{0,1}}, got ({ell},{n})")));
            }
            let p = expect_bin(input, QMonomial::q_pow(ell), &kind.name())?;
            let m_out = ell + 2 * p.m();
            let mut a = Vec::new();
            let mut b = Vec::new();
            for big_l in 0..=m_out {
                let off = big_l - ell;
                a.push(if off >= 0 && off % 2 == 0 {
                    p.alpha[(off / 2) as usize].clone()
                } else {
                    FactoredRatio::zero()
                });
                let mut acc = FactoredRatio::zero();
                if off >= 0 {
                    for k in 0..=off / 2 {
                        let x = off - 2 * k;
                        let w = FactoredRatio::from_poly(QPoly::q_pow(2 * x * (x - n)))
                            .div_q_pochhammer(x)?
                            .div_q_pochhammer(ell)?;
                        acc = &acc + &(&w * &p.beta[k as usize]);
                    }
                }
                b.push(acc);
            }
            Ok(AnyPair::Trin(TrinBaileyPair { n, a, b }))
        }
    }
}

/// Seeded random `alpha`/`A` sequences: integer polynomials in `q` of degree
/// at most `max_deg` with coefficients in `[-3, 3]`.
pub fn random_sequence(rng: &mut ChaCha8Rng, len: usize, max_deg: usize) -> Vec<FactoredRatio> {
    (0..len)
        .map(|_| {
            let deg = rng.gen_range(0..=max_deg);
            let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-3..=3)).collect();
            FactoredRatio::from_poly(QPoly::from_coeffs(&coeffs))
        })
        .collect()
}

/// Generator for a given seed.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `(1, 0, 0, ...)` of length `m + 1`.
pub fn unit_sequence(m: i64) -> Vec<FactoredRatio> {
    (0..=m)
        .map(|l| if l == 0 { FactoredRatio::one() } else { FactoredRatio::zero() })
        .collect()
}
