//! Connection coefficients between `qbin(2k, k-a)` and the trinomials
//! `T_0`, `T_1`, and the expansions they generate.
//!
//! Every identity with a `(1 + q^k)` denominator is checked in
//! cleared-denominator form: the sum is accumulated as a
//! [`FactoredRatio`] and brought back to a polynomial by exact division.

use crate::error::{Error, Result};
use crate::qbinom::{qbin, qbin_shared, tri};
use crate::qcore::{FactoredRatio, QPoly, UNIT};
use crate::qtrinom::{t_n, trinomial};

/// Which connection coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoeffKind {
    /// `C_{L,k}(a)`: `T_0` in terms of binomials.
    C,
    /// `C'_{L,k}(a)`: binomials in terms of `T_0`.
    Cp,
    /// `D_{L,k}(a)`: `T_1` in terms of binomials.
    D,
    /// `D'_{L,k}(a)`: binomials in terms of `T_1`.
    Dp,
}

/// `T_0` or `T_1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TKind {
    T0,
    T1,
}

impl TKind {
    pub fn n(self) -> i64 {
        match self {
            TKind::T0 => 0,
            TKind::T1 => 1,
        }
    }
}

/// The pair of coefficients that invert one another.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    C,
    D,
}

fn sign_poly(parity: i64) -> QPoly {
    if parity.rem_euclid(2) == 0 {
        QPoly::one()
    } else {
        QPoly::one().negated()
    }
}

/// The connection coefficient of the given kind, for `0 <= k <= L`.
pub fn connection_coeff(kind: CoeffKind, l: i64, k: i64, a: i64) -> Result<FactoredRatio> {
    if k < 0 || k > l {
        return Err(Error::IndexOutOfRange { index: k, lo: 0, hi: l });
    }
    let b = qbin(l, k);
    let r = match kind {
        CoeffKind::C => {
            let e = UNIT * tri(l - k) + 2 * (a * a - l * l);
            FactoredRatio::from_poly((&sign_poly(l - k) * &b).shifted(e))
        }
        CoeffKind::Cp => FactoredRatio::from_poly(b.shifted(2 * (k * k - a * a))),
        CoeffKind::D => {
            let e = UNIT * (tri(l - k) + tri(a) - tri(l));
            let num = &(&sign_poly(l - k) * &b) * &QPoly::binomial_factor(-1, a * UNIT);
            FactoredRatio::from_poly(num.shifted(e)).div_factor(-1, k * UNIT)?
        }
        CoeffKind::Dp => {
            let e = UNIT * (tri(k) - tri(a));
            let num = &b * &QPoly::binomial_factor(-1, l * UNIT);
            FactoredRatio::from_poly(num.shifted(e)).div_factor(-1, a * UNIT)?
        }
    };
    Ok(r)
}

fn check_range(l: i64, a: i64) -> Result<()> {
    if l < 0 || a.abs() > l {
        return Err(Error::Precondition(format!("need 0 <= |a| <= L, got L={l}, a={a}")));
    }
    Ok(())
}

/// `sum_k coeff(L, k, a) qbin(2k, k - a)`, which equals `T_n(L, a)`.
pub fn expand_trinomial_in_binomials(kind: TKind, l: i64, a: i64) -> Result<QPoly> {
    check_range(l, a)?;
    let ck = match kind {
        TKind::T0 => CoeffKind::C,
        TKind::T1 => CoeffKind::D,
    };
    let mut acc = FactoredRatio::zero();
    for k in a.abs()..=l {
        let w = connection_coeff(ck, l, k, a)?;
        acc = &acc + &w.mul_poly(&qbin_shared(2 * k, k - a));
    }
    acc.to_poly()
}

/// `sum_k coeff'(L, k, a) T_n(k, a)`, which equals `qbin(2L, L - a)`.
pub fn expand_binomial_in_trinomials(kind: TKind, l: i64, a: i64) -> Result<QPoly> {
    check_range(l, a)?;
    let ck = match kind {
        TKind::T0 => CoeffKind::Cp,
        TKind::T1 => CoeffKind::Dp,
    };
    let mut acc = FactoredRatio::zero();
    for k in a.abs()..=l {
        let w = connection_coeff(ck, l, k, a)?;
        acc = &acc + &w.mul_poly(&t_n(kind.n(), k, a));
    }
    acc.to_poly()
}

/// `sum_{k=M}^{L} X_{L,k}(a) X'_{k,M}(a)`; equals `delta_{L,M}`.
pub fn orthogonality_check(family: Family, l: i64, m: i64, a: i64) -> Result<QPoly> {
    if m < 0 || m > l {
        return Err(Error::Precondition(format!("need 0 <= M <= L, got L={l}, M={m}")));
    }
    let (x, xp) = match family {
        Family::C => (CoeffKind::C, CoeffKind::Cp),
        Family::D => (CoeffKind::D, CoeffKind::Dp),
    };
    let mut acc = FactoredRatio::zero();
    for k in m..=l {
        let term = &connection_coeff(x, l, k, a)? * &connection_coeff(xp, k, m, a)?;
        acc = &acc + &term;
    }
    acc.to_poly()
}

/// The two even-argument expansions, which are not invertible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EvenArg {
    /// `T_n(L, 2a) = sum_k q^{(L-2k)(L-2k-n)/2} qbin(L, 2k) qbin(2k, k-a)`.
    Tn { n: i64, l: i64, a: i64 },
    /// `(L, b; 2a)_2 = sum_k q^{(k-a)(k-a+b)} qbin(L, 2k) qbin(2k, k-a)`.
    Trin { l: i64, b: i64, a: i64 },
}

pub fn even_arg_expansion(which: EvenArg) -> QPoly {
    let (l, a) = match which {
        EvenArg::Tn { l, a, .. } | EvenArg::Trin { l, a, .. } => (l, a),
    };
    let mut acc = QPoly::zero();
    if l < 0 {
        return acc;
    }
    for k in a.abs()..=l / 2 {
        let e = match which {
            EvenArg::Tn { n, .. } => 2 * (l - 2 * k) * (l - 2 * k - n),
            EvenArg::Trin { b, .. } => UNIT * (k - a) * (k - a + b),
        };
        let t = &*qbin_shared(l, 2 * k) * &*qbin_shared(2 * k, k - a);
        acc += t.shifted(e);
    }
    acc
}

/// The direct value that [`even_arg_expansion`] must reproduce.
pub fn even_arg_target(which: EvenArg) -> QPoly {
    match which {
        EvenArg::Tn { n, l, a } => t_n(n, l, 2 * a),
        EvenArg::Trin { l, b, a } => trinomial(l, b, 2 * a),
    }
}

/// Both sides of
/// `q^{(L-a)/2} (1 + q^a) T_0(L, a) = (1 + q^L) T_1(L, a) - (1 - q^L) T_1(L-1, a)`.
pub fn t0_t1_bridge(l: i64, a: i64) -> (QPoly, QPoly) {
    let lhs = (&t_n(0, l, a) * &QPoly::binomial_factor(-1, a * UNIT)).shifted(2 * (l - a));
    let rhs = &(&QPoly::binomial_factor(-1, l * UNIT) * &t_n(1, l, a))
        - &(&QPoly::binomial_factor(1, l * UNIT) * &t_n(1, l - 1, a));
    (lhs, rhs)
}

/// The same bridge re-derived through the connection coefficients: both
/// sides are expanded in binomials via `C` and `D`, and compared
/// coefficient-wise in `qbin(2k, k-a)`. Returns the cleared-denominator
/// difference of the two expansions, which must vanish.
pub fn t0_t1_bridge_via_connection(l: i64, a: i64) -> Result<QPoly> {
    check_range(l, a)?;
    let mut acc = FactoredRatio::zero();
    let onepa = QPoly::binomial_factor(-1, a * UNIT);
    let onepl = QPoly::binomial_factor(-1, l * UNIT);
    let onel = QPoly::binomial_factor(1, l * UNIT);
    for k in a.abs()..=l {
        let bin = qbin_shared(2 * k, k - a);
        let left = connection_coeff(CoeffKind::C, l, k, a)?
            .mul_poly(&onepa)
            .shift(2 * (l - a));
        let mut right = connection_coeff(CoeffKind::D, l, k, a)?.mul_poly(&onepl);
        if k < l {
            right = &right - &connection_coeff(CoeffKind::D, l - 1, k, a)?.mul_poly(&onel);
        }
        acc = &acc + &(&left - &right).mul_poly(&bin);
    }
    acc.to_poly()
}
