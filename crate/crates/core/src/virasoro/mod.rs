//! Bosonic and fermionic polynomial analogues of the Virasoro vacuum
//! characters, and the characters themselves.

mod cf;
mod lattice;

pub use cf::{continued_fraction, incidence, rs_pair, CFData, IncMatrix, Matrix};
pub use lattice::{lattice_series, lattice_sum, lattice_sum_with_cap, FermionicSpec, ParityRule};

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::qbinom::qbin_shared;
use crate::qcore::{partition_series, QPoly, QSeries, UNIT};

/// The lattice spec of `F_L(p, p')` for `p < p' < 2p`, or `None` when `d = 0`.
pub fn fermionic_spec(p: i64, pp: i64) -> Result<Option<FermionicSpec>> {
    let cf = continued_fraction(p, pp)?;
    if cf.d == 0 {
        return Ok(None);
    }
    let m = incidence(&cf)?;
    Ok(Some(FermionicSpec::standard(m.two_b.clone(), m.inc.clone(), 2)))
}

/// `F_L(p, p')`; for `p' > 2p` through `q^{L^2} F_L(p'-p, p')` at `q -> 1/q`.
pub fn fermionic(p: i64, pp: i64, l: i64) -> Result<QPoly> {
    if l < 0 {
        return Err(Error::NegativeLength(l));
    }
    if p < 1 || pp <= p || p.gcd(&pp) != 1 {
        return Err(Error::InvalidPair { p, pp, reason: "need coprime 1 <= p < p'".into() });
    }
    if pp == 2 * p {
        return Err(Error::InvalidPair { p, pp, reason: "p' = 2p is excluded".into() });
    }
    if pp > 2 * p {
        return Ok(fermionic(pp - p, pp, l)?.dual().shifted(UNIT * l * l));
    }
    match fermionic_spec(p, pp)? {
        None => Ok(QPoly::one()),
        Some(spec) => lattice_sum(&spec, l),
    }
}

/// `B_L(p, p') = sum_j [q^{j(pp'j+1)} qbin(2L, L-p'j) - q^{(pj+r)(p'j+s)} qbin(2L, L-p'j-s)]`.
pub fn bosonic(p: i64, pp: i64, l: i64) -> Result<QPoly> {
    let ((r, s), _) = rs_pair(p, pp)?;
    bosonic_with(p, pp, r, s, l)
}

/// [`bosonic`] with an explicit solution `(r, s)` of `|p'r - ps| = 1`.
pub fn bosonic_with(p: i64, pp: i64, r: i64, s: i64, l: i64) -> Result<QPoly> {
    if l < 0 {
        return Err(Error::NegativeLength(l));
    }
    if (pp * r - p * s).abs() != 1 {
        return Err(Error::InvalidPair { p, pp, reason: format!("|p'r - ps| != 1 for (r, s) = ({r}, {s})") });
    }
    let jmax = (l + s) / pp + 1;
    let mut acc = QPoly::zero();
    for j in -jmax..=jmax {
        let first = qbin_shared(2 * l, l - pp * j);
        if !first.is_zero() {
            acc += first.shift(UNIT * j * (p * pp * j + 1));
        }
        let second = qbin_shared(2 * l, l - pp * j - s);
        if !second.is_zero() {
            acc -= &second.shift(UNIT * (p * j + r) * (pp * j + s));
        }
    }
    Ok(acc)
}

fn character_numerator(p: i64, pp: i64, r: i64, s: i64, jmax: i64, order: i64) -> QPoly {
    let mut acc = QPoly::zero();
    for j in -jmax..=jmax {
        for (e, sign) in [(j * (p * pp * j + pp * r - p * s), 1), ((p * j + r) * (pp * j + s), -1)] {
            if UNIT * e <= order {
                acc.add_term(UNIT * e, &sign.into());
            }
        }
    }
    acc
}

/// `chi_{r,s}^{(p,p')}` truncated at `order` quarter units.
pub fn character(p: i64, pp: i64, r: i64, s: i64, order: i64) -> Result<QSeries> {
    if !(1..p).contains(&r) || !(1..pp).contains(&s) {
        return Err(Error::Precondition(format!("need 1 <= r < p, 1 <= s < p', got ({r}, {s})")));
    }
    if order < 0 {
        return Err(Error::Precondition(format!("order {order} must be non-negative")));
    }
    let jmax = 1 + ((order / UNIT) as f64 / (p * pp) as f64).sqrt().ceil() as i64 + 2;
    let num = character_numerator(p, pp, r, s, jmax, order);
    if character_numerator(p, pp, r, s, jmax + 2, order) != num {
        return Err(Error::NonConvergent { cap: jmax, extra: "character j-range".into() });
    }
    Ok(QSeries::from_poly(&num, order).mul(&partition_series(order)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[i64]) -> QPoly {
        QPoly::from_coeffs(c)
    }

    #[test]
    fn fermionic_examples() {
        assert_eq!(fermionic(3, 4, 2).unwrap(), q(&[1, 0, 1]));
        for l in 0..6 {
            assert_eq!(fermionic(2, 3, l).unwrap(), QPoly::one());
        }
        // d = 1: sum_j q^{j^2} qbin(L + j, 2j), with m = 2j
        for l in 0..8 {
            let want: QPoly = (0..=l)
                .map(|j| qbin_shared(l + j, 2 * j).shift(UNIT * j * j))
                .sum();
            assert_eq!(fermionic(3, 5, l).unwrap(), want);
        }
        assert!(fermionic(2, 4, 1).is_err());
        assert!(fermionic(3, 6, 1).is_err());
    }

    #[test]
    fn bosonic_examples() {
        for (p, pp) in [(2, 3), (3, 4), (3, 5), (5, 7)] {
            assert_eq!(bosonic(p, pp, 0).unwrap(), QPoly::one());
        }
        assert_eq!(bosonic(3, 4, 2).unwrap(), q(&[1, 0, 1]));
        for l in 0..6 {
            assert_eq!(bosonic(2, 3, l).unwrap(), QPoly::one());
        }
    }

    #[test]
    fn fermionic_equals_bosonic_small() {
        for (p, pp) in [(3, 4), (4, 5), (3, 5), (5, 7), (5, 8), (2, 5), (3, 7)] {
            for l in 0..=7 {
                assert_eq!(fermionic(p, pp, l).unwrap(), bosonic(p, pp, l).unwrap(), "({p},{pp}) L={l}");
            }
        }
    }

    #[test]
    fn bosonic_swap_invariance() {
        for (p, pp) in [(3, 4), (4, 5), (5, 7), (3, 8)] {
            let (a, b) = rs_pair(p, pp).unwrap();
            for l in 0..=6 {
                assert_eq!(
                    bosonic_with(p, pp, a.0, a.1, l).unwrap(),
                    bosonic_with(p, pp, b.0, b.1, l).unwrap()
                );
            }
        }
    }

    #[test]
    fn character_examples() {
        assert_eq!(character(2, 3, 1, 1, 80).unwrap(), QSeries::one(80));
        assert_eq!(character(3, 4, 1, 1, 0).unwrap(), QSeries::one(0));
        // Rogers-Ramanujan: chi_{1,2}^{(2,5)}
        let rr = character(2, 5, 1, 2, 40).unwrap();
        assert_eq!(rr.into_poly(), q(&[1, 1, 1, 1, 2, 2, 3, 3, 4, 5, 6]));
        assert!(character(3, 4, 0, 1, 10).is_err());
    }
}
