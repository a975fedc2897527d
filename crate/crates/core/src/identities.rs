//! Both sides of the Rogers–Ramanujan-type polynomial identities, their
//! series limits, and the fermionic = bosonic propositions.
//!
//! Left-hand sides go through the lattice engine, right-hand sides through
//! direct alternating sums; no side is derived from the other.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::qbinom::{qbin_shared, tri};
use crate::qcore::{euler_product, partition_series, QPoly, QSeries, Sign, UNIT};
use crate::qtrinom::{t_n, trinomial_sym};
use crate::virasoro::{
    bosonic, character, continued_fraction, fermionic, incidence, lattice_series, lattice_sum,
    rs_pair, CFData, FermionicSpec, IncMatrix, Matrix, ParityRule,
};

fn signed(j: i64) -> BigInt {
    if j.is_even() {
        BigInt::from(1)
    } else {
        BigInt::from(-1)
    }
}

/// Polynomial Rogers–Ramanujan: `(lhs, binomial rhs, trinomial rhs)`.
pub fn rr_check(l: i64) -> Result<(QPoly, QPoly, QPoly)> {
    if l < 0 {
        return Err(Error::NegativeLength(l));
    }
    let lhs: QPoly = (0..=l)
        .map(|n| qbin_shared(l - n, n).shift(UNIT * n * n))
        .sum();
    let jmax = l / 5 + 2;
    let mut bin = QPoly::zero();
    for j in -jmax..=jmax {
        let b = qbin_shared(l, Integer::div_floor(&(l - 5 * j), &2));
        if !b.is_zero() {
            // q^{j(5j+1)/2} is 2 j (5j+1) quarter units
            bin += b.scale(&signed(j)).shifted(2 * j * (5 * j + 1));
        }
    }
    Ok((lhs, bin, prop5_rhs(1, l)))
}

/// `sum_n q^{n^2} (-q; q^2)_n / (q^2; q^2)_n` against its modulus-8 product.
pub fn gg_check(order: i64) -> Result<(QSeries, QSeries)> {
    if order < 0 {
        return Err(Error::Precondition(format!("order {order} must be non-negative")));
    }
    let mut lhs = QSeries::zero(order);
    let mut n = 0;
    // (-q; q^2)_n / (q^2; q^2)_n, built up one factor at a time
    let mut ratio = QSeries::one(order);
    while UNIT * n * n <= order {
        lhs = lhs.add(&ratio.shift(UNIT * n * n));
        n += 1;
        ratio = ratio.mul_poly(&QPoly::binomial_factor(-1, UNIT * (2 * n - 1)));
        ratio = crate::qcore::series::mul_geometric(&ratio, Sign::Plus, UNIT * 2 * n);
    }
    let mut rhs = QSeries::one(order);
    for start in [1, 4, 7] {
        rhs = rhs.mul(&euler_product(Sign::Plus, UNIT * start, UNIT * 8, -1, order)?);
    }
    Ok((lhs, rhs))
}

/// `sum_j (-1)^j q^{2j^2 + j/2}` against `(q^{3/2}; q^4)_inf (q^{5/2}; q^4)_inf (q^4; q^4)_inf`.
pub fn jtp_check(order: i64) -> Result<(QSeries, QSeries)> {
    if order < 0 {
        return Err(Error::Precondition(format!("order {order} must be non-negative")));
    }
    let mut sum = QPoly::zero();
    let jmax = ((order as f64 / 8.0).sqrt().ceil() as i64) + 1;
    for j in -jmax..=jmax {
        let e = 8 * j * j + 2 * j;
        if e <= order {
            sum.add_term(e, &signed(j));
        }
    }
    let mut rhs = QSeries::one(order);
    for start in [6, 10, 16] {
        rhs = rhs.mul(&euler_product(Sign::Plus, start, 16, 1, order)?);
    }
    Ok((QSeries::from_poly(&sum, order), rhs))
}

/// `sum_{m,n} q^{(m^2+n^2)/2} qbin(L-m, n) qbin(n, m)` against the `T_0` sum.
pub fn bmo_check(l: i64) -> Result<(QPoly, QPoly)> {
    if l < 0 {
        return Err(Error::NegativeLength(l));
    }
    let mut lhs = QPoly::zero();
    for m in 0..=l {
        for n in m..=(l - m) {
            let t = &*qbin_shared(l - m, n) * &*qbin_shared(n, m);
            lhs += t.shifted(2 * (m * m + n * n));
        }
    }
    let mut rhs = QPoly::zero();
    let jmax = l / 4 + 1;
    for j in -jmax..=jmax {
        let t = &t_n(0, l, 4 * j) + &t_n(0, l, 4 * j + 1);
        rhs += t.scale(&signed(j)).shifted(8 * j * j + 2 * j);
    }
    Ok((lhs, rhs))
}

/// The companion double sum over `m_1 + m_2` even against its binomial sum.
pub fn bmo_companion_check(l: i64) -> Result<(QPoly, QPoly)> {
    if l < 0 {
        return Err(Error::NegativeLength(l));
    }
    let mut lhs = QPoly::zero();
    for m1 in 0..=2 * l {
        let mut m2 = m1 % 2;
        while m2 <= m1 {
            let t = &*qbin_shared(l + (m1 - m2) / 2, m1) * &*qbin_shared((m1 + m2) / 2, m2);
            lhs += t.shifted(m1 * m1 + m2 * m2);
            m2 += 2;
        }
    }
    let mut rhs = QPoly::zero();
    let jmax = l / 4 + 1;
    for j in -jmax..=jmax {
        let a = qbin_shared(2 * l, l - 4 * j).shift(2 * j * (20 * j + 1));
        let b = qbin_shared(2 * l, l - 4 * j - 1).shift(2 * (4 * j + 1) * (5 * j + 1));
        rhs += (&a + &b).scale(&signed(j));
    }
    Ok((lhs, rhs))
}

/// Which proposition, with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Prop {
    /// `p < p' <= 3p/2`; `T_0`-weighted right-hand side.
    One { p: i64, pp: i64 },
    /// `3p/2 < p' < 2p`, `d >= 2`.
    Two { p: i64, pp: i64 },
    /// `p < p' < 2p`; round-trinomial right-hand side.
    Three { p: i64, pp: i64 },
    /// `p < p' < 3p/2`.
    Four { p: i64, pp: i64 },
    /// Cartan matrix of `A_n`, `n >= 1`.
    Five { n: i64 },
}

impl Prop {
    pub fn number(self) -> u8 {
        match self {
            Prop::One { .. } => 1,
            Prop::Two { .. } => 2,
            Prop::Three { .. } => 3,
            Prop::Four { .. } => 4,
            Prop::Five { .. } => 5,
        }
    }

    /// Checks the proposition's parameter constraints.
    pub fn validate(self) -> Result<()> {
        let bad = |p: i64, pp: i64, reason: &str| Err(Error::InvalidPair { p, pp, reason: reason.into() });
        match self {
            Prop::Five { n } => {
                if n < 1 {
                    return Err(Error::Precondition(format!("need n >= 1, got {n}")));
                }
                Ok(())
            }
            Prop::One { p, pp } | Prop::Two { p, pp } | Prop::Three { p, pp } | Prop::Four { p, pp } => {
                if p < 2 || pp <= p || p.gcd(&pp) != 1 {
                    return bad(p, pp, "need coprime 2 <= p < p'");
                }
                if pp >= 2 * p {
                    return bad(p, pp, "need p' < 2p");
                }
                match self {
                    Prop::One { .. } if 2 * pp > 3 * p => bad(p, pp, "need p' <= 3p/2"),
                    Prop::Two { .. } if 2 * pp <= 3 * p => bad(p, pp, "need p' > 3p/2"),
                    Prop::Two { .. } if continued_fraction(p, pp)?.d < 2 => bad(p, pp, "need d >= 2"),
                    Prop::Four { .. } if 2 * pp >= 3 * p => bad(p, pp, "need p' < 3p/2"),
                    _ => Ok(()),
                }
            }
        }
    }
}

/// Incidence matrix of an explicit partial-quotient sequence.
fn incidence_of(nu: Vec<i64>) -> Result<IncMatrix> {
    incidence(&CFData::from_nu(nu)?)
}

/// The extended incidence matrix of the primed sums, of dimension `d + 2`.
pub fn primed_incidence(prop: Prop) -> Result<Matrix> {
    let (p, pp, three) = match prop {
        Prop::Three { p, pp } => (p, pp, true),
        Prop::Four { p, pp } => (p, pp, false),
        _ => return Err(Error::Precondition("primed sums exist for props 3 and 4".into())),
    };
    let nu = continued_fraction(p, pp)?.nu;
    let inner = if three {
        incidence_of(std::iter::once(1).chain(nu).collect())?
    } else {
        let mut nu2 = nu;
        nu2[0] += 1;
        incidence_of(nu2)?
    };
    let dim = inner.dim() + 1;
    let d = |a: usize, b: usize| i64::from(a == b);
    Ok(Matrix::from_fn(dim, |i0, j0| {
        let (i, j) = (i0 + 1, j0 + 1);
        if i == 1 || j == 1 {
            if three {
                -d(i, 1) * d(j, 1) + d(i, 2) + d(i, 3) - d(j, 2) + d(j, 3)
            } else {
                d(i, 3) - d(j, 3)
            }
        } else {
            inner.inc.get(i0 - 1, j0 - 1)
        }
    }))
}

/// Cartan matrix of `A_n`.
pub fn cartan_a(n: usize) -> Matrix {
    Matrix::from_fn(n, |i, j| match i.abs_diff(j) {
        0 => 2,
        1 => -1,
        _ => 0,
    })
}

/// The lattice spec of a proposition's left-hand side; `None` when the
/// lattice is too small for the generic form (the degenerate pairs).
pub fn prop_lhs_spec(prop: Prop) -> Result<Option<FermionicSpec>> {
    prop.validate()?;
    let spec = match prop {
        Prop::One { p, pp } | Prop::Two { p, pp } => {
            let cf = continued_fraction(p, pp)?;
            if cf.d < 2 {
                return Ok(None);
            }
            let m = incidence(&cf)?;
            let dim = m.dim();
            let mut spec = FermionicSpec::standard(m.two_b.clone(), m.inc.clone(), 0);
            spec.parity[0] = ParityRule { coords: vec![0], constant: 0, l_coeff: 1 };
            spec.top_base[1] = (0, 1);
            if matches!(prop, Prop::Two { .. }) {
                spec.top_base[0] = (0, 1);
                spec.lin[1] = (0, -2);
                spec.constant = (0, 0, 1);
            }
            debug_assert_eq!(spec.dim, dim);
            spec
        }
        Prop::Three { .. } | Prop::Four { .. } => {
            let inc = primed_incidence(prop)?;
            let dim = inc.dim;
            let two_b = Matrix::identity(dim).scaled(2).sub(&inc);
            let mut spec = FermionicSpec::standard(two_b, inc, 2);
            spec.parity = std::iter::once(ParityRule::even(vec![0, 1]))
                .chain((2..dim).map(|j| ParityRule::even(vec![j])))
                .collect();
            spec
        }
        Prop::Five { n } => {
            let c = cartan_a(n as usize);
            let top_m = Matrix::identity(n as usize).scaled(2).sub(&c.scaled(2));
            let mut spec = FermionicSpec::standard(c.scaled(2), top_m, 2);
            spec.parity.clear();
            spec
        }
    };
    Ok(Some(spec))
}

/// Left-hand side through the lattice engine.
pub fn prop_lhs(prop: Prop, l: i64) -> Result<QPoly> {
    if l < 0 {
        return Err(Error::NegativeLength(l));
    }
    match prop_lhs_spec(prop)? {
        Some(spec) => lattice_sum(&spec, l),
        None => {
            let (p, pp) = match prop {
                Prop::One { p, pp } => (p, pp),
                _ => unreachable!("only prop 1 admits degenerate pairs"),
            };
            // (3,4): 1 for L even, 0 for L odd; (2,3): delta_{L,0}
            Ok(match (p, pp) {
                (3, 4) if l % 2 == 0 => QPoly::one(),
                (2, 3) if l == 0 => QPoly::one(),
                _ => QPoly::zero(),
            })
        }
    }
}

/// `sum_j [q^{j(p'(2p-p')j+2)/2} T_0(L, p'j) - q^{((2p-p')j+2r-s)(p'j+s)/2} T_0(L, p'j+s)]`.
fn t0_bosonic_rhs(p: i64, pp: i64, l: i64) -> Result<QPoly> {
    let ((r, s), _) = rs_pair(p, pp)?;
    let jmax = (l + s) / pp + 1;
    let mut acc = QPoly::zero();
    for j in -jmax..=jmax {
        acc += t_n(0, l, pp * j).shifted(2 * j * (pp * (2 * p - pp) * j + 2));
        acc -= &t_n(0, l, pp * j + s).shifted(2 * ((2 * p - pp) * j + 2 * r - s) * (pp * j + s));
    }
    Ok(acc)
}

/// `sum_j [q^{j(p'P j+1)} (L; 2p'j)_2 - q^{(p'j+s)(P j+r+s)} (L; 2p'j+2s)_2]`.
fn trinomial_bosonic_rhs(pp: i64, big_p: i64, r: i64, s: i64, l: i64) -> QPoly {
    let jmax = (l + 2 * s) / (2 * pp) + 1;
    let mut acc = QPoly::zero();
    for j in -jmax..=jmax {
        acc += trinomial_sym(l, 2 * pp * j).shifted(UNIT * j * (pp * big_p * j + 1));
        acc -= &trinomial_sym(l, 2 * pp * j + 2 * s).shifted(UNIT * (pp * j + s) * (big_p * j + r + s));
    }
    acc
}

/// The modulus-`(n+4)` trinomial sum of prop 5.
pub fn prop5_rhs(n: i64, l: i64) -> QPoly {
    let (a, b) = (n + 3, n + 4);
    let jmax = (l + 2) / b + 1;
    let mut acc = QPoly::zero();
    for j in -jmax..=jmax {
        acc += trinomial_sym(l, b * j).shifted(2 * j * (a * b * j + 2));
        acc -= &trinomial_sym(l, b * j + 2).shifted(2 * (a * j + 2) * (b * j + 2));
    }
    acc
}

/// Right-hand side through the alternating sums.
pub fn prop_rhs(prop: Prop, l: i64) -> Result<QPoly> {
    prop.validate()?;
    if l < 0 {
        return Err(Error::NegativeLength(l));
    }
    Ok(match prop {
        Prop::One { p, pp } | Prop::Two { p, pp } => t0_bosonic_rhs(p, pp, l)?,
        Prop::Three { p, pp } => {
            let ((r, s), _) = rs_pair(p, pp)?;
            trinomial_bosonic_rhs(pp, p + pp, r, s, l)
        }
        Prop::Four { p, pp } => {
            let (r, s) = prop4_rs(p, pp)?;
            trinomial_bosonic_rhs(pp, 2 * pp - p, r, s, l)
        }
        Prop::Five { n } => prop5_rhs(n, l),
    })
}

/// Smallest `(r, s)` with `1 <= r < p`, `1 <= s < p'` and `|p'(r-s) + ps| = 1`.
pub fn prop4_rs(p: i64, pp: i64) -> Result<(i64, i64)> {
    (1..p)
        .flat_map(|r| (1..pp).map(move |s| (r, s)))
        .find(|&(r, s)| (pp * (r - s) + p * s).abs() == 1)
        .ok_or_else(|| Error::InvalidPair { p, pp, reason: "no (r, s) with |p'(r-s) + ps| = 1".into() })
}

pub fn prop_check(prop: Prop, l: i64) -> Result<(QPoly, QPoly)> {
    Ok((prop_lhs(prop, l)?, prop_rhs(prop, l)?))
}

pub fn prop5_check(n: i64, l: i64) -> Result<(QPoly, QPoly)> {
    prop_check(Prop::Five { n }, l)
}

/// Composed forms of the primed sums:
/// prop 3 `sum_k q^{k^2} qbin(L, 2k) F_k(p, p')`,
/// prop 4 `sum_k q^{2k^2} qbin(L, 2k) F_k(p, p')|_{q -> 1/q}`.
pub fn composed_oracle(prop: Prop, l: i64) -> Result<QPoly> {
    prop.validate()?;
    let (p, pp, four) = match prop {
        Prop::Three { p, pp } => (p, pp, false),
        Prop::Four { p, pp } => (p, pp, true),
        _ => return Err(Error::Precondition("composed forms exist for props 3 and 4".into())),
    };
    let mut acc = QPoly::zero();
    for k in 0..=l / 2 {
        let f = fermionic(p, pp, k)?;
        let (f, w) = if four { (f.dual(), 2) } else { (f, 1) };
        acc += (&*qbin_shared(l, 2 * k) * &f).shifted(UNIT * w * k * k);
    }
    Ok(acc)
}

/// Props 1 and 2 right-hand side re-derived from `B_k(p, p')` through the
/// connection coefficients `C_{L,k}`:
/// `sum_k (-1)^{L-k} q^{C(L-k,2) - L^2/2} qbin(L, k) B_k(p, p')`.
pub fn t0_rhs_via_bosonic(p: i64, pp: i64, l: i64) -> Result<QPoly> {
    let mut acc = QPoly::zero();
    for k in 0..=l {
        let t = (&*qbin_shared(l, k) * &bosonic(p, pp, k)?).shifted(UNIT * tri(l - k) - 2 * l * l);
        acc += t.scale(&signed(l - k));
    }
    Ok(acc)
}

/// The two parity bridges of prop 5, as `(prop-5 side, bridged side)`:
/// `n = 2k-1` against `q^{L^2/2}` times prop 2 at `(k+2, 2k+3)` under
/// `q -> 1/q`; `n = 2k` against the composed form at `(k+1, k+2)`.
pub fn prop5_bridge(n: i64, l: i64) -> Result<(QPoly, QPoly)> {
    let lhs = prop_lhs(Prop::Five { n }, l)?;
    let other = if n % 2 == 1 {
        let k = (n + 1) / 2;
        prop_lhs(Prop::Two { p: k + 2, pp: 2 * k + 3 }, l)?.dual().shifted(2 * l * l)
    } else {
        let k = n / 2;
        let mut acc = QPoly::zero();
        for i in 0..=l / 2 {
            acc += (&*qbin_shared(l, 2 * i) * &fermionic(k + 1, k + 2, i)?).shifted(UNIT * i * i);
        }
        acc
    };
    Ok((lhs, other))
}

/// Lattice spec of the `L -> infinity` prop-5 sum, with `1/(q)_{m_1}`.
fn tainf_spec(n: i64) -> Result<FermionicSpec> {
    let mut spec = prop_lhs_spec(Prop::Five { n })?.expect("prop 5 is never degenerate");
    spec.free_first = true;
    spec.top_base[0] = (0, 0);
    Ok(spec)
}

/// Fermionic series of the corollary against the matching Virasoro character.
pub fn tainf_check(n: i64, order: i64) -> Result<(QSeries, QSeries)> {
    if n < 1 || order < 0 {
        return Err(Error::Precondition(format!("need n >= 1 and order >= 0, got n={n}, order={order}")));
    }
    let spec = tainf_spec(n)?;
    let cap = (2.0 * (n + 1) as f64 * (order / UNIT) as f64).sqrt().ceil() as i64 + 1;
    let lhs = lattice_series(&spec, order, cap)?;
    let rhs = if n % 2 == 1 {
        character((n + 3) / 2, n + 4, 1, 2, order)?
    } else {
        character((n + 4) / 2, n + 3, 1, 2, order)?
    };
    Ok((lhs, rhs))
}

/// `1/(q)_inf` re-exported for the limit suite.
pub fn partition_limit(order: i64) -> QSeries {
    partition_series(order)
}
