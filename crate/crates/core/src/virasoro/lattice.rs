//! Generic evaluator for fermionic sums
//! `sum_m q^{Q(m)} prod_j qbin(top_j(L, m), m_j)`.
//!
//! The per-coordinate search box is `0..=cap` with `cap = 2L + 2D` by
//! default. Nothing proves that bound; instead every sum is re-enumerated
//! over `0..=cap+4` and any admissible point in the extra shell is an error.

use crate::error::{Error, Result};
use crate::qbinom::{qbin_shared, TruncatedBinomials};
use crate::qcore::{inverse_q_pochhammer, QPoly, QSeries};

use super::cf::Matrix;

/// `sum_{j in coords} m_j = constant + l_coeff * L (mod 2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityRule {
    pub coords: Vec<usize>,
    pub constant: i64,
    pub l_coeff: i64,
}

impl ParityRule {
    pub fn even(coords: Vec<usize>) -> Self {
        Self { coords, constant: 0, l_coeff: 0 }
    }
}

/// A lattice sum, with every exponent in quarter units and every binomial top
/// stored doubled so that all coefficients stay integral.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FermionicSpec {
    pub dim: usize,
    /// Exponent `m^T quad m`.
    pub quad: Matrix,
    /// Exponent `sum_j (lin[j].0 + L lin[j].1) m_j`.
    pub lin: Vec<(i64, i64)>,
    /// Exponent `c0 + c1 L + c2 L^2`.
    pub constant: (i64, i64, i64),
    /// Doubled top `top_base[j].0 + L top_base[j].1 + (top_m m)_j`.
    pub top_base: Vec<(i64, i64)>,
    pub top_m: Matrix,
    pub parity: Vec<ParityRule>,
    /// `L -> infinity` form: the first binomial becomes `1/(q)_{m_1}`.
    pub free_first: bool,
}

impl FermionicSpec {
    /// Quadratic form, doubled tops `2 L e_1 + top_m m`, all `m_j` even.
    pub fn standard(quad: Matrix, top_m: Matrix, l_top: i64) -> Self {
        let dim = quad.dim;
        let mut top_base = vec![(0, 0); dim];
        if dim > 0 {
            top_base[0] = (0, l_top);
        }
        Self {
            dim,
            quad,
            lin: vec![(0, 0); dim],
            constant: (0, 0, 0),
            top_base,
            top_m,
            parity: (0..dim).map(|j| ParityRule::even(vec![j])).collect(),
            free_first: false,
        }
    }

    fn check(&self) -> Result<()> {
        let d = self.dim;
        let ok = self.quad.dim == d
            && self.top_m.dim == d
            && self.lin.len() == d
            && self.top_base.len() == d
            && self.parity.iter().all(|r| !r.coords.is_empty() && r.coords.iter().all(|&c| c < d));
        if ok {
            Ok(())
        } else {
            Err(Error::Precondition("malformed fermionic spec".into()))
        }
    }

    fn exponent(&self, l: i64, m: &[i64]) -> i64 {
        let lin: i64 = self.lin.iter().zip(m).map(|(&(a, b), &x)| (a + b * l) * x).sum();
        let (c0, c1, c2) = self.constant;
        self.quad.quad(m) + lin + c0 + c1 * l + c2 * l * l
    }

    pub fn default_cap(&self, l: i64) -> i64 {
        2 * l + 2 * self.dim as i64
    }
}

/// One admissible point: exponent and the (undoubled) binomial tops.
struct Point<'a> {
    m: &'a [i64],
    exp: i64,
    tops: Vec<i64>,
}

/// Enumerates every point with all constraints satisfied inside `0..=hi`.
struct Enumerator<'a> {
    spec: &'a FermionicSpec,
    l: i64,
    hi: i64,
    /// `g_j = b_j + sum_k a_jk m_k >= 0`, i.e. doubled top minus `2 m_j`.
    rows: Vec<(i64, Vec<i64>)>,
    /// Rule indices whose parity is decided when coordinate `j` is chosen.
    closes: Vec<Vec<usize>>,
}

impl<'a> Enumerator<'a> {
    fn new(spec: &'a FermionicSpec, l: i64, hi: i64) -> Self {
        let d = spec.dim;
        let rows = (0..d)
            .filter(|&j| !(spec.free_first && j == 0))
            .map(|j| {
                let (b0, b1) = spec.top_base[j];
                let a: Vec<i64> = (0..d)
                    .map(|k| spec.top_m.get(j, k) - if k == j { 2 } else { 0 })
                    .collect();
                (b0 + b1 * l, a)
            })
            .collect();
        let mut closes = vec![Vec::new(); d];
        for (i, r) in spec.parity.iter().enumerate() {
            let last = *r.coords.iter().max().expect("non-empty rule");
            closes[last].push(i);
        }
        Self { spec, l, hi, rows, closes }
    }

    /// Optimistic bound on each row with coordinates `< depth` fixed.
    fn feasible(&self, m: &[i64], depth: usize) -> bool {
        self.rows.iter().all(|(b, a)| {
            let fixed: i64 = a[..depth].iter().zip(&m[..depth]).map(|(x, y)| x * y).sum();
            let free: i64 = a[depth..].iter().map(|&x| x.max(0) * self.hi).sum();
            b + fixed + free >= 0
        })
    }

    fn parity_start(&self, m: &[i64], j: usize) -> (i64, i64) {
        let mut forced: Option<i64> = None;
        for &ri in &self.closes[j] {
            let r = &self.spec.parity[ri];
            let others: i64 = r.coords.iter().filter(|&&c| c != j).map(|&c| m[c]).sum();
            let mult = r.coords.iter().filter(|&&c| c == j).count() as i64;
            if mult % 2 == 0 {
                // m_j drops out mod 2; the rule is decided by the rest
                if (others - r.constant - r.l_coeff * self.l).rem_euclid(2) != 0 {
                    return (1, 0);
                }
                continue;
            }
            let want = (r.constant + r.l_coeff * self.l - others).rem_euclid(2);
            match forced {
                Some(f) if f != want => return (1, 0),
                _ => forced = Some(want),
            }
        }
        match forced {
            Some(f) => (f, 2),
            None => (0, 1),
        }
    }

    fn run(&self, visit: &mut dyn FnMut(Point<'_>)) {
        let mut m = vec![0i64; self.spec.dim];
        self.dfs(0, &mut m, visit);
    }

    fn dfs(&self, j: usize, m: &mut Vec<i64>, visit: &mut dyn FnMut(Point<'_>)) {
        let d = self.spec.dim;
        if j == d {
            let tm = self.spec.top_m.mul_vec(m);
            let tops2: Vec<i64> = (0..d)
                .map(|k| {
                    let (b0, b1) = self.spec.top_base[k];
                    b0 + b1 * self.l + tm[k]
                })
                .collect();
            let mut tops = Vec::with_capacity(d);
            for (k, t2) in tops2.into_iter().enumerate() {
                if self.spec.free_first && k == 0 {
                    tops.push(0);
                    continue;
                }
                if t2 % 2 != 0 {
                    // half-integral top: the binomial is not defined; the
                    // spec's parity rules are supposed to exclude this
                    return;
                }
                tops.push(t2 / 2);
            }
            let exp = self.spec.exponent(self.l, m);
            visit(Point { m, exp, tops });
            return;
        }
        let (start, step) = self.parity_start(m, j);
        if step == 0 {
            return;
        }
        let mut v = start;
        while v <= self.hi {
            m[j] = v;
            if self.feasible(m, j + 1) {
                self.dfs(j + 1, m, visit);
            } else if self.rows.iter().any(|(b, a)| {
                a[j] < 0 && {
                    let fixed: i64 = a[..=j].iter().zip(&m[..=j]).map(|(x, y)| x * y).sum();
                    let free: i64 = a[j + 1..].iter().map(|&x| x.max(0) * self.hi).sum();
                    b + fixed + free < 0
                }
            }) {
                // a row falling in m_j stays infeasible for larger m_j
                break;
            }
            v += step;
        }
        m[j] = 0;
    }
}

fn shell_error(cap: i64, m: &[i64]) -> Error {
    Error::NonConvergent { cap, extra: format!("admissible point m = {m:?}") }
}

/// Exact lattice sum at `L`, with the default cap.
pub fn lattice_sum(spec: &FermionicSpec, l: i64) -> Result<QPoly> {
    lattice_sum_with_cap(spec, l, spec.default_cap(l))
}

/// Exact lattice sum over the box `0..=cap`, verified against `0..=cap+4`.
pub fn lattice_sum_with_cap(spec: &FermionicSpec, l: i64, cap: i64) -> Result<QPoly> {
    spec.check()?;
    if spec.free_first {
        return Err(Error::Precondition("L -> infinity spec needs lattice_series".into()));
    }
    if l < 0 {
        return Err(Error::NegativeLength(l));
    }
    let en = Enumerator::new(spec, l, cap + 4);
    let mut acc = QPoly::zero();
    let mut outside: Option<Vec<i64>> = None;
    en.run(&mut |pt| {
        if pt.m.iter().any(|&x| x > cap) {
            outside.get_or_insert_with(|| pt.m.to_vec());
            return;
        }
        let mut term = QPoly::q_pow(pt.exp);
        for (k, &t) in pt.tops.iter().enumerate() {
            term = &term * &*qbin_shared(t, pt.m[k]);
        }
        acc += term;
    });
    match outside {
        Some(m) => Err(shell_error(cap, &m)),
        None => Ok(acc),
    }
}

/// Truncated `L -> infinity` lattice sum (`free_first` specs). Points with
/// exponent above `order` are dropped; the quadratic form must be positive
/// definite for the box `0..=cap` to be exhaustive, which the shell check
/// confirms.
pub fn lattice_series(spec: &FermionicSpec, order: i64, cap: i64) -> Result<QSeries> {
    spec.check()?;
    if !spec.free_first {
        return Err(Error::Precondition("lattice_series needs a free_first spec".into()));
    }
    let en = Enumerator::new(spec, 0, cap + 4);
    let max_top = (0..spec.dim)
        .map(|j| spec.top_base[j].0 + spec.top_m.row(j).iter().map(|x| x.abs()).sum::<i64>() * (cap + 4))
        .max()
        .unwrap_or(0)
        .max(0);
    let table = TruncatedBinomials::new(max_top / 2 + 1, order);
    let mut acc = QSeries::zero(order);
    let mut outside: Option<Vec<i64>> = None;
    en.run(&mut |pt| {
        if pt.exp > order {
            return;
        }
        if pt.m.iter().any(|&x| x > cap) {
            outside.get_or_insert_with(|| pt.m.to_vec());
            return;
        }
        let mut term = inverse_q_pochhammer(pt.m[0], order).shift(pt.exp);
        for k in 1..spec.dim {
            term = term.mul(&table.get(pt.tops[k], pt.m[k]));
        }
        acc = acc.add(&term);
    });
    match outside {
        Some(m) => Err(shell_error(cap, &m)),
        None => Ok(acc),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_lattice_is_one() {
        let spec = FermionicSpec::standard(Matrix::zeros(0), Matrix::zeros(0), 2);
        for l in 0..4 {
            assert_eq!(lattice_sum(&spec, l).unwrap(), QPoly::one());
        }
    }

    #[test]
    fn one_dimensional_example() {
        // q^{m^2/2} qbin(L, m), m even
        let spec = FermionicSpec::standard(Matrix::from_fn(1, |_, _| 2), Matrix::zeros(1), 2);
        assert_eq!(lattice_sum(&spec, 2).unwrap(), QPoly::from_coeffs(&[1, 0, 1]));
        assert_eq!(lattice_sum(&spec, 0).unwrap(), QPoly::one());
    }

    #[test]
    fn unbounded_support_is_reported() {
        // top grows with m: qbin(L + m, m) never vanishes
        let spec = FermionicSpec::standard(Matrix::from_fn(1, |_, _| 2), Matrix::from_fn(1, |_, _| 2), 2);
        assert!(matches!(lattice_sum(&spec, 1), Err(Error::NonConvergent { .. })));
    }

    #[test]
    fn free_first_series() {
        // sum_m q^{m^2}/(q)_m: the first Rogers-Ramanujan series
        let mut spec = FermionicSpec::standard(Matrix::from_fn(1, |_, _| 4), Matrix::zeros(1), 0);
        spec.parity.clear();
        spec.free_first = true;
        let s = lattice_series(&spec, 40, 4).unwrap();
        assert_eq!(
            s.into_poly(),
            QPoly::from_coeffs(&[1, 1, 1, 1, 2, 2, 3, 3, 4, 5, 6])
        );
    }
}
