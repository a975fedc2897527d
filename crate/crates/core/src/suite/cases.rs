//! Case lists for every suite. Each case owns its parameters and recomputes
//! both sides of its identity when run.

use num_bigint::BigInt;

use super::{CaseSpec, Params, SuiteName, SuiteOptions, Verdict};
use crate::bailey::{
    b_from_a, bailey_lemma_check, beta_from_alpha, pair_transform, random_sequence, ratio_seq_equal,
    seeded_rng, t0_t1_relation_check, tbl1_telescoping_sides, trinomial_bailey_lemma_check, unit_sequence,
    AnyPair, QMonomial, Transform,
};
use crate::connect::{
    even_arg_expansion, even_arg_target, expand_binomial_in_trinomials, expand_trinomial_in_binomials,
    orthogonality_check, t0_t1_bridge, t0_t1_bridge_via_connection, EvenArg, Family, TKind,
};
use crate::error::{Error, Result};
use crate::identities::{
    bmo_check, bmo_companion_check, composed_oracle, gg_check, jtp_check, prop5_bridge, prop_check, prop_lhs,
    prop_rhs, rr_check, t0_rhs_via_bosonic, tainf_check, Prop,
};
use crate::qbinom::{
    appendix_identity, newton_at_minus_one, newton_product_coefficients, poch, qbin, tri, AppendixId,
    AppendixParams, TruncatedBinomials,
};
use crate::qcore::{inverse_q_pochhammer, truncate, FactoredRatio, QPoly, QSeries, UNIT};
use crate::qtrinom::{
    stabilize, t0_limit, t_n, t_n_series, t_n_via_dual, trinomial, trinomial_limit, trinomial_row_at_one,
    trinomial_series, Parity,
};
use crate::virasoro::{
    bosonic, bosonic_with, character, continued_fraction, fermionic, fermionic_spec, incidence, lattice_sum,
    lattice_sum_with_cap, rs_pair, Matrix,
};

macro_rules! params {
    ($($k:literal => $v:expr),* $(,)?) => {{
        #[allow(unused_mut)]
        let mut m = Params::new();
        $(m.insert($k.to_string(), serde_json::json!($v));)*
        m
    }};
}

/// Anything whose mismatch can be rendered as `lhs - rhs`.
trait Diff: PartialEq {
    fn diff(&self, other: &Self) -> String;
}

impl Diff for QPoly {
    fn diff(&self, other: &Self) -> String {
        (self - other).to_string()
    }
}

impl Diff for QSeries {
    fn diff(&self, other: &Self) -> String {
        self.sub(other).to_string()
    }
}

impl Diff for FactoredRatio {
    fn diff(&self, other: &Self) -> String {
        (self - other).reduced().to_string()
    }
}

/// Returns a failing verdict from the enclosing case unless both sides agree.
macro_rules! ensure_eq {
    ($l:expr, $r:expr, $($ctx:tt)+) => {{
        let (l, r) = (&$l, &$r);
        if l != r {
            return Ok(Some(format!("{}: lhs - rhs = {}", format!($($ctx)+), Diff::diff(l, r))));
        }
    }};
}

macro_rules! ensure {
    ($cond:expr, $($ctx:tt)+) => {{
        if !$cond {
            return Ok(Some(format!($($ctx)+)));
        }
    }};
}

struct Builder<'a> {
    prefix: &'static str,
    opts: &'a SuiteOptions,
    out: Vec<CaseSpec>,
}

impl<'a> Builder<'a> {
    fn new(prefix: &'static str, opts: &'a SuiteOptions) -> Self {
        Self { prefix, opts, out: Vec::new() }
    }

    fn case(&mut self, id: String, params: Params, run: impl Fn() -> Verdict + Send + Sync + 'static) {
        self.out.push(CaseSpec::new(format!("{}/{id}", self.prefix), params, run));
    }

    /// `L` range bound: `--lmax` or the suite default.
    fn lmax(&self, default: i64) -> i64 {
        self.opts.lmax.unwrap_or(default)
    }

    /// Series order in quarter units: `--order` or the default, in powers of `q`.
    fn order(&self, default: i64) -> i64 {
        UNIT * self.opts.order.unwrap_or(default)
    }
}

pub fn suite_cases(name: SuiteName, opts: &SuiteOptions) -> Result<Vec<CaseSpec>> {
    let mut out = Vec::new();
    let subs: Vec<SuiteName> = match name {
        SuiteName::All => SuiteName::ALL
            .into_iter()
            .filter(|s| !matches!(s, SuiteName::All | SuiteName::Binom))
            .collect(),
        s => vec![s],
    };
    for s in subs {
        let mut b = Builder::new(s.as_str(), opts);
        match s {
            SuiteName::Binom => binom(&mut b, ""),
            SuiteName::Appendix => {
                binom(&mut b, "binom/");
                appendix(&mut b);
            }
            SuiteName::Trinom => trinom(&mut b),
            SuiteName::Connect => connect(&mut b),
            SuiteName::Virasoro => virasoro(&mut b)?,
            SuiteName::Section3 => section3(&mut b),
            SuiteName::Props => props(&mut b, name == SuiteName::All)?,
            SuiteName::Bailey => bailey(&mut b),
            SuiteName::Limits => limits(&mut b),
            SuiteName::All => unreachable!(),
        }
        out.extend(b.out);
    }
    Ok(out)
}

// ---------------------------------------------------------------- binom

/// Binomial checks; `group` prefixes the ids when nested in another suite.
fn binom(b: &mut Builder, group: &'static str) {
    for l in 0..=b.lmax(30) {
        b.case(format!("{group}recurrence/L={l:02}"), params! {"L" => l}, move || {
            for a in 0..=l {
                if l + a == 0 {
                    continue;
                }
                let rhs = qbin(l - 1, a - 1) + qbin(l - 1, a).shifted(UNIT * a);
                ensure_eq!(qbin(l, a), rhs, "a={a}");
            }
            Ok(None)
        });
        b.case(format!("{group}product/L={l:02}"), params! {"L" => l}, move || {
            let full = poch(l)?;
            for a in 0..=l {
                ensure_eq!(&(&qbin(l, a) * &poch(a)?) * &poch(l - a)?, full, "(q)_a (q)_(L-a) [L,a] at a={a}");
            }
            Ok(None)
        });
        b.case(format!("{group}symmetry/L={l:02}"), params! {"L" => l}, move || {
            for a in 0..=l {
                ensure_eq!(qbin(l, a), qbin(l, l - a), "a={a}");
            }
            Ok(None)
        });
        b.case(format!("{group}duality/L={l:02}"), params! {"L" => l}, move || {
            for a in 0..=l {
                ensure_eq!(qbin(l, a).dual(), qbin(l, a).shifted(-UNIT * a * (l - a)), "a={a}");
            }
            Ok(None)
        });
        b.case(format!("{group}newton/L={l:02}"), params! {"L" => l}, move || {
            let delta = if l == 0 { QPoly::one() } else { QPoly::zero() };
            ensure_eq!(newton_at_minus_one(l), delta, "x=-1");
            for (a, c) in newton_product_coefficients(l).into_iter().enumerate() {
                let a = a as i64;
                ensure_eq!(c, qbin(l, a).shifted(UNIT * tri(a)), "[x^{a}]");
            }
            Ok(None)
        });
    }
}

fn appendix(b: &mut Builder) {
    // the box |a|, |b|, |c| <= 8 intersected with each identity's domain
    for id in AppendixId::ALL {
        for l in 0..=b.lmax(8) {
            for a in 0..=8 {
                let name = id.name();
                b.case(
                    format!("box/{name}/L={l:02}/a={a:02}"),
                    params! {"id" => name, "L" => l, "a" => a, "b" => "-8..=8", "c" => if id == AppendixId::Saalschutz { "0..=8" } else { "-" }},
                    move || {
                        let cs = if id == AppendixId::Saalschutz { 0..=8 } else { 0..=0 };
                        for bb in -8..=8 {
                            for c in cs.clone() {
                                let (lhs, rhs) = appendix_identity(id, AppendixParams { l, a, b: bb, c })?;
                                ensure_eq!(lhs, rhs, "b={bb} c={c}");
                            }
                        }
                        Ok(None)
                    },
                );
            }
        }
    }
}

// ---------------------------------------------------------------- trinom

/// Row `L` of the ordinary trinomial triangle, coefficients of `(1 + x + x^2)^L`.
fn trinomial_triangle(l: i64) -> Vec<BigInt> {
    let mut row = vec![BigInt::from(1)];
    for _ in 0..l {
        let mut next = vec![BigInt::from(0); row.len() + 2];
        for (i, c) in row.iter().enumerate() {
            for k in 0..3 {
                next[i + k] += c;
            }
        }
        row = next;
    }
    row
}

fn trinom(b: &mut Builder) {
    let lmax = b.lmax(16);
    for l in 0..=lmax {
        b.case(format!("qtT/L={l:02}"), params! {"L" => l, "n" => [0, 1]}, move || {
            for n in 0..=1 {
                for a in -l..=l {
                    ensure_eq!(t_n(n, l, a), t_n_via_dual(n, l, a), "n={n} a={a}");
                }
            }
            Ok(None)
        });
        b.case(format!("symmetry/L={l:02}"), params! {"L" => l, "b" => "-3..=3"}, move || {
            for a in -l..=l {
                for n in 0..=1 {
                    ensure_eq!(t_n(n, l, a), t_n(n, l, -a), "T_{n} a={a}");
                }
                for bb in -3..=3 {
                    let rhs = trinomial(l, bb - 2 * a, -a).shifted(UNIT * a * (a - bb));
                    ensure_eq!(trinomial(l, bb, a), rhs, "round b={bb} a={a}");
                }
            }
            Ok(None)
        });
        b.case(format!("support/L={l:02}"), params! {"L" => l}, move || {
            for a in [l + 1, l + 2, -l - 1, -l - 2] {
                for n in 0..=1 {
                    ensure!(t_n(n, l, a).is_zero(), "T_{n}({l}, {a}) nonzero");
                }
                ensure!(trinomial(l, 0, a).is_zero(), "({l}, 0; {a}) nonzero");
            }
            Ok(None)
        });
    }
    for l in 0..=lmax.min(6) {
        b.case(format!("pascal/L={l:02}"), params! {"L" => l, "b" => "-2..=2"}, move || {
            let want = trinomial_triangle(l);
            for bb in -2..=2 {
                ensure!(trinomial_row_at_one(l, bb) == want, "row {l} at q=1 differs for b={bb}");
            }
            Ok(None)
        });
    }
}

// ---------------------------------------------------------------- connect

fn connect(b: &mut Builder) {
    let lmax = b.lmax(20);
    for family in [Family::C, Family::D] {
        let fname = match family {
            Family::C => "C",
            Family::D => "D",
        };
        for l in 0..=lmax {
            for a in -l..=l {
                b.case(
                    format!("ortho/{fname}/L={l:02}/a={a:+03}"),
                    params! {"family" => fname, "L" => l, "a" => a, "M" => format!("0..={l}")},
                    move || {
                        for m in 0..=l {
                            let want = if m == l { QPoly::one() } else { QPoly::zero() };
                            ensure_eq!(orthogonality_check(family, l, m, a)?, want, "M={m}");
                        }
                        Ok(None)
                    },
                );
            }
        }
    }
    for kind in [TKind::T0, TKind::T1] {
        let n = kind.n();
        for l in 0..=lmax {
            b.case(format!("expand/T{n}-in-binomials/L={l:02}"), params! {"n" => n, "L" => l}, move || {
                for a in -l..=l {
                    ensure_eq!(expand_trinomial_in_binomials(kind, l, a)?, t_n(n, l, a), "a={a}");
                }
                Ok(None)
            });
            b.case(format!("expand/binomials-in-T{n}/L={l:02}"), params! {"n" => n, "L" => l}, move || {
                for a in -l..=l {
                    ensure_eq!(expand_binomial_in_trinomials(kind, l, a)?, qbin(2 * l, l - a), "a={a}");
                }
                Ok(None)
            });
        }
    }
    for l in 0..=lmax {
        b.case(format!("even-arg/L={l:02}"), params! {"L" => l, "n" => [0, 1], "b" => "-2..=2"}, move || {
            for a in -(l / 2 + 1)..=(l / 2 + 1) {
                for n in 0..=1 {
                    let w = EvenArg::Tn { n, l, a };
                    ensure_eq!(even_arg_expansion(w), even_arg_target(w), "T_{n} a={a}");
                }
                for bb in -2..=2 {
                    let w = EvenArg::Trin { l, b: bb, a };
                    ensure_eq!(even_arg_expansion(w), even_arg_target(w), "round b={bb} a={a}");
                }
            }
            Ok(None)
        });
    }
    for l in 1..=b.lmax(16) {
        b.case(format!("t0-t1-bridge/L={l:02}"), params! {"L" => l}, move || {
            for a in -l..=l {
                let (lhs, rhs) = t0_t1_bridge(l, a);
                ensure_eq!(lhs, rhs, "a={a}");
            }
            Ok(None)
        });
    }
    for l in 1..=b.lmax(10) {
        b.case(format!("t0-t1-bridge-via-connection/L={l:02}"), params! {"L" => l}, move || {
            for a in -l..=l {
                ensure_eq!(t0_t1_bridge_via_connection(l, a)?, QPoly::zero(), "a={a}");
            }
            Ok(None)
        });
    }
}

// ---------------------------------------------------------------- virasoro

const BF_PAIRS: [(i64, i64); 7] = [(3, 4), (4, 5), (5, 6), (5, 7), (5, 8), (7, 10), (7, 12)];

fn pair_id(p: i64, pp: i64) -> String {
    format!("p={p:02}/pp={pp:02}")
}

fn virasoro(b: &mut Builder) -> Result<()> {
    let pairs: Vec<(i64, i64)> = match b.opts.pair {
        Some(pair) => vec![pair],
        None => BF_PAIRS.to_vec(),
    };
    let lmax = b.lmax(14);
    for &(p, pp) in &pairs {
        let pid = pair_id(p, pp);
        for l in 0..=lmax {
            b.case(format!("F=B/{pid}/L={l:02}"), params! {"p" => p, "pp" => pp, "L" => l}, move || {
                ensure_eq!(fermionic(p, pp, l)?, bosonic(p, pp, l)?, "F = B");
                Ok(None)
            });
        }
        // duality needs p' < 2p and a genuine pair (p' - p, p') on the other side
        if pp < 2 * p && pp - p >= 2 {
            let (dp, dpp) = (pp - p, pp);
            for l in 0..=lmax {
                b.case(
                    format!("duality/{pid}/L={l:02}"),
                    params! {"p" => p, "pp" => pp, "L" => l},
                    move || {
                        let lhs = fermionic(p, pp, l)?.dual();
                        ensure_eq!(lhs, bosonic(dp, dpp, l)?.shifted(-UNIT * l * l), "dual F(p,p') vs q^(-L^2) B(p'-p,p')");
                        ensure_eq!(fermionic(dp, dpp, l)?, bosonic(dp, dpp, l)?, "F = B at (p'-p, p')");
                        Ok(None)
                    },
                );
            }
        }
        b.case(format!("swap/{pid}"), params! {"p" => p, "pp" => pp, "L" => format!("0..={lmax}")}, move || {
            let (x, y) = rs_pair(p, pp)?;
            for l in 0..=lmax {
                ensure_eq!(bosonic_with(p, pp, x.0, x.1, l)?, bosonic_with(p, pp, y.0, y.1, l)?, "L={l}");
            }
            Ok(None)
        });
        if pp < 2 * p {
            b.case(format!("structure/{pid}"), params! {"p" => p, "pp" => pp}, move || structure_check(p, pp));
            for l in 0..=lmax.min(6) {
                b.case(format!("cap/{pid}/L={l:02}"), params! {"p" => p, "pp" => pp, "L" => l}, move || {
                    if let Some(spec) = fermionic_spec(p, pp)? {
                        let wide = lattice_sum_with_cap(&spec, l, spec.default_cap(l) + 4)?;
                        ensure_eq!(wide, lattice_sum(&spec, l)?, "enlarged cap");
                    }
                    Ok(None)
                });
            }
        }
    }
    Ok(())
}

/// Continued-fraction reconstruction, `t_m`, `d`, and the path/tadpole shapes.
fn structure_check(p: i64, pp: i64) -> Verdict {
    let cf = continued_fraction(p, pp)?;
    ensure!(cf.value() == (p, pp - p), "continued fraction evaluates to {:?}", cf.value());
    ensure!(cf.d == cf.nu.iter().sum::<i64>(), "d != sum of nu");
    for (m, &t) in cf.t.iter().enumerate() {
        ensure!(t == cf.nu[..=m].iter().sum::<i64>(), "t_{} mismatch", m + 1);
    }
    if cf.d == 0 {
        return Ok(None);
    }
    let inc = incidence(&cf)?;
    let d = cf.d as usize;
    let two_b = Matrix::identity(d).scaled(2).sub(&inc.inc);
    ensure!(inc.two_b == two_b, "2B != 2I - incidence");
    let path = Matrix::from_fn(d, |i, j| i64::from(i.abs_diff(j) == 1));
    if pp == p + 1 {
        ensure!(inc.inc == path, "incidence of (p, p+1) is not a path: {:?}", inc.inc.rows());
    }
    if pp == p + 2 && p % 2 == 1 {
        let mut tadpole = path;
        tadpole.set(d - 1, d - 1, 1);
        ensure!(inc.inc == tadpole, "incidence of (2k-1, 2k+1) is not a tadpole: {:?}", inc.inc.rows());
    }
    Ok(None)
}

// ---------------------------------------------------------------- section 3

fn section3(b: &mut Builder) {
    for l in 0..=b.lmax(30) {
        b.case(format!("rr/L={l:02}"), params! {"L" => l}, move || {
            let (lhs, bin, trin) = rr_check(l)?;
            ensure_eq!(lhs, bin, "sum side vs binomial side");
            ensure_eq!(bin, trin, "binomial side vs trinomial side");
            Ok(None)
        });
    }
    for l in 0..=b.lmax(12) {
        b.case(format!("bmo/L={l:02}"), params! {"L" => l}, move || {
            let (lhs, rhs) = bmo_check(l)?;
            ensure_eq!(lhs, rhs, "bmo");
            Ok(None)
        });
        b.case(format!("bmo-companion/L={l:02}"), params! {"L" => l}, move || {
            let (lhs, rhs) = bmo_companion_check(l)?;
            ensure_eq!(lhs, rhs, "companion");
            Ok(None)
        });
    }
    let gg = b.order(80);
    b.case("gg".into(), params! {"order" => gg / UNIT}, move || {
        let (lhs, rhs) = gg_check(gg)?;
        ensure_eq!(lhs, rhs, "order {}", gg / UNIT);
        Ok(None)
    });
    let jtp = b.order(40);
    b.case("jtp".into(), params! {"order" => jtp / UNIT}, move || {
        let (lhs, rhs) = jtp_check(jtp)?;
        ensure_eq!(lhs, rhs, "order {}", jtp / UNIT);
        Ok(None)
    });
}

// ---------------------------------------------------------------- props

const PAIR_PROPS: [Prop; 14] = [
    Prop::One { p: 4, pp: 5 },
    Prop::One { p: 5, pp: 7 },
    Prop::One { p: 7, pp: 10 },
    Prop::One { p: 3, pp: 4 },
    Prop::One { p: 2, pp: 3 },
    Prop::Two { p: 4, pp: 7 },
    Prop::Two { p: 5, pp: 8 },
    Prop::Two { p: 7, pp: 12 },
    Prop::Three { p: 3, pp: 4 },
    Prop::Three { p: 4, pp: 5 },
    Prop::Three { p: 5, pp: 7 },
    Prop::Four { p: 5, pp: 7 },
    Prop::Four { p: 7, pp: 10 },
    Prop::Four { p: 7, pp: 9 },
];

fn prop_cases(b: &mut Builder, prop: Prop, lmax: i64) {
    let (key, mut params) = match prop {
        Prop::One { p, pp } | Prop::Two { p, pp } | Prop::Three { p, pp } | Prop::Four { p, pp } => {
            (pair_id(p, pp), params! {"p" => p, "pp" => pp})
        }
        Prop::Five { n } => (format!("n={n}"), params! {"n" => n}),
    };
    params.insert("prop".into(), serde_json::json!(prop.number()));
    let num = prop.number();
    for l in 0..=lmax {
        let mut ps = params.clone();
        ps.insert("L".into(), serde_json::json!(l));
        b.case(format!("prop{num}/{key}/L={l:02}"), ps.clone(), move || {
            let (lhs, rhs) = prop_check(prop, l)?;
            ensure_eq!(lhs, rhs, "fermionic vs bosonic side");
            Ok(None)
        });
        match prop {
            Prop::Three { .. } | Prop::Four { .. } => {
                b.case(format!("prop{num}-composed/{key}/L={l:02}"), ps, move || {
                    ensure_eq!(prop_lhs(prop, l)?, composed_oracle(prop, l)?, "primed sum vs composed form");
                    Ok(None)
                });
            }
            Prop::One { p, pp } | Prop::Two { p, pp } => {
                b.case(format!("prop{num}-via-bosonic/{key}/L={l:02}"), ps, move || {
                    ensure_eq!(prop_rhs(prop, l)?, t0_rhs_via_bosonic(p, pp, l)?, "T_0 sum vs C-transformed B");
                    Ok(None)
                });
            }
            Prop::Five { .. } => {}
        }
    }
}

fn props(b: &mut Builder, in_all: bool) -> Result<()> {
    let lmax = b.lmax(12);
    let (pair, n) = (b.opts.pair, b.opts.n);
    let unfiltered = pair.is_none() && n.is_none();
    if let Some((p, pp)) = pair {
        let applicable: Vec<Prop> = [
            Prop::One { p, pp },
            Prop::Two { p, pp },
            Prop::Three { p, pp },
            Prop::Four { p, pp },
        ]
        .into_iter()
        .filter(|pr| pr.validate().is_ok())
        .collect();
        if applicable.is_empty() && !in_all {
            return Err(Error::InvalidPair { p, pp, reason: "no proposition applies to this pair".into() });
        }
        for prop in applicable {
            prop_cases(b, prop, lmax);
        }
    }
    if unfiltered {
        for prop in PAIR_PROPS {
            prop_cases(b, prop, lmax);
        }
    }
    let ns: Vec<i64> = match n {
        Some(n) => vec![n],
        None if unfiltered => (1..=5).collect(),
        None => Vec::new(),
    };
    for &n in &ns {
        prop_cases(b, Prop::Five { n }, lmax);
    }
    if ns.contains(&1) {
        for l in 0..=b.lmax(20) {
            b.case(format!("prop5-rr/L={l:02}"), params! {"n" => 1, "L" => l}, move || {
                let (sum, bin, trin) = rr_check(l)?;
                let lhs = prop_lhs(Prop::Five { n: 1 }, l)?;
                ensure_eq!(lhs, trin, "prop 5 (n=1) vs trinomial side");
                ensure_eq!(lhs, sum, "prop 5 (n=1) vs sum side");
                ensure_eq!(lhs, bin, "prop 5 (n=1) vs binomial side");
                Ok(None)
            });
        }
    }
    let bridges: Vec<i64> = match n {
        Some(n) => vec![n],
        None if unfiltered => (3..=6).collect(),
        None => Vec::new(),
    };
    for n in bridges.into_iter().filter(|n| (3..=6).contains(n)) {
        for l in 0..=b.lmax(8) {
            b.case(format!("prop5-bridge/n={n}/L={l:02}"), params! {"n" => n, "L" => l}, move || {
                let (lhs, rhs) = prop5_bridge(n, l)?;
                ensure_eq!(lhs, rhs, "parity bridge");
                Ok(None)
            });
        }
    }
    Ok(())
}

// ---------------------------------------------------------------- bailey

fn bailey_rho_specs() -> [(QMonomial, QMonomial, QMonomial); 5] {
    let m = QMonomial::new;
    [
        (m(1, 0), m(-1, 0), m(-1, 2)),
        (m(1, UNIT), m(1, UNIT), m(-1, UNIT)),
        (m(1, 0), m(1, 2), m(-1, 2)),
        (m(1, UNIT), m(-1, 2), m(1, 6)),
        (m(-1, 0), m(1, 2 * UNIT), m(-1, 0)),
    ]
}

/// Number of seeded random pairs pushed through the transforms.
const RANDOM_PAIRS: u64 = 24;

fn bailey(b: &mut Builder) {
    let mmax = b.lmax(6);
    let seed = b.opts.seed;

    for (i, (a, r1, r2)) in bailey_rho_specs().into_iter().enumerate() {
        let s = seed.wrapping_add(1000 + i as u64);
        b.case(
            format!("bailey-lemma/spec={i}"),
            params! {"a" => a.to_string(), "rho1" => r1.to_string(), "rho2" => r2.to_string(), "M" => mmax, "seed" => s},
            move || {
                let unit = beta_from_alpha(&unit_sequence(mmax), a, mmax)?;
                let alpha = random_sequence(&mut seeded_rng(s), (mmax + 1) as usize, 4);
                let random = beta_from_alpha(&alpha, a, mmax)?;
                for (what, pair) in [("unit", &unit), ("random", &random)] {
                    ensure!(pair.verify()?, "{what} pair fails its defining relation");
                    for m in 0..=mmax {
                        ensure!(bailey_lemma_check(pair, r1, r2, m)?, "{what} pair, M={m}");
                    }
                }
                Ok(None)
            },
        );
    }

    for n in 0..=1 {
        for input in ["unit", "random", "q^(r^2/2)"] {
            let s = seed.wrapping_add(2000 + n as u64);
            b.case(
                format!("trinomial-bailey-lemma/n={n}/{input}"),
                params! {"n" => n, "input" => input, "M" => mmax, "seed" => s},
                move || {
                    let a = match input {
                        "unit" => unit_sequence(mmax),
                        "random" => random_sequence(&mut seeded_rng(s), (mmax + 1) as usize, 4),
                        _ => (0..=mmax).map(|r| FactoredRatio::from_poly(QPoly::q_pow(2 * r * r))).collect(),
                    };
                    let pair = b_from_a(&a, n, mmax)?;
                    ensure!(pair.verify()?, "pair fails its defining relation");
                    for m in 0..=mmax {
                        ensure!(trinomial_bailey_lemma_check(&pair, m)?, "M={m}");
                    }
                    Ok(None)
                },
            );
        }
    }

    for l in 1..=b.lmax(16) {
        b.case(format!("tbl/L={l:02}"), params! {"L" => l}, move || {
            for a in -l..=l {
                ensure!(t0_t1_relation_check(l, a)?, "a={a}");
            }
            Ok(None)
        });
    }
    for m in 0..=b.lmax(8) {
        b.case(format!("tbl1/M={m:02}"), params! {"M" => m}, move || {
            for a in 0..=m {
                let (lhs, rhs) = tbl1_telescoping_sides(a, m)?;
                ensure_eq!(lhs, rhs, "a={a}");
            }
            Ok(None)
        });
    }

    for i in 0..RANDOM_PAIRS {
        let s = seed.wrapping_add(i);
        b.case(
            format!("transforms/pair={i:02}"),
            params! {"seed" => s, "M" => mmax, "coeffs" => "[-3,3]", "degree" => 4},
            move || transforms_check(s, mmax),
        );
    }
    b.case("transforms/wrong-relative".into(), params! {"a" => "q"}, || {
        let pair = AnyPair::Bin(beta_from_alpha(&unit_sequence(2), QMonomial::q_pow(1), 2)?);
        for t in [Transform::ToTrin0, Transform::ToTrin1, Transform::EvenEmbed { l: 0, n: 0 }] {
            let r = pair_transform(t, &pair);
            ensure!(matches!(r, Err(Error::WrongRelative(_))), "{} accepted a pair relative to q", t.name());
        }
        Ok(None)
    });
}

fn same_pair(x: &AnyPair, y: &AnyPair) -> bool {
    match (x, y) {
        (AnyPair::Bin(x), AnyPair::Bin(y)) => {
            x.a == y.a && ratio_seq_equal(&x.alpha, &y.alpha) && ratio_seq_equal(&x.beta, &y.beta)
        }
        (AnyPair::Trin(x), AnyPair::Trin(y)) => x.n == y.n && ratio_seq_equal(&x.a, &y.a) && ratio_seq_equal(&x.b, &y.b),
        _ => false,
    }
}

/// Random binomial and trinomial pairs through every transform and back.
fn transforms_check(seed: u64, m: i64) -> Verdict {
    let mut rng = seeded_rng(seed);
    let alpha = random_sequence(&mut rng, (m + 1) as usize, 4);
    let bin = AnyPair::Bin(beta_from_alpha(&alpha, QMonomial::ONE, m)?);
    for (there, back) in [(Transform::ToTrin0, Transform::ToBin0), (Transform::ToTrin1, Transform::ToBin1)] {
        let out = pair_transform(there, &bin)?;
        ensure!(out.verify()?, "{} output fails its defining relation", there.name());
        let again = pair_transform(back, &out)?;
        ensure!(again.verify()?, "{} output fails its defining relation", back.name());
        ensure!(same_pair(&again, &bin), "{} then {} does not recover the pair", there.name(), back.name());
    }
    for n in 0..=1 {
        let big_a = random_sequence(&mut rng, (m + 1) as usize, 4);
        let trin = AnyPair::Trin(b_from_a(&big_a, n, m)?);
        let (back, there) = if n == 0 {
            (Transform::ToBin0, Transform::ToTrin0)
        } else {
            (Transform::ToBin1, Transform::ToTrin1)
        };
        let out = pair_transform(back, &trin)?;
        ensure!(out.verify()?, "{} output fails its defining relation", back.name());
        let again = pair_transform(there, &out)?;
        ensure!(same_pair(&again, &trin), "{} then {} does not recover the pair", back.name(), there.name());
    }
    for ell in 0..=2 {
        let pair = AnyPair::Bin(beta_from_alpha(&alpha, QMonomial::q_pow(ell), m)?);
        for n in 0..=1 {
            let t = Transform::EvenEmbed { l: ell, n };
            let out = pair_transform(t, &pair)?;
            ensure!(out.verify()?, "{} output fails its defining relation", t.name());
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------- limits

fn limits(b: &mut Builder) {
    let order = b.order(20);
    let oq = order / UNIT;
    // generous: T_0(L, a) and (L; a)_2 settle well before L = 6N
    let max_l = 6 * oq + 16;

    for a in 0..=2 {
        for (parity, pname) in [(Parity::Even, "even"), (Parity::Odd, "odd")] {
            b.case(
                format!("t0/{pname}/a={a}"),
                params! {"a" => a, "parity" => pname, "order" => oq},
                move || {
                    let table = TruncatedBinomials::new(max_l + 2, order);
                    // start at L >= N: tiny L can agree with each other by accident
                    let start = a + 2 * oq + if parity == Parity::Even { 0 } else { 1 };
                    let (_, s) = stabilize(start, 2, max_l, |l| t_n_series(0, l, a, &table))?;
                    ensure_eq!(s, t0_limit(parity, order)?, "stabilised T_0 vs limit");
                    Ok(None)
                },
            );
        }
        b.case(format!("trinomial/a={a}"), params! {"a" => a, "order" => oq}, move || {
            let table = TruncatedBinomials::new(max_l + 2, order);
            let (_, s) = stabilize(a + oq, 1, max_l, |l| trinomial_series(l, a, a, &table))?;
            ensure_eq!(s, trinomial_limit(order)?, "stabilised (L; a)_2 vs 1/(q)_inf");
            Ok(None)
        });
    }
    for a in 0..=4 {
        b.case(format!("qbin/a={a}"), params! {"a" => a, "order" => oq}, move || {
            let table = TruncatedBinomials::new(a + oq + 2, order);
            let want = inverse_q_pochhammer(a, order);
            let (_, s) = stabilize(a + oq, 1, a + oq + 1, |l| table.get(l, a))?;
            ensure_eq!(s, want, "stabilised [L, a] vs 1/(q)_a");
            ensure_eq!(truncate(&qbin(a + oq, a), order), want, "[a+N, a] vs 1/(q)_a");
            Ok(None)
        });
    }

    let ta = b.order(30);
    let ns: Vec<i64> = match b.opts.n {
        Some(n) => vec![n],
        None => (1..=4).collect(),
    };
    for n in ns {
        b.case(format!("tainf/n={n}"), params! {"n" => n, "order" => ta / UNIT}, move || {
            let (lhs, rhs) = tainf_check(n, ta)?;
            ensure_eq!(lhs, rhs, "fermionic series vs character");
            Ok(None)
        });
    }

    let chi = b.order(40);
    b.case("character/p=2/pp=3".into(), params! {"order" => chi / UNIT}, move || {
        ensure_eq!(character(2, 3, 1, 1, chi)?, QSeries::one(chi), "chi^(2,3)_(1,1) vs 1");
        Ok(None)
    });
    b.case("character/p=3/pp=4".into(), params! {"order" => oq}, move || {
        let want = character(3, 4, 1, 1, order)?;
        let (_, s) = stabilize(oq, 1, 2 * oq + 16, |l| {
            truncate(&bosonic(3, 4, l).expect("(3,4) is a valid pair"), order)
        })?;
        ensure_eq!(s, want, "stabilised B_L(3,4) vs chi^(3,4)_(1,1)");
        Ok(None)
    });
}
