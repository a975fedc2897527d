//! Exact arithmetic foundation: Laurent polynomials, truncated series and
//! factored ratios, all over quarter-power exponents of `q`.

pub mod poly;
pub mod ratio;
pub mod series;

pub use poly::{QPoly, UNIT};
pub use ratio::{ratio_equal, FactoredRatio, Factor};
pub use series::{euler_product, inverse_q_pochhammer, partition_series, truncate, QSeries, Sign};

/// `q -> 1/q`.
pub fn dual(p: &QPoly) -> QPoly {
    p.dual()
}

/// Sum of coefficients.
pub fn eval_at_one(p: &QPoly) -> num_bigint::BigInt {
    p.eval_at_one()
}
