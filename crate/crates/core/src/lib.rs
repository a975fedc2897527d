//! Exact q-series engine for q-binomial and q-trinomial coefficients,
//! their fermionic/bosonic polynomial identities and Bailey-pair machinery.
//!
//! Exponents are stored in quarter units (see [`qcore::UNIT`]) so that
//! `q^{1/2}` and `q^{1/4}` powers are represented exactly.

pub mod bailey;
pub mod connect;
pub mod error;
pub mod identities;
pub mod qbinom;
pub mod qcore;
pub mod qtrinom;
pub mod suite;
pub mod virasoro;

pub use error::{Error, Result};
