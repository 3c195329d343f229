//! Exact scalars, polynomials, rational functions and truncated series.

pub mod laurent;
pub mod poly;
pub mod ratfunc;
pub mod ring;
pub mod series;

pub use laurent::{DoubleKernel, Mat2, Tail};
pub use poly::{gcd, Poly, Var};
pub use ratfunc::RatFunc;
pub use ring::{binomial, factorial, q, qf, render_rational, Rational, Ring};
pub use series::Series;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("truncation order: {0}")]
    Order(String),
}
