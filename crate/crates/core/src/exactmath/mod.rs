//! Exact arithmetic substrate: rationals, sparse polynomials, truncated power
//! series, radicals and exact dense linear solving.

mod expr;
mod linsolve;
mod poly;
mod radical;
mod rational;
mod series;

pub use expr::parse_st_expression;
pub use linsolve::{solve_linear_exact, LinearSolution};
pub(crate) use poly::{bigint_from_json, bigint_to_json};
pub use poly::{
    BivariatePolynomial, Monomial, QPolynomial, QWPolynomial, QwExp, SparsePoly, StExp,
};
pub use radical::{square_free_decomposition, RadicalNumber};
pub use rational::{
    int, rat, rational_arith, rational_to_f64, ArithOp, BigInt, BigRational, BigUint,
};
pub use series::PowerSeries;
