//! Exact arithmetic kernel: rationals, polynomials and rational functions in
//! the formal variable `s`, Gamma-ratio helpers and linear algebra over Q(s).

pub mod gamma;
pub mod matrix;
pub mod poly;
pub mod ratfunc;
pub mod rational;

pub use gamma::{binomial, factorial, falling, falling_q, gamma_ratio, gamma_ratio_int, pochhammer, pochhammer_q};
pub use matrix::{linsolve, linsolve_many, smith_local_valuations, LocalSmith, RFMatrix};
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use rational::{format_rational, int, parse_rational, rat, Rational};
