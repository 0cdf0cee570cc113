//! Exact scalars and polynomials.

pub mod poly;
pub mod quad;
pub mod rational;
pub(crate) mod zpoly;

pub use poly::Poly;
pub use quad::QuadExt;
pub use rational::{int, parse_rational, rat, Rational};
