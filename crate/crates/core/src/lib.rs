//! Root geometry of the polynomial sequence
//! `W_n(z) = (az + b) W_{n-1}(z) + (cz + d) W_{n-2}(z)`, `W_0 = 1`, `W_1 = z`,
//! with positive rational `a, b, c, d`.
//!
//! Everything that decides a sign is exact: polynomial coefficients are
//! rationals, critical points live in real quadratic fields, and real roots
//! are counted with Sturm chains. Floating point appears only in the complex
//! root clouds and in the off-curve sampling of the limit-set classifier.

pub mod closed_forms;
pub mod error;
pub mod exact;
pub mod exec;
pub mod geometry;
pub mod roots;
pub mod sequence;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{Poly, QuadExt, Rational};
pub use sequence::{RecurrenceParams, Regime, SequenceCache};
