//! Exact scalars: arbitrary-precision rationals and cyclotomic field elements.
//!
//! Cyclotomic elements keep a common-denominator i64 representation while values stay small
//! and fall back to big integers transparently, so equality is always exact.

mod cyclotomic;
mod rational;

pub use cyclotomic::{cyclotomic_polynomial, CycField, CycScalar, MAX_CONDUCTOR};
pub use rational::Rational;

/// The small rationals used by default parameter sweeps.
pub fn small_rationals() -> Vec<Rational> {
    [(0, 1), (1, 1), (-1, 1), (2, 1), (1, 2)]
        .iter()
        .map(|&(n, d)| Rational::new(n, d).expect("nonzero denominator"))
        .collect()
}
