//! Exact computations with cocycle deformations of bosonized Nichols algebras.
//!
//! The crate builds finite-dimensional pointed Hopf algebras `B(V) # kG` over dihedral and
//! symmetric groups from Yetter-Drinfeld data, lifts invariant bilinear forms on `V` to Hopf
//! 2-cocycles by convolution exponential, and evaluates the deformed multiplication on
//! generators to check presentations of the resulting liftings.

pub mod bosonization;
pub mod cocycles;
pub mod deform;
pub mod error;
pub mod groups;
pub mod linalg;
pub mod nichols;
pub mod racks;
pub mod report;
pub mod scalars;
pub mod yetter_drinfeld;

pub use error::{Error, Result};
pub use scalars::{CycField, CycScalar, Rational};
