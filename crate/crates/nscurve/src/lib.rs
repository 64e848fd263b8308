//! Exact arithmetic for plane (n,s)-curves: gap sequences, Schur functions,
//! the algebraic fundamental bilinear form, and the Taylor expansion of the
//! associated sigma function around the origin.
//!
//! Everything is computed over the rationals, with the curve coefficients
//! either left as formal variables or specialized to exact rational values.
//! The one floating-point computation in the whole crate is the constant
//! [`sigma::constant_cn`], which is quarantined in its own function and never
//! feeds back into the exact pipeline.
//!
//! All values are immutable after construction and all operations are pure
//! functions, so shared references may be used freely across threads.

pub mod curve;
mod error;
pub mod fundform;
pub mod lambda;
pub mod rational;
pub mod schur;
pub mod series;
pub mod sigma;
pub mod verify;
mod xypoly;

pub use curve::{CurveSpec, GapData, LambdaValue, MonomialBasisEntry};
pub use error::{Error, Result};
pub use lambda::{LambdaIdx, LambdaPoly};
pub use rational::Rational;
pub use schur::Partition;
pub use series::{TruncSeries, VarSet};
pub use sigma::SigmaExpansion;

