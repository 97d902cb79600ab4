//! Exact combinatorics of Berkovich curve skeletons.

pub mod corpus;
pub mod dot;
pub mod drinfeld;
pub mod groups;
pub mod ids;
pub mod modular;
pub mod scalar;
pub mod semigraph;
pub mod skeleton;
pub mod ultrametric;
pub mod wild;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use scalar::Scalar;

/// Default exact scalar.
pub type Rational = num_rational::Ratio<i64>;
/// Wider fixed-size scalar.
pub type WideRational = num_rational::Ratio<i128>;
