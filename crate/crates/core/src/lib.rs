//! Motivic Donaldson–Thomas series for resolutions of `XY = Z^{N0} W^{N1}`.
//!
//! The crate computes the universal series of the Jacobian algebra attached to
//! a partition `sigma` as a product over affine type-A roots, derives framed,
//! DT, PT and point-count series from it, and checks everything against
//! brute-force oracles (finite-field point counts and the nilpotent
//! stratification linear algebra).

pub mod error;
pub mod linalg;
pub mod motive;
pub mod oracle;
pub mod quiver;
pub mod roots;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
pub use motive::{gl_order, vir_normalize, MotiveRat, VPolynomial};
pub use quiver::{Arrow, QuiverWithCut, SigmaPartition, ToricData};
pub use roots::{Root, RootKind, StabilityParam};
pub use scalar::{Coefficient, Field, Fp};
pub use series::TruncatedSeries;

/// Exact rational numbers.
pub type Rational = num_rational::BigRational;
/// Series with coefficients in `Q(v)`.
pub type MotiveSeries = TruncatedSeries<MotiveRat>;
/// Series with rational coefficients (e.g. after `v -> 1`).
pub type RationalSeries = TruncatedSeries<Rational>;
