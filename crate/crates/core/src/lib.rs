//! Leading coefficients of Artin L-functions at `s = 1`.
//!
//! The crate evaluates `kappa(chi)`, the leading Laurent coefficient of
//! `L(s, chi)` at `s = 1`, through truncated Euler products over the
//! primes of a number field, and compares the results against effective
//! upper and lower envelopes built from the character's degree, its
//! minimum real part and the relevant conductors.
//!
//! * [`group`]: exact character tables, virtual characters, `mu(chi)`.
//! * [`splitting`]: discriminants, degree patterns mod `p`, Frobenius classes.
//! * [`lfunc`]: local factors, truncated products, kappa estimators.
//! * [`exceptional`]: real zeros of quadratic Dirichlet L-functions, eta factors.
//! * [`bounds`]: envelope shapes and ratio reports.
//! * [`families`]: ready-made quadratic and cubic field specifications.
//!
//! Numerical code is generic over [`Real`] (`f32` or `f64`); the aliases at
//! the crate root fix the scalar to `f64`.

// Domain checks are written `!(x >= lo)` so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod cyclotomic;
pub mod error;
pub mod exceptional;
pub mod families;
pub mod group;
pub mod lfunc;
pub mod parallel;
pub mod poly;
pub mod scalar;
pub mod sieve;
pub mod special;
pub mod splitting;

pub use error::{Error, Result};
pub use group::{builtin, GroupTable, InductionData, VirtualCharacter};
pub use lfunc::{EulerTable, KappaOptions, SiegelData, TruncationModel};
pub use scalar::{CompensatedSum, Real, EULER_GAMMA};
pub use splitting::FieldSpec;

/// [`lfunc::KappaIntervalOf`] over `f64`.
pub type KappaInterval = lfunc::KappaIntervalOf<f64>;
/// [`lfunc::LocalFactorValue`] over `f64`.
pub type LocalFactorValue = lfunc::LocalFactorValue<f64>;
/// [`lfunc::ProductValue`] over `f64`.
pub type ProductValue = lfunc::ProductValue<f64>;
