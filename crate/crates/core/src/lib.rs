//! Generalized spin coherent states labelled by points of the Riemann sphere,
//! with monopole harmonics of the `m`-th spherical Landau level as labelling
//! coefficients, and their realization on the Kravchuk finite oscillator.
//!
//! Every floating-point routine that evaluates a polynomial or a terminating
//! hypergeometric sum is generic over [`specfun::Scalar`], so the same code
//! runs on `f64` and on exact [`Rational`]s. The rational backend is what the
//! test-suite uses to certify identities exactly at small size.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod grid;
pub mod gscs;
pub mod kravchuk;
pub mod monopole;
pub mod oscillator_cs;
pub mod quadrature;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use specfun::Rational;

pub use gscs::StateVector;
pub use kravchuk::{KravchukModel, OscillatorMatrix};
pub use monopole::{PlanePoint, SpinLevel};
pub use oscillator_cs::{BargmannFunction, OscillatorGscsConfig};
pub use quadrature::QuadratureRule;
