//! Complete elliptic integrals, bivariate means and numerical verification
//! of sharp bounds for the Toader mean by centroidal means of convex
//! combinations.

pub mod analysis;
pub mod cli;
pub mod elliptic;
pub mod error;
pub mod means;
pub mod quadrature;

pub use elliptic::{ellip_oracle, ellip_pair, ellipe, ellipk, EllipticValues, Modulus};
pub use error::{Error, Result};
pub use means::{MeanKind, PositivePair};
