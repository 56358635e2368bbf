//! Hyperbolic series with closed forms in complete elliptic integrals.
//!
//! The numeric core works in double-double where cancellation matters:
//! AGM values of K and E, the inverse of x = K'/K, bound-terminated series
//! sums, and a catalog of identities checked term by term.

pub mod analytic;
pub mod catalog;
pub mod dd;
pub mod elliptic;
pub mod error;
pub mod gamma;
pub mod modulus;
pub mod parallel;
pub mod quadrature;
pub mod report;
pub mod series;

pub use catalog::{catalog, eval_rhs, lookup, nasim_residual, verify, Identity, VerificationResult};
pub use elliptic::{agm, deriv_e, deriv_k, ellip_e, ellip_k, legendre_residual, EllipticValues, Modulus};
pub use error::{Error, Result};
pub use gamma::{gamma, gamma_constant, GammaTag};
pub use modulus::{alpha_residual, deriv_x, modulus_from_x, ratio_x, singular_value, SingularValue};
pub use series::{hyperbolic_sum, tail_bound, SeriesSpec, SeriesSum};
