//! Closed forms and independent numerical oracles for singular integrals of
//! Jacobi-weighted polynomials.

mod dd;
pub mod closedforms;
pub mod error;
pub mod gammacore;
pub mod hypergeom;
pub mod oracle;
pub mod orthopoly;

pub use closedforms::{EvalResult, IntegralKind, IntegralParams, IntegralSpec};
pub use error::{Error, Result};
pub use orthopoly::JacobiParams;
