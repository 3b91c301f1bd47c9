//! Incomplete Toronto function T_B(m, n, r) and incomplete Lipschitz-Hankel integrals
//! Ie_{m,n}(a, z): closed forms, series, bounds, and an adaptive-quadrature oracle.

// NaN must fail domain checks, so `!(x > 0.0)` is deliberate.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Rule constants and reference values keep their published digits.
#![allow(clippy::excessive_precision)]

pub mod bounds;
pub mod cli;
pub mod error;
pub mod eval;
pub mod ilhi;
pub mod quadrature;
pub mod special;
pub mod toronto;
pub mod verify;

pub use bounds::BoundPair;
pub use error::{Error, Result};
pub use ilhi::IlhiParams;
pub use quadrature::{QuadResult, QuadSpec};
pub use toronto::TorontoParams;
