//! Spin chain / Coulomb gas correspondence.
//!
//! The symbolic layer ([`qseries`], [`uqsl2`]) works over exact rational
//! functions of the deformation variable `q`. The numeric layer
//! ([`coulomb`], [`correspondence`], [`pde`]) evaluates the screening
//! integrals at `q = exp(4πi/κ)` and checks the resulting boundary
//! correlation functions against their differential equations, covariance
//! and asymptotics.

#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord, clippy::type_complexity)]

pub mod coulomb;
pub mod correspondence;
pub mod error;
pub mod pde;
pub mod qseries;
pub mod uqsl2;

pub use error::{Error, Result};
