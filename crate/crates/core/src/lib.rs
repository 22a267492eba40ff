//! Verification kernels for an explicit genus-2 / quartic-field instance of the
//! Birch and Swinnerton-Dyer conjecture.

pub mod algebraize;
pub mod arith;
pub mod bsd;
pub mod builtin;
pub mod curves;
pub mod error;
pub mod euler;
pub mod lfunction;
pub mod maps;
pub mod numeric;
pub mod periods;

pub use error::{Error, Result};
