pub mod bigfloat;
pub mod complex;
pub mod linalg;

pub use bigfloat::{digits_to_bits, BigReal};
pub use complex::BigComplex;
