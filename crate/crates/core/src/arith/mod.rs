pub mod finite;
pub mod lll;
pub mod modp;
pub mod nfpoly;
pub mod numfield;
pub mod poly;
pub mod recognize;
pub mod scalar;
pub mod zfactor;
pub mod zn;

pub use numfield::{FieldAutomorphism, NfElem, NumberField};
pub use poly::Poly;
pub use scalar::{rat, Scalar, Zp};
