//! Weight 3/2 Cohen-Eisenstein coefficients from ternary theta series over
//! ideal classes of definite quaternion orders, checked against the
//! closed class-number formula.

pub mod arith;
pub mod brandt;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod order;
pub mod qform;
pub mod quatalg;
pub mod rational;
pub mod theta32;
pub mod verify;

pub use error::{Error, Result};
