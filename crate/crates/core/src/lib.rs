//! Exact computations with exponential sheaves in two models: trace
//! functions over F_p with values in Q(ζ_p), and cyclic D-modules over the
//! Weyl algebra with rational coefficients.

pub mod cyclotomic;
pub mod error;
pub mod finite_model;
pub mod linalg;
pub mod rat;

pub mod dmodule;
pub mod groebner;
pub mod suites;
pub mod weyl;

pub use error::{Error, Result};
