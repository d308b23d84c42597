//! Exact computer algebra for the binomial determinant families D and E:
//! construction, fraction-free determinants, product formulas, the
//! cofactor-ratio ansatz, ε-limits and the lattice-path side.

pub mod arith;
pub mod error;
pub mod matrix;
pub mod families;
pub mod closed_forms;
pub mod ansatz;
pub mod epsilon;
pub mod tilings;
pub mod verify;

pub use arith::{int, rat, AffineMu, LinProd, PolyMu, RatFuncMu, Rational};
pub use error::{Error, Result};
