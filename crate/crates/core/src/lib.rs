//! Dimension and Bose distance of primitive BCH codes over GF(q) of length
//! `q^m - 1`, by closed forms checked against a cyclotomic-coset oracle and
//! explicit generator-polynomial construction.

pub mod cosets;
pub mod error;
pub mod formulas;
pub mod gf;
pub mod params;
pub mod qadic;
pub mod table;
pub mod verify;

pub use error::{Error, Result};
pub use qadic::CodeIndex;
