//! Exact computations around lattices in Q_p^d, the Bruhat-Tits building of GL_d,
//! special Cartier modules and slope calculus on the Fargues-Fontaine curve.
#![no_std]
extern crate alloc;

pub mod arith;
pub mod building;
pub mod cartier;
pub mod error;
pub mod ffbundle;
pub mod lattice;
pub mod rat;
pub mod specfiber;

pub use error::{Error, ErrorClass, Result};
