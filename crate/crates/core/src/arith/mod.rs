//! Exact arithmetic: p-adic scalars, finite fields, truncated Witt rings, slopes.

pub mod ext;
pub mod fq;
pub mod padic;
pub mod slope;
pub mod witt;

pub use fq::{FqElement, FqField};
pub use padic::PadicScalar;
pub use slope::SlopeFraction;
pub use witt::{WittElement, WittRingSpec};
