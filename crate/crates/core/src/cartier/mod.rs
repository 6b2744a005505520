//! Isocrystals, special Cartier modules and their critical-index lattices.

pub mod fixed;
pub mod flag;
pub mod isocrystal;
pub mod module;
pub mod wmat;

pub use fixed::{eta_fixed_lattice, EtaLattice};
pub use flag::{cartier_to_simplex, Framing};
pub use isocrystal::Isocrystal;
pub use module::{noncritical_example, random_special_d2, random_unimodular, reference_module, SpecialCartierModule, SpecialReport};
pub use wmat::WMat;
