//! Special fiber combinatorics and specialization of classical points.

pub mod chart;
pub mod dl;
pub mod incidence;
pub mod localmodel;
pub mod specialize;

pub use chart::{semistable_chart, ChartSpec};
pub use dl::{dl_count, dl_count_brute_range, dl_count_closed, dl_count_formula, dl_space, DlMethod, DlSpace};
pub use incidence::{component_incidence, IncidenceComplex};
pub use localmodel::{flagged_sufficiency, local_model_equations, Equation, EquationSet, LocalModelForm, SufficiencyReport};
pub use specialize::{preimage_chain, preimage_lattice, specialize_point, RigidPoint, SpecializationResult};
